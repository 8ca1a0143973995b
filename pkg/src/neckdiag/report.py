"""Report rendering: delimited count tables plus matplotlib figures.

The report path writes CSV files and figure files side by side into an
output directory.  Figures visualize count tables and the metamorphosis
structure between profiles; diagrams themselves stay words.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .calculus import RuleTag, apply_rewrite, default_catalog, rule_positions
from .diagrams import CanonicalMode, NecklaceDiagram
from .enumeration import count_by_profile, enumerate_classes
from .records import CSV_HEADER, build_record
from .reproduce import Claim


def write_profile_csv(path: Path, table: dict[tuple[int, int], int]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["circles", "squares", "classes"])
        for (c, s), n in sorted(table.items()):
            writer.writerow([c, s, n])


def write_records_csv(path: Path, words: list[str], mode: CanonicalMode) -> None:
    with path.open("w") as fh:
        fh.write(CSV_HEADER + "\n")
        for w in words:
            fh.write(build_record(w, mode).to_csv_row() + "\n")


def write_claims_csv(path: Path, claims: list[Claim]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["claim", "computed", "expected", "match", "note"])
        for c in claims:
            writer.writerow([c.name, c.computed, c.expected, c.match, c.note])


def profile_figure(path: Path, table: dict[tuple[int, int], int], length: int, mode: CanonicalMode) -> None:
    """Bar chart of class counts per (circles, squares) profile."""
    items = sorted(table.items())
    labels = [f"({c},{s})" for (c, s), _ in items]
    values = [n for _, n in items]
    fig, ax = plt.subplots(figsize=(max(6, 0.5 * len(items)), 4))
    ax.bar(range(len(items)), values, color="#4878a8")
    ax.set_xticks(range(len(items)))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_ylabel("classes")
    ax.set_xlabel("(circles, squares)")
    ax.set_title(f"valid diagram classes, length {length}, {mode.value} mode")
    for i, v in enumerate(values):
        ax.text(i, v, str(v), ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def metamorphosis_figure(path: Path, length: int, mode: CanonicalMode) -> None:
    """Profile graph: vertices are (circles, squares) cells, edges are m1/m2."""
    classes = enumerate_classes(length, mode)
    table = count_by_profile(length, mode)
    edges: set[tuple[tuple[int, int], tuple[int, int]]] = set()
    rules = [r for r in default_catalog() if r.tag in (RuleTag.M1, RuleTag.M2)]
    for w in classes:
        d = NecklaceDiagram.from_word(w)
        src = (w.count("C"), w.count("S"))
        for rule in rules:
            for pos in rule_positions(d, rule):
                out = apply_rewrite(d, rule, pos).word
                edges.add((src, (out.count("C"), out.count("S"))))
    fig, ax = plt.subplots(figsize=(6, 6))
    for (c1, s1), (c2, s2) in sorted(edges):
        ax.annotate(
            "", xy=(s2, c2), xytext=(s1, c1),
            arrowprops=dict(arrowstyle="-|>", color="#888888", lw=1.2,
                            shrinkA=14, shrinkB=14),
        )
    for (c, s), n in sorted(table.items()):
        ax.scatter([s], [c], s=600, color="#4878a8", zorder=3)
        ax.annotate(str(n), (s, c), color="white", ha="center", va="center", zorder=4)
    ax.set_xlabel("squares")
    ax.set_ylabel("circles")
    ax.set_title(f"metamorphosis graph of profiles, length {length} ({mode.value})")
    ax.set_xticks(range(0, max(s for _, s in table) + 1))
    ax.set_yticks(range(0, max(c for c, _ in table) + 1))
    ax.grid(True, alpha=0.2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(
    outdir: Path,
    lengths: tuple[int, ...] = (6,),
    mode: CanonicalMode = CanonicalMode.SYMMETRY,
    claims: list[Claim] | None = None,
    workers: int = 1,
) -> list[Path]:
    """Write count CSVs and figures (and the claim table when provided)."""
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for length in lengths:
        table = count_by_profile(length, mode, workers=workers)
        csv_path = outdir / f"profiles_len{length}_{mode.value}.csv"
        write_profile_csv(csv_path, table)
        written.append(csv_path)
        fig_path = outdir / f"profiles_len{length}_{mode.value}.png"
        profile_figure(fig_path, table, length, mode)
        written.append(fig_path)
        words = enumerate_classes(length, mode, workers=workers)
        rec_path = outdir / f"classes_len{length}_{mode.value}.csv"
        write_records_csv(rec_path, words, mode)
        written.append(rec_path)
        meta_path = outdir / f"metamorphosis_len{length}_{mode.value}.png"
        metamorphosis_figure(meta_path, length, mode)
        written.append(meta_path)
    if claims is not None:
        claims_path = outdir / "claims.csv"
        write_claims_csv(claims_path, claims)
        written.append(claims_path)
    return written
