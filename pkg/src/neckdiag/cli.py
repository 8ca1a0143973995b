"""Command-line surface.

Exit codes: 0 success, 1 claim/validation mismatch, 2 usage error,
3 resource limit.  Data streams on stdout are deterministic (fixed sort
orders, no timestamps); the enumeration summary with wall time goes to
stderr.
"""

from __future__ import annotations

import functools
import os
import sys
import time
from pathlib import Path
from typing import Optional

import click

from . import calculus, refine as refine_mod, report as report_mod
from .config import AppConfig, load_config
from .dessin import MalformedMapError, parse_dessin, validate_dessin
from .diagrams import (
    CanonicalMode,
    LengthMismatchError,
    NecklaceDiagram,
    ParseError,
    Stone,
    canonical_word,
)
from .enumeration import ResourceLimitError, count_by_profile, enumerate_classes
from .records import CSV_HEADER, build_record
from .refine import UnknownProfileError
from .reproduce import render_claims, run_claims
from .screen import SegmentClassifier, algebraicity_obstructed, essential_count

_USAGE_ERRORS = (
    ParseError,
    LengthMismatchError,
    UnknownProfileError,
    calculus.NoMatchError,
    calculus.TableMissError,
    MalformedMapError,
    ValueError,
    KeyError,
)


def _domain_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ResourceLimitError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)
        except _USAGE_ERRORS as exc:
            raise click.UsageError(str(exc)) from exc
    return wrapper


def _threads_option(fn):
    return click.option(
        "--threads",
        type=int,
        default=None,
        help="Worker processes (default: machine parallelism).",
    )(fn)


def _resolve_threads(threads: Optional[int]) -> int:
    if threads is None:
        threads = os.cpu_count() or 1
    return max(1, threads)


def _mode_option(fn):
    return click.option(
        "--mode",
        type=click.Choice(["oriented", "symmetry"]),
        default="symmetry",
        show_default=True,
        help="Equivalence for canonical forms.",
    )(fn)


def _parse_profile(text: Optional[str]) -> Optional[tuple[int, int]]:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise click.UsageError("--profile expects 'CIRCLES,SQUARES'")
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError:
        raise click.UsageError("--profile expects integers") from None


def _words_from(words: tuple[str, ...]) -> list[str]:
    if words == ("-",):
        return [line.strip() for line in sys.stdin if line.strip()]
    return list(words)


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="Config file (default: $NECKDIAG_CONFIG).")
@click.pass_context
def main(ctx: click.Context, config_path: Optional[str]) -> None:
    """Necklace-diagram toolkit: enumeration, calculus, refinement, screening."""
    try:
        ctx.obj = load_config(config_path)
    except (OSError, ValueError) as exc:
        raise click.UsageError(f"bad config: {exc}") from exc


@main.command("enumerate")
@click.argument("length", type=int)
@_mode_option
@click.option("--filter", "filter_", type=click.Choice(["none", "maximal"]), default="none",
              show_default=True)
@click.option("--profile", default=None, help="Keep only one CIRCLES,SQUARES cell.")
@click.option("--format", "format_", type=click.Choice(["words", "records", "csv", "count"]),
              default="words", show_default=True)
@_threads_option
@click.option("--out", type=click.Path(), default=None, help="Write to a file instead of stdout.")
@click.pass_obj
@_domain_errors
def cmd_enumerate(cfg: AppConfig, length: int, mode: str, filter_: str,
                  profile: Optional[str], format_: str, threads: Optional[int],
                  out: Optional[str]) -> None:
    """List canonical valid diagrams of LENGTH stones."""
    cmode = CanonicalMode(mode)
    started = time.perf_counter()
    words = enumerate_classes(
        length, cmode,
        maximal=filter_ == "maximal",
        profile=_parse_profile(profile),
        workers=_resolve_threads(threads),
    )
    lines: list[str] = []
    if format_ == "count":
        lines = [str(len(words))]
    elif format_ == "words":
        lines = words
    else:
        if format_ == "csv":
            lines.append(CSV_HEADER)
        for w in words:
            record = build_record(w, cmode, cfg.classifier)
            lines.append(record.to_csv_row() if format_ == "csv" else record.to_json())
    text = "".join(line + "\n" for line in lines)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)
    elapsed = time.perf_counter() - started
    filter_name = filter_ if profile is None else f"profile={profile}"
    click.echo(
        f"# length={length} mode={mode} filter={filter_name} count={len(words)} "
        f"wall={elapsed:.2f}s",
        err=True,
    )


@main.command("profiles")
@click.argument("length", type=int)
@_mode_option
@_threads_option
@_domain_errors
def cmd_profiles(length: int, mode: str, threads: Optional[int]) -> None:
    """Class counts by (circles, squares) profile, as CSV."""
    table = count_by_profile(length, CanonicalMode(mode), workers=_resolve_threads(threads))
    click.echo("circles,squares,classes")
    for (c, s), n in sorted(table.items()):
        click.echo(f"{c},{s},{n}")


@main.command("show")
@click.argument("words", nargs=-1, required=True)
@_mode_option
@click.option("--format", "format_", type=click.Choice(["records", "csv"]),
              default="records", show_default=True)
@click.pass_obj
@_domain_errors
def cmd_show(cfg: AppConfig, words: tuple[str, ...], mode: str, format_: str) -> None:
    """Structured record for each WORD ('-' reads words from stdin)."""
    if format_ == "csv":
        click.echo(CSV_HEADER)
    for w in _words_from(words):
        record = build_record(w, CanonicalMode(mode), cfg.classifier)
        click.echo(record.to_csv_row() if format_ == "csv" else record.to_json())


@main.command("apply")
@click.argument("word")
@click.option("--rule", "rule_spec", required=True,
              help="Rule tag (m1, m2, m1_inv, m2_inv, flipflop) or 'LHS->RHS'.")
@click.option("--at", "position", type=int, required=True, help="Cyclic position of the match.")
@click.pass_obj
@_domain_errors
def cmd_apply(cfg: AppConfig, word: str, rule_spec: str, position: int) -> None:
    """Apply one rewrite rule to WORD at a position."""
    diagram = NecklaceDiagram.from_word(word)
    if "->" in rule_spec:
        lhs, rhs = rule_spec.split("->", 1)
        rule = calculus.RewriteRule(lhs.strip(), rhs.strip())
    else:
        tag = calculus.RuleTag(rule_spec.lower())
        candidates = [
            r for r in cfg.catalog
            if r.tag is tag and position % len(word) in calculus.rule_positions(diagram, r)
        ]
        if not candidates:
            raise calculus.NoMatchError(
                f"no {tag.value} rule of the catalog matches {word} at {position}")
        if len(candidates) > 1:
            names = ", ".join(f"{r.lhs}->{r.rhs}" for r in candidates)
            raise click.UsageError(
                f"ambiguous: {names} all match; pass --rule 'LHS->RHS'")
        rule = candidates[0]
    result = calculus.apply_rewrite(diagram, rule, position)
    click.echo(build_record(result.word, CanonicalMode.SYMMETRY, cfg.classifier).to_json())


@main.command("sum")
@click.argument("word1")
@click.argument("word2")
@click.option("--kind", type=click.Choice(["mild", "harsh"]), default="mild", show_default=True)
@click.option("--at1", type=int, default=0, show_default=True)
@click.option("--at2", type=int, default=0, show_default=True)
@click.pass_obj
@_domain_errors
def cmd_sum(cfg: AppConfig, word1: str, word2: str, kind: str, at1: int, at2: int) -> None:
    """Mild or harsh sum of two diagrams."""
    d1 = NecklaceDiagram.from_word(word1)
    d2 = NecklaceDiagram.from_word(word2)
    if kind == "mild":
        result = calculus.mild_sum(d1, at1, d2, at2)
    else:
        result = calculus.harsh_sum(d1, at1, d2, at2, cfg.harsh_table)
    click.echo(build_record(result.word, CanonicalMode.SYMMETRY, cfg.classifier).to_json())


@main.command("refine")
@click.argument("word")
@click.option("--count", "count_only", is_flag=True, help="Print only the number of refinements.")
@_domain_errors
def cmd_refine(word: str, count_only: bool) -> None:
    """Stream all refinements of WORD (circle marks C1..C4)."""
    diagram = NecklaceDiagram.from_word(word)
    if count_only:
        click.echo(str(4 ** diagram.counts().circles))
        return
    for refined in refine_mod.refinements(diagram):
        click.echo(refined.word)


@main.command("calibrate")
@click.pass_obj
@_domain_errors
def cmd_calibrate(cfg: AppConfig) -> None:
    """Refined-count calibration report against the published counts."""
    click.echo(f"configured convention: {cfg.refine_convention}")
    click.echo(refine_mod.calibrate().render())


@main.command("screen")
@click.argument("words", nargs=-1, required=True)
@click.option("-n", "n_value", type=int, default=None,
              help="Fibration index n (default: length/6).")
@click.option("--classifier", "classifier_path", type=click.Path(exists=True), default=None,
              help="Classifier table file overriding the config.")
@click.pass_obj
@_domain_errors
def cmd_screen(cfg: AppConfig, words: tuple[str, ...], n_value: Optional[int],
               classifier_path: Optional[str]) -> None:
    """Algebraicity screen for each WORD ('-' reads from stdin)."""
    classifier = cfg.classifier
    if classifier_path:
        classifier = SegmentClassifier.from_text(Path(classifier_path).read_text())
    for w in _words_from(words):
        diagram = NecklaceDiagram.from_word(w)
        n = n_value if n_value is not None else len(diagram) // 6
        verdict = algebraicity_obstructed(diagram, n, classifier)
        essentials = essential_count(diagram, classifier)
        click.echo(
            f"{canonical_word(diagram.word)} {verdict.value} "
            f"essential={essentials} arrows={diagram.counts().arrows} n={n}"
        )


@main.command("reproduce")
@_threads_option
@click.option("--samples", type=int, default=2000, show_default=True,
              help="Randomized calculus applications to verify.")
@click.option("--corrupt-stone", type=click.Choice(["S", "C", "R", "L"]), default=None,
              hidden=True, help="Testing hook: corrupt one stone matrix.")
@_domain_errors
def cmd_reproduce(threads: Optional[int], samples: int, corrupt_stone: Optional[str]) -> None:
    """Recompute every pinned quantitative claim; exit 1 on any mismatch."""
    stone = Stone(corrupt_stone) if corrupt_stone else None
    claims = run_claims(corrupt_stone=stone, workers=_resolve_threads(threads),
                        random_samples=samples)
    click.echo(render_claims(claims))
    if not all(c.match for c in claims):
        sys.exit(1)


@main.command("report")
@click.option("--out", "outdir", type=click.Path(), required=True)
@click.option("--lengths", default="6", show_default=True,
              help="Comma-separated diagram lengths.")
@_mode_option
@click.option("--claims/--no-claims", "with_claims", default=False,
              help="Also run the reproduction suite and write claims.csv.")
@_threads_option
@_domain_errors
def cmd_report(outdir: str, lengths: str, mode: str, with_claims: bool,
               threads: Optional[int]) -> None:
    """Write count tables (CSV) and figures (PNG) into a directory."""
    lens = tuple(int(x) for x in lengths.split(","))
    workers = _resolve_threads(threads)
    claims = run_claims(workers=workers) if with_claims else None
    written = report_mod.write_report(
        Path(outdir), lens, CanonicalMode(mode), claims=claims, workers=workers
    )
    for path in written:
        click.echo(str(path))


@main.command("catalog")
@click.option("--max-len", type=int, default=2, show_default=True)
@_domain_errors
def cmd_catalog(max_len: int) -> None:
    """Print the derived rewrite catalog in its text format."""
    click.echo(calculus.catalog_to_text(calculus.derive_rewrite_catalog(max_len)), nl=False)


@main.command("validate-dessin")
@click.argument("path", type=click.Path(exists=True))
@_domain_errors
def cmd_validate_dessin(path: str) -> None:
    """Check a map file against the six real-dessin conditions."""
    dessin = parse_dessin(Path(path).read_text())
    report = validate_dessin(dessin)
    click.echo(report.render())
    if not report.all_pass:
        sys.exit(1)


if __name__ == "__main__":
    main()
