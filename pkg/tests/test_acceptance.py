"""Acceptance gate: one test per pinned criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Tolerances and time bounds are asserted where stated; the two
refined-count rows that no equivalence convention reproduces are pinned to
the computed values with the published ones reported alongside (criterion
10 allows exactly this documented-ambiguity outcome).
"""

from __future__ import annotations

import random
import time

from neckdiag.calculus import (
    apply_rewrite,
    decompose,
    default_catalog,
    default_harsh_table,
    harsh_sum,
    mild_sum,
    rule_positions,
)
from neckdiag.diagrams import (
    CanonicalMode,
    NecklaceDiagram,
    Stone,
    canonical_word,
    mirror_word,
    stone_monodromy,
)
from neckdiag.dessin import validate_dessin
from neckdiag.enumeration import (
    brute_force_count,
    enumerate_classes,
    mitm_count,
    transfer_count,
    valid_classes_cached,
)
from neckdiag.psl2 import (
    Decoration,
    DyadicMat,
    M_REFLECT,
    ProjMat,
    T_B,
    decoration_matrix,
)
from neckdiag.refine import calibrate
from neckdiag.screen import ScreenVerdict, algebraicity_obstructed
from neckdiag.calculus import RuleTag

from dessin_maps import (
    degree6_positive,
    negative_bullet_valency,
    negative_cross_loop,
    negative_plain_mixed,
)


def _verdict(number: int, text: str, ok: bool = True) -> None:
    print(f"ACCEPTANCE {number:2d} {'PASS' if ok else 'FAIL'}: {text}")
    assert ok


def test_c01_matrix_ground_truth():
    """Decoration matrices, stone factorizations and the reflection identities."""
    x_left = decoration_matrix(Decoration.X_LEFT)
    x_right = decoration_matrix(Decoration.X_RIGHT)
    o_left = decoration_matrix(Decoration.O_LEFT)
    o_right = decoration_matrix(Decoration.O_RIGHT)
    stones = {s: stone_monodromy(s) for s in Stone}
    expected_dec = (
        DyadicMat(1, 0, -1, 2, 1), DyadicMat(2, 0, -1, 1),
        DyadicMat(2, 1, 0, 1, 1), DyadicMat(1, 1, 0, 2),
    )
    expected_stone = (
        ProjMat(0, 1, -1, 2), ProjMat(2, 1, -1, 0),
        ProjMat(1, 1, 0, 1), ProjMat(1, 0, -1, 1),
    )
    twist = DyadicMat.from_projmat(T_B)
    reflected = M_REFLECT * x_right.inverse() * M_REFLECT
    started = time.perf_counter()
    ok = (
        (x_left, x_right, o_left, o_right) == expected_dec
        and (stones[Stone.SQUARE], stones[Stone.CIRCLE],
             stones[Stone.ARROW_R], stones[Stone.ARROW_L]) == expected_stone
        and x_right * x_left == twist
        and x_left == reflected
    )
    elapsed = time.perf_counter() - started
    assert elapsed < 0.001, f"matrix comparisons took {elapsed * 1000:.3f} ms"
    _verdict(1, f"matrix ground truth exact ({elapsed * 1e6:.0f} us)", ok)


def test_c02_length6_classification(sym6, maximal6):
    started = time.perf_counter()
    classes = enumerate_classes(6, CanonicalMode.SYMMETRY)
    maximal = enumerate_classes(6, CanonicalMode.SYMMETRY, maximal=True)
    elapsed = time.perf_counter() - started
    ok = len(classes) == 25 and len(maximal) == 4 and elapsed < 1.0
    _verdict(2, f"length 6: 25 symmetry classes, 4 maximal ({elapsed:.2f}s < 1s)", ok)


def test_c03_length12_maximal():
    started = time.perf_counter()
    maximal = enumerate_classes(12, CanonicalMode.SYMMETRY, maximal=True)
    elapsed = time.perf_counter() - started
    ok = len(maximal) == 10 and elapsed < 5.0
    _verdict(3, f"length 12: 10 maximal classes via MITM ({elapsed:.2f}s < 5s)", ok)


def test_c04_8421_convention_pin(raw12, sym12):
    raw = mitm_count(12)
    oriented = len(valid_classes_cached(12, CanonicalMode.ORIENTED))
    symmetry = len(sym12)
    ok = symmetry == 8421 and raw == 199316 and oriented == 16646
    _verdict(
        4,
        "8421 equals the SYMMETRY-class count at length 12 "
        f"(raw={raw}, oriented={oriented}, symmetry={symmetry}); convention frozen",
        ok,
    )


def test_c05_arrow_lower_bound(valid6, raw12):
    started = time.perf_counter()
    ok6 = all(w.count("R") + w.count("L") >= 2 for w in valid6)
    ok12 = all(w.count("R") + w.count("L") >= 2 for w in raw12)
    elapsed = time.perf_counter() - started
    ok = ok6 and ok12 and elapsed < 60
    _verdict(5, f"every valid diagram of length 6 and 12 has >= 2 arrows ({elapsed:.1f}s < 60s)", ok)


def test_c06_randomized_calculus(valid6):
    rng = random.Random(987654321)
    pool = [NecklaceDiagram.from_word(w) for w in valid6]
    catalog = default_catalog()
    failures = 0
    applications = 0
    while applications < 10_000:
        op = rng.choice(("rewrite", "mild", "harsh"))
        if op == "rewrite":
            d = rng.choice(pool)
            rule = rng.choice(catalog)
            positions = rule_positions(d, rule)
            if not positions:
                continue
            out = apply_rewrite(d, rule, rng.choice(positions))
            before, after = d.counts(), out.counts()
            good = (
                out.is_valid()
                and after.circles - before.circles == rule.delta_circles
                and after.squares - before.squares == rule.delta_squares
            )
            if rule.tag is RuleTag.FLIPFLOP:
                good = good and after.profile == before.profile
        else:
            d1, d2 = rng.choice(pool), rng.choice(pool)
            i, j = rng.randrange(len(d1)), rng.randrange(len(d2))
            if op == "mild":
                out = mild_sum(d1, i, d2, j)
                good = out.is_valid() and out.invariants().euler == \
                    d1.invariants().euler + d2.invariants().euler
            else:
                out = harsh_sum(d1, i, d2, j)
                good = out.is_valid()
        applications += 1
        failures += not good
    _verdict(6, f"10^4 randomized operations preserved the contracts ({failures} failures)",
             failures == 0)


def test_c07_harsh_sum_maximality(maximal6, maximal12):
    started = time.perf_counter()
    table = default_harsh_table()
    produced = set()
    reps = []
    for w in maximal6:
        reps.extend(w[i:] + w[:i] for i in range(len(w)))
        m = mirror_word(w)
        reps.extend(m[i:] + m[:i] for i in range(len(m)))
    all_maximal = True
    for w1 in reps:
        for w2 in reps:
            for i, s1 in enumerate(w1):
                if s1 not in "RL":
                    continue
                for j, s2 in enumerate(w2):
                    if (s1, s2) not in (("R", "L"), ("L", "R")):
                        continue
                    out = harsh_sum(NecklaceDiagram.from_word(w1), i,
                                    NecklaceDiagram.from_word(w2), j, table)
                    all_maximal = all_maximal and out.is_valid() and out.is_maximal(2)
                    produced.add(canonical_word(out.word))
    elapsed = time.perf_counter() - started
    ok = all_maximal and produced == set(maximal12) and elapsed < 60
    _verdict(
        7,
        "harsh sums of maximal 6-stone classes at opposite arrows are maximal and "
        f"cover exactly the {len(maximal12)} maximal 12-stone classes ({elapsed:.1f}s < 60s)",
        ok,
    )


def test_c08_engine_cross_validation():
    results = {}
    for n in (6, 8, 10, 12):
        results[n] = (brute_force_count(n), transfer_count(n), mitm_count(n))
    ok = all(a == b == c for a, b, c in results.values())
    counts = {n: v[0] for n, v in results.items()}
    _verdict(8, f"brute force, transfer and MITM agree at 6,8,10,12: {counts}", ok)


def test_c09_nondecomposable_witness(sym12):
    started = time.perf_counter()
    witness = None
    for w in sym12:
        if not decompose(NecklaceDiagram.from_word(w)):
            witness = w
            break
    elapsed = time.perf_counter() - started
    ok = witness is not None and elapsed < 600
    _verdict(9, f"non-decomposable 12-stone witness: {witness} ({elapsed:.1f}s < 10min)", ok)


def test_c10_refined_calibration():
    report = calibrate()
    best = report.best
    ok = (
        best.convention.mode is CanonicalMode.SYMMETRY
        and best.convention.involution == "identity"
        and best.counts[(1, 1)] == 12
        and best.counts[(1, 0)] == 8
        and best.counts[(2, 0)] == 46
        and best.deltas == {(1, 1): 0, (1, 0): 0, (2, 0): 0, (3, 0): 4, (4, 0): 45}
        and not report.all_match
    )
    lines = [
        f"  profile {p}: computed {best.counts[p]} vs published {t}"
        f"{'' if best.counts[p] == t else '  <- delta ' + str(best.counts[p] - t)}"
        for p, t in (( (1, 1), 12), ((1, 0), 8), ((2, 0), 46), ((3, 0), 84), ((4, 0), 251))
    ]
    print("\n".join(lines))
    _verdict(
        10,
        "no convention reproduces all five published refined counts; closest is "
        f"{best.convention} matching (1,1)/(1,0)/(2,0) exactly with deltas "
        "{(3,0): +4, (4,0): +45} - documented ambiguity, frozen as regression",
        ok,
    )


def test_c11_screen_regression(maximal6, maximal12):
    all_arrow = algebraicity_obstructed(NecklaceDiagram.from_word("RLRLRL"), 1)
    maximal_ok = all(
        algebraicity_obstructed(NecklaceDiagram.from_word(w), len(w) // 6)
        is ScreenVerdict.PASS
        for w in maximal6 + maximal12
    )
    ok = all_arrow is not ScreenVerdict.PASS and maximal_ok
    _verdict(
        11,
        f"all-arrow class fails the screen ({all_arrow.value}); all "
        f"{len(maximal6) + len(maximal12)} maximal classes pass",
        ok,
    )


def test_c12_dessin_validator():
    positive = validate_dessin(degree6_positive())
    positive_ok = all(positive.conditions[k] for k in (2, 3, 4, 5))
    negatives = {
        2: validate_dessin(negative_bullet_valency()),
        4: validate_dessin(negative_cross_loop()),
        5: validate_dessin(negative_plain_mixed()),
    }
    negatives_ok = all(
        all(rep.conditions[k] == (k != target) for k in (2, 3, 4, 5))
        for target, rep in negatives.items()
    )
    ok = positive_ok and negatives_ok
    _verdict(
        12,
        "positive map passes dessin conditions (2)-(5); three negative maps fail "
        "exactly conditions 2, 4, 5 respectively",
        ok,
    )
