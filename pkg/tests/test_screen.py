import pytest

from neckdiag.diagrams import LengthMismatchError, NecklaceDiagram, Stone
from neckdiag.screen import (
    DEFAULT_CLASSIFIER,
    ScreenVerdict,
    SegmentClassifier,
    algebraicity_obstructed,
    essential_count,
)


def D(word):
    return NecklaceDiagram.from_word(word)


def test_trivial_classifiers():
    none = SegmentClassifier.none_essential()
    alle = SegmentClassifier.all_essential()
    for word in ("RCRCRC", "CCLCCL", "SSSSSS"):
        assert essential_count(D(word), none) == 0
        assert essential_count(D(word), alle) == len(word)
        assert essential_count(D(word), DEFAULT_CLASSIFIER) <= len(word)


def test_default_classifier_shape():
    assert DEFAULT_CLASSIFIER.essential_pairs == ["LR", "RL"]
    assert DEFAULT_CLASSIFIER.is_mirror_invariant()
    assert DEFAULT_CLASSIFIER.is_dual_invariant()


def test_classifier_totality_enforced():
    with pytest.raises(ValueError):
        SegmentClassifier({(Stone.ARROW_R, Stone.ARROW_L): True})


def test_all_arrow_diagram_fails():
    verdict = algebraicity_obstructed(D("RLRLRL"), 1)
    assert verdict is not ScreenVerdict.PASS
    assert verdict is ScreenVerdict.FAIL_ESSENTIAL


def test_fail_sum_case():
    # five arrows and one circle: 2 essential segments pass the first bound,
    # but 2 + 5 > 6 trips the second
    assert algebraicity_obstructed(D("CLLLRL"), 1) is ScreenVerdict.FAIL_SUM


def test_maximal_classes_pass(maximal6, maximal12):
    for w in maximal6:
        assert algebraicity_obstructed(D(w), 1) is ScreenVerdict.PASS
    for w in maximal12:
        assert algebraicity_obstructed(D(w), 2) is ScreenVerdict.PASS


def test_length_mismatch():
    with pytest.raises(LengthMismatchError):
        algebraicity_obstructed(D("RLRLRL"), 2)


def test_screen_invariant_on_classes(valid6):
    from neckdiag.diagrams import mirror_word

    for w in valid6[::3]:
        base = algebraicity_obstructed(D(w), 1)
        for k in range(6):
            rotated = w[k:] + w[:k]
            assert algebraicity_obstructed(D(rotated), 1) is base
        assert algebraicity_obstructed(D(mirror_word(w)), 1) is base


def test_pass_preserved_under_dual(valid6):
    # the default table is dual invariant, so the screen commutes with duality
    from neckdiag.diagrams import dual_word

    for w in valid6:
        assert algebraicity_obstructed(D(w), 1) is \
            algebraicity_obstructed(D(dual_word(w)), 1)


def test_classifier_text_roundtrip(tmp_path):
    text = DEFAULT_CLASSIFIER.to_text()
    assert len([ln for ln in text.splitlines() if ln]) == 16
    parsed = SegmentClassifier.from_text(text)
    assert parsed == DEFAULT_CLASSIFIER
    with pytest.raises(ValueError):
        SegmentClassifier.from_text("RL -> X\n")
    with pytest.raises(ValueError):
        SegmentClassifier.from_text("RL -> E\n")  # only one of 16 pairs
