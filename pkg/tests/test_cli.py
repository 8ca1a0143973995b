import json

import pytest
from click.testing import CliRunner

from neckdiag.cli import main
from neckdiag.diagrams import CanonicalMode, canonical_word
from neckdiag.records import CSV_HEADER, build_record
from dessin_maps import colored_triangle, totally_real_dessin
from neckdiag.dessin import dessin_to_text


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args, **kwargs):
    return runner.invoke(main, list(args), **kwargs)


def test_enumerate_symmetry_25(runner):
    result = invoke(runner, "enumerate", "6", "--mode", "symmetry")
    assert result.exit_code == 0
    words = result.stdout.split()
    assert len(words) == 25
    assert words == sorted(words, key=lambda w: w.translate(str.maketrans("CLRS", "0123")))


def test_enumerate_deterministic(runner):
    a = invoke(runner, "enumerate", "6", "--format", "records")
    b = invoke(runner, "enumerate", "6", "--format", "records")
    assert a.stdout == b.stdout


def test_enumerate_maximal_filter(runner):
    result = invoke(runner, "enumerate", "12", "--filter", "maximal", "--mode", "symmetry")
    assert result.exit_code == 0
    assert len(result.stdout.split()) == 10


def test_enumerate_empty_is_success(runner):
    result = invoke(runner, "enumerate", "4", "--mode", "oriented")
    assert result.exit_code == 0
    assert result.stdout == ""


def test_enumerate_resource_limit_exit_3(runner):
    result = invoke(runner, "enumerate", "26")
    assert result.exit_code == 3


def test_usage_error_exit_2(runner):
    assert invoke(runner, "enumerate", "6", "--mode", "bogus").exit_code == 2
    assert invoke(runner, "enumerate", "six").exit_code == 2
    assert invoke(runner, "show", "RCX").exit_code == 2


def test_enumerate_records_roundtrip(runner):
    result = invoke(runner, "enumerate", "6", "--format", "records")
    assert result.exit_code == 0
    for line in result.stdout.splitlines():
        rec = json.loads(line)
        # emitted words re-canonicalize to themselves
        assert canonical_word(rec["word"], CanonicalMode.SYMMETRY) == rec["word"]
        rebuilt = build_record(rec["word"], CanonicalMode.SYMMETRY)
        assert json.loads(rebuilt.to_json()) == rec


def test_enumerate_csv(runner):
    result = invoke(runner, "enumerate", "6", "--format", "csv")
    lines = result.stdout.splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 26


def test_profiles(runner):
    result = invoke(runner, "profiles", "6")
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "circles,squares,classes"
    total = sum(int(ln.split(",")[2]) for ln in lines[1:])
    assert total == 25


def test_show_stdin(runner):
    result = invoke(runner, "show", "-", input="RCRCRC\nrlrlrl\n")
    assert result.exit_code == 0
    records = [json.loads(line) for line in result.stdout.splitlines()]
    assert [r["word"] for r in records] == ["CLCLCL", "LRLRLR"]
    assert records[0]["euler"] == 6
    oriented = invoke(runner, "show", "RCRCRC", "--mode", "oriented")
    assert json.loads(oriented.stdout)["word"] == "CRCRCR"


def test_apply_example(runner):
    result = invoke(runner, "apply", "RCRCRC", "--rule", "m1", "--at", "0")
    assert result.exit_code == 0
    rec = json.loads(result.stdout)
    assert (rec["circles"], rec["squares"]) == (2, 0)


def test_apply_explicit_rule(runner):
    result = invoke(runner, "apply", "RCRCRC", "--rule", "RC->LR", "--at", "2")
    assert result.exit_code == 0


def test_apply_no_match_exit_2(runner):
    assert invoke(runner, "apply", "RCRCRC", "--rule", "m2", "--at", "0").exit_code == 2


def test_sum_mild_example(runner):
    result = invoke(runner, "sum", "RLRLRL", "RCRCRC", "--kind", "mild",
                    "--at1", "0", "--at2", "0")
    rec = json.loads(result.stdout)
    assert rec["length"] == 12
    assert rec["arrows"] == 9
    assert (rec["circles"], rec["squares"]) == (3, 0)


def test_sum_harsh_maximal(runner):
    result = invoke(runner, "sum", "CCCLCR", "CCLCCL", "--kind", "harsh",
                    "--at1", "5", "--at2", "2")
    rec = json.loads(result.stdout)
    assert rec["length"] == 12
    assert rec["maximal"] is True


def test_refine_count_and_stream(runner):
    assert invoke(runner, "refine", "RCRCRC", "--count").stdout.strip() == "64"
    result = invoke(runner, "refine", "CLLLRL")
    assert result.stdout.splitlines() == [
        "C1.L.L.L.R.L", "C2.L.L.L.R.L", "C3.L.L.L.R.L", "C4.L.L.L.R.L",
    ]


def test_calibrate(runner):
    result = invoke(runner, "calibrate")
    assert result.exit_code == 0
    assert "closest is symmetry/identity" in result.stdout
    assert "(3, 0): 4" in result.stdout and "(4, 0): 45" in result.stdout


def test_screen_command(runner):
    result = invoke(runner, "screen", "RLRLRL", "CCLCCL")
    lines = result.stdout.splitlines()
    assert lines[0].startswith("LRLRLR FAIL_ESSENTIAL")
    assert lines[1].startswith("CCLCCL PASS")


def test_screen_classifier_override(runner, tmp_path):
    from neckdiag.screen import SegmentClassifier

    table = tmp_path / "classifier.txt"
    table.write_text(SegmentClassifier.none_essential().to_text())
    result = invoke(runner, "screen", "RLRLRL", "--classifier", str(table))
    assert "PASS" in result.stdout


def test_config_file(runner, tmp_path):
    from neckdiag.screen import SegmentClassifier

    table = tmp_path / "classifier.txt"
    table.write_text(SegmentClassifier.none_essential().to_text())
    cfg = tmp_path / "neckdiag.ini"
    cfg.write_text(f"[screen]\nclassifier = {table}\n")
    result = invoke(runner, "--config", str(cfg), "screen", "RLRLRL")
    assert "PASS" in result.stdout
    missing = invoke(runner, "--config", str(tmp_path / "nope.ini"), "screen", "RLRLRL")
    assert missing.exit_code == 2


def test_catalog_command(runner):
    result = invoke(runner, "catalog")
    lines = result.stdout.splitlines()
    assert len(lines) == 12
    assert "RC -> LR m1" in lines


def test_validate_dessin_pass_and_fail(runner, tmp_path):
    good = tmp_path / "good.dessin"
    good.write_text(dessin_to_text(totally_real_dessin()))
    result = invoke(runner, "validate-dessin", str(good))
    assert result.exit_code == 0
    assert result.stdout.count("pass") == 6

    bad = tmp_path / "triangle.dessin"
    bad.write_text(dessin_to_text(colored_triangle()))
    result = invoke(runner, "validate-dessin", str(bad))
    assert result.exit_code == 1
    assert "condition 2: FAIL" in result.stdout

    garbage = tmp_path / "garbage.dessin"
    garbage.write_text("vertex purple 0\n")
    assert invoke(runner, "validate-dessin", str(garbage)).exit_code == 2


def test_report_writes_files(runner, tmp_path):
    outdir = tmp_path / "report"
    result = invoke(runner, "report", "--out", str(outdir), "--lengths", "6")
    assert result.exit_code == 0
    names = {p.name for p in outdir.iterdir()}
    assert names == {
        "profiles_len6_symmetry.csv",
        "profiles_len6_symmetry.png",
        "classes_len6_symmetry.csv",
        "metamorphosis_len6_symmetry.png",
    }
    csv_text = (outdir / "profiles_len6_symmetry.csv").read_text()
    assert csv_text.splitlines()[0] == "circles,squares,classes"
    assert sum(int(ln.split(",")[2]) for ln in csv_text.splitlines()[1:]) == 25
    assert (outdir / "profiles_len6_symmetry.png").stat().st_size > 1000
    assert (outdir / "metamorphosis_len6_symmetry.png").stat().st_size > 1000
    records = (outdir / "classes_len6_symmetry.csv").read_text().splitlines()
    assert records[0] == CSV_HEADER
    assert len(records) == 26


def test_enumerate_count_format(runner):
    result = invoke(runner, "enumerate", "6", "--format", "count")
    assert result.stdout.strip() == "25"
    result = invoke(runner, "enumerate", "12", "--filter", "maximal", "--format", "count")
    assert result.stdout.strip() == "10"
