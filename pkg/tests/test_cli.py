"""Command-line surface: documents on stdout, exit codes, flag plumbing."""

import json
import os
import subprocess
import sys

import pytest

from subnormal.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def run_doc(capsys, *argv):
    rc, out, err = run(capsys, *argv)
    assert err == ""
    return rc, json.loads(out)


# ---------------------------------------------------------------------------
# happy paths


def test_group_summary(capsys):
    rc, doc = run_doc(capsys, "group", "S4")
    assert rc == 0
    assert doc["kind"] == "group_summary"
    assert doc["schema_version"] == 1
    assert doc["order"] == 24
    assert doc["degree"] == 4
    assert doc["class_count"] == 5


def test_group_labels_cover_families(capsys):
    for label, order in (("A5", 60), ("D12", 12), ("Q8", 8), ("PSL2_7", 168)):
        rc, doc = run_doc(capsys, "group", label)
        assert rc == 0 and doc["order"] == order


def test_sylow_summary(capsys):
    rc, doc = run_doc(capsys, "sylow", "S4", "-p", "2")
    assert rc == 0
    assert doc["sylow_order"] == 8
    assert doc["sylow_count"] == 3
    assert doc["normalizer_order"] == 8


def test_picky_survey(capsys):
    rc, doc = run_doc(capsys, "picky", "S4", "-p", "2")
    assert rc == 0
    assert doc["class_count"] == 3
    assert doc["methods_agree"] is True
    assert doc["all_picky"] is False and doc["exists_picky"] is True
    assert [r["class_id"] for r in doc["rows"]] == [0, 1, 2]
    by_size = {r["class_size"]: r["picky"] for r in doc["rows"]}
    assert by_size[3] is False


def test_subnorm_all_methods_agree(capsys):
    rc, doc = run_doc(
        capsys, "subnorm", "S4", "-p", "2", "--class", "1", "--method", "all"
    )
    assert rc == 0
    assert doc["methods_agree"] is True
    assert [r["method"] for r in doc["results"]] == [
        "generation",
        "fusion",
        "bruteforce",
    ]
    assert len({r["subnormaliser_order"] for r in doc["results"]}) == 1


def test_subnorm_single_method(capsys):
    rc, doc = run_doc(
        capsys, "subnorm", "S4", "-p", "3", "--class", "0", "--method", "fusion"
    )
    assert rc == 0
    assert len(doc["results"]) == 1
    assert doc["results"][0]["picky"] is True


def test_chartab_document_on_stdout(capsys):
    rc, doc = run_doc(capsys, "chartab", "C6")
    assert rc == 0
    assert doc["kind"] == "character_table"
    assert doc["order"] == 6
    assert len(doc["values"]) == 6


def test_conjecture_true_exits_zero(capsys):
    rc, doc = run_doc(capsys, "conjecture", "S4", "-p", "2", "--class", "0")
    assert rc == 0
    assert doc["verdict"] is True
    assert doc["label"] == "S4" and doc["class_id"] == 0
    assert doc["level"] == "plus"


def test_stdout_is_deterministic(capsys):
    argv = ("picky", "SL(2,3)", "-p", "2")
    rc_a, out_a, _ = run(capsys, *argv)
    rc_b, out_b, _ = run(capsys, *argv)
    assert rc_a == rc_b == 0
    assert out_a == out_b


# ---------------------------------------------------------------------------
# table export and re-verification


def test_chartab_export_verify_round_trip(capsys, tmp_path):
    path = str(tmp_path / "table.json")
    rc, doc = run_doc(capsys, "chartab", "S4", "--export", path)
    assert rc == 0
    assert doc["kind"] == "table_export" and doc["path"] == path

    rc, doc = run_doc(capsys, "chartab", "--verify", path)
    assert rc == 0
    assert doc["kind"] == "table_verification"
    assert doc["ok"] is True and doc["failed_check"] is None
    assert [c[0] for c in doc["checks"]] == [
        "degrees",
        "degree-squares",
        "row-orthogonality",
        "column-orthogonality",
        "galois-closure",
    ]


def test_chartab_verify_rejects_a_corrupted_table(capsys, tmp_path):
    path = str(tmp_path / "table.json")
    assert main(["chartab", "S4", "--export", path]) == 0
    capsys.readouterr()
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    doc["values"][0][1] = [1, [[0, 7, 1]]]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
    rc, out, err = run(capsys, "chartab", "--verify", path)
    assert rc == 1
    assert json.loads(out)["ok"] is False


def test_chartab_verify_unreadable_file_is_a_usage_error(capsys, tmp_path):
    rc, out, err = run(capsys, "chartab", "--verify", str(tmp_path / "none.json"))
    assert rc == 3
    assert err.startswith("error:")

    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    rc, out, err = run(capsys, "chartab", "--verify", str(bad))
    assert rc == 3


# ---------------------------------------------------------------------------
# exit codes


def test_unknown_label_is_a_usage_error(capsys):
    rc, out, err = run(capsys, "group", "E8(2)")
    assert rc == 3
    assert err.startswith("error:")


def test_non_prime_is_a_usage_error(capsys):
    rc, out, err = run(capsys, "sylow", "S4", "-p", "4")
    assert rc == 3


def test_class_id_out_of_range_is_a_usage_error(capsys):
    rc, out, err = run(capsys, "subnorm", "S4", "-p", "2", "--class", "9")
    assert rc == 3
    assert "3 classes" in err


def test_chartab_without_group_or_verify_is_a_usage_error(capsys):
    rc, out, err = run(capsys, "chartab")
    assert rc == 3


def test_missing_required_flag_is_a_usage_error(capsys):
    rc, out, err = run(capsys, "sylow", "S4")
    assert rc == 3


def test_unknown_subcommand_is_a_usage_error(capsys):
    rc, out, err = run(capsys, "frobnicate", "S4")
    assert rc == 3


def test_class_count_bound_exits_two(capsys):
    rc, out, err = run(capsys, "chartab", "C127")
    assert rc == 2
    assert err.startswith("bound exceeded:")


def test_bound_flags_are_threaded_through(capsys):
    rc, out, err = run(capsys, "--class-bound", "20", "chartab", "C34")
    assert rc == 2
    rc, doc = run_doc(capsys, "--class-bound", "40", "chartab", "C34")
    assert rc == 0 and doc["order"] == 34


# ---------------------------------------------------------------------------
# claim registry commands


def test_reproduce_list(capsys):
    rc, doc = run_doc(capsys, "reproduce", "--list")
    assert rc == 0
    assert doc["kind"] == "claim_listing"
    assert len(doc["claims"]) == 14


def test_reproduce_without_selection_is_a_usage_error(capsys):
    rc, out, err = run(capsys, "reproduce")
    assert rc == 3
    assert "--claim" in err


def test_reproduce_unknown_claim_exits_one(capsys):
    rc, out, err = run(capsys, "reproduce", "--claim", "nope")
    assert rc == 1
    assert err.startswith("verification failure:")


TINY_CLAIM = {
    "schema_version": 1,
    "id": "tiny-picky-survey",
    "statement": "Every 2-element class of the symmetric group on four points is surveyed by all three methods.",
    "group": "S4",
    "prime": 2,
    "kind": "picky",
    "select": {"scope": "all"},
    "expect": {"methods_agree": True, "class_count": 3},
}


def seed_registry(root, *docs):
    os.makedirs(os.path.join(root, "claims"), exist_ok=True)
    for doc in docs:
        path = os.path.join(root, "claims", f"{doc['id']}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)


def test_reproduce_claim_pass_fail_skip_codes(capsys, tmp_path, monkeypatch):
    root = str(tmp_path)
    seed_registry(
        root,
        TINY_CLAIM,
        dict(TINY_CLAIM, id="tiny-wrong", expect={"class_count": 7}),
        {
            "schema_version": 1,
            "id": "tiny-wide",
            "statement": "The cyclic group of order 127 exceeds the class-count bound.",
            "group": "C127",
            "prime": 127,
            "kind": "conjecture",
            "select": {"scope": "all"},
            "expect": {"all_true": True},
        },
    )
    monkeypatch.setenv("SUBNORMAL_DATA_DIR", root)
    rc, doc = run_doc(capsys, "reproduce", "--claim", "tiny-picky-survey")
    assert rc == 0
    assert doc["counts"] == {"pass": 1, "fail": 0, "skipped": 0}
    rc, out, err = run(capsys, "reproduce", "--claim", "tiny-wrong")
    assert rc == 1
    rc, out, err = run(capsys, "reproduce", "--claim", "tiny-wide")
    assert rc == 2


def test_reproduce_all_with_out_dir(capsys, tmp_path, monkeypatch):
    root = str(tmp_path)
    seed_registry(root, TINY_CLAIM, dict(TINY_CLAIM, id="tiny-second"))
    monkeypatch.setenv("SUBNORMAL_DATA_DIR", root)
    out_dir = str(tmp_path / "results")
    rc, doc = run_doc(capsys, "--out-dir", out_dir, "reproduce", "--all")
    assert rc == 0
    assert doc["counts"]["pass"] == 2
    assert sorted(os.listdir(out_dir)) == [
        "tiny-picky-survey.result.json",
        "tiny-second.result.json",
    ]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "subnormal.cli", "group", "Q8"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 8
