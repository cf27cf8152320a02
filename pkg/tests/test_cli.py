"""Command line interface: outputs, exit codes, schema conformance."""

import json
import shutil

import jsonschema
import pytest

from spmcount import BinaryMatrix, SPermutationMatrix, is_s_permutation
from spmcount.cli import GUARD_EXIT, RESULT_SCHEMA, USAGE_EXIT, VERIFY_EXIT, run
from spmcount.golden import _DEFAULT_PATH


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_xi_text(capsys):
    code, out, _ = invoke(capsys, "compute", "--n", "2", "--quantity", "xi")
    assert code == 0
    assert out.strip() == "xi(2) = 7"


def test_compute_p_digits(capsys):
    code, out, _ = invoke(
        capsys, "compute", "--n", "3", "--quantity", "p", "--digits", "17"
    )
    assert code == 0
    assert "0.38521058836137606" in out
    assert "17972/46655" in out


def test_compute_q_layer(capsys):
    code, out, _ = invoke(capsys, "compute", "--n", "2", "--quantity", "q", "--k", "2")
    assert code == 0
    assert out.strip() == "q(2,2) = 10"


def test_compute_sigma(capsys):
    code, out, _ = invoke(capsys, "compute", "--n", "1", "--quantity", "sigma")
    assert code == 0
    assert out.strip() == "sigma(1) = 1"


def test_compute_json_schema(capsys):
    for argv in (
        ["compute", "--n", "2", "--quantity", "xi", "--format", "json"],
        ["compute", "--n", "2", "--quantity", "eta", "--format", "json"],
        ["compute", "--n", "2", "--quantity", "p", "--format", "json"],
        ["compute", "--n", "2", "--quantity", "q", "--k", "3", "--format", "json"],
        ["compute", "--n", "3", "--quantity", "sigma", "--format", "json"],
    ):
        code = run(argv)
        out = capsys.readouterr().out
        assert code == 0
        record = json.loads(out)
        jsonschema.validate(record, RESULT_SCHEMA)
    assert record["value"] == "46656"


def test_compute_json_exact_strings(capsys):
    code, out, _ = invoke(
        capsys, "compute", "--n", "4", "--quantity", "eta", "--format", "json"
    )
    assert code == 0
    record = json.loads(out)
    assert record["value"] == "2294248126968596791296"
    assert isinstance(record["value"], str)


def test_workers_flag_and_env(capsys, monkeypatch):
    code, out, _ = invoke(
        capsys, "compute", "--n", "3", "--quantity", "xi", "--workers", "2",
        "--format", "json",
    )
    assert code == 0
    record = json.loads(out)
    assert record["workers"] == 2
    assert record["value"] == "17972"
    monkeypatch.setenv("SPMCOUNT_WORKERS", "2")
    code, out, _ = invoke(capsys, "compute", "--n", "2", "--quantity", "xi", "--format", "json")
    assert code == 0
    assert json.loads(out)["workers"] == 2


def test_usage_errors(capsys):
    code, _, err = invoke(capsys, "compute", "--n", "2", "--quantity", "q")
    assert code == USAGE_EXIT
    assert "--k" in err
    code, _, _ = invoke(capsys, "compute", "--n", "2", "--quantity", "bogus")
    assert code == USAGE_EXIT
    code, _, _ = invoke(capsys, "compute", "--n", "1", "--quantity", "xi")
    assert code == USAGE_EXIT
    code, _, _ = invoke(capsys, "bogus-command")
    assert code == USAGE_EXIT


def test_guard_exit(capsys):
    code, _, err = invoke(capsys, "compute", "--n", "7", "--quantity", "xi")
    assert code == GUARD_EXIT
    assert "guard" in err
    code, _, _ = invoke(capsys, "table", "--max-n", "7")
    assert code == GUARD_EXIT


def test_table_text_matches_golden(capsys):
    code, out, _ = invoke(capsys, "table", "--max-n", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert lines[1].split() == ["2", "7", "56", "0.4666666666666667"]
    assert lines[2].split()[:3] == ["3", "17972", "419250816"]


def test_table_json_schema(capsys):
    code, out, _ = invoke(capsys, "table", "--max-n", "3", "--format", "json")
    assert code == 0
    records = json.loads(out)
    assert len(records) == 6
    for record in records:
        jsonschema.validate(record, RESULT_SCHEMA)
    assert records[0]["quantity"] == "xi"
    assert records[0]["value"] == "7"


def test_verify_passes(capsys):
    code, out, _ = invoke(capsys, "verify", "--max-n", "3")
    assert code == 0
    assert "FAIL" not in out
    assert "PASS golden:xi:n=2" in out


def test_verify_tampered_golden(capsys, tmp_path):
    tampered = tmp_path / "golden.json"
    shutil.copy(_DEFAULT_PATH, tampered)
    table = json.loads(tampered.read_text())
    table["eta"]["2"] = "57"
    tampered.write_text(json.dumps(table))
    code, out, err = invoke(capsys, "verify", "--max-n", "2", "--golden", str(tampered))
    assert code == VERIFY_EXIT
    assert "FAIL golden:eta:n=2" in out
    assert "first failure: golden:eta:n=2" in err


def test_sample_deterministic_and_valid(capsys):
    args = ("sample", "--n", "2", "--count", "3", "--seed", "9")
    code, first, _ = invoke(capsys, *args)
    assert code == 0
    code, second, _ = invoke(capsys, *args)
    assert first == second
    blocks = first.strip().split("\n\n")
    assert len(blocks) == 3
    for block in blocks:
        dense = BinaryMatrix.from_text(block)
        assert is_s_permutation(dense)
        SPermutationMatrix.from_binary(dense)


def test_sample_check_disjoint(capsys):
    code, out, _ = invoke(
        capsys, "sample", "--n", "2", "--count", "40", "--seed", "1", "--check-disjoint"
    )
    assert code == 0
    assert "disjoint fraction: " in out
    hits, kept = out.strip().splitlines()[-1].split()[2].split("/")
    assert 0 < int(kept) <= 20
    assert 0 <= int(hits) <= int(kept)


def test_oracle_subcommand(capsys):
    code, out, _ = invoke(capsys, "oracle", "--n", "2", "--quantity", "xi")
    assert code == 0
    assert out.strip() == "brute xi(2) = 7"
    code, out, _ = invoke(capsys, "oracle", "--n", "2", "--quantity", "q", "--k", "2")
    assert code == 0
    assert out.strip() == "brute q(2,2) = 10"
    code, out, _ = invoke(capsys, "oracle", "--n", "2", "--quantity", "histogram")
    assert code == 0
    assert out.split() == ["0", "7", "1", "4", "2", "4", "4", "1"]
    code, _, _ = invoke(capsys, "oracle", "--n", "4", "--quantity", "xi")
    assert code == GUARD_EXIT


def test_oracle_family(capsys):
    code, out, _ = invoke(capsys, "oracle", "--n", "2", "--quantity", "family")
    assert code == 0
    blocks = out.strip().split("\n\n")
    assert len(blocks) == 4
    for block in blocks:
        assert is_s_permutation(BinaryMatrix.from_text(block))


def test_compute_checkpoint_flag(capsys, tmp_path):
    path = tmp_path / "cursor.json"
    args = (
        "compute", "--n", "3", "--quantity", "xi",
        "--checkpoint", str(path), "--format", "json",
    )
    code, out, _ = invoke(capsys, *args)
    assert code == 0
    assert json.loads(out)["value"] == "17972"
    saved = json.loads(path.read_text())
    assert saved["complete"] is True
    code, out, _ = invoke(capsys, *args)
    assert code == 0
    assert json.loads(out)["value"] == "17972"
    code, _, err = invoke(
        capsys, "compute", "--n", "4", "--quantity", "xi", "--checkpoint", str(path)
    )
    assert code == USAGE_EXIT
    assert "checkpoint" in err
