import json
import subprocess
import sys
from fractions import Fraction

import pytest

from dlalg.cli import main
from dlalg.doubles import convention_fingerprint
from dlalg.polyring import VarRing, parse_expr


def run_json(capsys, *argv):
    code = main([*map(str, argv), "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_oracle_on_tangent_fixture(capsys, models_dir):
    code, doc = run_json(capsys, "oracle", models_dir / "tm2_tangent.model")
    assert code == 0
    assert doc["verdict"] == "pass" and doc["agreement"] is True
    assert [r["check"] for r in doc["reports"]] == ["matched", "bialgebroid"]
    assert doc["conventions"] == convention_fingerprint()
    assert doc["schema"] == 1


def test_oracle_text_output(capsys, models_dir):
    assert main(["oracle", str(models_dir / "vacant_flat.model")]) == 0
    out = capsys.readouterr().out
    assert "agreement: TRUE" in out and out.startswith("oracle")


def test_broken_pair_fails_with_witnesses(capsys, models_dir):
    code, doc = run_json(capsys, "check-matched", models_dir / "broken_m7.model")
    assert code == 1 and doc["verdict"] == "fail"
    fails = doc["reports"][0]["failures"]
    m7 = [f for f in fails if f["condition"] == "M7"]
    assert m7
    for f in fails:
        # the printed witness really is a nonzero value of the printed residual
        residual = parse_expr(f["residual"], VarRing(tuple(f["witness_point"])))
        point = [Fraction(v) for v in f["witness_point"].values()]
        assert residual(point) == Fraction(f["witness_value"]) != 0
        assert all(i >= 1 for i in f["indices"] if isinstance(i, int))


def test_oracle_on_broken_pair_still_agrees(capsys, models_dir):
    code, doc = run_json(capsys, "oracle", models_dir / "broken_m6.model")
    assert code == 1
    assert doc["agreement"] is True
    assert {r["verdict"] for r in doc["reports"]} == {"fail"}


def test_zero_algebroid_passes(capsys, models_dir):
    assert main(["check-algebroid", str(models_dir / "rank0.model")]) == 0


def test_json_output_is_deterministic(capsys, models_dir):
    argv = ["check-bialgebroid", str(models_dir / "broken_m1.model"), "--format", "json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_tangent_double_reports_basic_data(capsys, models_dir):
    code, doc = run_json(capsys, "tangent-double", models_dir / "tm2_tangent.model")
    assert code == 0
    assert set(doc["data"]) == {"basic_connection_TM", "basic_connection_A", "basic_curvature"}


def test_core_algebroid_command(capsys, models_dir):
    code, doc = run_json(capsys, "core-algebroid", models_dir / "tm1_tangent.model")
    assert code == 0
    assert [r["check"] for r in doc["reports"]][1:] == ["lie-algebroid", "poisson-linear"]
    assert doc["data"]["core"]["rank"] == 1


@pytest.mark.parametrize("argv", [
    ["oracle", "does-not-exist.model"],
    ["no-such-command", "x.model"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_unknown_target_exits_2(capsys, models_dir):
    assert main(["oracle", str(models_dir / "tm2_tangent.model"), "--target", "nope"]) == 2
    assert "nope" in capsys.readouterr().err


def test_invalid_model_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.model"
    bad.write_text("base_dim: 2\nalgebroids:\n  A:\n    rank: 1\n    anchor:\n      \"1,1\": \"x3\"\n")
    assert main(["check-algebroid", str(bad)]) == 2
    assert "line 6" in capsys.readouterr().err


def test_console_module_entry(models_dir):
    proc = subprocess.run([sys.executable, "-m", "dlalg.cli", "check-algebroid", str(models_dir / "rank0.model")],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
