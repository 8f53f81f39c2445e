"""Command-line driver: commands, exit codes, report schema round-trip."""

import json

import pytest

from qweyl.cli import Report, main, run, verify_ambiskew
from qweyl.presentation import build_spec
from qweyl.reporting import all_ok


def _write(tmp_path, payload, name="cfg.json"):
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return str(path)


def test_bound_command_generic_p1():
    rep = run({"n": 3, "kind": "generic-p1"}, "bound")
    assert rep.ok
    assert rep.values["d"] == 3 and rep.values["bound"] == 3
    assert rep.values["gkdim_algebra"] == 6


def test_dim_command_symplectic_rational():
    rep = run({"n": 2, "kind": "symplectic", "q": "2"}, "dim")
    assert rep.ok and rep.values["d"] == 2
    assert rep.spec == {"n": 2, "kind": "symplectic", "q": "2"}


def test_nf_and_mul_commands():
    rep = run({"n": 2, "kind": "generic"}, "nf", ["x1 y1"])
    assert rep.values["normal_form"] == "(q1)/(1)·y1 x1"
    rep = run({"n": 2, "kind": "generic"}, "mul", ["x1", "y1"])
    assert rep.values["product"] == "(q1)/(1)·y1 x1"


def test_growth_command():
    rep = run({"n": 1, "kind": "generic"}, "growth", ["4"])
    assert rep.values["growth_counts"] == [1, 3, 6, 10, 15]
    assert rep.values["growth_exponent"] == pytest.approx(2.0)


def test_skew_command_forms():
    rep = run({"n": 2, "kind": "generic"}, "skew", ["2", "3"])
    assert rep.ok and len(rep.checks) == 2
    rep = run({"n": 2, "kind": "generic"}, "skew", ["1", "4", "k1_base"])
    assert rep.ok and len(rep.checks) == 1


def test_verify_command_all_pass():
    rep = run({"n": 2, "kind": "symplectic"}, "verify")
    assert rep.ok
    names = {c["name"] for c in rep.checks}
    assert any(n.startswith("theta[") for n in names)
    assert any(n.startswith("ambiskew-") for n in names)
    assert rep.checks == sorted(rep.checks, key=lambda c: c["name"])


def test_verify_ambiskew_presets():
    for kind in ("generic", "euclidean"):
        spec = build_spec(3, kind)
        for m in (1, 2):
            assert all_ok(verify_ambiskew(spec, m))


def test_report_round_trip():
    rep = run({"n": 1, "kind": "heisenberg"}, "report")
    assert rep.ok
    recovered = Report.from_json(json.loads(json.dumps(rep.to_json())))
    assert recovered == rep


def test_report_skips_growth_for_large_n():
    rep = run({"n": 3, "kind": "generic"}, "report")
    assert rep.ok
    skipped = [c for c in rep.checks if c["status"] == "skipped"]
    assert any(c["name"] == "growth" for c in skipped)


def test_main_exit_codes(tmp_path, capsys):
    ok_cfg = _write(tmp_path, {"n": 3, "kind": "generic-p1"})
    assert main(["--config", ok_cfg, "--command", "bound"]) == 0
    out = capsys.readouterr().out
    assert "bound: 3" in out and "status: ok" in out

    assert main(["--config", ok_cfg, "--command", "report", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert {"spec", "checks", "values", "elapsed_ms"} <= set(data)

    bad_n = _write(tmp_path, {"n": 0, "kind": "generic"}, "bad_n.json")
    assert main(["--config", bad_n, "--command", "dim"]) == 2
    assert "field 'n'" in capsys.readouterr().err

    missing_kind = _write(tmp_path, {"n": 2}, "nokind.json")
    assert main(["--config", missing_kind, "--command", "dim"]) == 2
    assert "field 'kind'" in capsys.readouterr().err

    broken = _write(tmp_path, '{"n": 2,', "broken.json")
    assert main(["--config", broken, "--command", "dim"]) == 2
    assert "not valid JSON" in capsys.readouterr().err

    assert main(["--config", str(tmp_path / "absent.json"), "--command", "dim"]) == 2
    capsys.readouterr()

    assert main(["--config", ok_cfg, "--command", "nf"]) == 2  # missing word arg
    assert "usage error" in capsys.readouterr().err

    assert main(["--config", ok_cfg, "--command", "growth", "--args", "99"]) == 1
    capsys.readouterr()


def test_main_rejects_unknown_command(tmp_path, capsys):
    cfg = _write(tmp_path, {"n": 1, "kind": "generic"})
    assert main(["--config", cfg, "--command", "bogus"]) == 2
    capsys.readouterr()


def test_custom_spec_through_cli(tmp_path, capsys):
    cfg = _write(
        tmp_path,
        {
            "n": 2,
            "kind": "custom",
            "custom": {
                "symbols": ["q", "r"],
                "q": ["q^2", "q^2"],
                "p": ["1", "r"],
                "gamma": [["1", "r^-1"], ["r", "1"]],
            },
        },
    )
    assert main(["--config", cfg, "--command", "verify"]) == 0
    capsys.readouterr()
    bad = _write(
        tmp_path,
        {
            "n": 2,
            "kind": "custom",
            "custom": {
                "symbols": ["q"],
                "q": ["q", "q"],
                "p": ["q", "1"],
                "gamma": [["1", "1"], ["1", "1"]],
            },
        },
        "bad_custom.json",
    )
    assert main(["--config", bad, "--command", "verify"]) == 2
    assert "field 'p[0]'" in capsys.readouterr().err


def test_skew_usage_errors_exit_2(tmp_path, capsys):
    cfg = _write(tmp_path, {"n": 2, "kind": "generic"})
    assert main(["--config", cfg, "--command", "skew", "--args", "1", "2", "xk_y"]) == 2
    assert "usage error" in capsys.readouterr().err
    assert main(["--config", cfg, "--command", "skew", "--args", "one", "2"]) == 2
    capsys.readouterr()


def test_report_is_deterministic():
    a = run({"n": 2, "kind": "euclidean"}, "report")
    b = run({"n": 2, "kind": "euclidean"}, "report")
    assert a.checks == b.checks
    assert a.values == b.values


def test_report_passes_on_every_builtin_kind():
    kinds = ("generic", "generic-p1", "generic-q1", "symplectic", "euclidean",
             "heisenberg", "graded-weyl")
    for kind in kinds:
        for n in (1, 2, 3):
            rep = run({"n": n, "kind": kind}, "report")
            assert rep.ok, (kind, n, [c for c in rep.checks if c["status"] == "fail"])


def test_report_text_rendering():
    rep = run({"n": 1, "kind": "generic"}, "dim")
    text = rep.render_text()
    assert "status: ok" in text
    assert "dimension-witness" in text
