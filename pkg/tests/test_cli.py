import json

import yblab.cli as cli
from yblab.errors import DynamicalPole


def run_cli(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_records(out):
    lines = [ln for ln in out.splitlines() if ln.strip()]
    # every line must parse on its own: the stream is valid even truncated
    return [json.loads(ln) for ln in lines]


def test_run_happy_path(capsys):
    code, out, _ = run_cli(["run", "--checks", "dybe", "--samples", "3",
                            "--seed", "42"], capsys)
    assert code == 0
    records = parse_records(out)
    assert records[0]["record"] == "model"
    samples = [r for r in records if r.get("check") == "dybe"]
    assert len(samples) == 3
    for k, rec in enumerate(samples):
        assert rec["sample_index"] == k
        assert rec["pass"] is True
        assert rec["residual"] <= rec["tolerance"] == 1e-9
        assert rec["seed"] == 42
        assert "wall_time_ms" in rec and "params" in rec


def test_run_hundred_samples_all_pass(capsys):
    code, out, _ = run_cli(["run", "--checks", "dybe", "--samples", "100",
                            "--seed", "42"], capsys)
    assert code == 0
    samples = [r for r in parse_records(out) if r.get("check") == "dybe"]
    assert len(samples) == 100
    assert all(r["pass"] for r in samples)


def test_run_deterministic_across_invocations(capsys):
    args = ["run", "--checks", "dybe,fx", "--samples", "3", "--seed", "7"]
    _, out1, _ = run_cli(args, capsys)
    _, out2, _ = run_cli(args, capsys)
    res1 = [r["residual"] for r in parse_records(out1) if "residual" in r]
    res2 = [r["residual"] for r in parse_records(out2) if "residual" in r]
    assert res1 == res2 and len(res1) == 6


def test_run_thread_count_does_not_change_values(capsys):
    base = ["run", "--checks", "dybe", "--samples", "4", "--seed", "11"]
    _, out1, _ = run_cli(base, capsys)
    _, out2, _ = run_cli(base + ["--threads", "3"], capsys)
    res1 = [r["residual"] for r in parse_records(out1) if "residual" in r]
    res2 = [r["residual"] for r in parse_records(out2) if "residual" in r]
    assert res1 == res2


def test_run_unknown_check_is_config_error(capsys):
    code, _, err = run_cli(["run", "--checks", "nonsense"], capsys)
    assert code == 2
    assert "unknown check" in err


def test_run_trig_only_check_on_elliptic_model(capsys):
    code, _, err = run_cli(["run", "--checks", "snad", "--samples", "1"], capsys)
    assert code == 2
    assert "trigonometric" in err


def test_run_mu_length_mismatch(tmp_path, capsys):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("model:\n  L: 3\n  mu: [[0.1, 0.0], [0.2, 0.0]]\n")
    code, _, err = run_cli(["run", "--config", str(cfg), "--checks", "dybe"], capsys)
    assert code == 2
    assert "model.mu" in err


def test_run_injected_zero_tolerance_fails(tmp_path, capsys):
    cfg = tmp_path / "strict.yaml"
    cfg.write_text("tolerances:\n  dybe: 0.0\n")
    code, out, _ = run_cli(["run", "--config", str(cfg), "--checks", "dybe",
                            "--samples", "2", "--seed", "1"], capsys)
    assert code == 1
    samples = [r for r in parse_records(out) if r.get("check") == "dybe"]
    assert all(r["pass"] is False for r in samples)


def test_run_error_records_do_not_abort(monkeypatch, capsys):
    original = cli.REGISTRY["dybe"]

    def explode(ctx, params, state):
        if params["_k"][0] == 0:
            raise DynamicalPole("synthetic pole")
        return 0.0

    def draw(ctx, rng, state, _counter=[0]):
        k = _counter[0]
        _counter[0] += 1
        return {"_k": (k,)}

    monkeypatch.setitem(
        cli.REGISTRY, "dybe",
        cli.CheckDef(original.tolerance, original.trig_only, None, draw, explode))
    code, out, _ = run_cli(["run", "--checks", "dybe", "--samples", "2",
                            "--seed", "1"], capsys)
    samples = [r for r in parse_records(out) if r.get("check") == "dybe"]
    assert code == 1
    assert len(samples) == 2  # the suite kept going after the error
    assert samples[0]["error"].startswith("DynamicalPole")
    assert samples[0]["pass"] is False and samples[0]["residual"] is None
    assert samples[1]["pass"] is True


def test_run_all_trig_checks_small(capsys):
    code, out, _ = run_cli(["run", "--trig", "--L", "2", "--samples", "2",
                            "--seed", "3",
                            "--checks", "snad,sn-contour-vs-bf,fzt,dia-realization"],
                           capsys)
    assert code == 0
    records = [r for r in parse_records(out) if "check" in r]
    assert len(records) == 8 and all(r["pass"] for r in records)


def test_run_report_to_file(tmp_path, capsys):
    out_path = tmp_path / "report.jsonl"
    code, _, _ = run_cli(["run", "--checks", "dybe", "--samples", "2",
                          "--seed", "5", "--out", str(out_path)], capsys)
    assert code == 0
    records = parse_records(out_path.read_text())
    assert sum(1 for r in records if r.get("check") == "dybe") == 2


def test_run_oracle_comparison_records_carry_both_values(capsys):
    code, out, _ = run_cli(["run", "--checks", "z-contour-vs-bf", "--L", "3",
                            "--samples", "2", "--seed", "2"], capsys)
    assert code == 0
    for rec in (r for r in parse_records(out) if "check" in r):
        assert "value_contour" in rec["params"]
        assert "value_bruteforce" in rec["params"]
        assert rec["residual"] <= 1e-8


def test_compute_z_both_methods_agree(capsys):
    code, out, _ = run_cli(["compute", "z", "--L", "2", "--seed", "9",
                            "--method", "both"], capsys)
    assert code == 0
    record = json.loads(out)
    assert record["rel_diff"] <= 1e-8


def test_compute_z_contour_single_site_closed_form(capsys):
    from yblab.special_fn import Regime, f_weight
    args = ["compute", "z", "--L", "1", "--mu", "0.1,0.05", "--gamma", "0.41,0.07",
            "--points", "0.3,-0.1", "--theta", "0.8,0.2", "--method", "contour"]
    code, out, _ = run_cli(args, capsys)
    assert code == 0
    record = json.loads(out)
    regime = Regime.elliptic(0.2)
    f = lambda z: f_weight(z, regime)
    g = 0.41 + 0.07j
    expected = f(g) * f((0.8 + 0.2j) + g - (0.3 - 0.1j) + (0.1 + 0.05j)) / f((0.8 + 0.2j) + g)
    got = complex(*record["contour"])
    assert abs(got - expected) < 1e-12 * abs(expected)


def test_compute_sn_empty_is_one(capsys):
    code, out, _ = run_cli(["compute", "sn", "--trig", "--L", "2", "--n", "0"],
                           capsys)
    assert code == 0
    record = json.loads(out)
    assert record["bruteforce"] == [1.0, 0.0]
    assert record["contour"] == [1.0, 0.0]


def test_compute_sn_rejects_elliptic(capsys):
    code, _, err = run_cli(["compute", "sn", "--L", "2", "--n", "1"], capsys)
    assert code == 2
    assert "trigonometric" in err
