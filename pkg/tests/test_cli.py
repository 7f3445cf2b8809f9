import json
import math
import struct

import numpy as np
import pytest

from spherewave import cli
from spherewave.autocorr import WaveSpec, convergence_study, eta_closed, radial_profile


def bits(x: float) -> bytes:
    return struct.pack("<d", x)


def run_cli(args, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTDIR_ENV, str(tmp_path))
    return cli.main(args)


# ---------------------------------------------------------------------------
# table commands
# ---------------------------------------------------------------------------


def test_autocorr_csv_columns_and_origin_row(tmp_path, monkeypatch):
    rc = run_cli(
        ["autocorr", "--d", "2", "--k", "1", "--s-max", "5", "--s-count", "101"],
        tmp_path,
        monkeypatch,
    )
    assert rc == 0
    cols = cli.read_csv_columns(tmp_path / "autocorr.csv")
    assert list(cols) == ["s", "eta_closed"]
    assert len(cols["s"]) == 101
    assert cols["s"][0] == 0.0 and cols["eta_closed"][0] == 1.0


def test_autocorr_csv_roundtrips_bit_exactly(tmp_path, monkeypatch):
    rc = run_cli(
        ["autocorr", "--d", "3", "--k", "0.7", "--s-max", "4", "--s-count", "41",
         "--R", "30"],
        tmp_path,
        monkeypatch,
    )
    assert rc == 0
    cols = cli.read_csv_columns(tmp_path / "autocorr.csv")
    assert list(cols) == ["s", "eta_closed", "eta_R_re", "eta_R_im"]
    prof = radial_profile(WaveSpec(3, 0.7), np.linspace(0, 4, 41), R=30.0)
    for got, want in zip(cols["eta_closed"], prof.eta_closed):
        assert bits(got) == bits(float(want))
    for got, want in zip(cols["eta_R_re"], prof.eta_numeric.real):
        assert bits(got) == bits(float(want))
    for got, want in zip(cols["eta_R_im"], prof.eta_numeric.imag):
        assert bits(got) == bits(float(want))


def test_converge_json_schema_and_decreasing_error(tmp_path, monkeypatch):
    rc = run_cli(
        ["converge", "--d", "2", "--k", "1", "--grid", "0.5,1,2", "--R", "50,200"],
        tmp_path,
        monkeypatch,
    )
    assert rc == 0
    payload = cli.read_json(tmp_path / "converge.json")
    assert set(payload) == {"command", "config", "results", "pass"}
    res = payload["results"]
    assert res["max_abs_error"][1] < res["max_abs_error"][0]
    rep = convergence_study(WaveSpec(2, 1.0), [0.5, 1.0, 2.0], [50.0, 200.0])
    for got, want in zip(res["max_abs_error"], rep.max_abs_error):
        assert bits(got) == bits(want)
    for got, want in zip(res["decay_ratios"], rep.decay_ratios):
        assert bits(got) == bits(want)


def test_bessel_table(tmp_path, monkeypatch):
    rc = run_cli(
        ["bessel", "--d", "2", "--s-min", "0", "--s-max", "10", "--s-count", "11"],
        tmp_path,
        monkeypatch,
    )
    assert rc == 0
    cols = cli.read_csv_columns(tmp_path / "bessel.csv")
    assert cols["bessel_j"][0] == 1.0  # J_0(0)
    assert cols["bessel_j"] == cols["bessel_normalized"]  # order 0


def test_sphere_ft_table(tmp_path, monkeypatch):
    rc = run_cli(
        ["sphere-ft", "--d", "2", "--r", "1", "--s-count", "3", "--s-max", "1",
         "--n-samples", "1000", "--seed", "7"],
        tmp_path,
        monkeypatch,
    )
    assert rc == 0
    cols = cli.read_csv_columns(tmp_path / "sphere_ft.csv")
    assert list(cols) == ["x_norm", "ft_closed", "mc_re", "mc_im", "stderr"]
    assert cols["mc_re"][0] == 1.0 and cols["mc_im"][0] == 0.0 and cols["stderr"][0] == 0.0


def test_taylor_table(tmp_path, monkeypatch):
    rc = run_cli(["taylor", "--d", "2", "--m-max", "6"], tmp_path, monkeypatch)
    assert rc == 0
    cols = cli.read_csv_columns(tmp_path / "taylor.csv")
    assert cols["m"] == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
    assert cols["coefficient"][2] == pytest.approx(-math.pi**2, rel=1e-14)
    assert cols["h_deriv"][1] == 0.0


def test_json_format_for_table_command(tmp_path, monkeypatch):
    rc = run_cli(
        ["autocorr", "--d", "2", "--k", "1", "--s-count", "5", "--format", "json"],
        tmp_path,
        monkeypatch,
    )
    assert rc == 0
    payload = cli.read_json(tmp_path / "autocorr.json")
    assert payload["pass"] is True
    assert payload["config"]["s_count"] == 5
    want = [eta_closed(WaveSpec(2, 1.0), float(s)) for s in np.linspace(0, 5, 5)]
    assert payload["results"]["eta_closed"] == want


# ---------------------------------------------------------------------------
# determinism / idempotence
# ---------------------------------------------------------------------------


def test_rerun_overwrites_byte_identically(tmp_path, monkeypatch):
    args = ["sphere-ft", "--d", "3", "--r", "1", "--s-count", "4", "--n-samples",
            "2000", "--seed", "11"]
    assert run_cli(args, tmp_path, monkeypatch) == 0
    first = (tmp_path / "sphere_ft.csv").read_bytes()
    assert run_cli(args, tmp_path, monkeypatch) == 0
    assert (tmp_path / "sphere_ft.csv").read_bytes() == first


def test_seventeen_significant_digits_roundtrip(tmp_path, monkeypatch):
    run_cli(["autocorr", "--d", "2", "--k", "1.37", "--s-max", "3", "--s-count", "64"],
            tmp_path, monkeypatch)
    cols = cli.read_csv_columns(tmp_path / "autocorr.csv")
    for s, v in zip(cols["s"], cols["eta_closed"]):
        assert bits(v) == bits(eta_closed(WaveSpec(2, 1.37), s))


# ---------------------------------------------------------------------------
# exit codes and validation
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "args, field",
    [
        (["autocorr", "--d", "0"], "d"),
        (["autocorr", "--d", "13"], "d"),
        (["autocorr", "--k", "-1"], "k"),
        (["autocorr", "--s-count", "1"], "s-count"),
        (["autocorr", "--s-min", "5", "--s-max", "1"], "s-min"),
        (["converge", "--grid", "1", "--R", "50"], "R"),
        (["converge", "--grid", "1", "--R", "50,40"], "R"),
        (["converge", "--grid=-1,2", "--R", "10,20"], "grid"),
        (["sphere-ft", "--n-samples", "10"], "n-samples"),
        (["taylor", "--m-max", "7"], "m-max"),
        (["bessel", "--d", "1"], "s-min"),
    ],
)
def test_invalid_config_exits_2_and_names_field(args, field, tmp_path, monkeypatch, capsys):
    rc = run_cli(args, tmp_path, monkeypatch)
    assert rc == 2
    assert f"invalid {field}" in capsys.readouterr().err


def test_unknown_flag_exits_2(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTDIR_ENV, str(tmp_path))
    with pytest.raises(SystemExit) as exc:
        cli.main(["autocorr", "--bogus", "1"])
    assert exc.value.code == 2


def test_unwritable_output_exits_4(tmp_path, monkeypatch, capsys):
    rc = run_cli(
        ["taylor", "--d", "2", "--out", str(tmp_path / "missing" / "t.csv")],
        tmp_path,
        monkeypatch,
    )
    assert rc == 4
    assert "cannot write" in capsys.readouterr().err


def test_failed_verification_exits_3(tmp_path, monkeypatch, capsys):
    import spherewave.cli as cli_mod

    def fake_verify_all(seed):
        return {
            "suites": {
                "demo": {
                    "passed": False,
                    "observed": "1.0",
                    "required": "< 0.5",
                    "details": {},
                }
            },
            "pass": False,
            "seed": seed,
        }

    monkeypatch.setattr(cli_mod, "verify_all", fake_verify_all)
    rc = run_cli(["verify-all", "--seed", "1"], tmp_path, monkeypatch)
    assert rc == 3
    err = capsys.readouterr().err
    assert "observed 1.0" in err and "required < 0.5" in err


def test_output_dir_env_var(tmp_path, monkeypatch):
    sub = tmp_path / "artifacts"
    sub.mkdir()
    monkeypatch.setenv(cli.OUTDIR_ENV, str(sub))
    assert cli.main(["taylor", "--d", "3"]) == 0
    assert (sub / "taylor.csv").exists()
