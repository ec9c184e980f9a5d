import json

import pytest

from squarefree import cli, verify


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_corr_exact_density(capsys):
    doc = run_json(capsys, "corr", "exact", "--lags", "0", "--tol", "1e-10")
    assert abs(doc["value"] - 0.6079271018) <= 1e-10
    assert doc["method"] == "mirsky"
    assert doc["lags"] == [0]
    assert doc["tail_bound"] <= 1e-10


def test_corr_empirical(capsys):
    doc = run_json(capsys, "corr", "empirical", "--lags", "0,1,3", "--limit", "1000")
    assert doc["method"] == "empirical"
    assert doc["n"] == 1000
    assert 0 < doc["value"] < 1


def test_spectral_sign(capsys):
    doc = run_json(capsys, "spectral", "sign", "--phase1", "1/4", "--phase2", "1/9")
    assert doc["epsilon"] == 1
    assert doc["product"] == "e(13/36)"


def test_levelset_figure_csv(capsys):
    code, out, err = run_cli(capsys, "corr", "levelset-figure", "--kmax", "40")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,c2,d_class"
    assert len(lines) == 41
    k4 = lines[4].split(",")
    assert k4[0] == "4" and k4[2] == "2"
    k36 = lines[36].split(",")
    assert k36[2] == "6"


def test_sieve_csv(capsys):
    code, out, _ = run_cli(capsys, "sieve", "--start", "1", "--length", "4", "--format", "csv")
    assert code == 0
    assert out == "n,mu,mu2\n1,1,1\n2,-1,1\n3,-1,1\n4,0,0\n"


def test_sieve_raw_roundtrip(tmp_path, capsys):
    out_path = tmp_path / "block.bin"
    code, _, _ = run_cli(
        capsys, "sieve", "--start", "1", "--length", "10", "--format", "raw",
        "--out", str(out_path),
    )
    assert code == 0
    from squarefree.sieve import SieveBlock, sieve_squarefree

    assert SieveBlock.from_bytes(out_path.read_bytes()) == sieve_squarefree(1, 10)


def test_density_shorthand_and_bound(capsys):
    doc = run_json(capsys, "density", "--exclude", "2,3", "--limit", "10000", "--check-bound")
    assert doc["exclude"] == [2, 3]
    assert doc["bound_holds"] is True
    assert doc["constant"] == "13/3"


def test_group_match(capsys):
    doc = run_json(capsys, "group", "match", "--dmax", "6")
    assert doc["all_equal"] is True
    assert doc["total"] == 60


def test_group_verify_large_prime_character(capsys):
    doc = run_json(capsys, "group", "verify", "--phase", "1/529", "--steps", "50")
    assert doc["max_residual"] == "0/1"


def test_group_orbit_csv(capsys):
    code, out, _ = run_cli(capsys, "group", "orbit", "--primes", "2", "--steps", "5")
    lines = out.strip().splitlines()
    assert lines[0] == "step,g4,g9"
    assert lines[1] == "0,0,0"
    assert lines[-1] == "5,1,5"


def test_avg_y3_closed_form(capsys):
    doc = run_json(capsys, "avg", "y3", "--phase1", "1/4", "--phase2", "1/9")
    assert doc["product"] == "e(13/36)"
    assert doc["closed_form"] == pytest.approx((6 / 3.141592653589793**2) ** 3 / 576)


def test_spectral_atoms_out_file(tmp_path, capsys):
    out_path = tmp_path / "atoms.json"
    code, _, _ = run_cli(capsys, "spectral", "atoms", "--dmax", "2", "--out", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert len(doc["atoms"]) == 5
    assert doc["atoms"][0] == {"l": 0, "dsq": 1, "weight": doc["atoms"][0]["weight"]}


def test_domain_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "corr", "sigma", "--d", "12")
    assert code == 1
    assert "square-free" in err


def test_precision_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "corr", "exact", "--lags", "0", "--tol", "1e-30")
    assert code == 2
    assert "precision" in err


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["corr", "exact", "--lags", "0", "--frobnicate"])
    assert info.value.code == 1


def test_not_in_lambda_is_domain_error(capsys):
    code, _, err = run_cli(capsys, "avg", "y2", "--phase", "1/8")
    assert code == 1
    assert "cube" in err


def test_byte_identical_reruns(capsys):
    first = run_cli(capsys, "corr", "exact", "--lags", "0,4,6")
    second = run_cli(capsys, "corr", "exact", "--lags", "0,4,6")
    assert first == second


def test_output_independent_of_thread_count(capsys):
    one = run_cli(capsys, "corr", "empirical", "--lags", "0,2", "--limit", "100000",
                  "--threads", "1")
    four = run_cli(capsys, "corr", "empirical", "--lags", "0,2", "--limit", "100000",
                   "--threads", "4")
    assert one == four


def test_env_tolerance_override(capsys, monkeypatch):
    monkeypatch.setenv(cli.ENV_TOLERANCE, "1e-30")
    code, _, err = run_cli(capsys, "corr", "exact", "--lags", "0")
    assert code == 2
    monkeypatch.setenv(cli.ENV_TOLERANCE, "not-a-number")
    code, _, err = run_cli(capsys, "corr", "exact", "--lags", "0")
    assert code == 1


def test_verify_quick_subset(capsys):
    # a cheap slice of the quick profile, through the CLI result printer
    results = [verify.check_negative_control(), verify.check_level_set_table()]
    assert all(r.ok for r in results)


def test_verify_detects_broken_sigma(monkeypatch, capsys):
    # mutation control: breaking sigma_d must fail the cross-method check
    # and drive the verify command to a nonzero exit
    from squarefree import correlations

    real = correlations.sigma_d

    def broken(d, policy=None):
        value = real(d) if policy is None else real(d, policy)
        return value * (1.001 if getattr(d, "value", d) > 1 else 1.0)

    monkeypatch.setattr(correlations, "sigma_d", broken)
    result = verify.check_cross_method_c2(k_max=100)
    assert not result.ok
    code, out, err = run_cli(capsys, "verify", "--profile", "quick")
    assert code != 0
    assert "[FAIL] cross-method pair correlation" in out


def test_threads_flag_validated(capsys):
    code, _, err = run_cli(capsys, "corr", "exact", "--lags", "0", "--threads", "0")
    assert code == 1
