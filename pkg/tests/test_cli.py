import json

import numpy as np
import pytest

from quasispec.cli import main
from quasispec.io import read_csv


def run(tmp_path, *args):
    out = tmp_path / "out"
    return main([*args, "--out", str(out)]), out


def test_unknown_flag_exits_with_usage_code(tmp_path, capsys):
    code = main(["spectrum1d", "--bogus", "1"])
    assert code == 2


def test_unknown_command_exits_with_usage_code():
    assert main(["noexist"]) == 2


def test_spectrum1d_free_matches_analytic(tmp_path):
    code, out = run(tmp_path, "spectrum1d", "--lambda", "0", "--n", "100")
    assert code == 0
    _, rows = read_csv(out / "spectrum1d.csv")
    ref = np.sort(2 * np.cos(np.arange(1, 101) * np.pi / 101))
    assert np.max(np.abs(rows[:, 0] - ref)) < 1e-9
    manifest = json.loads((out / "spectrum1d.manifest.json").read_text())
    assert manifest["command"] == "spectrum1d"
    assert manifest["outputs"][0]["file"] == "spectrum1d.csv"


def test_spectrum1d_deterministic_bytes(tmp_path):
    _, out1 = run(tmp_path / "a", "spectrum1d", "--lambda", "1", "--n", "50")
    _, out2 = run(tmp_path / "b", "spectrum1d", "--lambda", "1", "--n", "50")
    assert (out1 / "spectrum1d.csv").read_bytes() == (out2 / "spectrum1d.csv").read_bytes()


def test_spectrum1d_cache_hit(tmp_path):
    cache = tmp_path / "cache"
    a = main(["spectrum1d", "--lambda", "1", "--n", "40",
              "--out", str(tmp_path / "o1"), "--cache", str(cache)])
    b = main(["spectrum1d", "--lambda", "1", "--n", "40",
              "--out", str(tmp_path / "o2"), "--cache", str(cache)])
    assert a == b == 0
    assert len(list(cache.glob("*.npy"))) == 1
    f1 = (tmp_path / "o1" / "spectrum1d.csv").read_bytes()
    f2 = (tmp_path / "o2" / "spectrum1d.csv").read_bytes()
    assert f1 == f2


def test_ids_endpoints(tmp_path):
    code, out = run(tmp_path, "ids", "--lambda", "0", "--n", "100")
    assert code == 0
    _, rows = read_csv(out / "ids.csv")
    assert rows[0, 1] == 0.0
    assert rows[-1, 1] == 1.0
    assert np.all(np.diff(rows[:, 1]) >= 0)


def test_tracemap_free_cover(tmp_path):
    code, out = run(tmp_path, "tracemap", "--lambda", "0", "--depth", "12",
                    "--max-iter", "200")
    assert code == 0
    _, rows = read_csv(out / "cover.csv")
    total = np.sum(rows[:, 1] - rows[:, 0])
    assert abs(total - 4.0) < 0.2
    manifest = json.loads((out / "cover.manifest.json").read_text())
    assert float(manifest["total_length"]) == pytest.approx(total)


def test_tracemap_coupling_trend(tmp_path):
    lens = []
    for i, lam in enumerate(("0", "4")):
        code, out = run(tmp_path / str(i), "tracemap", "--lambda", lam,
                        "--depth", "12", "--max-iter", "16")
        assert code == 0
        _, rows = read_csv(out / "cover.csv")
        lens.append(np.sum(rows[:, 1] - rows[:, 0]))
    assert lens[1] < lens[0]


def test_dos2d_identity_against_sums(tmp_path):
    code, out = run(tmp_path, "dos2d", "--lambda", "1", "--lambda2", "2", "--n", "50")
    assert code == 0
    _, atoms = read_csv(out / "dos2d.csv")
    from quasispec.dos import AtomicMeasure, empirical_measure, sup_cdf_distance
    from quasispec.eigensolve import eigenvalues_bisect, fibonacci_tridiag
    from quasispec.model import ModelParams
    from quasispec.separable2d import eigs2d_from_sums
    conv = AtomicMeasure(atoms[:, 0], atoms[:, 1])
    s1 = eigenvalues_bisect(fibonacci_tridiag(ModelParams(1.0, n_sites=50)))
    s2 = eigenvalues_bisect(fibonacci_tridiag(ModelParams(2.0, n_sites=50)))
    direct = empirical_measure(eigs2d_from_sums(s1, s2))
    assert sup_cdf_distance(conv, direct) <= 1e-12
    manifest = json.loads((out / "dos2d.manifest.json").read_text())
    assert manifest["l2_flag"] in ("stable", "growing")


def test_sumset2d_small_coupling_no_gaps(tmp_path):
    code, out = run(tmp_path, "sumset2d", "--lambda", "0.3", "--depth", "12",
                    "--max-iter", "20")
    assert code == 0
    _, gaps = read_csv(out / "sumset_gaps.csv")
    assert gaps.size == 0


def test_verify_tensor_command(tmp_path):
    code, out = run(tmp_path, "verify-tensor", "--lambda", "1", "--lambda2", "4",
                    "--n", "6")
    assert code == 0
    manifest = json.loads((out / "verify_tensor.manifest.json").read_text())
    assert float(manifest["max_abs_difference"]) < 1e-8


def test_regularity_replay_identical(tmp_path):
    _, out1 = run(tmp_path / "a", "regularity", "--depth", "8", "--samples", "100")
    _, out2 = run(tmp_path / "b", "regularity", "--depth", "8", "--samples", "100")
    r1 = (out1 / "regularity_report.json").read_bytes()
    r2 = (out2 / "regularity_report.json").read_bytes()
    assert r1 == r2
    report = json.loads(r1)
    assert report["verdict_1"] and report["verdict_2"]
    assert report["gamma_hat"] == 1.0


def test_lyapunov_command(tmp_path):
    code, out = run(tmp_path, "lyapunov", "--lambdas", "0.5", "--e-samples", "6",
                    "--m", "24")
    assert code == 0
    _, rows = read_csv(out / "lyapunov.csv")
    assert rows[0, 1] > 0


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("lambda = 0\nn = 64   # box size\n")
    code, out = run(tmp_path, "spectrum1d", "--config", str(cfg))
    assert code == 0
    _, rows = read_csv(out / "spectrum1d.csv")
    assert rows.shape[0] == 64
    # explicit flag beats the config value
    code, out2 = run(tmp_path / "o2", "spectrum1d", "--config", str(cfg), "--n", "32")
    _, rows = read_csv(out2 / "spectrum1d.csv")
    assert rows.shape[0] == 32


def test_numeric_failure_exit_code(tmp_path):
    # empty covers cannot be summed
    code = main(["sumset2d", "--lambda", "4", "--depth", "6", "--max-iter", "60",
                 "--out", str(tmp_path / "x")])
    assert code == 3


def test_parameter_cap_is_usage_error(tmp_path):
    code = main(["verify-tensor", "--n", "14", "--out", str(tmp_path / "x")])
    assert code == 2
    code = main(["spectrum1d", "--n", "200000", "--out", str(tmp_path / "y")])
    assert code == 2


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "spectrum1d" in capsys.readouterr().out


def test_dos2d_free_case_is_unimodal_on_support(tmp_path):
    code, out = run(tmp_path, "dos2d", "--lambda", "0", "--lambda2", "0",
                    "--n", "200")
    assert code == 0
    files = sorted(out.glob("dos2d_kde_h*.csv"))
    _, rows = read_csv(files[-1])
    e, f = rows[:, 0], rows[:, 1]
    # 2D free spectrum is [-4, 4]; density peaks centrally and vanishes outside
    assert f[np.argmin(np.abs(e))] > f[np.argmin(np.abs(e - 3.0))]
    assert np.all(f[(e < -4.1) | (e > 4.1)] < 1e-9)
