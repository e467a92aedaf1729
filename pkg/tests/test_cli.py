import json

import numpy as np
import pytest

from tfdist import Grid, Signal
from tfdist import io as tfio
from tfdist.cli import main


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(*args):
    return main(list(args))


def test_gen_tone(workdir):
    assert run("gen", "tone", "--n", "512", "--dt", "0.015625", "--xi0", "3.0", "--out", "tone") == 0
    f = tfio.read_signal("tone")
    assert f.grid == Grid.centered(512, 0.015625)
    assert np.allclose(f.samples, np.exp(2j * np.pi * 3.0 * f.grid.times))


@pytest.mark.parametrize("args", [
    ["chirp", "--rate", "2", "--envelope-a", "1"],
    ["chirp", "--eta0", "1"],
    ["gaussian", "--a", "1+1j", "--b", "0.5j"],
    ["bandlimited", "--band", "-2", "2", "--seed", "7"],
])
def test_gen_kinds_are_deterministic(workdir, args):
    assert run("gen", *args, "--out", "one") == 0
    assert run("gen", *args, "--out", "two") == 0
    assert (workdir / "one.csv").read_bytes() == (workdir / "two.csv").read_bytes()


def test_gen_rejects_bad_grid(workdir, capsys):
    assert run("gen", "tone", "--xi0", "1", "--n", "7", "--out", "x") == 2
    assert "even" in capsys.readouterr().err
    assert not list(workdir.iterdir())


def test_long_flags_only():
    with pytest.raises(SystemExit):
        run("gen", "tone", "-x", "1", "--out", "x")


def test_wigner_of_tone_has_constant_argmax(workdir):
    run("gen", "tone", "--n", "128", "--dt", "0.0625", "--xi0", "2.0", "--out", "tone")
    assert run("wigner", "--in", "tone", "--out", "w", "--boundary", "periodized") == 0
    W = tfio.read_matrix("w")
    cols = np.argmax(W.values, axis=1)
    assert np.all(cols == cols[0])
    assert W.freq_axis[cols[0]] == 2.0


def test_stft_of_chirp_has_ridge(workdir):
    run("gen", "chirp", "--eta0", "1", "--n", "1024", "--dt", "0.015625", "--out", "c")
    assert run("stft", "--in", "c", "--out", "v") == 0
    V = tfio.read_matrix("v")
    rows = np.abs(V.time_axis) < 3
    peak = V.freq_axis[np.argmax(np.abs(V.values[rows]), axis=1)]
    assert np.max(np.abs(peak - 2 * V.time_axis[rows])) <= V.dfreq


def test_if_writes_tracks_and_summary(workdir, capsys):
    run("gen", "chirp", "--rate", "2", "--envelope-a", "1", "--out", "c")
    assert run("if", "--in", "c", "--out", "track") == 0
    summary = json.loads((workdir / "track.summary.json").read_text())
    assert summary["n_compared"] > 0 and summary["max_abs_err"] < 1e-6
    assert tfio.read_if_track("track.phase").estimator.startswith("phase_gradient")
    assert tfio.read_if_track("track.moment").estimator == "moment:zero"


def test_if_on_zero_signal(workdir, capsys):
    tfio.write_signal(Signal(Grid.centered(64, 0.1), np.zeros(64)), "z")
    assert run("if", "--in", "z", "--out", "t") == 0
    assert "warning" in capsys.readouterr().err
    assert json.loads((workdir / "t.summary.json").read_text())["n_compared"] == 0


def test_cone_report(workdir):
    run("gen", "chirp", "--eta0", "1", "--n", "8192", "--dt", "0.0078125", "--out", "c")
    assert run("cone", "--in", "c", "--out", "rep", "--slopes", "0.5", "1", "1.5", "3", "4") == 0
    rep = json.loads((workdir / "rep.json").read_text())
    assert abs(rep["critical_B_estimate"] - 2.0) <= 0.3
    assert rep["monotone"] and rep["thresholds"]["floor"] == 1e-12


def test_cone_gaussian_rapid(workdir):
    run("gen", "gaussian", "--n", "8192", "--dt", "0.0078125", "--out", "g")
    assert run("cone", "--in", "g", "--out", "rep", "--slopes", "0.5", "1", "2") == 0
    rep = json.loads((workdir / "rep.json").read_text())
    assert all(r["decay_class"] == "rapid" for r in rep["records"])
    assert rep["critical_B_estimate"] is None


def test_missing_input_leaves_no_output(workdir, capsys):
    assert run("cone", "--in", "absent", "--out", "rep", "--slopes", "1", "2", "3") != 0
    assert "missing input" in capsys.readouterr().err
    assert not list(workdir.iterdir())


def test_corrupt_input(workdir, capsys):
    run("gen", "tone", "--xi0", "1", "--n", "16", "--out", "t")
    (workdir / "t.csv").write_text("t,re,im\n1,2\n")
    assert run("wigner", "--in", "t", "--out", "w") == 2
    assert not (workdir / "w.csv").exists()


def test_verify_subset(workdir, capsys):
    assert run("verify", "--only", "marginals", "energy", "--out", "rep") == 0
    out = capsys.readouterr().out
    assert "marginals" in out and "energy" in out and "covariance" not in out
    rep = json.loads((workdir / "rep.json").read_text())
    assert [r["name"] for r in rep["records"]] == ["marginals", "energy"]
    assert set(rep["records"][0]) >= {"name", "anchor", "max_deviation", "tolerance", "pass"}


def test_verify_perturbed_fails(workdir):
    assert run("verify", "--only", "marginals", "--perturb", "1e-3") == 1


def test_verify_unknown_check():
    with pytest.raises(SystemExit):
        run("verify", "--only", "nonsense")
