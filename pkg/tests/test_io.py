import json

import numpy as np
import pytest

from tfdist import (FormatError, GaussianParams, Grid, IFTrack, cross_wigner, gen_bandlimited,
                    gen_chirp, if_phase_gradient, stft, gaussian_window, wigner)
from tfdist import io as tfio


@pytest.fixture
def chirp():
    return gen_chirp(Grid.centered(128, 1 / 16), 0.75, GaussianParams(0.5, 0.1j))


def test_signal_round_trip_is_exact(tmp_path, chirp):
    tfio.write_signal(chirp, tmp_path / "sig")
    assert tfio.read_signal(tmp_path / "sig") == chirp
    meta = json.loads((tmp_path / "sig.json").read_text())
    assert meta == {"t0": -4.0, "dt": 0.0625, "n": 128, "unit_time": "s"}
    assert (tmp_path / "sig.csv").read_text().startswith("t,re,im\n-4.0,")


def test_writes_are_deterministic(tmp_path):
    f = gen_bandlimited(Grid.centered(64, 0.1), (-1, 1), 7)
    tfio.write_signal(f, tmp_path / "a")
    tfio.write_signal(f, tmp_path / "b")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_no_temp_files_left(tmp_path, chirp):
    tfio.write_signal(chirp, tmp_path / "sig")
    assert sorted(p.name for p in tmp_path.iterdir()) == ["sig.csv", "sig.json"]


@pytest.mark.parametrize("mutate,msg", [
    (lambda lines: lines[:-1], "rows"),
    (lambda lines: [lines[0]] + ["0.0,1.0,0.0"] + lines[2:], "time column"),
    (lambda lines: [lines[0]] + [lines[1].replace(",", ",nan,", 1).rsplit(",", 1)[0]] + lines[2:],
     "non-finite"),
    (lambda lines: ["time,re,im"] + lines[1:], "header"),
    (lambda lines: [lines[0]] + ["a,b,c"] + lines[2:], "convert"),
])
def test_malformed_signal_files(tmp_path, chirp, mutate, msg):
    tfio.write_signal(chirp, tmp_path / "sig")
    path = tmp_path / "sig.csv"
    lines = path.read_text().splitlines()
    path.write_text("\n".join(mutate(lines)) + "\n")
    with pytest.raises(FormatError, match=msg):
        tfio.read_signal(tmp_path / "sig")


def test_bad_metadata(tmp_path, chirp):
    tfio.write_signal(chirp, tmp_path / "sig")
    (tmp_path / "sig.json").write_text('{"t0": 0, "dt": -1, "n": 128}')
    with pytest.raises(FormatError):
        tfio.read_signal(tmp_path / "sig")
    (tmp_path / "sig.json").write_text("{not json")
    with pytest.raises(FormatError):
        tfio.read_signal(tmp_path / "sig")


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        tfio.read_signal(tmp_path / "nothing")


@pytest.mark.parametrize("kind", ["real", "complex"])
def test_matrix_round_trip(tmp_path, chirp, kind):
    W = wigner(chirp) if kind == "real" else cross_wigner(chirp, chirp.scaled(1j))
    tfio.write_matrix(W, tmp_path / "m")
    back = tfio.read_matrix(tmp_path / "m")
    assert back.value_kind == kind
    assert np.array_equal(back.values, W.values)
    assert np.array_equal(back.freq_axis, W.freq_axis)
    assert back.meta == W.meta


def test_stft_matrix_layout(tmp_path, chirp):
    V = stft(chirp, gaussian_window(chirp.grid.dt, 2.0, max_len=63), hop=8)
    tfio.write_matrix(V, tmp_path / "v")
    first = (tmp_path / "v.csv").read_text().splitlines()[0].split(",")
    assert len(first) == 2 * V.shape[1]
    assert float(first[2]) == V.values[0, 1].real and float(first[3]) == V.values[0, 1].imag


def test_if_track_round_trip(tmp_path, chirp):
    tr = if_phase_gradient(chirp)
    tfio.write_if_track(tr, tmp_path / "tr")
    back = tfio.read_if_track(tmp_path / "tr")
    assert np.array_equal(back.valid, tr.valid)
    assert np.array_equal(back.values[tr.valid], tr.values[tr.valid])
    assert back.estimator == tr.estimator and back.threshold == tr.threshold
    head = (tmp_path / "tr.csv").read_text().splitlines()[0]
    assert head == "t,if_value,valid"


def test_failed_write_leaves_nothing(tmp_path):
    class Boom:
        pass

    with pytest.raises(TypeError):
        tfio._atomic_write_many({tmp_path / "ok.txt": "fine", tmp_path / "bad.txt": Boom()})
    assert list(tmp_path.iterdir()) == []
