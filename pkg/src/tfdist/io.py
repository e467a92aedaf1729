"""CSV/JSON file formats for signals, matrices, IF tracks and reports.

Every writer goes through a temporary file in the destination directory
followed by :func:`os.replace`, so a failed run never leaves a partial file.
Floats are written with ``repr`` so round trips are exact.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Dict

import numpy as np

from .errors import FormatError
from .instfreq import IFTrack
from .signals import Grid, Signal
from .transforms import TimeFrequencyMatrix

TIME_REL_TOL = 1e-12


def _atomic_write_many(contents: Dict[Path, str]) -> None:
    """Write all files or none: everything is staged before the first rename."""
    staged = []
    try:
        for path, text in contents.items():
            path = Path(path)
            parent = path.parent if str(path.parent) else Path(".")
            parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=parent)
            staged.append((tmp, path))
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
        for tmp, path in staged:
            os.replace(tmp, path)
    finally:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _read_json(path: Path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc


def _read_rows(path: Path, header):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except FileNotFoundError:
        raise
    except (OSError, csv.Error) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if not rows or [h.strip() for h in rows[0]] != list(header):
        raise FormatError(f"{path}: expected header {','.join(header)}")
    return rows[1:]


def _floats(rows, path, width):
    try:
        arr = np.array([[float(v) for v in r] for r in rows], dtype=np.float64)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if arr.size == 0:
        arr = arr.reshape(0, width)
    if arr.ndim != 2 or arr.shape[1] != width:
        raise FormatError(f"{path}: expected {width} columns per row")
    if not np.all(np.isfinite(arr)):
        raise FormatError(f"{path}: non-finite value")
    return arr


def signal_paths(stem):
    stem = Path(stem)
    return stem.with_name(stem.name + ".csv"), stem.with_name(stem.name + ".json")


# ---------------------------------------------------------------------------
# signals


def signal_csv_text(f: Signal) -> str:
    buf = io.StringIO()
    buf.write("t,re,im\n")
    for t, v in zip(f.grid.times.tolist(), f.samples.tolist()):
        buf.write(f"{t!r},{v.real!r},{v.imag!r}\n")
    return buf.getvalue()


def write_signal(f: Signal, stem) -> None:
    """Write ``<stem>.csv`` (``t,re,im``) and ``<stem>.json`` (grid metadata)."""
    csv_path, json_path = signal_paths(stem)
    meta = {"t0": f.grid.t0, "dt": f.grid.dt, "n": f.grid.n, "unit_time": "s"}
    _atomic_write_many({csv_path: signal_csv_text(f), json_path: _json_text(meta)})


def read_signal(stem) -> Signal:
    csv_path, json_path = signal_paths(stem)
    meta = _read_json(json_path)
    try:
        grid = Grid(t0=float(meta["t0"]), dt=float(meta["dt"]), n=int(meta["n"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{json_path}: bad grid metadata ({exc})") from exc
    if meta.get("unit_time", "s") != "s":
        raise FormatError(f"{json_path}: unit_time must be 's'")
    arr = _floats(_read_rows(csv_path, ("t", "re", "im")), csv_path, 3)
    if arr.shape[0] != grid.n:
        raise FormatError(f"{csv_path}: {arr.shape[0]} rows, metadata says {grid.n}")
    t = grid.times
    scale = max(np.max(np.abs(t)), grid.dt)
    if np.max(np.abs(arr[:, 0] - t)) > TIME_REL_TOL * scale:
        raise FormatError(f"{csv_path}: time column does not match the grid")
    return Signal(grid, arr[:, 1] + 1j * arr[:, 2])


# ---------------------------------------------------------------------------
# matrices


def write_matrix(W: TimeFrequencyMatrix, stem) -> None:
    """Row-major ``<stem>.csv``; complex entries as interleaved ``re,im`` pairs.

    ``<stem>.axes.json`` holds both axes, the value kind and the metadata.
    """
    stem = Path(stem)
    buf = io.StringIO()
    for row in W.values:
        if W.value_kind == "complex":
            cells = []
            for v in row:
                cells.append(repr(float(v.real)))
                cells.append(repr(float(v.imag)))
        else:
            cells = [repr(float(v)) for v in row]
        buf.write(",".join(cells) + "\n")
    axes = {"time_axis": W.time_axis, "freq_axis": W.freq_axis,
            "value_kind": W.value_kind, "meta": W.meta}
    _atomic_write_many({stem.with_name(stem.name + ".csv"): buf.getvalue(),
                        stem.with_name(stem.name + ".axes.json"): _json_text(axes)})


def read_matrix(stem) -> TimeFrequencyMatrix:
    stem = Path(stem)
    axes_path = stem.with_name(stem.name + ".axes.json")
    csv_path = stem.with_name(stem.name + ".csv")
    axes = _read_json(axes_path)
    try:
        t = np.asarray(axes["time_axis"], dtype=np.float64)
        xi = np.asarray(axes["freq_axis"], dtype=np.float64)
        kind = axes["value_kind"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"{axes_path}: {exc}") from exc
    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    width = xi.size * (2 if kind == "complex" else 1)
    arr = _floats(rows, csv_path, width)
    if arr.shape[0] != t.size:
        raise FormatError(f"{csv_path}: {arr.shape[0]} rows, axes say {t.size}")
    values = arr[:, 0::2] + 1j * arr[:, 1::2] if kind == "complex" else arr
    try:
        return TimeFrequencyMatrix(t, xi, values, kind, dict(axes.get("meta", {})))
    except ValueError as exc:
        raise FormatError(f"{axes_path}: {exc}") from exc


# ---------------------------------------------------------------------------
# IF tracks and reports


def write_if_track(track: IFTrack, stem) -> None:
    """``<stem>.csv`` with ``t,if_value,valid`` plus a JSON sidecar."""
    stem = Path(stem)
    buf = io.StringIO()
    buf.write("t,if_value,valid\n")
    for t, v, ok in zip(track.time_axis, track.values, track.valid):
        buf.write(f"{float(t)!r},{float(v)!r},{int(bool(ok))}\n")
    side = {"threshold": track.threshold, "estimator": track.estimator,
            "n": int(track.time_axis.size), "n_valid": track.n_valid}
    _atomic_write_many({stem.with_name(stem.name + ".csv"): buf.getvalue(),
                        stem.with_name(stem.name + ".json"): _json_text(side)})


def read_if_track(stem) -> IFTrack:
    stem = Path(stem)
    csv_path, json_path = stem.with_name(stem.name + ".csv"), stem.with_name(stem.name + ".json")
    side = _read_json(json_path)
    rows = _read_rows(csv_path, ("t", "if_value", "valid"))
    try:
        t = np.array([float(r[0]) for r in rows])
        v = np.array([float(r[1]) for r in rows])
        ok = np.array([r[2].strip() == "1" for r in rows], dtype=bool)
    except (ValueError, IndexError) as exc:
        raise FormatError(f"{csv_path}: {exc}") from exc
    return IFTrack(t, v, ok, float(side["threshold"]), str(side.get("estimator", "")))


def write_json(obj, path) -> None:
    _atomic_write_many({Path(path): _json_text(obj)})


def read_json(path) -> dict:
    return _read_json(Path(path))
