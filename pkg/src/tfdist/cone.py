"""Numerical cone-decay diagnostics for STFTs.

A signal belongs to the cone class when its STFT decays faster than any
polynomial inside some cone ``|eta| > B |x|`` around the frequency axis. With
finite data that quantifier cannot be decided, so decay is classified from a
profile of shell-wise suprema:

* ``rapid``: an exponential fit in the radius is at least as good as a power
  law and its rate is at least ``RATE_MIN``; or the profile has sunk into the
  numerical floor (``FLOOR * peak``) within the analysed annulus; or the fitted
  power exceeds ``ORDER_MAX``.
* ``non_decaying``: fitted power below 0.5.
* ``polynomial``: everything else, with the fitted order.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .errors import DegenerateProfileError, InvalidInputError, InvalidParamsError
from .signals import Signal
from .transforms import TimeFrequencyMatrix, Window, stft

RATE_MIN = 0.1
ORDER_MAX = 12.0
FLOOR = 1e-12
NON_DECAYING_ORDER = 0.5
MIN_SHELLS = 4
BISECT_REL_WIDTH = 0.05
RADIUS_CAP = 0.8


@dataclass(frozen=True)
class ConeSpec:
    """Cone ``|eta| > slope_B |x|`` intersected with the annulus
    ``radius_min <= <(x, eta)> < radius_max`` where ``<z> = sqrt(1 + |z|^2)``."""

    slope_B: float
    radius_min: float
    radius_max: float

    def __post_init__(self):
        if not self.slope_B > 0:
            raise InvalidParamsError("slope_B must be positive")
        if not 0 < self.radius_min < self.radius_max:
            raise InvalidParamsError("need 0 < radius_min < radius_max")


@dataclass
class ShellProfile:
    radii: np.ndarray
    sups: np.ndarray
    peak: float
    skipped: List[int] = field(default_factory=list)


@dataclass
class DecayFit:
    poly_order: float
    exp_rate: float
    poly_residual: float
    exp_residual: float
    decay_class: str
    usable_shells: int

    @property
    def is_rapid(self) -> bool:
        return self.decay_class == "rapid"


@dataclass
class SlopeRecord:
    B: float
    fitted_poly_order: float
    fitted_exp_rate: float
    residual: float
    decay_class: str


@dataclass
class ConeDecayReport:
    records: List[SlopeRecord]
    critical_B_estimate: Optional[float]
    bracket: Optional[tuple]
    monotone: bool
    thresholds: dict
    grid: dict
    window: dict
    radius_min: float
    radius_max: float

    @property
    def diagnostic_failure(self) -> bool:
        return not self.monotone

    def classes(self):
        return [r.decay_class for r in self.records]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["diagnostic_failure"] = self.diagnostic_failure
        d["bracket"] = list(self.bracket) if self.bracket is not None else None
        return d


def _centroid(f: Signal) -> float:
    p = np.abs(f.samples) ** 2
    if p.sum() == 0:
        t = f.grid.times
        return float(0.5 * (t[0] + t[-1]))
    return float(np.sum(f.grid.times * p) / p.sum())


def cone_sup_profile(V: TimeFrequencyMatrix, cone: ConeSpec, n_shells: int = 12,
                     center: float = 0.0, magnitude: Optional[np.ndarray] = None) -> ShellProfile:
    """Shell-wise ``sup |V|`` over the cone, on geometric shells.

    Shell ``j`` covers ``[r_min q^j, r_min q^(j+1))`` with ``q = (r_max/r_min)^(1/n_shells)``;
    ``x`` is measured from ``center``. Empty shells are skipped and listed.
    """
    if n_shells < MIN_SHELLS:
        raise InvalidParamsError(f"n_shells must be >= {MIN_SHELLS}")
    mag = np.abs(V.values) if magnitude is None else magnitude
    x = V.time_axis - center
    eta = V.freq_axis
    radius = np.sqrt(1.0 + x[:, None] ** 2 + eta[None, :] ** 2)
    inside = np.abs(eta)[None, :] > cone.slope_B * np.abs(x)[:, None]
    edges = cone.radius_min * (cone.radius_max / cone.radius_min) ** (
        np.arange(n_shells + 1) / n_shells)
    shell = np.searchsorted(edges, radius, side="right") - 1
    sel = inside & (shell >= 0) & (shell < n_shells)
    if not np.any(sel):
        raise InvalidInputError("cone does not intersect the sampled annulus")
    sups = np.full(n_shells, -1.0)
    np.maximum.at(sups, shell[sel], mag[sel])
    mids = np.sqrt(edges[:-1] * edges[1:])
    present = sups >= 0
    skipped = np.nonzero(~present)[0].tolist()
    return ShellProfile(mids[present], sups[present], float(np.max(mag)), skipped)


def _linfit(u, y):
    A = np.vstack([u, np.ones_like(u)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    return coef[0], float(np.sqrt(np.mean(resid ** 2)))


def fit_decay(profile, peak: Optional[float] = None, rate_min: float = RATE_MIN,
              order_max: float = ORDER_MAX, floor: float = FLOOR) -> DecayFit:
    """Fit ``log sup`` against ``log r`` (power law) and against ``r`` (exponential).

    ``profile`` is a :class:`ShellProfile` or an ``(m, 2)`` array of
    ``(radius, sup)`` rows; ``peak`` defaults to the profile's own maximum.
    """
    if isinstance(profile, ShellProfile):
        r, s = profile.radii, profile.sups
        peak = profile.peak if peak is None else peak
    else:
        arr = np.asarray(profile, dtype=np.float64)
        r, s = arr[:, 0], arr[:, 1]
    if r.size < MIN_SHELLS:
        raise DegenerateProfileError(f"need at least {MIN_SHELLS} shells, got {r.size}")
    if peak is None:
        peak = float(np.max(s))
    level = floor * peak
    if peak <= 0 or np.all(s <= level):
        return DecayFit(np.inf, np.inf, 0.0, 0.0, "rapid", 0)
    above = s > level
    sunk = not above[-1]
    r_use, s_use = r[above], s[above]
    if r_use.size < MIN_SHELLS:
        if sunk:
            return DecayFit(np.inf, np.inf, 0.0, 0.0, "rapid", int(r_use.size))
        raise DegenerateProfileError("fewer than 4 usable shells above the floor")
    ls = np.log(s_use)
    slope_p, res_p = _linfit(np.log(r_use), ls)
    slope_e, res_e = _linfit(r_use, ls)
    order, rate = -slope_p, -slope_e
    if sunk or (res_e <= res_p and rate >= rate_min):
        cls = "rapid"
    elif order < NON_DECAYING_ORDER:
        cls = "non_decaying"
    elif order >= order_max:
        cls = "rapid"
    else:
        cls = "polynomial"
    return DecayFit(float(order), float(rate), res_p, res_e, cls, int(r_use.size))


def default_radii(V: TimeFrequencyMatrix, center: float):
    """Annulus ``[0.4, 1] * r_max`` with ``r_max`` 0.8 of the inscribed half-extent."""
    t = V.time_axis
    half_t = min(center - t[0], t[-1] - center)
    half_f = min(-V.freq_axis[0], V.freq_axis[-1])
    r_max = RADIUS_CAP * min(half_t, half_f)
    if r_max <= 1.0:
        raise InvalidInputError("grid too small for cone diagnostics")
    return 0.4 * r_max, r_max


def _next_pow2(k):
    return 1 << int(np.ceil(np.log2(max(k, 1))))


def classify_vcon(f: Signal, w: Window, slopes: Sequence[float], n_shells: int = 12,
                  radius_min: Optional[float] = None, radius_max: Optional[float] = None,
                  hop: Optional[int] = None, n_freq: Optional[int] = None) -> ConeDecayReport:
    """Classify cone decay of ``V_w f`` for each slope and bracket the critical slope.

    The critical estimate is refined by bisection on the rapid / not-rapid
    boundary until the bracket's relative width is at most 5%; it is ``None``
    when the smallest slope is already rapid or no slope is.
    """
    slopes = [float(b) for b in slopes]
    if len(slopes) < 3 or any(b2 <= b1 for b1, b2 in zip(slopes, slopes[1:])):
        raise InvalidParamsError("slopes must be strictly ascending with at least 3 values")
    n = f.grid.n
    if hop is None:
        hop = max(1, n // 512)
    if n_freq is None:
        n_freq = n if n <= 2048 else max(2048, _next_pow2(len(w)))
        n_freq = max(n_freq, len(w))
    V = stft(f, w, hop=hop, n_freq=n_freq)
    mag = np.abs(V.values)
    center = _centroid(f)
    rmin_d, rmax_d = default_radii(V, center)
    r_lo = rmin_d if radius_min is None else float(radius_min)
    r_hi = rmax_d if radius_max is None else min(float(radius_max), rmax_d)

    def evaluate(B):
        prof = cone_sup_profile(V, ConeSpec(B, r_lo, r_hi), n_shells, center, mag)
        return fit_decay(prof)

    fits = [evaluate(B) for B in slopes]
    records = [SlopeRecord(B, ft.poly_order, ft.exp_rate, min(ft.poly_residual, ft.exp_residual),
                           ft.decay_class) for B, ft in zip(slopes, fits)]
    rapid = [ft.is_rapid for ft in fits]
    first = rapid.index(True) if any(rapid) else None
    monotone = first is None or all(rapid[first:])
    critical, bracket = None, None
    if first is not None and first > 0:
        lo, hi = slopes[first - 1], slopes[first]
        while (hi - lo) / (0.5 * (hi + lo)) > BISECT_REL_WIDTH:
            mid = 0.5 * (lo + hi)
            if evaluate(mid).is_rapid:
                hi = mid
            else:
                lo = mid
        critical, bracket = 0.5 * (lo + hi), (lo, hi)
    return ConeDecayReport(
        records=records, critical_B_estimate=critical, bracket=bracket, monotone=monotone,
        thresholds={"rate_min": RATE_MIN, "order_max": ORDER_MAX, "floor": FLOOR,
                    "non_decaying_order": NON_DECAYING_ORDER, "bisect_rel_width": BISECT_REL_WIDTH,
                    "n_shells": n_shells},
        grid={"t0": f.grid.t0, "dt": f.grid.dt, "n": f.grid.n, "hop": hop, "n_freq": n_freq,
              "center": center},
        window={"kind": w.kind, "a": w.a, "length": len(w)},
        radius_min=r_lo, radius_max=r_hi)
