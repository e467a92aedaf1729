"""Self-contained numerical checks of the transform identities.

Each check generates its own fixtures, evaluates one identity and returns a
:class:`CheckRecord`. :func:`run_verification` runs any subset, optionally in
parallel, and always reports in the fixed order of :data:`CHECK_NAMES`.

``perturb=eps`` is a negative-control hook: every real Wigner matrix the
checks compute gets ``eps * max|W|`` added to all entries before use. That
breaks the marginal and moment identities, so those checks must fail.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from ._parallel import workers
from .cone import classify_vcon
from .errors import InvalidParamsError
from .fourier import dft
from .instfreq import compare_if, dynamic_range, if_moment_from_wigner, if_phase_gradient
from .oracles import (oracle_direct_cross_wigner, oracle_direct_dft, oracle_direct_stft,
                      oracle_direct_wigner, oracle_gaussian_wigner, oracle_wigner_window_identity)
from .signals import (ChirpParams, GaussianParams, Grid, Signal, gen_bandlimited, gen_chirp,
                      gen_gaussian, gen_tone)
from .transforms import (TimeFrequencyMatrix, autocorrelation, cross_wigner, gaussian_window,
                         marginal_freq, marginal_time, modulate_translate, roll_wigner,
                         shear, slice_time, stft, total_energy, wigner)


@dataclass
class SubCheck:
    label: str
    value: float
    bound: float
    relation: str = "le"  # "le": value <= bound passes; "ge": value >= bound passes

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.value):
            return False
        return self.value <= self.bound if self.relation == "le" else self.value >= self.bound

    def severity(self) -> float:
        """How close to (or past) the bound; >1 means failing."""
        if not np.isfinite(self.value):
            return np.inf
        if self.relation == "le":
            return self.value / self.bound if self.bound > 0 else (0.0 if self.value <= 0 else np.inf)
        return self.bound / self.value if self.value > 0 else np.inf


@dataclass
class CheckRecord:
    name: str
    anchor: str
    max_deviation: float
    tolerance: float
    passed: bool
    details: List[dict] = field(default_factory=list)

    @classmethod
    def from_subchecks(cls, name: str, anchor: str, subs: List[SubCheck]) -> "CheckRecord":
        failing = [s for s in subs if not s.passed]
        upper = [s for s in subs if s.relation == "le"]
        # headline: the worst failure, else the tightest upper bound
        worst = max(failing or upper or subs, key=lambda s: s.severity())
        return cls(name, anchor, float(worst.value), float(worst.bound),
                   all(s.passed for s in subs),
                   [dict(asdict(s), passed=s.passed) for s in subs])

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


@dataclass
class VerificationReport:
    records: List[CheckRecord]
    perturb: float = 0.0

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self) -> dict:
        return {"all_pass": self.all_passed, "perturb": self.perturb,
                "records": [r.to_dict() for r in self.records]}

    def table(self) -> str:
        head = f"{'identity':<22} {'max_deviation':>14} {'tolerance':>10}  result  anchor"
        lines = [head, "-" * len(head)]
        for r in self.records:
            lines.append(f"{r.name:<22} {r.max_deviation:>14.3e} {r.tolerance:>10.1e}  "
                         f"{'PASS' if r.passed else 'FAIL':<6}  {r.anchor}")
        lines.append(f"overall: {'PASS' if self.all_passed else 'FAIL'}")
        return "\n".join(lines)


class _Context:
    def __init__(self, perturb: float):
        self.perturb = float(perturb)

    def wigner(self, f: Signal, boundary: str = "zero") -> TimeFrequencyMatrix:
        W = wigner(f, boundary)
        if self.perturb:
            bump = self.perturb * np.max(np.abs(W.values))
            W = TimeFrequencyMatrix(W.time_axis, W.freq_axis, W.values + bump, "real", dict(W.meta))
        return W


def _rel_linf(a, b, scale=None):
    a, b = np.asarray(a), np.asarray(b)
    if scale is None:
        scale = max(np.max(np.abs(a)), np.max(np.abs(b)))
    return float(np.max(np.abs(a - b)) / scale) if scale > 0 else 0.0


# ---------------------------------------------------------------------------
# fixtures

BL_GRID = Grid.centered(256, 1.0 / 32)
BL_BAND = (-4.0, 4.0)
BL_SEEDS = range(10)


def _bandlimited_fixtures():
    return [gen_bandlimited(BL_GRID, BL_BAND, s) for s in BL_SEEDS]


# ---------------------------------------------------------------------------
# checks


def check_marginals(ctx: _Context) -> CheckRecord:
    subs = []
    for s, f in zip(BL_SEEDS, _bandlimited_fixtures()):
        W = ctx.wigner(f)
        power = np.abs(f.samples) ** 2
        subs.append(SubCheck(f"time marginal seed {s}", _rel_linf(marginal_freq(W), power,
                                                                  np.max(power)), 1e-6))
        spec2 = np.abs(f.spectrum()) ** 2
        # even Wigner columns coincide with the signal's DFT bins
        subs.append(SubCheck(f"frequency marginal seed {s}",
                             _rel_linf(marginal_time(W)[0::2], spec2, np.max(spec2)), 1e-6))
    return CheckRecord.from_subchecks(
        "marginals", "sum_xi W dxi = |f(t)|^2 ; sum_t W dt = |F(xi)|^2", subs)


def check_energy(ctx: _Context) -> CheckRecord:
    subs = []
    for s, f in zip(BL_SEEDS, _bandlimited_fixtures()):
        E = f.energy()
        subs.append(SubCheck(f"seed {s}", abs(total_energy(ctx.wigner(f)) - E) / E, 1e-6))
    return CheckRecord.from_subchecks("energy", "sum W dt dxi = ||f||^2", subs)


def check_covariance(ctx: _Context) -> CheckRecord:
    g = Grid.centered(256, 1.0 / 32)
    fixtures = {"tone": gen_tone(g, 3.0)}
    for s in range(3):
        fixtures[f"bandlimited seed {s}"] = gen_bandlimited(g, (-4.0, 4.0), s)
    subs = []
    for label, f in fixtures.items():
        W = ctx.wigner(f, "periodized")
        for shift, mod in ((5, 3), (-17, -6), (64, 11)):
            Wm = ctx.wigner(modulate_translate(f, shift, mod), "periodized")
            subs.append(SubCheck(f"{label} shift {shift} mod {mod}",
                                 _rel_linf(Wm.values, roll_wigner(W, shift, mod)), 1e-12))
    return CheckRecord.from_subchecks(
        "covariance", "W[M_q T_p f](t, xi) = W_f(t - p, xi - q)", subs)


def _if_fixtures():
    """(label, signal, boundary) for the moment-vs-phase-gradient comparison."""
    out = []
    g = Grid.centered(512, 1.0 / 32)
    for a, b in ((1 + 1j, 0.5 + 0.5j), (2 - 0.5j, 0.25j), (0.5 + 2j, 0.5)):
        out.append((f"gaussian a={a} b={b}", gen_gaussian(g, GaussianParams(a, b)), "zero"))
    out.append(("gaussian-envelope chirp", gen_chirp(g, 1.0, GaussianParams(1.0, 0.5)), "zero"))
    for s in range(3):
        out.append((f"bandlimited seed {s}", gen_bandlimited(g, (-2.0, 2.0), s), "periodized"))
    g2 = Grid.centered(512, 1.0 / 16)
    for s in range(3):
        h = gen_bandlimited(g2, (-2.0, 2.0), s)
        out.append((f"chirp x bandlimited seed {s}", gen_chirp(g2, 0.1) * h, "periodized"))
    return out


TONE_GRID = Grid.centered(512, 1.0 / 51.2)  # bin spacing 0.1, so 0.3 is a whole bin
TONE_XI0 = 0.3


def check_if_moment(ctx: _Context) -> CheckRecord:
    subs = []
    for label, f, boundary in _if_fixtures():
        ref = if_phase_gradient(f)
        mom = if_moment_from_wigner(ctx.wigner(f, boundary))
        cmp = compare_if(ref, mom)
        dr = dynamic_range(ref)
        subs.append(SubCheck(f"{label} (relative to IF range)",
                             cmp["max_abs_err"] / dr if dr > 0 else np.inf, 1e-3))
    tone = gen_tone(TONE_GRID, TONE_XI0)
    ref = if_phase_gradient(tone)
    mom = if_moment_from_wigner(ctx.wigner(tone, "periodized"))
    subs.append(SubCheck("tone xi0=0.3 vs phase gradient (absolute)",
                         compare_if(ref, mom)["max_abs_err"], 1e-8))
    subs.append(SubCheck("tone xi0=0.3 vs exact (absolute)",
                         float(np.nanmax(np.abs(mom.values - TONE_XI0))), 1e-8))
    return CheckRecord.from_subchecks(
        "if_moment", "IF(t) = sum xi W dxi / sum W dxi = arg(f)'/(2 pi)", subs)


def check_chirp_ridge(ctx: _Context) -> CheckRecord:
    g = Grid.centered(512, 1.0 / 32)
    rate = 2.0
    f = gen_chirp(g, ChirpParams(rate), GaussianParams(0.1))
    W = ctx.wigner(f)
    mom = if_moment_from_wigner(W)
    rows = np.nonzero(mom.valid)[0]
    ridge = rate * g.times[rows]
    peak_freq = W.freq_axis[np.argmax(W.values[rows], axis=1)]
    bins_off = float(np.max(np.abs(peak_freq - ridge)) / W.dfreq)
    dr = float(np.max(ridge) - np.min(ridge))
    moment_err = float(np.max(np.abs(mom.values[rows] - ridge)) / dr)
    return CheckRecord.from_subchecks("chirp_ridge", "W concentrates on xi = rate * t", [
        SubCheck("argmax offset (bins)", bins_off, 1.0),
        SubCheck("moment vs rate*t (relative to IF range)", moment_err, 0.02),
    ])


def check_chirp_shear(ctx: _Context) -> CheckRecord:
    g = Grid.centered(256, 1.0 / 16)
    subs = []
    for rate, env in ((0.5, GaussianParams(1.0)), (-1.0, GaussianParams(1.5, 0.25)),
                      (1.5, GaussianParams(2.0, 0.5j))):
        h = gen_gaussian(g, env)
        Wc = ctx.wigner(gen_chirp(g, rate, env))
        Wh = ctx.wigner(h)
        subs.append(SubCheck(f"rate {rate}", _rel_linf(Wc.values, shear(Wh, rate).values), 1e-10))
    return CheckRecord.from_subchecks(
        "chirp_shear", "W[exp(pi i rate t^2) h](t, xi) = W_h(t, xi - rate t)", subs)


def check_gaussian_closed_form(ctx: _Context) -> CheckRecord:
    g = Grid.centered(256, 1.0 / 20)
    subs = []
    for a in (1.0, 1 + 1j, 2.0):
        for b in (0.0, 0.5j):
            p = GaussianParams(a, b).normalized()
            W = ctx.wigner(gen_gaussian(g, p))
            ref = oracle_gaussian_wigner(p, W.time_axis, W.freq_axis)
            subs.append(SubCheck(f"a={a} b={b}", _rel_linf(W.values, ref, np.max(ref)), 1e-4))
    return CheckRecord.from_subchecks(
        "gaussian_closed_form", "W = C exp(-2 pi (Re a t^2 - 2 Re b t)) exp(-2 pi u^2 / Re a)",
        subs)


def check_positivity(ctx: _Context) -> CheckRecord:
    g = Grid.centered(256, 1.0 / 20)
    subs = []
    for a in (1.0, 1 + 1j, 0.5 - 0.25j):
        W = ctx.wigner(gen_gaussian(g, GaussianParams(a, 0.25j)))
        subs.append(SubCheck(f"gaussian a={a}: -min/max",
                             float(-np.min(W.values) / np.max(W.values)), 1e-8))
    env = GaussianParams(0.5)
    two = Signal(g, gen_chirp(g, 0.0, env).samples * (np.exp(2j * np.pi * 2.0 * g.times)
                                                      + np.exp(-2j * np.pi * 2.0 * g.times)))
    W = ctx.wigner(two)
    subs.append(SubCheck("two tones: -min/max", float(-np.min(W.values) / np.max(W.values)),
                         0.05, "ge"))
    return CheckRecord.from_subchecks(
        "positivity", "W >= 0 for generalised Gaussians; negative elsewhere", subs)


def check_window_identity(ctx: _Context) -> CheckRecord:
    g = Grid.centered(128, 1.0 / 16)
    w = gaussian_window(g.dt, 2.0)
    fixtures = {"gaussian a=1": gen_gaussian(g, GaussianParams(1.0)),
                "gaussian a=1+i b=0.5": gen_gaussian(g, GaussianParams(1 + 1j, 0.5))}
    for s in range(3):
        fixtures[f"bandlimited seed {s}"] = gen_bandlimited(g, (-1.0, 1.0), s)
    subs = [SubCheck(k, oracle_wigner_window_identity(f, w), 1e-5) for k, f in fixtures.items()]
    return CheckRecord.from_subchecks(
        "window_identity",
        "F2[W_f W_w](eta, x) = V_w f(-x/2, eta/2) conj(V_w f(x/2, -eta/2))", subs)


CONE_CASES = ((1.0, Grid.centered(8192, 1.0 / 128), (0.5, 1.0, 1.5, 3.0, 4.0, 6.0)),
              (2.0, Grid.centered(16384, 1.0 / 256), (1.0, 2.0, 3.0, 6.0, 8.0, 12.0)))


def check_cone(ctx: _Context) -> CheckRecord:
    subs = []
    for eta0, g, slopes in CONE_CASES:
        w = gaussian_window(g.dt, 2.0)
        rep = classify_vcon(gen_chirp(g, ChirpParams.from_eta0(eta0)), w, slopes)
        target = 2.0 * abs(eta0)
        est = rep.critical_B_estimate
        subs.append(SubCheck(f"chirp eta0={eta0}: |B - 2 eta0| / (2 eta0)",
                             abs(est - target) / target if est is not None else np.inf, 0.15))
        subs.append(SubCheck(f"chirp eta0={eta0}: non-monotone", float(not rep.monotone), 0.0))
        rep_g = classify_vcon(gen_gaussian(g, GaussianParams(1.0)), w, slopes)
        subs.append(SubCheck(f"gaussian on eta0={eta0} grid: non-rapid slopes",
                             float(sum(c != "rapid" for c in rep_g.classes())), 0.0))
        subs.append(SubCheck(f"gaussian on eta0={eta0} grid: non-monotone",
                             float(not rep_g.monotone), 0.0))
    return CheckRecord.from_subchecks(
        "cone_critical_slope", "chirp exp(2 pi i eta0 t^2): rapid cone decay iff B >= 2|eta0|",
        subs)


def check_restriction(ctx: _Context) -> CheckRecord:
    g = Grid.centered(128, 1.0 / 16)
    fixtures = {"bandlimited": gen_bandlimited(g, (-2.0, 2.0), 3),
                "gaussian": gen_gaussian(g, GaussianParams(1 + 0.5j, 0.25)),
                "chirp": gen_chirp(g, 0.5, GaussianParams(0.5)),
                "tone": gen_tone(g, 1.0)}
    subs = []
    for label, f in fixtures.items():
        for boundary in ("zero", "periodized"):
            W = ctx.wigner(f, boundary)
            lag_t0 = -g.n * g.dt
            rows = np.array([dft(autocorrelation(f, k, boundary), g.dt, lag_t0)
                             for k in range(g.n)])
            dev = max(_rel_linf(slice_time(W, k), rows[k].real, np.max(np.abs(rows)))
                      for k in range(g.n))
            subs.append(SubCheck(f"{label} ({boundary})", dev, 1e-12))
    return CheckRecord.from_subchecks(
        "restriction", "W_f(t, .) = F[tau -> f(t + tau/2) conj(f(t - tau/2))]", subs)


def check_oracles(ctx: _Context) -> CheckRecord:
    subs = []
    for n in (8, 16, 32, 64):
        g = Grid(t0=-0.37, dt=0.125, n=n)
        w = gaussian_window(g.dt, 2.0, max_len=n - 1)
        worst = {"dft": 0.0, "wigner": 0.0, "cross_wigner": 0.0, "stft": 0.0}
        for seed in range(10):
            rng = np.random.default_rng(1000 * n + seed)
            f = Signal(g, rng.standard_normal(n) + 1j * rng.standard_normal(n))
            h = Signal(g, rng.standard_normal(n) + 1j * rng.standard_normal(n))
            worst["dft"] = max(worst["dft"], _rel_linf(dft(f.samples, g.dt, g.t0),
                                                       oracle_direct_dft(f.samples, g.dt, g.t0)))
            boundary = ("zero", "periodized")[seed % 2]
            worst["wigner"] = max(worst["wigner"], _rel_linf(
                ctx.wigner(f, boundary).values, oracle_direct_wigner(f, boundary)))
            worst["cross_wigner"] = max(worst["cross_wigner"], _rel_linf(
                cross_wigner(f, h, boundary).values, oracle_direct_cross_wigner(f, h, boundary)))
            over = 1 + seed % 2
            worst["stft"] = max(worst["stft"], _rel_linf(
                stft(f, w, freq_oversample=over).values, oracle_direct_stft(f, w, over)))
        subs += [SubCheck(f"{k} n={n}", v, 1e-12) for k, v in worst.items()]
    return CheckRecord.from_subchecks(
        "oracle_equivalence", "FFT transforms = direct O(n^2) sums", subs)


CHECKS: Dict[str, Callable[[_Context], CheckRecord]] = {
    "marginals": check_marginals,
    "energy": check_energy,
    "covariance": check_covariance,
    "if_moment": check_if_moment,
    "chirp_ridge": check_chirp_ridge,
    "chirp_shear": check_chirp_shear,
    "gaussian_closed_form": check_gaussian_closed_form,
    "positivity": check_positivity,
    "window_identity": check_window_identity,
    "cone_critical_slope": check_cone,
    "restriction": check_restriction,
    "oracle_equivalence": check_oracles,
}
CHECK_NAMES = tuple(CHECKS)


def run_verification(only: Optional[Iterable[str]] = None, perturb: float = 0.0,
                     parallel: bool = True) -> VerificationReport:
    """Run the named checks (all by default); results follow :data:`CHECK_NAMES` order."""
    names = list(CHECK_NAMES) if not only else list(only)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise InvalidParamsError(f"unknown checks {unknown}; choose from {list(CHECK_NAMES)}")
    if not perturb >= 0 or not np.isfinite(perturb):
        raise InvalidParamsError("perturb must be a finite non-negative number")
    ctx = _Context(perturb)
    ordered = [n for n in CHECK_NAMES if n in names]
    if parallel and len(ordered) > 1 and workers() > 1:
        with ThreadPoolExecutor(max_workers=min(workers(), len(ordered))) as pool:
            records = list(pool.map(lambda n: CHECKS[n](ctx), ordered))
    else:
        records = [CHECKS[n](ctx) for n in ordered]
    return VerificationReport(records, float(perturb))
