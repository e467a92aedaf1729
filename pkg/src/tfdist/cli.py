"""``tf`` command-line interface.

Subcommands: ``gen``, ``wigner``, ``stft``, ``if``, ``cone`` and ``verify``.
Exit codes: 0 success, 1 a check or transform failed, 2 bad usage or input,
3 the cone report flagged a monotonicity failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import io as tfio
from .cone import classify_vcon
from .errors import RealnessError, TFError
from .instfreq import DEFAULT_THRESHOLD, compare_if, if_moment, if_phase_gradient
from .signals import (ChirpParams, GaussianParams, Grid, gen_bandlimited, gen_chirp,
                      gen_gaussian, gen_tone)
from .transforms import gaussian_window, stft, wigner
from .verification import CHECK_NAMES, run_verification

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DIAGNOSTIC = 0, 1, 2, 3


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _add_grid(p):
    p.add_argument("--n", type=int, default=512, help="number of samples (even)")
    p.add_argument("--dt", type=float, default=1.0 / 32, help="sample spacing in seconds")
    p.add_argument("--t0", type=float, default=None,
                   help="time of the first sample (default: centred record)")


def _add_io(p, needs_input=True):
    if needs_input:
        p.add_argument("--in", dest="input", required=True, help="input signal stem")
    p.add_argument("--out", required=True, help="output stem")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tf", description="Discrete time-frequency analysis",
                                     allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a test signal", allow_abbrev=False)
    kinds = gen.add_subparsers(dest="kind", required=True)
    tone = kinds.add_parser("tone", allow_abbrev=False)
    tone.add_argument("--xi0", type=float, required=True, help="frequency in Hz")
    tone.add_argument("--amplitude", type=_complex, default=1.0)
    gauss = kinds.add_parser("gaussian", allow_abbrev=False)
    gauss.add_argument("--a", type=_complex, default=1.0, help="exp(-pi a t^2 + 2 pi b t + c)")
    gauss.add_argument("--b", type=_complex, default=0.0)
    gauss.add_argument("--c", type=_complex, default=None,
                       help="default: chosen for unit energy")
    chirp = kinds.add_parser("chirp", allow_abbrev=False)
    rate = chirp.add_mutually_exclusive_group(required=True)
    rate.add_argument("--rate", type=float, help="chirp exp(pi i rate t^2)")
    rate.add_argument("--eta0", type=float, help="chirp exp(2 pi i eta0 t^2)")
    chirp.add_argument("--envelope-a", type=_complex, default=None,
                       help="Gaussian envelope parameter a (default: none)")
    chirp.add_argument("--envelope-b", type=_complex, default=0.0)
    bl = kinds.add_parser("bandlimited", allow_abbrev=False)
    bl.add_argument("--band", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    bl.add_argument("--seed", type=int, default=0)
    for p in (tone, gauss, chirp, bl):
        _add_grid(p)
        _add_io(p, needs_input=False)

    wig = sub.add_parser("wigner", help="Wigner matrix of a signal", allow_abbrev=False)
    _add_io(wig)
    wig.add_argument("--boundary", choices=("zero", "periodized"), default="zero")

    st = sub.add_parser("stft", help="STFT with a Gaussian window", allow_abbrev=False)
    _add_io(st)
    st.add_argument("--window-a", type=float, default=2.0, help="window exp(-pi a x^2)")
    st.add_argument("--freq-oversample", type=int, default=1)
    st.add_argument("--hop", type=int, default=1)
    st.add_argument("--boundary", choices=("zero", "periodized"), default="zero",
                    help="accepted for uniformity; the STFT always zero-extends")

    inst = sub.add_parser("if", help="instantaneous frequency by both estimators",
                          allow_abbrev=False)
    _add_io(inst)
    inst.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    inst.add_argument("--boundary", choices=("zero", "periodized"), default="zero")
    inst.add_argument("--method", choices=("spectral", "central"), default="spectral",
                      help="derivative used by the phase-gradient estimator")

    cone = sub.add_parser("cone", help="cone-decay classification", allow_abbrev=False)
    _add_io(cone)
    cone.add_argument("--slopes", type=float, nargs="+", required=True)
    cone.add_argument("--window-a", type=float, default=2.0)
    cone.add_argument("--n-shells", type=int, default=12)
    cone.add_argument("--boundary", choices=("zero", "periodized"), default="zero",
                      help="accepted for uniformity; the STFT always zero-extends")

    ver = sub.add_parser("verify", help="run the identity checks", allow_abbrev=False)
    ver.add_argument("--only", nargs="+", choices=CHECK_NAMES, default=None)
    ver.add_argument("--perturb", type=float, default=0.0,
                     help="negative control: add eps * max|W| to every Wigner matrix")
    ver.add_argument("--out", default=None, help="write the JSON report to <stem>.json")
    ver.add_argument("--serial", action="store_true", help="run checks one at a time")
    return parser


def _grid(args) -> Grid:
    if args.t0 is None:
        return Grid.centered(args.n, args.dt)
    return Grid(t0=args.t0, dt=args.dt, n=args.n)


def _cmd_gen(args) -> int:
    grid = _grid(args)
    if args.kind == "tone":
        f = gen_tone(grid, args.xi0, args.amplitude)
    elif args.kind == "gaussian":
        p = GaussianParams(args.a, args.b)
        p = p.normalized() if args.c is None else GaussianParams(args.a, args.b, args.c)
        f = gen_gaussian(grid, p)
    elif args.kind == "chirp":
        params = ChirpParams(args.rate) if args.rate is not None else ChirpParams.from_eta0(args.eta0)
        env = None if args.envelope_a is None else GaussianParams(args.envelope_a, args.envelope_b)
        f = gen_chirp(grid, params, env)
    else:
        f = gen_bandlimited(grid, args.band, args.seed)
    tfio.write_signal(f, args.out)
    return EXIT_OK


def _cmd_wigner(args) -> int:
    f = tfio.read_signal(args.input)
    tfio.write_matrix(wigner(f, args.boundary), args.out)
    return EXIT_OK


def _cmd_stft(args) -> int:
    f = tfio.read_signal(args.input)
    w = gaussian_window(f.grid.dt, args.window_a, max_len=f.grid.n - 1)
    V = stft(f, w, freq_oversample=args.freq_oversample, hop=args.hop)
    tfio.write_matrix(V, args.out)
    return EXIT_OK


def _cmd_if(args) -> int:
    f = tfio.read_signal(args.input)
    phase = if_phase_gradient(f, args.threshold, args.method)
    moment = if_moment(f, args.threshold, args.boundary)
    summary = compare_if(phase, moment)
    if summary["n_compared"] == 0:
        print("warning: no jointly valid samples; comparison is empty", file=sys.stderr)
    out = Path(args.out)
    tfio.write_if_track(phase, out.with_name(out.name + ".phase"))
    tfio.write_if_track(moment, out.with_name(out.name + ".moment"))
    tfio.write_json(summary, out.with_name(out.name + ".summary.json"))
    print(json.dumps(summary))
    return EXIT_OK


def _cmd_cone(args) -> int:
    f = tfio.read_signal(args.input)
    w = gaussian_window(f.grid.dt, args.window_a)
    report = classify_vcon(f, w, args.slopes, n_shells=args.n_shells)
    out = Path(args.out)
    tfio.write_json(report.to_dict(), out.with_name(out.name + ".json"))
    print(json.dumps({"critical_B_estimate": report.critical_B_estimate,
                      "classes": report.classes(), "monotone": report.monotone}))
    if report.diagnostic_failure:
        print("cone classes are not monotone in the slope", file=sys.stderr)
        return EXIT_DIAGNOSTIC
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = run_verification(args.only, args.perturb, parallel=not args.serial)
    print(report.table())
    if args.out:
        out = Path(args.out)
        tfio.write_json(report.to_dict(), out.with_name(out.name + ".json"))
    return EXIT_OK if report.all_passed else EXIT_FAIL


COMMANDS = {"gen": _cmd_gen, "wigner": _cmd_wigner, "stft": _cmd_stft, "if": _cmd_if,
            "cone": _cmd_cone, "verify": _cmd_verify}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with np.errstate(all="ignore"):
            return COMMANDS[args.command](args)
    except RealnessError as exc:
        print(f"tf {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except FileNotFoundError as exc:
        print(f"tf {args.command}: missing input: {exc.filename or exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TFError, ValueError) as exc:
        print(f"tf {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
