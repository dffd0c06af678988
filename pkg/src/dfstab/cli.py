"""Command-line front end.

Exit codes: 0 success / verified positive, 1 verified negative, 2 input or
parse error, 3 numerical failure, 4 operator not representable in the
requested formalism.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .lindblad import LindbladModel, TraceDriftError, evolve
from .metrology import COLLECTIVE, INDEPENDENT, run_protocol
from .models import ModelParseError, load_model, load_preset
from .stabilizer import DFS, SDFS, verify_theorem_7
from .vecform import verify_vec_theorem
from .zeta import NotZetaRepresentable, verify_theorem_16

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_NUMERICAL = 3
EXIT_REPRESENTABILITY = 4


def tolerance() -> float:
    raw = os.environ.get("DFSTAB_TOL", "")
    if not raw:
        return 1e-10
    try:
        tol = float(raw)
    except ValueError:
        raise ModelParseError(f"DFSTAB_TOL: expected a float, got {raw!r}") from None
    if tol <= 0:
        raise ModelParseError(f"DFSTAB_TOL: must be positive, got {tol}")
    return tol


def _add_model_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", help="path to a JSON model file")
    src.add_argument("--preset", help="bundled model: example1, example2, example_hl")
    p.add_argument("--r", type=float, default=0.5, help="squeezing parameter for presets")


def _resolve_model(args: argparse.Namespace) -> tuple[LindbladModel, list[complex] | None]:
    if args.preset:
        return load_preset(args.preset, r=args.r)
    return load_model(args.model), None


def _parse_state(spec: str, model: LindbladModel, eigvals, kind: str) -> np.ndarray:
    dim = 2**model.n_qubits
    if spec.startswith("ket:"):
        bits = spec[4:]
        if len(bits) != model.n_qubits or any(c not in "01" for c in bits):
            raise ModelParseError(f"--state {spec!r}: expected {model.n_qubits} bits after ket:")
        v = np.zeros(dim, dtype=complex)
        v[int(bits, 2)] = 1.0
        return v
    if spec.startswith("code:"):
        try:
            idx = int(spec[5:])
        except ValueError:
            raise ModelParseError(f"--state {spec!r}: expected integer index after code:") from None
        rep = verify_theorem_7(model, kind, eigvals)
        if rep.code is None or rep.code.dim == 0:
            raise ModelParseError("--state code: model has no stabilizer code vectors")
        if not 0 <= idx < rep.code.dim:
            raise ModelParseError(f"--state code:{idx}: index out of range 0..{rep.code.dim - 1}")
        return rep.code.basis[:, idx]
    try:
        amps = np.array([complex(x) for x in spec.split(",")])
    except ValueError as exc:
        raise ModelParseError(f"--state {spec!r}: {exc}") from exc
    if amps.shape[0] != dim:
        raise ModelParseError(f"--state: expected {dim} amplitudes, got {amps.shape[0]}")
    norm = np.linalg.norm(amps)
    if norm < 1e-12:
        raise ModelParseError("--state: zero vector")
    return amps / norm


def cmd_check(args: argparse.Namespace) -> int:
    model, hint = _resolve_model(args)
    report = verify_theorem_7(model, args.kind, hint, tol=tolerance())
    print(report.to_text())
    return EXIT_OK if (report.is_stabilizer_code and report.is_dfs) else EXIT_NEGATIVE


def cmd_encode(args: argparse.Namespace) -> int:
    model, hint = _resolve_model(args)
    if args.formalism == "zeta":
        try:
            report = verify_theorem_16(model, args.kind, hint)
        except NotZetaRepresentable as exc:
            print(f"error: operator is not representable in the zeta formalism: {exc}")
            print("hint: rerun with --formalism vec, which covers sums of products")
            return EXIT_REPRESENTABILITY
    else:
        report = verify_vec_theorem(model, args.kind, hint, strict=not args.lenient)
    print(report.to_text())
    return EXIT_OK if report.success else EXIT_NEGATIVE


def cmd_simulate(args: argparse.Namespace) -> int:
    model, hint = _resolve_model(args)
    psi = _parse_state(args.state, model, hint, args.kind)
    rho0 = np.outer(psi, psi.conj())
    try:
        traj = evolve(model, rho0, args.t, dt=args.dt)
    except TraceDriftError as exc:
        print(f"numerical failure: {exc}")
        return EXIT_NUMERICAL
    if args.out:
        traj.to_csv(args.out)
        print(f"wrote {len(traj.times)} samples to {args.out}")
    print(f"min_purity = {float(np.min(traj.purities)):.12f}")
    print(f"max_purity = {float(np.max(traj.purities)):.12f}")
    return EXIT_OK


def cmd_metrology(args: argparse.Namespace) -> int:
    model, hint = _resolve_model(args)
    report = run_protocol(
        model, n_max=args.nmax, kind=args.kind, eigvals=hint, coupling=args.coupling
    )
    print(report.to_text())
    if args.out:
        report.to_csv(args.out)
        print(f"wrote QFI table to {args.out}")
    return EXIT_OK if report.hl_achievable else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfstab",
        description="Decoherence-free stabilizer codes from Lindblad models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify the stabilizer-code construction")
    _add_model_args(p)
    p.add_argument("--kind", choices=[DFS, SDFS], default=DFS)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("encode", help="classical-code existence check")
    _add_model_args(p)
    p.add_argument("--kind", choices=[DFS, SDFS], default=DFS)
    p.add_argument("--formalism", choices=["zeta", "vec"], default="zeta")
    p.add_argument(
        "--lenient", action="store_true",
        help="vec formalism: skip the commutator check on dual membership",
    )
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("simulate", help="integrate the master equation")
    _add_model_args(p)
    p.add_argument("--kind", choices=[DFS, SDFS], default=DFS)
    p.add_argument(
        "--state", required=True,
        help="initial pure state: ket:BITS, code:INDEX, or comma-separated amplitudes",
    )
    p.add_argument("--t", type=float, required=True, help="final time")
    p.add_argument("--dt", type=float, default=None, help="step size (default: auto)")
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("metrology", help="Heisenberg-limit probing protocol")
    _add_model_args(p)
    p.add_argument("--kind", choices=[DFS, SDFS], default=SDFS)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--coupling", choices=[INDEPENDENT, COLLECTIVE], default=INDEPENDENT)
    p.add_argument("--out", help="CSV output path for the QFI table")
    p.set_defaults(func=cmd_metrology)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModelParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotZetaRepresentable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REPRESENTABILITY
    except TraceDriftError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
