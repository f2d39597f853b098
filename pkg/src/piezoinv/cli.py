"""Command-line interface: ``piezoinv <subcommand> ...``.

Exit codes: 0 success (or orbits equal), 1 orbits differ / property failed,
2 usage error, 3 invalid input, 4 internal inconsistency.
"""

import argparse
import os
import sys

import numpy as np

from . import io as tio
from .canonical import InconsistentGroupError, align, canonicalize, orbit_equal
from .decomposition import decompose
from .tensor_core import PiezoTensor
from .verify import random_harmonic, random_piezo, random_symmetric, run_suite

EXIT_OK, EXIT_DIFFER, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3, 4


def default_tol() -> float:
    env = os.environ.get("PIEZO_TOL")
    if env:
        try:
            val = float(env)
        except ValueError:
            raise SystemExit(f"piezoinv: PIEZO_TOL is not a number: {env!r}") from None
        if val > 0:
            return val
    return 1e-8


def _positive(s):
    x = float(s)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=tio.FORMATS, default="auto",
                        help="input layout (default: auto)")
    common.add_argument("--tol", type=_positive, default=None,
                        help="relative tolerance (default 1e-8 or $PIEZO_TOL)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", "-o", default=None, help="write the report here")
    common.add_argument("--quiet", "-q", action="store_true", help="no report on stdout")

    p = argparse.ArgumentParser(prog="piezoinv", description="Hemitropic invariants of piezoelectric tensors.")
    sub = p.add_subparsers(dest="cmd", required=True)
    for name, hlp in (("decompose", "harmonic parts (A, u, D, v)"),
                      ("invariants", "the 260 basis invariants and their degrees"),
                      ("canonical", "canonical form, case tag and residuals")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("input", help="JSON or CSV tensor file (batches allowed)")
    for name, hlp in (("equal", "decide whether two tensors share an SO(3) orbit"),
                      ("align", "numerically best rotation taking A onto B")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("a")
        s.add_argument("b")
        if name == "align":
            s.add_argument("--starts", type=int, default=32)
        else:
            s.add_argument("--top", type=int, default=5, help="worst residuals to list")
    sub.add_parser("verify", parents=[common], help="run the seeded property suite")
    s = sub.add_parser("gen", parents=[common], help="random tensors")
    s.add_argument("--kind", choices=("general", "harmonic", "symmetric"), default="general")
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--csv", action="store_true", help="emit CSV rows instead of JSON")
    return p


def _emit(args, text):
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    if not args.quiet:
        sys.stdout.write(text)


def _single_or_list(items):
    return items[0] if len(items) == 1 else items


def _cmd_decompose(args, tol):
    docs = tio.parse_batch(args.input, args.format)
    out = [{"name": d.name, **tio.parts_obj(decompose(d.tensor))} for d in docs]
    _emit(args, tio.dumps(_single_or_list(out)))
    return EXIT_OK


def _cmd_invariants(args, tol):
    docs = tio.parse_batch(args.input, args.format)
    out = [{"name": d.name, **tio.invariants_obj(d.tensor)} for d in docs]
    _emit(args, tio.dumps(_single_or_list(out)))
    return EXIT_OK


def _cmd_canonical(args, tol):
    docs = tio.parse_batch(args.input, args.format)
    out, code = [], EXIT_OK
    for d in docs:
        try:
            out.append({"name": d.name, **tio.canonical_obj(canonicalize(d.tensor, tol=tol))})
        except InconsistentGroupError as e:
            out.append({"name": d.name, "error": str(e), "equation": e.equation})
            code = EXIT_INTERNAL
    _emit(args, tio.dumps(_single_or_list(out)))
    return code


def _cmd_equal(args, tol):
    a = tio.parse_tensor(args.a, args.format)
    b = tio.parse_tensor(args.b, args.format)
    res = orbit_equal(a.tensor, b.tensor, tol=tol)
    out = {"equal": res.equal, "tol": tol,
           "worst": [{"id": k, "residual": r} for k, r in res.worst(args.top)]}
    _emit(args, tio.dumps(out))
    return EXIT_OK if res.equal else EXIT_DIFFER


def _cmd_align(args, tol):
    a = tio.parse_tensor(args.a, args.format)
    b = tio.parse_tensor(args.b, args.format)
    if args.starts < 1:
        raise _Usage("--starts must be >= 1")
    g, r = align(a.tensor, b.tensor, starts=args.starts, seed=args.seed)
    _emit(args, tio.dumps({"rotation": g.tolist(), "residual": r}))
    return EXIT_OK


def _cmd_verify(args, tol):
    results = run_suite(args.seed)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}: {detail}" for name, ok, detail in results]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_DIFFER


def _cmd_gen(args, tol):
    if args.count < 1:
        raise _Usage("--count must be >= 1")
    rng = np.random.default_rng(args.seed)
    make = {"general": random_piezo,
            "harmonic": lambda r: random_harmonic(r).full,
            "symmetric": random_symmetric}[args.kind]
    docs = [tio.TensorDocument(PiezoTensor.from_full(make(rng)), f"{args.kind}-{i + 1}",
                               {"kind": args.kind, "seed": args.seed})
            for i in range(args.count)]
    form = "full" if args.format == "full" else "compact"
    if args.csv:
        text = tio.to_csv(docs)
    else:
        text = tio.serialize(docs[0] if len(docs) == 1 else docs, form)
    _emit(args, text)
    return EXIT_OK


class _Usage(Exception):
    pass


COMMANDS = {"decompose": _cmd_decompose, "invariants": _cmd_invariants,
            "canonical": _cmd_canonical, "equal": _cmd_equal, "align": _cmd_align,
            "verify": _cmd_verify, "gen": _cmd_gen}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    tol = args.tol if args.tol is not None else default_tol()
    try:
        return COMMANDS[args.cmd](args, tol)
    except _Usage as e:
        parser.print_usage(sys.stderr)
        print(f"piezoinv: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (tio.TensorFormatError, OSError) as e:
        print(f"piezoinv: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistentGroupError as e:
        print(f"piezoinv: inconsistent group: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
