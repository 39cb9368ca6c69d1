"""Command-line front end: ``mandelmat <command> [flags]``.

Exit status is 0 on success, 1 when a check fails or an iteration does not
converge, and 2 for usage errors (bad flags, orders out of range).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import graph, homotopy, io, matrices, perronvec, plotdata, polyeval, spectra, verify
from .errors import DomainError, InvalidOrderError, NonConvergenceError, PathCollisionError, SizeError

OUT_ENV = "MANDELMAT_OUT"
COMMANDS = ("gen", "perron", "eigvec", "svd", "svals", "spectrum", "homotopy", "verify", "export")
FORMATS = {
    "gen": ("mm", "dot"),
    "perron": ("json",),
    "eigvec": ("csv", "json"),
    "svd": ("csv", "json"),
    "svals": ("csv", "json"),
    "spectrum": ("csv", "json"),
    "homotopy": ("csv", "json"),
    "verify": ("json",),
    "export": ("csv",),
}

_SCHEMA_HELP = "CSV schemas written by export:\n" + "\n".join(
    f"  {k:17} {', '.join(cols)}" for k, cols in plotdata.SCHEMAS.items()
)


class UsageError(Exception):
    pass


def _order(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"order must be an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("order must be >= 1")
    return n


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mandelmat",
        description="Mandelbrot matrices: generation, dominant eigen/singular structure, homotopy paths.",
        epilog=_SCHEMA_HELP + f"\n\nDefault output directory: ${OUT_ENV} (else the current directory).",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text, n_required=True):
        sp = sub.add_parser(name, help=help_text, description=help_text, epilog=_SCHEMA_HELP,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        if n_required is not None:
            sp.add_argument("--n", type=_order, required=n_required, help="matrix order (dimension 2**n - 1)")
        sp.add_argument("--out", help="output file or directory")
        sp.add_argument("--format", choices=FORMATS[name], help="output format")
        sp.add_argument("--allow-large", action="store_true", help="raise the dense-solver size ceilings")
        return sp

    g = add("gen", "write M_n (Matrix Market) or its digraph (DOT)")
    g.add_argument("--matrix", choices=("M", "S", "JW", "inverse"), default="M")
    pr = add("perron", "Perron root by Newton's method")
    pr.add_argument("--tol", type=_positive, default=polyeval.DEFAULT_NEWTON_TOL)
    e = add("eigvec", "dominant eigenvector")
    e.add_argument("--normalization", choices=perronvec.NORMALIZATIONS, default="last_entry_one")
    e.add_argument("--method", choices=("recursive", "solve"), default="recursive")
    s = add("svd", "largest singular value and its vectors by power iteration")
    s.add_argument("--tol", type=_positive, default=1e-10)
    add("svals", "all singular values (dense)")
    add("spectrum", "all eigenvalues (dense)")
    h = add("homotopy", "eigenvalue paths of T(eps) from S_n to S_{n+1}")
    h.add_argument("--steps", type=int, default=256)
    h.add_argument("--tol", type=_positive, default=1e-10)
    v = add("verify", "invariant suite with a pass/fail table", n_required=None)
    v.add_argument("--max-n", type=_order, default=10)
    x = add("export", "plot data as CSV")
    x.add_argument("--kind", choices=plotdata.KINDS, required=True)
    x.add_argument("--normalization", choices=perronvec.NORMALIZATIONS, default="first_entry_one")
    x.add_argument("--steps", type=int, default=256)
    x.add_argument("--n-min", type=_order, default=7, help="smallest order for svals_all")
    return p


def _target(args, default_name: str, required: bool) -> Path | None:
    if args.out is None:
        if not required and OUT_ENV not in os.environ:
            return None
        return Path(os.environ.get(OUT_ENV, ".")) / default_name
    out = Path(args.out)
    if out.is_dir() or args.out.endswith(("/", os.sep)):
        return out / default_name
    return out


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_gen(args) -> int:
    fmt = args.format or "mm"
    n = args.n
    if fmt == "dot":
        path = _target(args, f"G_{n}.dot", True)
        io.export_dot(graph.digraph(n), path, name=f"G_{n}")
        _emit(f"wrote {path}")
        return 0
    build = {
        "M": matrices.mandelbrot_matrix,
        "S": matrices.s_matrix,
        "JW": matrices.jordan_wielandt,
        "inverse": matrices.mandelbrot_inverse,
    }[args.matrix]
    m = build(n)
    path = _target(args, f"{args.matrix}_{n}.mtx", True)
    io.export_matrix_market(m, path)
    io.export_sidecar(path.with_suffix(".json"), n=n, dim=m.dim, nnz=m.nnz, kind=args.matrix)
    _emit(f"wrote {path} ({m.dim}x{m.dim}, {m.nnz} entries)")
    return 0


def _cmd_perron(args) -> int:
    r = polyeval.perron_root(args.n, tol=args.tol)
    if args.format == "json":
        _emit(json.dumps({"n": r.n, "rho": r.rho, "seed": r.seed, "iterations": r.iterations,
                          "residual": r.residual}, sort_keys=True))
    else:
        _emit(f"rho_{r.n} = {r.rho:.14f}\nseed = {r.seed:.14f}\niterations = {r.iterations}\n"
              f"residual = {r.residual:.3e}")
    return 0


def _cmd_eigvec(args) -> int:
    fn = perronvec.eigenvector_recursive if args.method == "recursive" else perronvec.eigenvector_solve
    v = perronvec.renormalize(fn(args.n), args.normalization)
    x = v.components
    path = _target(args, f"eigvec_{args.n}.csv", False)
    if path is not None:
        if args.format == "json":
            io.write_json(path, {"n": v.n, "rho": v.rho, "normalization": v.normalization,
                                 "components": x.tolist()})
        else:
            io.write_csv(path, ("index", "component", "log2_component"),
                         ((i + 1, c, float(np.log2(c))) for i, c in enumerate(x.tolist())))
        _emit(f"wrote {path}")
    _emit(f"n = {v.n}  d = {v.dim}  rho = {v.rho:.15g}  method = {v.method}  normalization = {v.normalization}\n"
          f"x_1 = {x[0]:.15g}  x_mid = {x[(1 << (v.n - 1)) - 1]:.15g}  x_d = {x[-1]:.15g}\n"
          f"min = {x.min():.6e}  max = {x.max():.6e}  residual = {perronvec.residual(v):.3e}")
    return 0


def _cmd_svd(args) -> int:
    t = spectra.dominant_singular_triple(args.n, tol=args.tol)
    bound = spectra.conjectured_sigma_bound(args.n)
    path = _target(args, f"singvec_{args.n}.csv", False)
    if path is not None:
        if args.format == "json":
            io.write_json(path, {"n": t.n, "sigma": t.sigma, "u": t.u.tolist(), "iterations": t.iterations})
        else:
            io.write_csv(path, ("index", "u", "log2_u"),
                         ((i + 1, c, float(np.log2(c))) for i, c in enumerate(t.u.tolist())))
        _emit(f"wrote {path}")
    _emit(f"sigma_1 = {t.sigma:.15g}  iterations = {t.iterations}  residual = {t.residual:.3e}\n"
          f"bound = {bound:.15g}  slack = {(bound - t.sigma) / t.sigma:.4%}")
    return 0


def _cmd_svals(args) -> int:
    sv = spectra.all_singular_values(args.n, allow_large=args.allow_large)
    path = _target(args, f"svals_{args.n}.csv", False)
    if path is not None:
        if args.format == "json":
            io.write_json(path, {"n": sv.n, "sigmas": sv.sigmas.tolist(), "s_eigs": sv.s_eigs.tolist()})
        else:
            io.write_csv(path, ("k", "sigma", "s_eig"),
                         ((k, s, e) for k, (s, e) in enumerate(zip(sv.sigmas.tolist(), sv.s_eigs.tolist()), 1)))
        _emit(f"wrote {path}")
    else:
        _emit("\n".join(f"{s:.15g}" for s in sv.sigmas.tolist()))
    return 0


def _cmd_spectrum(args) -> int:
    w = polyeval.spectrum_small(args.n, allow_large=args.allow_large)
    path = _target(args, f"spectrum_{args.n}.csv", False)
    if path is not None:
        if args.format == "json":
            io.write_json(path, {"n": args.n, "re": w.real.tolist(), "im": w.imag.tolist()})
        else:
            io.write_csv(path, ("index", "re", "im"), ((i + 1, z.real, z.imag) for i, z in enumerate(w.tolist())))
        _emit(f"wrote {path}")
    else:
        _emit("\n".join(f"{z.real:.15g} {z.imag:+.15g}" for z in w.tolist()))
    return 0


def _cmd_homotopy(args) -> int:
    paths = homotopy.track_paths(args.n, steps=args.steps, tol=args.tol, allow_large=args.allow_large)
    ends = np.array([p.converged_end for p in paths])
    order = args.n + 1
    slack = homotopy.sigma_bound_check(order)
    disc = homotopy.discriminant_positivity(args.n) if args.n <= homotopy.DISCRIMINANT_CEILING else None
    path = _target(args, f"homotopy_{args.n}.{args.format or 'csv'}", False)
    if path is not None:
        if args.format == "json":
            io.write_json(path, {"n": order, "slack": slack, "discriminant_positive": disc})
        else:
            io.write_csv(path, ("path_id", "t", "abs_lambda", "lambda_squared"),
                         ((i, args.n + e, abs(lam), lam * lam)
                          for i, p in enumerate(paths) for e, lam in p.samples))
        _emit(f"wrote {path}")
    _emit(f"{len(paths)} paths  min separation = {homotopy.min_separation(paths):.3e}  "
          f"max residual = {max(p.max_residual for p in paths):.3e}\n"
          f"|lambda(1)| > 1: {homotopy.count_above_one(ends)}  gap near 1 = {homotopy.gap_near_one(ends):.4g}\n"
          f"bound slack at n={order}: {slack:.4%}  discriminant positive: {disc}")
    return 0


def _cmd_verify(args) -> int:
    results = verify.run_suite(args.max_n)
    report = verify.format_report(results)
    _emit(report)
    path = _target(args, f"verify_{args.max_n}.{'json' if args.format == 'json' else 'txt'}", False)
    if path is not None:
        if args.format == "json":
            io.write_json(path, [r.as_dict() for r in results])
        else:
            io.atomic_write_text(path, report)
    return 0 if all(r.passed for r in results) else 1


def _cmd_export(args) -> int:
    path = _target(args, f"{args.kind}_{args.n}.csv", True)
    plotdata.export_plot_data(args.kind, args.n, path, allow_large=args.allow_large,
                              normalization=args.normalization, n_min=args.n_min, steps=args.steps)
    _emit(f"wrote {path}")
    return 0


HANDLERS = {name: globals()[f"_cmd_{name}"] for name in COMMANDS}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "steps", 1) < 1:
            raise UsageError("--steps must be >= 1")
        return HANDLERS[args.command](args)
    except (UsageError, InvalidOrderError, SizeError, DomainError) as exc:
        print(f"mandelmat {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (NonConvergenceError, PathCollisionError, AssertionError) as exc:
        print(f"mandelmat {args.command}: failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
