"""Invariant suite behind ``mandelmat verify``.

Every check yields a :class:`CheckResult` with a measured statistic, so the
report shows how close each invariant came to its limit, not just a verdict.
The report text contains no timings and the computations use fixed starts,
so repeated runs give byte-identical output.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterator

import numpy as np

from . import graph, homotopy, matrices, perronvec, polyeval, spectra


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    n: int
    statistic: float
    limit: str
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _r(module, name, n, stat, limit, passed) -> CheckResult:
    return CheckResult(module, name, n, float(stat), limit, bool(passed))


def _matgen(n: int) -> Iterator[CheckResult]:
    m = matrices.mandelbrot_matrix(n)
    d = m.dim
    yield _r("matgen", "det_M", n, matrices.hessenberg_det(m), "== 1", matrices.hessenberg_det(m) == 1)
    yield _r("matgen", "nnz", n, m.nnz, "== 2d-1", m.nnz == 2 * d - 1)
    yield _r("matgen", "norm_1_inf", n, max(m.norm_1(), m.norm_inf()), "== n", m.norm_1() == m.norm_inf() == n)
    inv = matrices.mandelbrot_inverse(n)
    eye = matrices.SparseIntMatrix.from_dense(np.eye(d, dtype=np.int64))
    yield _r("matgen", "inverse_identity", n, 0, "exact", (m @ inv) == eye and (inv @ m) == eye)
    yield _r(
        "matgen", "inverse_norms", n, max(inv.norm_1(), inv.norm_inf()), "== 2n-1",
        inv.norm_1() == inv.norm_inf() == 2 * n - 1,
    )
    yield _r("matgen", "inverse_entries", n, int(np.abs(inv.values).max()), "in {-1,0,1}", np.abs(inv.values).max() <= 1)
    g = graph.digraph(n)
    yield _r("matgen", "digraph_pattern", n, len(g.edges), "== nnz", g.edge_set() == set((i, j) for i, j, _ in m.entries()))
    strong = graph.is_strongly_connected(g)
    per = graph.period(g) if strong else 0
    yield _r("matgen", "strong_period", n, per, "connected, period 1", strong and per == 1)
    s = matrices.s_matrix(n)
    yield _r("matgen", "S_equals_MJ", n, s.nnz, "exact", s == matrices.reverse_columns(m) and s.is_symmetric())


def _polyeval(n: int) -> Iterator[CheckResult]:
    z = np.linspace(1.5, 2.0, 20)
    # roots crowd together like 4**-n, so the difference step shrinks with n
    h = 1e-4 * 3.0**-n
    ev = polyeval.eval_C(n, z)
    fd = (polyeval.eval_C(n, z + h).value - polyeval.eval_C(n, z - h).value) / (2 * h)
    rel = float(np.max(np.abs(fd - ev.derivative) / np.maximum(np.abs(ev.derivative), 1.0)))
    yield _r("polyeval", "derivative_fd", n, rel, "<= 1e-6", rel <= 1e-6)
    pr = polyeval.perron_root(n)
    seed = polyeval.perron_seed(n)
    # the seed is 1.4e-3 above rho_3, so the 1e-3 window only applies from n = 4
    inside = pr.rho < 2.0 and (n < 4 or pr.rho > seed - 1e-3)
    yield _r("polyeval", "perron_window", n, seed - pr.rho, "seed-1e-3 < rho < 2", inside)
    if n <= polyeval.DENSE_SPECTRUM_CEILING:
        w = polyeval.spectrum_small(n)
        k = int(np.argmax(np.abs(w)))
        second = np.sort(np.abs(w))[-2] if w.size > 1 else 0.0
        err = abs(w[k] - pr.rho)
        ok = abs(w[k].imag) < 1e-12 and err <= 1e-8 and np.abs(w[k]) > second
        yield _r("polyeval", "dense_dominant", n, err, "<= 1e-8", ok)


def _perronvec(n: int) -> Iterator[CheckResult]:
    solve = perronvec.eigenvector_solve(n)
    rec = perronvec.eigenvector_recursive(n)
    d = solve.dim
    for v in (solve, rec):
        res = perronvec.residual(v)
        yield _r("perronvec", f"residual_{v.method}", n, res, "<= 1e-10 d", res <= 1e-10 * d)
        yield _r("perronvec", f"positive_{v.method}", n, v.components.min(), "> 0", v.components.min() > 0)
    dev = perronvec.max_relative_deviation(solve, rec)
    limit = 5 * 8e-18 * d * d
    yield _r("perronvec", "solve_vs_recursive", n, dev, f"<= {limit:.2e}", dev <= limit)
    if n >= 2:
        _, spread = perronvec.half_scaling_factor(rec, tol=math.inf, return_deviation=True)
        yield _r("perronvec", "half_scaling", n, spread, "<= 1e-10", spread <= 1e-10)
        bal = perronvec.first_row_balance(rec)
        yield _r("perronvec", "first_row_balance", n, bal, "<= 1e-10", bal <= 1e-10)


def _spectra(n: int) -> Iterator[CheckResult]:
    try:
        spectra.s_facts_check(n)
        ok = True
    except AssertionError:
        ok = False
    yield _r("spectra", "S_facts", n, spectra.s_determinant(n)[0], "det,trace,S^2 exact", ok)
    if n <= spectra.DENSE_SVD_CEILING:
        sv = spectra.all_singular_values(n)
        logprod = abs(float(np.sum(np.log(sv.sigmas))))
        yield _r("spectra", "product_sigma", n, logprod, "|log prod| <= 1e-8", logprod <= 1e-8)
        if n >= 2:
            yield _r("spectra", "sign_alternation", n, sv.sigmas.size, "alternating", spectra.alternates_in_sign(sv.s_eigs))
        yield _r("spectra", "jordan_wielandt", n, sv.sigmas[0], "+- pairs", spectra.jw_pairing_check(n))
    tri = spectra.dominant_singular_triple(n)
    bound_ok = tri.sigma < n if n >= 2 else tri.sigma <= n
    yield _r("spectra", "sigma_below_n", n, tri.sigma, "< n", bound_ok)
    yield _r("spectra", "u_positive", n, tri.u.min(), "> 0", tri.u.min() > 0)
    trt = spectra.dominant_singular_triple(n, transpose=True)
    swap = max(float(np.max(np.abs(trt.u - tri.v))), float(np.max(np.abs(trt.v - tri.u))))
    yield _r("spectra", "transpose_swap", n, swap, "<= 1e-8", swap <= 1e-8)


def _homotopy(n: int) -> Iterator[CheckResult]:
    paths = homotopy.track_paths(n)
    ends = np.sort(np.abs([p.converged_end for p in paths]))[::-1]
    sig = spectra.all_singular_values(n + 1).sigmas
    err = float(np.max(np.abs(ends - sig)))
    yield _r("homotopy", "endpoints", n, err, "<= 1e-8", err <= 1e-8)
    zero = next(p for p in paths if p.start_value == 0.0)
    top = float(np.max(np.abs(zero.lam)))
    yield _r("homotopy", "zero_path_below_1", n, top, "< 1", top < 1)
    above = homotopy.count_above_one(ends)
    yield _r("homotopy", "count_above_1", n, above, "== 2^n", above == 1 << n)
    yield _r("homotopy", "gap_near_1", n, homotopy.gap_near_one(ends), "measured", True)
    yield _r("homotopy", "min_separation", n, homotopy.min_separation(paths), "> 0", homotopy.min_separation(paths) > 0)


SUITES: dict[str, tuple[Callable[[int], Iterator[CheckResult]], int]] = {
    "matgen": (_matgen, 12),
    "polyeval": (_polyeval, 12),
    "perronvec": (_perronvec, 14),
    "spectra": (_spectra, 14),
    "homotopy": (_homotopy, homotopy.TRACKING_CEILING),
}


def run_suite(max_n: int = 10, modules=None) -> list[CheckResult]:
    """All checks for ``1 <= n <= max_n`` (each module capped at its own ceiling)."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    out = []
    for name, (fn, cap) in SUITES.items():
        if modules is not None and name not in modules:
            continue
        top = min(max_n, cap)
        if name == "homotopy":
            top = min(max_n - 1, cap)
        for n in range(1, top + 1):
            out.extend(fn(n))
    return out


def format_report(results: list[CheckResult]) -> str:
    lines = [f"{'status':6} {'module':9} {'check':22} {'n':>3}  {'statistic':>12}  limit"]
    for r in results:
        lines.append(
            f"{'PASS' if r.passed else 'FAIL':6} {r.module:9} {r.name:22} {r.n:>3}  {r.statistic:>12.4e}  {r.limit}"
        )
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results)} checks, {failed} failed")
    return "\n".join(lines) + "\n"
