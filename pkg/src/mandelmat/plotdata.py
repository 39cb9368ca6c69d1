"""CSV tables behind the eigenvector, spectrum, singular value and homotopy plots.

Schemas (one header row each):

``eigvec``           index, component, log2_component  (first entry one)
``singvec``          index, u, log2_u                   (unit 2-norm, u > 0)
``spectrum_complex`` index, re, im
``svals_all``        n, k, log2_k, sigma, log2_sigma    (orders n_min..n)
``homotopy``         stage, path_id, t, epsilon, lambda, abs_lambda,
                     lambda_squared, bound_squared       (stages 1..n-1)
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .homotopy import FIGURE_HEADER, chained_figure_data
from .io import write_csv
from .perronvec import eigenvector_recursive, renormalize
from .polyeval import spectrum_small
from .spectra import all_singular_values, dominant_singular_triple

KINDS = ("eigvec", "singvec", "spectrum_complex", "svals_all", "homotopy")
SCHEMAS = {
    "eigvec": ("index", "component", "log2_component"),
    "singvec": ("index", "u", "log2_u"),
    "spectrum_complex": ("index", "re", "im"),
    "svals_all": ("n", "k", "log2_k", "sigma", "log2_sigma"),
    "homotopy": FIGURE_HEADER,
}


def plot_rows(kind: str, n: int, *, allow_large: bool = False, normalization: str = "first_entry_one",
              n_min: int = 7, steps: int = 256):
    """Rows for ``kind`` at order ``n`` (the largest order for multi-order kinds)."""
    if kind == "eigvec":
        x = renormalize(eigenvector_recursive(n), normalization).components
        return [(i + 1, v, math.log2(v)) for i, v in enumerate(x.tolist())]
    if kind == "singvec":
        u = dominant_singular_triple(n).u
        return [(i + 1, v, math.log2(v)) for i, v in enumerate(u.tolist())]
    if kind == "spectrum_complex":
        w = spectrum_small(n, allow_large=allow_large)
        return [(i + 1, float(z.real), float(z.imag)) for i, z in enumerate(w)]
    if kind == "svals_all":
        rows = []
        for order in range(min(n_min, n), n + 1):
            sig = all_singular_values(order, allow_large=allow_large).sigmas
            rows.extend(
                (order, k, math.log2(k), s, math.log2(s)) for k, s in enumerate(sig.tolist(), start=1)
            )
        return rows
    if kind == "homotopy":
        return chained_figure_data(n, steps=steps, allow_large=allow_large).rows
    raise ValueError(f"unknown plot kind {kind!r}; expected one of {KINDS}")


def export_plot_data(kind: str, n: int, path, **kwargs) -> Path:
    """Write the ``kind`` table for order ``n`` to ``path`` as CSV."""
    rows = plot_rows(kind, n, **kwargs)
    return write_csv(path, SCHEMAS[kind], rows)


def summarize(values, band_base: float = 2.0) -> dict:
    """Count, min, max and counts per ``floor(log2 |v|)`` band (zeros in band ``"zero"``)."""
    v = np.asarray(values, dtype=float)
    bands: dict[str, int] = {}
    mags = np.abs(v)
    nz = mags[mags > 0]
    for b in np.floor(np.log(nz) / math.log(band_base)).astype(int).tolist():
        bands[str(b)] = bands.get(str(b), 0) + 1
    if nz.size < v.size:
        bands["zero"] = int(v.size - nz.size)
    return {
        "count": int(v.size),
        "min": float(v.min()),
        "max": float(v.max()),
        "log2_bands": dict(sorted(bands.items())),
    }
