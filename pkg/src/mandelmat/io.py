"""File formats: Matrix Market, DOT, JSON sidecars and CSV tables.

All writers are whole-file atomic (write to a temporary sibling, then rename)
and emit UTF-8.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .graph import DigraphEdgeList
from .matrices import SparseIntMatrix

MM_HEADER = "%%MatrixMarket matrix coordinate integer general"


def atomic_write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def format_matrix_market(m: SparseIntMatrix) -> str:
    lines = [MM_HEADER, f"{m.dim} {m.dim} {m.nnz}"]
    lines.extend(f"{i} {j} {v}" for i, j, v in m.entries())
    return "\n".join(lines) + "\n"


def export_matrix_market(m: SparseIntMatrix, path) -> Path:
    return atomic_write_text(path, format_matrix_market(m))


def read_matrix_market(path) -> SparseIntMatrix:
    """Read a coordinate integer general file as written by :func:`export_matrix_market`."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header.lower() != MM_HEADER.lower():
            raise ValueError(f"unsupported Matrix Market header: {header!r}")
        line = fh.readline()
        while line.startswith("%"):
            line = fh.readline()
        nrows, ncols, nnz = (int(t) for t in line.split())
        if nrows != ncols:
            raise ValueError("only square matrices are supported")
        data = np.loadtxt(fh, dtype=np.int64, ndmin=2) if nnz else np.zeros((0, 3), np.int64)
    if data.shape[0] != nnz:
        raise ValueError(f"expected {nnz} entries, found {data.shape[0]}")
    return SparseIntMatrix.from_triplets(nrows, data[:, 0], data[:, 1], data[:, 2])


def format_dot(g: DigraphEdgeList, name: str = "G") -> str:
    out = [f"digraph {name} {{"]
    out.extend(f"  {v};" for v in range(1, g.vertex_count + 1))
    out.extend(f"  {u} -> {v};" for u, v in g.edges)
    out.append("}")
    return "\n".join(out) + "\n"


def export_dot(g: DigraphEdgeList, path, name: str = "G") -> Path:
    return atomic_write_text(path, format_dot(g, name))


def read_dot_edges(path) -> DigraphEdgeList:
    """Parse the subset of DOT produced by :func:`export_dot`."""
    vertices, edges = set(), []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip().rstrip(";")
            if "->" in line:
                u, v = (int(t) for t in line.split("->"))
                edges.append((u, v))
                vertices.update((u, v))
            elif line.isdigit():
                vertices.add(int(line))
    return DigraphEdgeList(max(vertices), tuple(edges))


def export_sidecar(path, *, n: int, dim: int, nnz: int, kind: str) -> Path:
    meta = {"n": n, "dim": dim, "nnz": nnz, "kind": kind}
    return atomic_write_text(path, json.dumps(meta, indent=2, sort_keys=True) + "\n")


def format_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return int(v)
    return v


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    return atomic_write_text(path, format_csv(header, rows))


def write_json(path, obj) -> Path:
    return atomic_write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")
