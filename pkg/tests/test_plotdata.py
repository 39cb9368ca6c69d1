"""Plot tables: schemas, plus golden statistical summaries of each table.

Set MANDELMAT_REGEN_GOLDEN=1 to rewrite tests/golden/plot_summaries.json.
"""

import json
import math
import os
from pathlib import Path

import numpy as np
import pytest

from mandelmat import plotdata

GOLDEN = Path(__file__).parent / "golden" / "plot_summaries.json"
REGEN = os.environ.get("MANDELMAT_REGEN_GOLDEN") == "1"

# name -> (kind, n, kwargs, column index summarised, slow)
TABLES = {
    "singvec_n12": ("singvec", 12, {}, 1, False),
    "eigvec_n2": ("eigvec", 2, {}, 1, False),
    "eigvec_n3": ("eigvec", 3, {}, 1, False),
    "eigvec_n4": ("eigvec", 4, {}, 1, False),
    "eigvec_n13": ("eigvec", 13, {}, 1, False),
    "eigvec_n14": ("eigvec", 14, {}, 1, False),
    "spectrum_modulus_n6": ("spectrum_complex", 6, {}, None, False),
    "spectrum_modulus_n12": ("spectrum_complex", 12, {"allow_large": True}, None, True),
    "singvec_n6": ("singvec", 6, {}, 1, False),
    "singvec_n7": ("singvec", 7, {}, 1, False),
    "svals_n7_to_12": ("svals_all", 12, {"allow_large": True}, 3, False),
    "svals_n13": ("svals_all", 13, {"allow_large": True, "n_min": 13}, 3, True),
    "homotopy_abs": ("homotopy", 5, {}, 5, False),
    "homotopy_squared": ("homotopy", 5, {}, 6, False),
}

_cache = {}


def rows_for(kind, n, kwargs):
    key = (kind, n, tuple(sorted(kwargs.items())))
    if key not in _cache:
        _cache[key] = plotdata.plot_rows(kind, n, **kwargs)
    return _cache[key]


def column(rows, idx):
    if idx is None:
        return [math.hypot(r[1], r[2]) for r in rows]
    return [r[idx] for r in rows]


def load_golden():
    return json.loads(GOLDEN.read_text()) if GOLDEN.exists() else {}


@pytest.mark.parametrize(
    "name",
    [pytest.param(k, marks=pytest.mark.slow) if v[4] else k for k, v in TABLES.items()],
)
def test_golden_summary(name):
    kind, n, kwargs, idx, _ = TABLES[name]
    summary = plotdata.summarize(column(rows_for(kind, n, kwargs), idx))
    if REGEN:
        data = load_golden()
        data[name] = summary
        GOLDEN.parent.mkdir(exist_ok=True)
        GOLDEN.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
        return
    ref = load_golden()[name]
    assert summary["count"] == ref["count"]
    assert summary["log2_bands"] == ref["log2_bands"]
    assert summary["min"] == pytest.approx(ref["min"], rel=1e-9, abs=1e-12)
    assert summary["max"] == pytest.approx(ref["max"], rel=1e-9, abs=1e-12)


def test_eigvec_n14_has_16383_rows():
    rows = rows_for("eigvec", 14, {})
    assert len(rows) == 16383
    assert rows[0][1] == 1.0


def test_log2_columns_consistent():
    for kind, n in (("eigvec", 6), ("singvec", 6)):
        for r in plotdata.plot_rows(kind, n):
            assert r[2] == pytest.approx(math.log2(r[1]))
    for r in plotdata.plot_rows("svals_all", 8, n_min=8):
        assert r[2] == pytest.approx(math.log2(r[1])) and r[4] == pytest.approx(math.log2(r[3]))


def test_homotopy_table_has_bound_column():
    rows = rows_for("homotopy", 5, {})
    assert all(r[6] <= r[7] for r in rows)
    assert {r[0] for r in rows} == {1, 2, 3, 4}


def test_export_writes_header(tmp_path):
    path = plotdata.export_plot_data("spectrum_complex", 3, tmp_path / "s.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(plotdata.SCHEMAS["spectrum_complex"])
    assert len(lines) == 8


def test_unknown_kind():
    with pytest.raises(ValueError):
        plotdata.plot_rows("pixels", 3)


def test_summarize_bands():
    s = plotdata.summarize([0.0, 0.5, 1.0, 3.0, -4.0])
    assert s["log2_bands"] == {"-1": 1, "0": 1, "1": 1, "2": 1, "zero": 1}
    assert s["min"] == -4.0 and s["max"] == 3.0
    assert np.isfinite(s["max"])
