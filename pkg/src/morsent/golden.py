"""Published Table 1 values, loaded from the packaged CSV fixture."""

import csv
from dataclasses import dataclass
from importlib import resources

# per-entropy and per-sum comparison tolerances against the 4-decimal print
ENTROPY_TOL = 1.5e-3
SUM_TOL = 3e-3


@dataclass(frozen=True)
class GoldenRow:
    n: int
    lam: float
    s_x: float
    s_p: float
    sum: float
    bound: float


def load_table1():
    text = resources.files(__package__).joinpath("data/table1.csv").read_text()
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    rows = []
    for rec in csv.DictReader(lines):
        rows.append(
            GoldenRow(int(rec["n"]), float(rec["lambda"]), float(rec["S_x"]),
                      float(rec["S_p"]), float(rec["sum"]), float(rec["bound"]))
        )
    return rows


def compare(results, rows=None):
    """Deviation of each computed result from its golden row.

    Returns a list of dicts with keys n, lambda, dS_x, dS_p, dsum, ok;
    results without a golden counterpart are ignored.
    """
    rows = rows if rows is not None else load_table1()
    by_cell = {(r.n, r.lam): r for r in rows}
    out = []
    for res in results:
        ref = by_cell.get((res.n, float(res.lam)))
        if ref is None:
            continue
        d_x = res.s_x - ref.s_x
        d_p = res.s_p - ref.s_p
        d_sum = res.sum - ref.sum
        ok = abs(d_x) <= ENTROPY_TOL and abs(d_p) <= ENTROPY_TOL and abs(d_sum) <= SUM_TOL
        out.append({"n": res.n, "lambda": res.lam, "dS_x": d_x, "dS_p": d_p,
                    "dsum": d_sum, "ok": ok})
    return out
