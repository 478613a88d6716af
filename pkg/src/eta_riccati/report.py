"""Tables, figure data and their text renderings."""

import csv
import io
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .fastderiv import eta_deriv_fast
from .riccati import derivatives, fields_from_results, parallel_map, riccati_fields
from .series import EtaPoint, SeriesAccuracy, eta_deriv_direct

EULER_GAMMA = 0.5772156649015329
LOG2 = math.log(2.0)
# eta_1'(1) in closed form
ETA1_PRIME_AT_1 = EULER_GAMMA * LOG2 - 0.5 * LOG2 * LOG2

TABLE_A = (1.0, 2.0, 10.0, 11.0)
TABLE_T = (0.5, 1.0, 2.0, 4.0, 30.0)
CONVERGENCE_N = (5, 10, 20, 30)
FIGURE_GRID = (0.05, 8.0, 400)
FIGURE_ACCURACY = SeriesAccuracy(tol=1e-12)
FIGURE_H = 1e-4
# plotted values need only this much; see figure_data
FIGURE_VALUE_TOL = 1e-9


@dataclass(frozen=True)
class TableRow:
    a: float
    t: float
    phi: float
    phi_e: float
    phi_as: float
    ratio: float
    converged: bool = True


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    value_k0: float
    err_k0: float
    value_k1: float
    err_k1: float


def riccati_table(a_values=TABLE_A, t_values=TABLE_T, acc=None):
    """One row per ``(a, t)``, a-major. Non-converged rows are flagged, not dropped."""
    points = [EtaPoint(a, t) for a in a_values for t in t_values]

    def row(p):
        s = riccati_fields(p, acc, strict=False)
        return TableRow(p.a, p.t, s.phi, s.phi_e, s.phi_as, s.ratio, s.converged)

    return parallel_map(row, points)


def convergence_references(a, t):
    """Exact values for ``k = 0, 1``: closed forms at ``a = t = 1``, else the direct series."""
    if a == 1.0 and t == 1.0:
        return LOG2, ETA1_PRIME_AT_1
    p = EtaPoint(a, t)
    return tuple(eta_deriv_direct(p, k).value for k in (0, 1))


def convergence_table(a=1.0, t=1.0, n_values=CONVERGENCE_N):
    p = EtaPoint(a, t)
    ref0, ref1 = convergence_references(p.a, p.t)
    rows = []
    for n in n_values:
        v0 = eta_deriv_fast(p, 0, n).value
        v1 = eta_deriv_fast(p, 1, n).value
        rows.append(ConvergenceRow(int(n), v0, abs(v0 - ref0), v1, abs(v1 - ref1)))
    return rows


PANELS = {
    "eta": ("t", "eta"),
    "phi": ("t", "phi", "phi_as"),
    "q": ("t", "q"),
    "riccati": ("t", "dphi", "neg_phi_sq"),
}


def _usable(results, tol):
    return all(r.converged or r.total_error <= tol for r in results)


def figure_data(a, t_min=FIGURE_GRID[0], t_max=FIGURE_GRID[1], points=FIGURE_GRID[2],
                acc=FIGURE_ACCURACY, h=FIGURE_H, value_tol=FIGURE_VALUE_TOL):
    """Rows for the four validation panels at one ``a``.

    Returns ``{panel: rows}`` with columns as in :data:`PANELS`. At small
    ``t`` the derivative terms keep growing far past any term budget, so the
    series never count as converged there; their tail-corrected values are
    still kept when the combined truncation and rounding estimate is below
    ``value_tol``. Anything worse is ``None`` and triggers a
    :class:`RuntimeWarning`. ``phi'`` is the central difference with step
    ``h``.
    """
    grid = np.linspace(t_min, t_max, int(points))

    def phi_at(t):
        d0, d1 = derivatives(EtaPoint(a, t), 1, acc, strict=False)
        return d1.value / d0.value, _usable((d0, d1), value_tol)

    def point(t):
        p = EtaPoint(a, t)
        d = derivatives(p, 2, acc, strict=False)
        s = fields_from_results(p, *d)
        dphi = None
        if h < t:
            (hi, ok_hi), (lo, ok_lo) = phi_at(t + h), phi_at(t - h)
            if ok_hi and ok_lo:
                dphi = (hi - lo) / (2.0 * h)
        return s, _usable(d, value_tol), dphi

    panels = {name: [] for name in PANELS}
    bad = 0
    for t, (s, ok, dphi) in zip(grid, parallel_map(point, grid)):
        t = float(t)
        bad += (not ok) + (dphi is None)
        keep = (lambda v: v if ok else None)
        panels["eta"].append((t, keep(s.eta)))
        panels["phi"].append((t, keep(s.phi), s.phi_as))
        panels["q"].append((t, keep(s.q)))
        panels["riccati"].append((t, dphi, keep(-s.phi * s.phi)))
    if bad:
        warnings.warn(f"a={a}: {bad} grid value(s) did not converge and are left empty",
                      RuntimeWarning, stacklevel=2)
    return panels


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def to_csv(columns, rows, comment):
    """CSV text whose first line is ``# <comment>`` naming columns and flags."""
    buf = io.StringIO()
    buf.write(f"# {comment}; columns: {','.join(columns)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


def markdown_table(headers, rows):
    lines = ["| " + " | ".join(headers) + " |",
             "|" + "|".join("---:" for _ in headers) + "|"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


TABLE_COLUMNS = ("a", "t", "phi", "phi_e", "phi_as", "ratio", "converged")


def riccati_table_markdown(rows):
    body = []
    for r in rows:
        cells = [f"{r.a:.1f}", f"{r.t:.1f}"] + [f"{v:.4f}" for v in (r.phi, r.phi_e, r.phi_as, r.ratio)]
        if not r.converged:
            cells[-1] += " (not converged)"
        body.append(cells)
    return markdown_table(["a", "t", "φ", "φ_e", "φ_as", "φ/φ_e"], body)


def riccati_table_rows(rows):
    return [(r.a, r.t, r.phi, r.phi_e, r.phi_as, r.ratio, r.converged) for r in rows]


CONVERGENCE_COLUMNS = ("N", "value_k0", "err_k0", "value_k1", "err_k1")


def convergence_table_markdown(rows):
    body = [[str(r.N), f"{r.value_k0:.10f}", f"{r.err_k0:.2e}", f"{r.value_k1:.10f}", f"{r.err_k1:.2e}"]
            for r in rows]
    return markdown_table(["N", "η(t)", "error", "η′(t)", "error"], body)


def convergence_table_rows(rows):
    return [(r.N, r.value_k0, r.err_k0, r.value_k1, r.err_k1) for r in rows]
