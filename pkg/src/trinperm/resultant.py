"""Resultants of F2-polynomials by evaluation and interpolation.

The remaining variables are evaluated on a tensor grid of points 0, 1, 2, ...
of a binary field F_{2^m}; at every point the formal Sylvester determinant is
obtained from a vectorised Euclidean algorithm, and the grid of values is
interpolated back (Newton form, one axis at a time). All field work is
numpy over log/antilog tables.
"""

from __future__ import annotations

import numpy as np

from .fields import make_field
from .mvpoly import MvPoly, exponent_matrix, from_exponent_matrix, sort_vars

MIN_EVAL_DEGREE = 8
MAX_EVAL_DEGREE = 16
EUCLID_CHUNK = 1 << 15


class ResultantError(ValueError):
    pass


def degree_bounds(f: MvPoly, g: MvPoly, var: str) -> dict:
    """Sylvester bound deg_w Res <= deg_v f * deg_w g + deg_v g * deg_w f."""
    n, m = f.degree(var), g.degree(var)
    rest = sort_vars(v for v in f.variables + g.variables if v != var)
    return {w: n * g.degree(w) + m * f.degree(w) for w in rest}


class _Tables:
    def __init__(self, field):
        self.field = field
        self.log, self.exp = field.vtables
        self.order = field.order

    def mul(self, x, y):
        return self.exp[self.log[x] + self.log[y]]

    def div(self, x, y):
        # y must be nonzero; x may be zero (lands in the zero tail)
        return self.exp[self.log[x] - self.log[y] + self.order]

    def pow(self, x, e):
        """Elementwise x**e for arrays x, e with e >= 0."""
        x = np.asarray(x)
        e = np.asarray(e)
        r = self.exp[(self.log[x] % (2 * self.order) * (e % self.order)) % self.order]
        r = np.where(x == 0, 0, r)
        return np.where(e == 0, 1, r)


def _power_rows(tab: _Tables, pts: np.ndarray, max_e: int) -> np.ndarray:
    """rows[e] = pts**e for e = 0..max_e."""
    out = np.empty((max_e + 1, pts.size), dtype=np.int64)
    out[0] = 1
    lg = tab.log[pts]
    for e in range(1, max_e + 1):
        out[e] = np.where(pts == 0, 0, tab.exp[(lg * e) % tab.order])
    return out


def _eval_grid(tab: _Tables, exps: np.ndarray, powers: list) -> np.ndarray:
    """Sum over rows of exps of the outer product of powers[i][exps[r, i]]."""
    shape = tuple(p.shape[1] for p in powers)
    if exps.shape[0] == 0:
        return np.zeros(shape, dtype=np.int64)
    if len(powers) == 1:
        acc = np.zeros(shape[0], dtype=np.int64)
        for e in exps[:, 0]:
            acc ^= powers[0][e]
        return acc
    out = np.zeros(shape, dtype=np.int64)
    lead = exps[:, 0]
    for e0 in np.unique(lead):
        sub = _eval_grid(tab, exps[lead == e0, 1:], powers[1:])
        out ^= tab.mul(powers[0][e0].reshape((-1,) + (1,) * (len(shape) - 1)), sub[None, ...])
    return out


def _coefficient_grids(tab, p: MvPoly, var: str, rest: tuple, powers: list, deg: int) -> np.ndarray:
    shape = tuple(q.shape[1] for q in powers)
    grids = np.zeros((deg + 1,) + shape, dtype=np.int64)
    for d, c in enumerate(p.collect(var)):
        if c.is_zero():
            continue
        mat = exponent_matrix(c)
        full = np.zeros((mat.shape[0], len(rest)), dtype=np.int64)
        for j, v in enumerate(c.variables):
            full[:, rest.index(v)] = mat[:, j]
        grids[d] = _eval_grid(tab, full, powers) if rest else 1
    return grids


def _rowdeg(a: np.ndarray) -> np.ndarray:
    nz = a != 0
    w = a.shape[1]
    idx = w - 1 - np.argmax(nz[:, ::-1], axis=1)
    return np.where(nz.any(axis=1), idx, -1)


def batched_resultant(tab: _Tables, F: np.ndarray, G: np.ndarray, n: int, m: int) -> np.ndarray:
    """Formal Sylvester determinants Res_{n,m}(F_i, G_i) for every row i.

    F has n+1 columns, G has m+1 columns (coefficient of x^j in column j).
    """
    P = F.shape[0]
    W = max(n, m) + 1
    Fa = np.zeros((P, W), dtype=np.int64)
    Ga = np.zeros((P, W), dtype=np.int64)
    Fa[:, : n + 1] = F
    Ga[:, : m + 1] = G
    dF, dG = _rowdeg(Fa), _rowdeg(Ga)
    out = np.zeros(P, dtype=np.int64)
    acc = np.ones(P, dtype=np.int64)

    # formal-degree correction when a leading coefficient vanishes at the point
    f_drop, g_drop = dF < n, dG < m
    live = ~(f_drop & g_drop) & (dF >= 0) & (dG >= 0)
    sel = f_drop & live
    acc[sel] = tab.pow(Ga[sel, m], n - dF[sel])
    sel = g_drop & live
    acc[sel] = tab.pow(Fa[sel, n], m - dG[sel])

    # constant cases
    c = live & (dF == 0)
    out[c] = tab.mul(acc[c], tab.pow(Fa[c, 0], dG[c]))
    c2 = live & (dG == 0) & ~c
    out[c2] = tab.mul(acc[c2], tab.pow(Ga[c2, 0], dF[c2]))
    live &= ~(c | c2)

    idx = np.flatnonzero(live)
    Fa, Ga, dF, dG, acc = Fa[idx], Ga[idx], dF[idx], dG[idx], acc[idx]
    swap = dF < dG
    Fa, Ga = np.where(swap[:, None], Ga, Fa), np.where(swap[:, None], Fa, Ga)
    dF, dG = np.where(swap, dG, dF), np.where(swap, dF, dG)
    nstart = dF.copy()
    cols = np.arange(W)[None, :]
    while idx.size:
        # one leading-term elimination for rows still reducing
        red = dF >= dG
        if red.any():
            r = np.flatnonzero(red)
            s = dF[r] - dG[r]
            t = tab.div(Fa[r, dF[r]], Ga[r, dG[r]])
            src = cols - s[:, None]
            Gs = np.take_along_axis(Ga[r], np.clip(src, 0, W - 1), axis=1)
            Gs = np.where(src >= 0, Gs, 0)
            Fa[r] ^= tab.mul(t[:, None], Gs)
            dF[r] = _rowdeg(Fa[r])
        # rows whose remainder is complete
        fin = dF < dG
        if not fin.any():
            continue
        r = np.flatnonzero(fin)
        zero_rem = dF[r] < 0
        keep = np.ones(idx.size, dtype=bool)
        rz = r[zero_rem]
        out[idx[rz]] = 0
        keep[rz] = False
        r = r[~zero_rem]
        acc[r] = tab.mul(acc[r], tab.pow(Ga[r, dG[r]], nstart[r] - dF[r]))
        Fa[r], Ga[r] = Ga[r], Fa[r].copy()
        dF[r], dG[r] = dG[r], dF[r].copy()
        nstart[r] = dF[r]
        done = r[dG[r] == 0]
        out[idx[done]] = tab.mul(acc[done], tab.pow(Ga[done, 0], dF[done]))
        keep[done] = False
        if not keep.all():
            idx, Fa, Ga, dF, dG, acc, nstart = (
                idx[keep], Fa[keep], Ga[keep], dF[keep], dG[keep], acc[keep], nstart[keep])
    return out


def _newton_to_monomial(tab: _Tables, vals: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Interpolate along axis 0: vals[i] = p(pts[i]); returns monomial coefficients."""
    N = vals.shape[0]
    c = vals.copy()
    for j in range(1, N):
        den = pts[j:] ^ pts[: N - j]
        c[j:] = tab.div(c[j:] ^ c[j - 1: N - 1], den.reshape((-1,) + (1,) * (c.ndim - 1)))
    p = np.zeros_like(c)
    p[0] = c[N - 1]
    for j in range(N - 2, -1, -1):
        top = N - 1 - j  # current degree is top - 1
        old = p[:top].copy()
        p[:top] = tab.mul(np.int64(pts[j]), old)
        p[1: top + 1] ^= old
        p[0] ^= c[j]
    return p


def interpolate(tab: _Tables, values: np.ndarray, pts: list) -> np.ndarray:
    coeffs = values
    for axis, x in enumerate(pts):
        moved = np.moveaxis(coeffs, axis, 0)
        coeffs = np.moveaxis(_newton_to_monomial(tab, moved, x), 0, axis)
    return coeffs


def eval_field_for(bounds: dict, field_degree: int | None = None):
    need = max(bounds.values(), default=0) + 1
    m = field_degree or max(MIN_EVAL_DEGREE, need.bit_length())
    if (1 << m) < need:
        raise ResultantError(f"F_2^{m} has too few points for degree bound {need - 1}")
    if m > MAX_EVAL_DEGREE:
        raise ResultantError(f"degree bound {need - 1} needs more than 2^{MAX_EVAL_DEGREE} points")
    return make_field(m)


def resultant(f: MvPoly, g: MvPoly, var: str, field_degree: int | None = None) -> MvPoly:
    """Res(f, g; var) with coefficients in F2[remaining variables]."""
    if var not in f.variables or var not in g.variables:
        raise ResultantError(f"{var} does not occur in both inputs")
    n, m = f.degree(var), g.degree(var)
    bounds = degree_bounds(f, g, var)
    rest = tuple(bounds)
    tab = _Tables(eval_field_for(bounds, field_degree))
    pts = [np.arange(bounds[w] + 1, dtype=np.int64) for w in rest]
    fd = {w: max(f.degree(w), g.degree(w)) for w in rest}
    powers = [_power_rows(tab, x, fd[w]) for w, x in zip(rest, pts)]
    Fg = _coefficient_grids(tab, f, var, rest, powers, n)
    Gg = _coefficient_grids(tab, g, var, rest, powers, m)
    shape = Fg.shape[1:]
    total = int(np.prod(shape)) if shape else 1
    Ff = Fg.reshape(n + 1, total).T
    Gf = Gg.reshape(m + 1, total).T
    vals = np.empty(total, dtype=np.int64)
    for s in range(0, total, EUCLID_CHUNK):
        vals[s: s + EUCLID_CHUNK] = batched_resultant(tab, Ff[s: s + EUCLID_CHUNK], Gf[s: s + EUCLID_CHUNK], n, m)
    if not rest:
        if vals[0] not in (0, 1):
            raise ResultantError("resultant value outside F2")
        return MvPoly.const(int(vals[0]))
    coeffs = interpolate(tab, vals.reshape(shape), pts)
    if np.any((coeffs != 0) & (coeffs != 1)):
        raise ResultantError("interpolated coefficients are not in F2; degree bound violated")
    nz = np.argwhere(coeffs == 1)
    return from_exponent_matrix(rest, nz.astype(np.int64))


# -- small-instance oracle ---------------------------------------------------

def sylvester_matrix(f: MvPoly, g: MvPoly, var: str) -> list[list[MvPoly]]:
    fc = list(reversed(f.collect(var)))
    gc = list(reversed(g.collect(var)))
    n, m = len(fc) - 1, len(gc) - 1
    size = n + m
    z = MvPoly.zero()
    rows = [[z] * i + fc + [z] * (size - n - 1 - i) for i in range(m)]
    rows += [[z] * i + gc + [z] * (size - m - 1 - i) for i in range(n)]
    return rows


def berkowitz_det(a: list[list[MvPoly]]) -> MvPoly:
    """Division-free determinant (Berkowitz); characteristic 2 so signs vanish."""
    n = len(a)
    if n == 0:
        return MvPoly.one()
    v = [MvPoly.one()]
    for r in range(n):
        M = [row[:r] for row in a[:r]]
        R = [a[i][r] for i in range(r)]
        S = a[r][:r]
        t = [MvPoly.one(), a[r][r]]
        vec = R
        for _ in range(r):
            t.append(_dot(S, vec))
            vec = [_dot(M[i], vec) for i in range(r)]
        v = [_sum(t[i - j] * v[j] for j in range(min(i, r) + 1)) for i in range(r + 2)]
    return v[-1]


def _dot(x, y) -> MvPoly:
    return _sum(p * q for p, q in zip(x, y))


def _sum(it) -> MvPoly:
    out = MvPoly.zero()
    for p in it:
        out = out + p
    return out


def sylvester_resultant(f: MvPoly, g: MvPoly, var: str) -> MvPoly:
    return berkowitz_det(sylvester_matrix(f, g, var))
