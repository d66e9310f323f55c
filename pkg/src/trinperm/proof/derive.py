"""Symbolic derivation of the quartic coefficients and the D/E/F system.

Everything here is recomputed from the rational map g(X) = X(b^q+aX^2+X^3)/(1+aX+bX^3)
and the transport u = (X+z+1)/(X+z); nothing is read from the corpus.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..mvpoly import AlgebraicContext, MvPoly, pseudo_divrem

V = MvPoly.var
ONE = MvPoly.one()
# formal inverse of an elimination pivot; cleared away before any comparison
INVERSE = "W"


def z_relation() -> AlgebraicContext:
    """z^2 = z + k."""
    return AlgebraicContext.quadratic("z", ONE, V("k"))


@dataclass(frozen=True)
class ProofPolynomialSet:
    A: MvPoly
    B: MvPoly
    cross: MvPoly  # z-free cross-multiplied transport equation in X and Y
    C: tuple
    E: tuple
    F: tuple


def transport_numerators(b: MvPoly, bq: MvPoly, ctx: AlgebraicContext) -> tuple[MvPoly, MvPoly]:
    """(A, B) with g((X+z+1)/(X+z)) = A/B, both cleared by (X+z)^4."""
    a, X, z = V("a"), V("X"), V("z")
    w, w1 = X + z, X + z + ONE
    A = w1 * (bq * w ** 3 + a * w1 ** 2 * w + w1 ** 3)
    B = w * (w ** 3 + a * w1 * w ** 2 + b * w1 ** 3)
    return ctx.reduce(A), ctx.reduce(B)


def ef_lists(C) -> tuple[tuple, tuple]:
    """Coefficients in Y of C1^2C4+C1C2C3+C0C3^2 and of its square plus (C1C3+C2^2)^3."""
    C0, C1, C2, C3, C4 = C
    s = C1 * C1 * C4 + C1 * C2 * C3 + C0 * C3 * C3
    f = s.square() + (C1 * C3 + C2.square()) ** 3
    return _padded(s.collect("Y"), 4), _padded(f.collect("Y"), 7)


def _padded(cs, n):
    cs = list(cs) + [MvPoly.zero()] * (n - len(cs))
    if len(cs) != n:
        raise ArithmeticError(f"expected at most {n} coefficients, got {len(cs)}")
    return tuple(cs)


def derive_coefficients(b_in_base: bool = False) -> ProofPolynomialSet:
    """Derive A, B, the quartic coefficients C0..C4 and the E, F lists.

    With ``b_in_base`` false, b = b1*z and b^q = b1*(z+1) and the transport
    carries the factor (1+a+b)^(q-1); otherwise b is a base-field symbol and
    that factor is 1.
    """
    ctx = z_relation()
    a, z, Y = V("a"), V("z"), V("Y")
    if b_in_base:
        b = bq = V("b")
        left = right = ONE
    else:
        b1 = V("b1")
        b, bq = b1 * z, b1 * (z + ONE)
        left, right = ONE + a + b, ONE + a + bq
    A, B = transport_numerators(b, bq, ctx)
    cross = ctx.reduce(A * left * (Y + z) + B * right * (Y + z + ONE))
    if "z" in cross.variables:
        raise ArithmeticError("z did not cancel from the cross-multiplied equation")
    C = _padded(cross.collect("X"), 5)
    E, F = ef_lists(C)
    return ProofPolynomialSet(A, B, cross, C, E, F)


# -- the D/E/F system ----------------------------------------------------------

def _syms(prefix, n):
    return [V(f"{prefix}{i}") for i in range(n)]


def coefficient_system(e3_zero: bool = False) -> list[tuple[str, MvPoly]]:
    """The seven equations D*(D+E) = F compared by powers of Y, as (F-variable, lhs+rhs).

    Each equation is F_j plus a polynomial in D and E, so it is monic and linear
    in its F variable; with ``e3_zero`` the E3 terms are dropped.
    """
    D = _syms("D", 4)
    E = _syms("E", 4)
    if e3_zero:
        E[3] = MvPoly.zero()
    F = _syms("F", 7)
    out = []
    for deg in range(6, -1, -1):
        acc = MvPoly.zero()
        for i in range(4):
            j = deg - i
            if 0 <= j <= 3:
                acc = acc + D[i] * (D[j] + E[j])
        out.append((f"F{deg}", acc + F[deg]))
    return out


def clear_inverse(p: MvPoly, pivot: MvPoly) -> tuple[MvPoly, int]:
    """pivot^e * p with the formal inverse W = 1/pivot cleared; e = deg_W p."""
    cs = p.collect(INVERSE)
    if not cs:
        return MvPoly.zero(), 0
    e = len(cs) - 1
    out = MvPoly.zero()
    for j, c in enumerate(cs):
        out = out + c * pivot ** (e - j)
    return out, e


def eliminate(e3_zero: bool = False) -> dict:
    """Solve three equations for three D unknowns and substitute into the rest.

    Step 1 pivots on E3 (solving D2, D1, D0); the E3 = 0 branch pivots on E0
    (solving D1, D2, D3). Returns {source F-variable: (cleared polynomial, power)}.
    """
    D = _syms("D", 4)
    E = _syms("E", 4)
    F = _syms("F", 7)
    W = V(INVERSE)
    if not e3_zero:
        pivot = E[3]
        d2 = (D[3] * E[2] + F[5]) * W
        d1 = (d2.square() + D[3] * E[1] + d2 * E[2] + F[4]) * W
        d0 = (D[3] * E[0] + d2 * E[1] + d1 * E[2] + F[3]) * W
        binds = {"D2": d2, "D1": d1, "D0": d0}
        keep = ("F6", "F2", "F1", "F0")
    else:
        pivot = E[0]
        d1 = (D[0] * E[1] + F[1]) * W
        d2 = (d1.square() + d1 * E[1] + D[0] * E[2] + F[2]) * W
        d3 = (d2 * E[1] + d1 * E[2] + F[3]) * W
        binds = {"D1": d1, "D2": d2, "D3": d3}
        keep = ("F6", "F5", "F4", "F0")
    out = {}
    for fv, eq in coefficient_system(e3_zero):
        if fv in keep:
            out[fv] = clear_inverse(eq.substitute(binds), pivot)
    return out


def ideal_multipliers(g: MvPoly, system) -> tuple[dict, MvPoly]:
    """Divide g successively by the system equations in their F variables.

    Returns ({F-variable: multiplier}, remainder) with
    g = sum(multiplier * equation) + remainder. The remainder is free of every
    F variable, so g lies in the ideal exactly when it is zero.
    """
    mult = {}
    for fv, eq in system:
        if g.degree(fv) > 0:
            _, q, g = pseudo_divrem(g, eq, fv)  # eq is monic in fv, so this is exact division
        else:
            q = MvPoly.zero()
        mult[fv] = q
    return mult, g


def combine(mult: dict, system) -> MvPoly:
    out = MvPoly.zero()
    for fv, eq in system:
        m = mult.get(fv)
        if m is not None and not m.is_zero():
            out = out + m * eq
    return out


def bind_ef(p: MvPoly, pps: ProofPolynomialSet) -> MvPoly:
    """Substitute the derived E_i, F_j for the formal symbols."""
    binds = {f"E{i}": e for i, e in enumerate(pps.E)}
    binds.update({f"F{j}": f for j, f in enumerate(pps.F)})
    return p.substitute(binds)
