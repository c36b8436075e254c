"""Reduced polynomials attached to self-maps of GF(q).

A self-map is a value table (tuple of q encodings); its canonical polynomial
is the unique interpolating polynomial of degree at most q-1. Degree and
coefficient weight are read off that polynomial. The zero polynomial gets a
NEG_INF degree sentinel, never -1, so "degree > 1" style guards fail closed.
"""

from __future__ import annotations

from functools import lru_cache

from .field import FieldCtx

NEG_INF = float("-inf")

Poly = tuple  # coefficients, low to high, trimmed
Func = tuple  # value table of length q


def _trim(coeffs: list[int]) -> Poly:
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return tuple(coeffs[:i])


def _pow_table(ctx: FieldCtx) -> list[list[int]]:
    # pow_table[c][j] = c^j for j in [0, q-1]; row 0 is (1, 0, 0, ...)
    q = ctx.q
    exp, log = ctx.exp_table, ctx.log_table
    rows = [[1] + [0] * (q - 1)]
    for c in range(1, q):
        lc = log[c]
        rows.append([exp[(lc * j) % (q - 1)] for j in range(q)])
    return rows


def interpolate(ctx: FieldCtx, f) -> Poly:
    """Canonical polynomial of the value table f, degree <= q-1.

    Uses the power-sum form of the indicator expansion
    sum_c f(c) * (1 - (X-c)^(q-1)): the k-th coefficient for k >= 1 is
    -sum_{c != 0} f(c) c^(q-1-k), and the constant term is f(0).
    """
    return _interpolate_cached(ctx, tuple(f))


@lru_cache(maxsize=1 << 14)
def _interpolate_cached(ctx: FieldCtx, f: Func) -> Poly:
    q = ctx.q
    if len(f) != q or any(not (0 <= v < q) for v in f):
        raise ValueError("value table must list q encodings in [0, q)")
    pw = ctx.derived("pow_table", lambda: _pow_table(ctx))
    add, mul, neg = ctx.add_table, ctx.mul_table, ctx.neg_table
    coeffs = [f[0]] + [0] * (q - 1)
    for k in range(1, q):
        e = q - 1 - k
        # 0^0 = 1: at the top coefficient the c = 0 term contributes f(0)
        acc = f[0] if e == 0 else 0
        for c in range(1, q):
            fc = f[c]
            if fc:
                acc = add[acc][mul[fc][pw[c][e]]]
        coeffs[k] = neg[acc]
    return _trim(coeffs)


def evaluate(ctx: FieldCtx, poly, x: int) -> int:
    add, mul = ctx.add_table, ctx.mul_table
    acc = 0
    for c in reversed(poly):
        acc = add[mul[acc][x]][c]
    return acc


def func_from_poly(ctx: FieldCtx, poly) -> Func:
    return tuple(evaluate(ctx, poly, x) for x in range(ctx.q))


def reduce_poly(ctx: FieldCtx, coeffs) -> Poly:
    """Fold exponents >= q by i -> ((i-1) mod (q-1)) + 1 and merge.

    Pointwise-faithful: x^q and x take the same values, while exponents 0 and
    q-1 stay distinct (x^(q-1) is the unit-group indicator, not the constant 1).
    """
    q = ctx.q
    add = ctx.add_table
    out = [0] * q
    for i, c in enumerate(coeffs):
        if not 0 <= c < q:
            raise ValueError("coefficients must be encodings in [0, q)")
        if c:
            j = i if i < q else ((i - 1) % (q - 1)) + 1
            out[j] = add[out[j]][c]
    return _trim(out)


def measure_poly(poly) -> tuple:
    """(degree, weight) of a reduced polynomial; degree of 0 is NEG_INF."""
    if not poly:
        return (NEG_INF, 0)
    return (len(poly) - 1, sum(1 for c in poly if c))


def deg_weight(ctx: FieldCtx, f) -> tuple:
    return measure_poly(interpolate(ctx, f))


def compose_reduce(ctx: FieldCtx, outer, inner) -> Poly:
    """Reduced composition outer(inner(x)), by value-table semantics."""
    inner_vals = func_from_poly(ctx, inner)
    table = tuple(evaluate(ctx, outer, v) for v in inner_vals)
    return interpolate(ctx, table)


def nonzero_value_count(ctx: FieldCtx, poly) -> int:
    """Number of points of the unit group where poly does not vanish."""
    if not poly:
        raise ValueError("zero polynomial")
    if len(poly) - 1 > ctx.q - 2:
        raise ValueError("degree must be at most q-2")
    return sum(1 for c in range(1, ctx.q) if evaluate(ctx, poly, c) != 0)


def lagrange_points(ctx: FieldCtx, xs, ys) -> Poly:
    """Interpolating polynomial through distinct points, degree <= len(xs)-1."""
    if len(set(xs)) != len(xs) or len(xs) != len(ys):
        raise ValueError("points must be distinct and matched")
    add, sub, mul, inv, neg = (
        ctx.add_table,
        ctx.sub_table,
        ctx.mul_table,
        ctx.inv_table,
        ctx.neg_table,
    )
    m = len(xs)
    acc = [0] * m
    for i in range(m):
        # numerator prod_{j != i} (X - x_j), built low to high
        num = [1]
        for j in range(m):
            if j != i:
                num = [0] + num
                xj = neg[xs[j]]
                for t in range(len(num) - 1):
                    num[t] = add[num[t]][mul[num[t + 1]][xj]]
        denom = 1
        for j in range(m):
            if j != i:
                denom = mul[denom][sub[xs[i]][xs[j]]]
        scale = mul[ys[i]][inv[denom]]
        for t in range(len(num)):
            acc[t] = add[acc[t]][mul[scale][num[t]]]
    return _trim(acc)


def poly_spec(poly) -> str:
    """Serialize as the coeffs:a0,a1,... exchange format."""
    return "coeffs:" + ",".join(str(c) for c in poly)
