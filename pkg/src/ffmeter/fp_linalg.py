"""F_p-linear structure of GF(p^n): subspaces and linearised polynomials.

Field elements double as F_p-vectors through their digit decomposition.
Subspaces are kept in reduced-echelon canonical form (pivot on the most
significant digit, rows fully reduced, listed with ascending pivots), so
equal subspaces always compare equal. A linearised polynomial is stored by
its coefficients on x^(p^j); index n appears only for the full-space kernel
polynomial x^q - x.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .field import FieldCtx


@dataclass(frozen=True)
class Subspace:
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class Linearised:
    """sum_j coeffs[j] * x^(p^j), coefficients trimmed."""

    coeffs: tuple[int, ...]

    @property
    def p_degree(self) -> int:
        """Largest j with a nonzero coefficient; -1 for the zero map."""
        return len(self.coeffs) - 1


def scalar_mul(ctx: FieldCtx, c: int, v: int) -> int:
    """Multiply by a prime-subfield scalar c in [0, p), digit-wise."""
    out = 0
    for i, d in enumerate(ctx.digits[v]):
        out += ((c * d) % ctx.p) * ctx.p**i
    return out


def span(ctx: FieldCtx, vectors) -> Subspace:
    """Reduced-echelon canonical basis of the span of the given encodings."""
    p, n = ctx.p, ctx.n
    rows = [list(ctx.digits[v]) for v in vectors if v]
    basis: dict[int, list[int]] = {}  # pivot position -> reduced row
    for row in rows:
        for pos in range(n - 1, -1, -1):
            if row[pos] == 0:
                continue
            if pos in basis:
                c = row[pos]
                other = basis[pos]
                for i in range(n):
                    row[i] = (row[i] - c * other[i]) % p
            else:
                inv = pow(row[pos], p - 2, p)
                row = [(c * inv) % p for c in row]
                # reduce the new row at the other pivots (all below pos, so
                # row[pos] stays 1), then clear pos in the existing rows
                for opos, other in basis.items():
                    c = row[opos]
                    if c:
                        for i in range(n):
                            row[i] = (row[i] - c * other[i]) % p
                for other in basis.values():
                    c = other[pos]
                    if c:
                        for i in range(n):
                            other[i] = (other[i] - c * row[i]) % p
                basis[pos] = row
                break
    enc = []
    for pos in sorted(basis):
        e = 0
        for i, d in enumerate(basis[pos]):
            e += d * ctx.p**i
        enc.append(e)
    return Subspace(tuple(enc))


def subspace_elements(ctx: FieldCtx, U: Subspace) -> list[int]:
    """All p^dim member encodings, ascending, each exactly once."""
    elems = [0]
    for b in U.basis:
        mults = [scalar_mul(ctx, c, b) for c in range(ctx.p)]
        elems = [ctx.add_table[e][m] for m in mults for e in elems]
    if len(set(elems)) != ctx.p ** U.dim:
        raise AssertionError("basis is not independent")
    return sorted(elems)


def subspace_poly(ctx: FieldCtx, U: Subspace) -> Linearised:
    """Monic linearised polynomial whose root set is exactly U.

    Built by the tower recursion h_{U+<v>} = h_U^p - h_U(v)^(p-1) * h_U,
    which never leaves linearised form.
    """
    p = ctx.p
    mul, sub, neg = ctx.mul_table, ctx.sub_table, ctx.neg_table
    coeffs = [1]  # h_{0} = X
    for v in U.basis:
        hv = eval_linearised(ctx, Linearised(tuple(coeffs)), v)
        if hv == 0:
            raise AssertionError("basis is not independent")
        c = ctx.pow(hv, p - 1)
        new = [0] * (len(coeffs) + 1)
        for j, a in enumerate(coeffs):
            new[j + 1] = ctx.pow(a, p)
            new[j] = sub[new[j]][mul[c][a]]
        coeffs = new
    h = Linearised(tuple(coeffs))
    members = set(subspace_elements(ctx, U))
    for x in range(ctx.q):
        if (eval_linearised(ctx, h, x) == 0) != (x in members):
            raise AssertionError("kernel mismatch in subspace polynomial")
    return h


def eval_linearised(ctx: FieldCtx, M: Linearised, x: int) -> int:
    add, mul = ctx.add_table, ctx.mul_table
    acc = 0
    for j, a in enumerate(M.coeffs):
        if a:
            acc = add[acc][mul[a][ctx.frob_pow(j)[x]]]
    return acc


def linearised_table(ctx: FieldCtx, M: Linearised) -> tuple:
    return tuple(eval_linearised(ctx, M, x) for x in range(ctx.q))


def kernel(ctx: FieldCtx, M: Linearised) -> Subspace:
    """Root subspace of a linearised polynomial."""
    zeros = [x for x in range(ctx.q) if eval_linearised(ctx, M, x) == 0]
    U = span(ctx, zeros)
    if ctx.p ** U.dim != len(zeros):
        raise AssertionError("roots of a linearised polynomial must form a subspace")
    return U


def linear_extension(ctx: FieldCtx, U: Subspace, values) -> Linearised:
    """Unique linearised polynomial of degree <= p^(dim-1) taking the given
    values on the basis of U.

    Solves the Moore system sum_j a_j u_i^(p^j) = v_i; the matrix of an
    independent family is invertible, so a singular solve is an internal error.
    """
    d = U.dim
    if len(values) != d:
        raise ValueError("need one value per basis vector")
    if d == 0:
        return Linearised(())
    mul, sub, inv = ctx.mul_table, ctx.sub_table, ctx.inv_table
    rows = [[ctx.frob_pow(j)[u] for j in range(d)] + [v] for u, v in zip(U.basis, values)]
    for col in range(d):
        piv = next((r for r in range(col, d) if rows[r][col] != 0), None)
        if piv is None:
            raise AssertionError("Moore system is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        s = inv[rows[col][col]]
        rows[col] = [mul[s][c] for c in rows[col]]
        for r in range(d):
            if r != col and rows[r][col]:
                c = rows[r][col]
                rows[r] = [sub[a][mul[c][b]] for a, b in zip(rows[r], rows[col])]
    coeffs = [rows[j][d] for j in range(d)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    M = Linearised(tuple(coeffs))
    for u, v in zip(U.basis, values):
        if eval_linearised(ctx, M, u) != v:
            raise AssertionError("linear extension failed to reproduce its values")
    return M


def coset_reps(ctx: FieldCtx, U: Subspace) -> list[int]:
    """Minimal-encoding representative of each coset, ascending."""
    members = subspace_elements(ctx, U)
    seen = bytearray(ctx.q)
    reps = []
    for e in range(ctx.q):
        if not seen[e]:
            reps.append(e)
            row = ctx.add_table[e]
            for u in members:
                seen[row[u]] = 1
    return reps


def all_subspaces(ctx: FieldCtx, dim: int | None = None):
    """Every subspace of the given dimension (or all of them), via echelon
    patterns: one canonical basis per subspace, no repeats."""
    n, p = ctx.n, ctx.p
    dims = range(n + 1) if dim is None else [dim]
    for d in dims:
        if d == 0:
            yield Subspace(())
            continue
        for pivots in itertools.combinations(range(n), d):
            desc = tuple(reversed(pivots))  # rows assembled most significant first
            free_cells = []
            for r, pv in enumerate(desc):
                for pos in range(pv):
                    if pos not in pivots:
                        free_cells.append((r, pos))
            for values in itertools.product(range(p), repeat=len(free_cells)):
                rows = []
                for pv in desc:
                    digits = [0] * n
                    digits[pv] = 1
                    rows.append(digits)
                for (r, pos), v in zip(free_cells, values):
                    rows[r][pos] = v
                enc = []
                for digits in reversed(rows):  # ascending pivot order
                    e = 0
                    for i, dg in enumerate(digits):
                        e += dg * p**i
                    enc.append(e)
                yield Subspace(tuple(enc))
