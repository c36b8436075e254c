"""Complexity measures of self-maps of GF(q).

Five measures of how far a value table is from the easy classes:

* degree and weight of the interpolation polynomial (polyring),
* additive index p^codim, from the subspace of periods of the difference maps,
* Carlitz rank, the least number of inversion steps needed to build the map
  from affine pieces (exact by breadth-first search at desk scale),
* a Carlitz-rank lower bound from best agreement with a fractional-linear map,
* multiplicative index, the coarsest unit-group coset partition on which the
  map acts by branch-wise monomials.

All functions take the value table as a tuple of encodings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FieldCtx
from .fp_linalg import (
    Linearised,
    Subspace,
    all_subspaces,
    coset_reps,
    eval_linearised,
    linear_extension,
    span,
    subspace_elements,
    subspace_poly,
)
from .polyring import NEG_INF, interpolate, lagrange_points, measure_poly

ORACLE_MAX_N = 4
EXACT_CRK_MAX = 9
MOBIUS_MAX = 128


def is_permutation(ctx: FieldCtx, f) -> bool:
    return sorted(f) == ctx.derived("range_list", lambda: list(range(ctx.q)))


def _check_table(ctx: FieldCtx, f) -> tuple:
    f = tuple(f)
    if len(f) != ctx.q or any(not (0 <= v < ctx.q) for v in f):
        raise ValueError("value table must list q encodings in [0, q)")
    return f


# ---------------------------------------------------------------------------
# additive index


def period_subspace(ctx: FieldCtx, f) -> Subspace:
    """Subspace of shifts u for which x -> f(x+u) - f(x) is constant."""
    f = _check_table(ctx, f)
    q = ctx.q
    add, sub = ctx.add_table, ctx.sub_table
    members = []
    for u in range(q):
        row = add[u]
        c0 = sub[f[row[0]]][f[0]]
        if all(sub[f[row[x]]][f[x]] == c0 for x in range(1, q)):
            members.append(u)
    V = span(ctx, members)
    if ctx.p**V.dim != len(members):
        raise AssertionError("period set failed to be a subspace")
    return V


def codimension(ctx: FieldCtx, f) -> tuple[int, int]:
    """(codim, additive index p^codim) of the value table."""
    V = period_subspace(ctx, f)
    k = ctx.n - V.dim
    return k, ctx.p**k


def _subspace_cache(ctx: FieldCtx):
    def build():
        by_dim = []
        for d in range(ctx.n + 1):
            entries = []
            for U in all_subspaces(ctx, d):
                entries.append((U, subspace_elements(ctx, U), coset_reps(ctx, U)))
            by_dim.append(entries)
        return by_dim

    return ctx.derived("subspaces_by_dim", build)


def codimension_oracle(ctx: FieldCtx, f) -> int:
    """codim by direct search: smallest k admitting a subspace of codim k and a
    linearised map agreeing with f up to a constant on every coset.

    Exhaustive over echelon-enumerated subspaces; meant as an independent
    cross-check at n <= 4.
    """
    f = _check_table(ctx, f)
    if ctx.n > ORACLE_MAX_N:
        raise ValueError(f"oracle supports n <= {ORACLE_MAX_N}")
    sub = ctx.sub_table
    add = ctx.add_table
    by_dim = _subspace_cache(ctx)
    for k in range(ctx.n + 1):
        d = ctx.n - k
        for U, members, reps in by_dim[d]:
            vals = [sub[f[u]][f[0]] for u in U.basis]
            M = linear_extension(ctx, U, vals)
            mtab = [eval_linearised(ctx, M, x) for x in range(ctx.q)]
            ok = True
            for rep in reps:
                row = add[rep]
                base = sub[f[rep]][mtab[rep]]
                for u in members:
                    x = row[u]
                    if sub[f[x]][mtab[x]] != base:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return k
    raise AssertionError("codim n must always be admissible")  # unreachable


@dataclass(frozen=True)
class AdditiveDecomposition:
    """f(x) = outer(kernel_poly(x)) + linear_part(x), with outer applied to the
    image of the period subspace's kernel polynomial."""

    codim: int
    add_index: int
    period: Subspace
    kernel_poly: Linearised
    linear_part: Linearised
    outer: tuple
    coset_constants: tuple  # ((representative, f - linear_part value), ...)


def additive_decompose(ctx: FieldCtx, f) -> AdditiveDecomposition:
    f = _check_table(ctx, f)
    p, n, q = ctx.p, ctx.n, ctx.q
    add, sub = ctx.add_table, ctx.sub_table
    V = period_subspace(ctx, f)
    k = n - V.dim
    L = linear_extension(ctx, V, [sub[f[u]][f[0]] for u in V.basis])
    M = subspace_poly(ctx, V)
    ltab = [eval_linearised(ctx, L, x) for x in range(q)]
    mtab = [eval_linearised(ctx, M, x) for x in range(q)]
    phi = [sub[f[x]][ltab[x]] for x in range(q)]
    reps = coset_reps(ctx, V)
    members = subspace_elements(ctx, V)
    for rep in reps:
        row = add[rep]
        if any(phi[row[u]] != phi[rep] for u in members):
            raise AssertionError("difference part must be constant on cosets")
    xs = [mtab[rep] for rep in reps]
    if len(set(xs)) != len(xs):
        raise AssertionError("kernel polynomial must separate cosets")
    g = lagrange_points(ctx, xs, [phi[rep] for rep in reps])
    deg_g, _ = measure_poly(g)
    if deg_g != NEG_INF and deg_g > p**k - 1:
        raise AssertionError("outer degree bound violated")
    if L.coeffs and M.coeffs and len(L.coeffs) >= len(M.coeffs):
        raise AssertionError("linear part must have lower degree than the kernel polynomial")
    from .polyring import evaluate  # local import to avoid a cycle at module load

    for x in range(q):
        if add[evaluate(ctx, g, mtab[x])][ltab[x]] != f[x]:
            raise AssertionError("decomposition failed to recompose")
    return AdditiveDecomposition(
        codim=k,
        add_index=p**k,
        period=V,
        kernel_poly=M,
        linear_part=L,
        outer=g,
        coset_constants=tuple((rep, phi[rep]) for rep in reps),
    )


# ---------------------------------------------------------------------------
# Carlitz rank


@dataclass(frozen=True)
class CarlitzCertificate:
    """Nested-inversion form reaching the table in `rank` inversion steps:
    start from params[0]*x + params[1], then repeatedly invert and add the
    next parameter."""

    rank: int
    params: tuple[int, ...]


def carlitz_eval(ctx: FieldCtx, params) -> tuple:
    """Value table of the nested form; validates the nonzero constraints
    (params[0], and every intermediate addend params[2:-1])."""
    params = tuple(params)
    if len(params) < 2:
        raise ValueError("need at least the two affine parameters")
    if params[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    if any(c == 0 for c in params[2:-1]):
        raise ValueError("intermediate addends must be nonzero")
    add, mul, inv = ctx.add_table, ctx.mul_table, ctx.inv_table
    arow = mul[params[0]]
    t = [add[arow[x]][params[1]] for x in range(ctx.q)]
    for c in params[2:]:
        crow = add[c]
        t = [crow[inv[v]] for v in t]
    return tuple(t)


def _carlitz_roots(ctx: FieldCtx):
    add, mul = ctx.add_table, ctx.mul_table
    q = ctx.q
    seen = {}
    frontier = []
    for a in range(1, q):
        arow = mul[a]
        for b in range(q):
            t = bytes(add[arow[x]][b] for x in range(q))
            seen[t] = (0, (a, b), None)
            frontier.append(t)
    return seen, frontier


def _carlitz_expand(ctx: FieldCtx, seen, frontier, rank):
    """One breadth-first level: invert then translate, deduplicating globally."""
    add, inv = ctx.add_table, ctx.inv_table
    q = ctx.q
    out = []
    inv_get = inv.__getitem__
    for g in frontier:
        gi = bytes(map(inv_get, g))
        for c in range(q):
            child = bytes(map(add[c].__getitem__, gi))
            if child not in seen:
                seen[child] = (rank, c, g)
                out.append(child)
    return out


def _certificate_from(seen, t: bytes) -> CarlitzCertificate:
    consts = []
    cur = t
    while True:
        rank, aux, parent = seen[cur]
        if parent is None:
            a, b = aux
            params = (a, b, *reversed(consts))
            return CarlitzCertificate(len(params) - 2, params)
        consts.append(aux)
        cur = parent


def ensure_carlitz_closure(ctx: FieldCtx) -> dict:
    """Full breadth-first table over all permutations, cached on the field.
    Intended for q <= 9; sweeps build it once and then only look up."""

    def build():
        seen, frontier = _carlitz_roots(ctx)
        rank = 0
        while frontier:
            rank += 1
            frontier = _carlitz_expand(ctx, seen, frontier, rank)
        return seen

    return ctx.derived("carlitz_closure", build)


def carlitz_rank(ctx: FieldCtx, f, max_rank: int | None = None) -> CarlitzCertificate | None:
    """Least number of inversion steps realizing the permutation f, with the
    realizing parameters. None when max_rank was given and exceeded."""
    f = _check_table(ctx, f)
    if not is_permutation(ctx, f):
        raise ValueError("Carlitz rank is defined for permutations only")
    fb = bytes(f)
    closure = ctx.peek("carlitz_closure")
    if closure is None and ctx.q <= 8 and max_rank is None:
        closure = ensure_carlitz_closure(ctx)
    if closure is not None:
        cert = _certificate_from(closure, fb)
        if max_rank is not None and cert.rank > max_rank:
            return None
        return _checked(ctx, f, cert)
    seen, frontier = _carlitz_roots(ctx)
    if fb in seen:
        return _checked(ctx, f, _certificate_from(seen, fb))
    rank = 0
    while frontier and (max_rank is None or rank < max_rank):
        rank += 1
        frontier = _carlitz_expand(ctx, seen, frontier, rank)
        if fb in seen:
            return _checked(ctx, f, _certificate_from(seen, fb))
    if max_rank is None and not frontier:
        raise AssertionError("search closed without reaching a permutation")
    return None


def _checked(ctx: FieldCtx, f, cert: CarlitzCertificate) -> CarlitzCertificate:
    if carlitz_eval(ctx, cert.params) != f:
        raise AssertionError("certificate does not reproduce the table")
    return cert


# ---------------------------------------------------------------------------
# fractional-linear agreement


@dataclass(frozen=True)
class MobiusMap:
    """x -> (alpha*x + beta) / (gamma*x + delta), det != 0, in the canonical
    scaling gamma = 0, delta = 1 or gamma = 1."""

    alpha: int
    beta: int
    gamma: int
    delta: int


@dataclass(frozen=True)
class MobiusAgreement:
    map: MobiusMap
    agreement: int
    crk_lower_bound: int


def _mobius_blocks(ctx: FieldCtx):
    q = ctx.q
    np_add, np_mul, np_inv = ctx.np_add, ctx.np_mul, ctx.np_inv
    xs = np.arange(q)
    alphas = np.repeat(np.arange(1, q), q)
    betas = np.tile(np.arange(q), q - 1)
    tables = np_add[np_mul[alphas], betas[:, None]]
    yield tables, alphas, betas, 0, 1

    base_a = np.repeat(np.arange(q), q)
    base_b = np.tile(np.arange(q), q)
    numer = np_add[np_mul[base_a], base_b[:, None]]  # shared across delta
    for delta in range(q):
        denom = np_add[xs, delta]
        pole = int(np.nonzero(denom == 0)[0][0])
        vals = np_mul[numer, np_inv[denom][None, :]].astype(np.int16)
        vals[:, pole] = -1
        valid = np_mul[base_a, delta] != base_b
        yield vals[valid], base_a[valid], base_b[valid], 1, delta


def mobius_agreement(ctx: FieldCtx, f) -> MobiusAgreement:
    """Best pointwise agreement with a fractional-linear map (poles never
    count as agreement), and the rank lower bound q - agreement."""
    f = _check_table(ctx, f)
    farr = np.asarray(f, dtype=np.int16)
    if ctx.q <= 9:
        blocks = ctx.derived("mobius_blocks", lambda: list(_mobius_blocks(ctx)))
    else:
        blocks = _mobius_blocks(ctx)
    best = -1
    best_map = None
    for tables, alphas, betas, gamma, delta in blocks:
        counts = (tables == farr).sum(axis=1)
        i = int(counts.argmax())
        if int(counts[i]) > best:
            best = int(counts[i])
            best_map = MobiusMap(int(alphas[i]), int(betas[i]), gamma, delta)
    return MobiusAgreement(best_map, best, ctx.q - best)


# ---------------------------------------------------------------------------
# multiplicative index


@dataclass(frozen=True)
class CyclotomicForm:
    """After subtracting f(0), the map sends x in coset i of the index-ell
    subgroup to constants[i] * x^r."""

    ell: int
    r: int
    constants: tuple[int, ...]


def _divisors(m: int) -> list[int]:
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


def mult_index(ctx: FieldCtx, f) -> CyclotomicForm | None:
    """Smallest coset count ell admitting a branch-monomial form, or None when
    the shifted map vanishes somewhere on the unit group (undefined)."""
    f = _check_table(ctx, f)
    q = ctx.q
    g = f if f[0] == 0 else tuple(ctx.sub_table[v][f[0]] for v in f)
    exp, log = ctx.exp_table, ctx.log_table
    if any(g[e] == 0 for e in exp):
        return None
    m = q - 1
    G = [log[g[exp[x]]] for x in range(m)]
    for ell in _divisors(m):
        step = m // ell
        for r in range(1, step + 1):
            ok = True
            for i in range(ell):
                base = (G[i] - r * i) % m
                for j in range(1, step):
                    x = i + j * ell
                    if (G[x] - r * x) % m != base:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                consts = tuple(exp[(G[i] - r * i) % m] for i in range(ell))
                return CyclotomicForm(ell, r, consts)
    raise AssertionError("ell = q-1 always admits a branch form")  # unreachable


# ---------------------------------------------------------------------------
# combined report


@dataclass(frozen=True)
class MeasureReport:
    degree: object  # int, or NEG_INF for the zero polynomial
    weight: int
    codim: int
    add_index: int
    is_permutation: bool
    carlitz_exact: int | None
    carlitz_certificate: CarlitzCertificate | None
    carlitz_lower_bound: int | None
    mobius_agreement: int | None
    mobius_map: MobiusMap | None
    mobius_lower_bound: int | None
    mult_index: int | None
    mult_index_form: CyclotomicForm | None


def measure_all(
    ctx: FieldCtx,
    f,
    exact_crk_max: int = EXACT_CRK_MAX,
    mobius_max: int = MOBIUS_MAX,
) -> MeasureReport:
    f = _check_table(ctx, f)
    degree, weight = measure_poly(interpolate(ctx, f))
    k, add_index = codimension(ctx, f)
    perm = is_permutation(ctx, f)

    mob = mobius_agreement(ctx, f) if ctx.q <= mobius_max else None

    cert = None
    crk_lb = None
    if perm:
        if ctx.q <= min(exact_crk_max, EXACT_CRK_MAX):
            cert = carlitz_rank(ctx, f)
        elif mob is not None:
            crk_lb = mob.crk_lower_bound

    form = mult_index(ctx, f)
    return MeasureReport(
        degree=degree,
        weight=weight,
        codim=k,
        add_index=add_index,
        is_permutation=perm,
        carlitz_exact=cert.rank if cert else None,
        carlitz_certificate=cert,
        carlitz_lower_bound=crk_lb,
        mobius_agreement=mob.agreement if mob else None,
        mobius_map=mob.map if mob else None,
        mobius_lower_bound=mob.crk_lower_bound if mob else None,
        mult_index=form.ell if form else None,
        mult_index_form=form,
    )
