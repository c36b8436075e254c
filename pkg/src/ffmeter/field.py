"""Finite field contexts GF(p^n) backed by flat lookup tables.

Elements are plain ints in [0, q): the element sum(c_i * lam^i) is encoded as
sum(c_i * p^i), lam being the class of X modulo the defining polynomial.
All arithmetic goes through tables precomputed at construction time, so a
FieldCtx is immutable once built and safe to share.
"""

from __future__ import annotations

import threading
from functools import lru_cache

import numpy as np

MAX_Q = 1024

# inv(0) = 0 everywhere: inversion is the self-map x -> x^(q-2), which fixes 0.
# dlog(0) is an error, not a convention.


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, low to high, trimmed)


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo m (any nonzero leading coefficient), mod p."""
    a = a[:]
    dm = len(m) - 1
    linv = pow(m[-1] % p, p - 2, p)
    while len(a) - 1 >= dm and a:
        c = (a[-1] * linv) % p
        if c:
            s = len(a) - 1 - dm
            for j in range(dm + 1):
                a[s + j] = (a[s + j] - c * m[j]) % p
        a.pop()
    return _trim(a)


def _polymulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _polymod(out, m, p)


def _polypowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    r = [1]
    while e:
        if e & 1:
            r = _polymulmod(r, a, m, p)
        a = _polymulmod(a, a, m, p)
        e >>= 1
    return r


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(a[:]), _trim(b[:])
    while b:
        a, b = b, _polymod(a, b, p)
    if a:
        # make monic so the gcd is canonical
        lead_inv = pow(a[-1], p - 2, p)
        a = [(c * lead_inv) % p for c in a]
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    """Monic m of degree n >= 1 has no factor of degree <= n/2 iff it is irreducible.

    X^(p^i) - X is the product of all irreducibles of degree dividing i, so a
    nontrivial gcd with it means a factor of degree <= i exists.
    """
    n = len(m) - 1
    x_pi = [0, 1]
    for _ in range(n // 2):
        x_pi = _polypowmod(x_pi, p, m, p)
        d = x_pi[:]
        while len(d) < 2:
            d.append(0)
        d[1] = (d[1] - 1) % p
        g = _polygcd(d, m, p)
        if len(g) - 1 > 0:
            return False
    return True


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n, ordered by the base-p value of
    the low-to-high coefficient string."""
    for t in range(p**n):
        coeffs = []
        tt = t
        for _ in range(n):
            coeffs.append(tt % p)
            tt //= p
        coeffs.append(1)
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _factor(m: int) -> list[int]:
    """Distinct prime factors."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


class FieldCtx:
    """Arithmetic context for GF(p^n). Treat as read-only after construction."""

    def __init__(self, p: int, n: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**n
        if q > MAX_Q:
            raise ValueError(f"q = {q} exceeds the supported table range ({MAX_Q})")

        if modulus is None:
            modulus = default_modulus(p, n)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {n}")
            if not _is_irreducible(list(modulus), p):
                raise ValueError("modulus is reducible")

        self.p = p
        self.n = n
        self.q = q
        self.modulus = modulus

        # digit decomposition of every encoding
        digits = []
        for e in range(q):
            t, d = e, []
            for _ in range(n):
                d.append(t % p)
                t //= p
            digits.append(tuple(d))
        self.digits = tuple(digits)

        # class of X; for n = 1 this is the root of the linear modulus
        mod_list = list(modulus)
        lam_digits = _polymod([0, 1], mod_list, p)
        self.lam = self._encode(lam_digits)

        def mul_raw(a: int, b: int) -> int:
            prod = _polymulmod(list(self.digits[a]), list(self.digits[b]), mod_list, p)
            return self._encode(prod)

        # smallest encoding of full multiplicative order q-1
        prime_parts = _factor(q - 1)
        zeta = 1
        for cand in range(2, q):
            if all(self._pow_raw(cand, (q - 1) // r, mul_raw) != 1 for r in prime_parts):
                zeta = cand
                break
        self.zeta = zeta

        exp_table = [1]
        for _ in range(q - 2):
            exp_table.append(mul_raw(exp_table[-1], zeta))
        self.exp_table = tuple(exp_table)
        log_table = [-1] * q  # index 0 stays -1: dlog(0) is undefined
        for i, e in enumerate(exp_table):
            if log_table[e] != -1:
                raise AssertionError("generator is not primitive")
            log_table[e] = i
        self.log_table = tuple(log_table)

        # q x q tables, built vectorized, stored as nested lists of python ints
        dig = np.array(digits, dtype=np.int16)  # (q, n)
        pvec = np.array([p**i for i in range(n)], dtype=np.int64)
        add_np = ((dig[:, None, :] + dig[None, :, :]) % p).astype(np.int64) @ pvec
        self.np_add = add_np.astype(np.int16)
        self.add_table = self.np_add.tolist()

        neg_np = (((-dig) % p).astype(np.int64) @ pvec).astype(np.int16)
        self.np_neg = neg_np
        self.neg_table = neg_np.tolist()

        self.np_sub = self.np_add[:, neg_np]
        self.sub_table = self.np_sub.tolist()

        logs = np.array(log_table, dtype=np.int64)
        exps = np.array(exp_table, dtype=np.int64)
        mul_np = np.zeros((q, q), dtype=np.int64)
        nz = np.arange(1, q)
        mul_np[1:, 1:] = exps[(logs[nz][:, None] + logs[nz][None, :]) % (q - 1)]
        self.np_mul = mul_np.astype(np.int16)
        self.mul_table = self.np_mul.tolist()

        inv_np = np.zeros(q, dtype=np.int64)
        inv_np[1:] = exps[(-logs[nz]) % (q - 1)]
        self.np_inv = inv_np.astype(np.int16)
        self.inv_table = self.np_inv.tolist()

        self._derived: dict = {}
        self._lock = threading.Lock()

    # -- construction helpers -------------------------------------------------

    def _encode(self, digit_list: list[int]) -> int:
        e = 0
        for i, c in enumerate(digit_list):
            e += c * self.p**i
        return e

    @staticmethod
    def _pow_raw(a: int, e: int, mul_raw) -> int:
        r = 1
        while e:
            if e & 1:
                r = mul_raw(r, a)
            a = mul_raw(a, a)
            e >>= 1
        return r

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.sub_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        """x^(q-2) convention: inv(0) = 0."""
        return self.inv_table[a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent; use inv")
        if a == 0:
            return 1 if e == 0 else 0
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ValueError("dlog(0) is undefined")
        return self.log_table[a]

    def frob_pow(self, j: int) -> list[int]:
        """Value table of x -> x^(p^j), cached. j may run up to n (the identity)."""
        tables = self.derived("frob_pows", self._build_frob)
        return tables[j]

    def _build_frob(self) -> list[list[int]]:
        out = [list(range(self.q))]
        for _ in range(self.n):
            out.append([self.pow(v, self.p) for v in out[-1]])
        return out

    def derived(self, key: str, builder):
        """Memo for expensive read-only structures derived from this field."""
        with self._lock:
            if key not in self._derived:
                self._derived[key] = builder()
            return self._derived[key]

    def peek(self, key: str):
        """Cached derived structure, or None without building it."""
        with self._lock:
            return self._derived.get(key)

    def spec_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "modulus": list(self.modulus),
            "zeta": self.zeta,
            "lambda": self.lam,
        }

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={list(self.modulus)})"


@lru_cache(maxsize=None)
def _make_field_cached(p: int, n: int, modulus: tuple[int, ...] | None) -> FieldCtx:
    return FieldCtx(p, n, modulus)


def make_field(p: int, n: int, modulus=None) -> FieldCtx:
    """Build (or fetch the shared copy of) GF(p^n).

    With modulus omitted, the defining polynomial is the lexicographically
    smallest monic irreducible of degree n over F_p.
    """
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _make_field_cached(p, n, modulus)
