"""Exact arithmetic over the small finite fields GF(q), q in {2, 3, 4, 5, 7},
polynomials over them, and the rational function field GF(q)(t).

Field elements of GF(q) are the integers ``0 .. q-1``.  For prime q this is the
residue class; for q = 4 the integer ``b1*2 + b0`` stands for ``b1*x + b0`` in
``F_2[x]/(x^2 + x + 1)``.

Linear algebra (row reduction, rank, null spaces) is written once against the
small ``Field`` protocol and used both for GF(q) and for GF(q)(t).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Iterator, Protocol, Sequence

import numpy as np

SUPPORTED_Q = (2, 3, 4, 5, 7)

Matrix = list[list[Any]]


class Field(Protocol):
    zero: Any
    one: Any

    def add(self, x: Any, y: Any) -> Any: ...
    def sub(self, x: Any, y: Any) -> Any: ...
    def mul(self, x: Any, y: Any) -> Any: ...
    def inv(self, x: Any) -> Any: ...
    def neg(self, x: Any) -> Any: ...


class GF:
    """The field with q elements, table driven."""

    def __init__(self, q: int):
        if q not in SUPPORTED_Q:
            raise ValueError(f"unsupported field size {q}; choose one of {SUPPORTED_Q}")
        self.q = q
        self.p = 2 if q == 4 else q
        self.zero, self.one = 0, 1
        if q == 4:
            def mul4(x: int, y: int) -> int:
                # (x1 X + x0)(y1 X + y0) with X^2 = X + 1
                x1, x0, y1, y0 = x >> 1, x & 1, y >> 1, y & 1
                c2, c1, c0 = x1 & y1, (x1 & y0) ^ (x0 & y1), x0 & y0
                return ((c1 ^ c2) << 1) | (c0 ^ c2)
            self._add = [[x ^ y for y in range(4)] for x in range(4)]
            self._mul = [[mul4(x, y) for y in range(4)] for x in range(4)]
        else:
            self._add = [[(x + y) % q for y in range(q)] for x in range(q)]
            self._mul = [[(x * y) % q for y in range(q)] for x in range(q)]
        self._neg = [next(y for y in range(q) if self._add[x][y] == 0) for x in range(q)]
        self._inv = [0] + [next(y for y in range(q) if self._mul[x][y] == 1) for x in range(1, q)]

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        if not hasattr(self, "_np"):
            self._np = (np.array(self._add), np.array(self._mul),
                        np.array(self._neg), np.array(self._inv))
        return self._np

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("GF", self.q))

    def elements(self) -> range:
        return range(self.q)

    def add(self, x: int, y: int) -> int:
        return self._add[x][y]

    def sub(self, x: int, y: int) -> int:
        return self._add[x][self._neg[y]]

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def neg(self, x: int) -> int:
        return self._neg[x]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in GF(q)")
        return self._inv[x]


@lru_cache(maxsize=None)
def gf(q: int) -> GF:
    return GF(q)


# generic matrix routines ---------------------------------------------------

def zeros(rows: int, cols: int, F: Field) -> Matrix:
    return [[F.zero] * cols for _ in range(rows)]


def identity(n: int, F: Field) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def matmul(x: Matrix, y: Matrix, F: Field, inner: int | None = None) -> Matrix:
    """Product of an r x k and a k x c matrix.  ``inner`` is only needed when
    x has no rows and y has no rows either (shape cannot be read off)."""
    k = len(y) if inner is None else inner
    c = len(y[0]) if y else 0
    out = []
    for row in x:
        acc = [F.zero] * c
        for t in range(k):
            v = row[t]
            if v == F.zero:
                continue
            yt = y[t]
            for j in range(c):
                if yt[j] != F.zero:
                    acc[j] = F.add(acc[j], F.mul(v, yt[j]))
        out.append(acc)
    return out


def transpose(x: Matrix, cols: int | None = None) -> Matrix:
    if not x:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*x)]


def rref(m: Matrix, F: Field, cols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.  Input is not modified."""
    a = [list(r) for r in m]
    ncols = (len(a[0]) if a else 0) if cols is None else cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != F.zero), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, v) for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != F.zero:
                f = a[i][c]
                a[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m: Matrix, F: Field, cols: int | None = None) -> int:
    return len(rref(m, F, cols)[1])


def gf_rank(m: Matrix, F: GF, cols: int) -> int:
    """Rank over GF(q) by vectorised forward elimination; for large systems."""
    if not m or cols == 0:
        return 0
    add, mul, neg, inv = F.tables()
    a = np.array(m, dtype=np.int64).reshape(len(m), cols)
    r = 0
    for c in range(cols):
        if r == a.shape[0]:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = mul[inv[a[r, c]], a[r]]
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            upd = mul[a[below, c][:, None], a[r][None, :]]
            a[below] = add[a[below], neg[upd]]
        r += 1
    return r


def nullspace(m: Matrix, F: Field, cols: int) -> list[list[Any]]:
    """Basis of {v : m v = 0} as a list of column vectors (plain lists)."""
    red, pivots = rref(m, F, cols)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * cols
        v[f] = F.one
        for row, pc in zip(red, pivots):
            v[pc] = F.neg(row[f])
        basis.append(v)
    return basis


def left_nullspace(m: Matrix, F: Field, rows: int, cols: int) -> list[list[Any]]:
    """Basis of {y : y m = 0} (row vectors)."""
    return nullspace(transpose(m, cols), F, rows)


def column_space(m: Matrix, F: Field, cols: int) -> list[list[Any]]:
    """A basis (as column vectors) of the image of m."""
    _, pivots = rref(m, F, cols)
    return [[row[c] for row in m] for c in pivots]


def inverse(m: Matrix, F: Field) -> Matrix:
    n = len(m)
    aug = [list(r) + e for r, e in zip(m, identity(n, F))]
    red, pivots = rref(aug, F, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def is_invertible(m: Matrix, F: Field) -> bool:
    return len(m) == (len(m[0]) if m else 0) and rank(m, F, len(m)) == len(m)


# polynomials over GF(q) ----------------------------------------------------
#
# A polynomial is a tuple of coefficients, lowest degree first, with no
# trailing zeros; the zero polynomial is ().

Poly = tuple[int, ...]


def p_norm(c: Sequence[int]) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def p_deg(f: Poly) -> int:
    return len(f) - 1


def p_add(f: Poly, g: Poly, F: GF) -> Poly:
    n = max(len(f), len(g))
    return p_norm([F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)])


def p_neg(f: Poly, F: GF) -> Poly:
    return tuple(F.neg(c) for c in f)


def p_sub(f: Poly, g: Poly, F: GF) -> Poly:
    return p_add(f, p_neg(g, F), F)


def p_mul(f: Poly, g: Poly, F: GF) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x == 0:
            continue
        for j, y in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return p_norm(out)


def p_scale(f: Poly, c: int, F: GF) -> Poly:
    return p_norm([F.mul(c, x) for x in f])


def p_divmod(f: Poly, g: Poly, F: GF) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    inv = F.inv(g[-1])
    while len(r) >= len(g) and r:
        c = F.mul(r[-1], inv)
        s = len(r) - len(g)
        q[s] = c
        for i, y in enumerate(g):
            r[s + i] = F.sub(r[s + i], F.mul(c, y))
        r = list(p_norm(r))
    return p_norm(q), tuple(r)


def p_monic(f: Poly, F: GF) -> Poly:
    return p_scale(f, F.inv(f[-1]), F) if f else ()


def p_gcd(f: Poly, g: Poly, F: GF) -> Poly:
    while g:
        f, g = g, p_divmod(f, g, F)[1]
    return p_monic(f, F)


def p_pow(f: Poly, n: int, F: GF) -> Poly:
    out: Poly = (1,)
    for _ in range(n):
        out = p_mul(out, f, F)
    return out


def p_eval(f: Poly, x: int, F: GF) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def monic_polys(d: int, F: GF) -> Iterator[Poly]:
    for lower in product(range(F.q), repeat=d):
        yield tuple(lower) + (1,)


@lru_cache(maxsize=None)
def irreducibles(q: int, d: int) -> tuple[Poly, ...]:
    """All monic irreducible polynomials of degree d over GF(q), in a fixed order."""
    F = gf(q)
    if d == 1:
        return tuple((F.neg(a), 1) for a in range(q))
    smaller = [g for e in range(1, d // 2 + 1) for g in irreducibles(q, e)]
    out = []
    for f in monic_polys(d, F):
        if all(p_divmod(f, g, F)[1] for g in smaller):
            out.append(f)
    return tuple(out)


def companion(f: Poly, F: GF) -> Matrix:
    """Companion matrix of a monic polynomial (ones on the subdiagonal,
    negated coefficients in the last column)."""
    d = p_deg(f)
    c = zeros(d, d, F)
    for i in range(1, d):
        c[i][i - 1] = F.one
    for i in range(d):
        c[i][d - 1] = F.neg(f[i])
    return c


# the rational function field GF(q)(t) --------------------------------------

@dataclass(frozen=True)
class RatFunc:
    """num/den with den monic and gcd(num, den) = 1; zero is ((), (1,))."""

    num: Poly
    den: Poly = (1,)


class RationalFunctionField:
    """GF(q)(t) with exact arithmetic on reduced fractions."""

    def __init__(self, q: int):
        self.base = gf(q)
        self.q = q
        self.zero = RatFunc((), (1,))
        self.one = RatFunc((1,), (1,))
        self.t = RatFunc((0, 1), (1,))

    def __repr__(self) -> str:
        return f"GF({self.q})(t)"

    def make(self, num: Poly, den: Poly = (1,)) -> RatFunc:
        F = self.base
        num, den = p_norm(num), p_norm(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero
        g = p_gcd(num, den, F)
        num, den = p_divmod(num, g, F)[0], p_divmod(den, g, F)[0]
        lead = F.inv(den[-1])
        return RatFunc(p_scale(num, lead, F), p_scale(den, lead, F))

    def const(self, c: int) -> RatFunc:
        return self.make((c,))

    def add(self, x: RatFunc, y: RatFunc) -> RatFunc:
        F = self.base
        if x.den == y.den:
            return self.make(p_add(x.num, y.num, F), x.den)
        return self.make(p_add(p_mul(x.num, y.den, F), p_mul(y.num, x.den, F), F),
                         p_mul(x.den, y.den, F))

    def neg(self, x: RatFunc) -> RatFunc:
        return RatFunc(p_neg(x.num, self.base), x.den)

    def sub(self, x: RatFunc, y: RatFunc) -> RatFunc:
        return self.add(x, self.neg(y))

    def mul(self, x: RatFunc, y: RatFunc) -> RatFunc:
        F = self.base
        return self.make(p_mul(x.num, y.num, F), p_mul(x.den, y.den, F))

    def inv(self, x: RatFunc) -> RatFunc:
        if not x.num:
            raise ZeroDivisionError("inverse of zero in GF(q)(t)")
        return self.make(x.den, x.num)


@lru_cache(maxsize=None)
def ratfunc_field(q: int) -> RationalFunctionField:
    return RationalFunctionField(q)


def lift(m: Matrix, K: RationalFunctionField) -> Matrix:
    """View a matrix over GF(q) as a matrix over GF(q)(t)."""
    return [[K.const(v) for v in row] for row in m]
