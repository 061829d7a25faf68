"""Finitely generated abelian groups in Smith normal form.

Every group is stored as ``Z^r + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ... | d_k``
and ``d_i >= 2``, so two groups are isomorphic exactly when the stored data agree.

>>> hom(FgAb.cyclic(4), FgAb.cyclic(6))
FgAb(rank=0, torsion=(2,))
>>> ext1(FgAb.cyclic(4), FgAb.cyclic(6))
FgAb(rank=0, torsion=(2,))
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Any, Iterable, Sequence

from sympy import Matrix, factorint
from sympy.matrices.normalforms import smith_normal_decomp

from .primes import ALL, EMPTY, SPEC, NOWHERE, PrimeSet, SpecSubset

IntMatrix = list[list[int]]


def smith_normal_form(m: Sequence[Sequence[int]], rows: int | None = None,
                      cols: int | None = None) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``D = U m V``, ``U``, ``V`` unimodular and ``D``
    diagonal with each diagonal entry dividing the next.

    ``rows``/``cols`` are only needed for matrices with a zero dimension.
    """
    r = len(m) if rows is None else rows
    c = (len(m[0]) if m else 0) if cols is None else cols
    if r == 0 or c == 0:
        eye = lambda n: [[int(i == j) for j in range(n)] for i in range(n)]  # noqa: E731
        return [[0] * c for _ in range(r)], eye(r), eye(c)
    mat = Matrix(r, c, lambda i, j: int(m[i][j]))
    D, U, V = smith_normal_decomp(mat)
    # sympy may leave negative pivots; flip the sign through U
    fix = [1] * r
    for i in range(min(r, c)):
        if D[i, i] < 0:
            fix[i] = -1
    if any(f < 0 for f in fix):
        S = Matrix.diag(*fix)
        D, U = S * D, S * U
    to_list = lambda M: [[int(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]  # noqa: E731
    return to_list(D), to_list(U), to_list(V)


def _prime_powers(n: int) -> list[tuple[int, int]]:
    return sorted((int(p), int(p) ** int(e)) for p, e in factorint(n).items())


def invariant_factors(orders: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Canonical ``(rank, torsion)`` of a direct sum of cyclic groups ``Z/n``
    (``n = 0`` meaning ``Z``)."""
    rank = 0
    by_prime: dict[int, list[int]] = {}
    for n in orders:
        n = abs(int(n))
        if n == 0:
            rank += 1
        elif n > 1:
            for p, q in _prime_powers(n):
                by_prime.setdefault(p, []).append(q)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for powers in by_prime.values():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            factors[length - 1 - i] *= q
    return rank, tuple(f for f in factors if f > 1)


@dataclass(frozen=True)
class FgAb:
    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        t = tuple(int(d) for d in self.torsion)
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if any(d < 2 for d in t):
            raise ValueError(f"invariant factors must be >= 2: {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"invariant factors must form a divisibility chain: {t}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_cyclics(cls, orders: Iterable[int]) -> "FgAb":
        r, t = invariant_factors(orders)
        return cls(r, t)

    @classmethod
    def cyclic(cls, n: int) -> "FgAb":
        return cls.from_cyclics([n])

    @classmethod
    def free(cls, r: int) -> "FgAb":
        return cls(r, ())

    @classmethod
    def cokernel(cls, m: Sequence[Sequence[int]], rows: int | None = None,
                 cols: int | None = None) -> "FgAb":
        """Cokernel of ``m: Z^cols -> Z^rows``."""
        D, _, _ = smith_normal_form(m, rows, cols)
        r = len(D)
        c = len(D[0]) if D else (cols or 0)
        diag = [D[i][i] for i in range(min(r, c))]
        return cls.from_cyclics(diag + [0] * (r - len(diag)))

    # structure
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int:
        if self.rank:
            raise ValueError("infinite group has no finite order")
        return prod(self.torsion)

    def torsion_order(self) -> int:
        return prod(self.torsion)

    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    def cyclic_orders(self) -> list[int]:
        return [0] * self.rank + list(self.torsion)

    def primes(self) -> tuple[int, ...]:
        return tuple(sorted(factorint(self.exponent()))) if self.torsion else ()

    def __add__(self, other: "FgAb") -> "FgAb":
        return FgAb.from_cyclics(self.cyclic_orders() + other.cyclic_orders())

    def __mul__(self, k: int) -> "FgAb":
        return FgAb.from_cyclics(self.cyclic_orders() * k)

    __rmul__ = __mul__

    def to_json(self) -> dict[str, Any]:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: Any) -> "FgAb":
        if not isinstance(data, dict) or "rank" not in data:
            raise ValueError(f"not a finitely generated abelian group: {data!r}")
        return cls.from_cyclics([0] * int(data["rank"]) + [int(d) for d in data.get("torsion", [])])

    def __str__(self) -> str:
        parts = (["Z" if self.rank == 1 else f"Z^{self.rank}"] if self.rank else [])
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


ZERO = FgAb()
Z = FgAb(1)


def hom(m: FgAb, n: FgAb) -> FgAb:
    """Hom_Z(m, n) from the bilinear rules on cyclic summands."""
    orders: list[int] = []
    for a in m.cyclic_orders():
        for b in n.cyclic_orders():
            if a == 0:
                orders.append(b)
            elif b != 0:
                orders.append(gcd(a, b))
    return FgAb.from_cyclics(orders)


def ext1(m: FgAb, n: FgAb) -> FgAb:
    """Ext^1_Z(m, n); ``Ext(Z/a, N) = N/aN``."""
    orders: list[int] = []
    for a in m.torsion:
        for b in n.cyclic_orders():
            orders.append(a if b == 0 else gcd(a, b))
    return FgAb.from_cyclics(orders)


def tensor(m: FgAb, n: FgAb) -> FgAb:
    orders: list[int] = []
    for a in m.cyclic_orders():
        for b in n.cyclic_orders():
            orders.append(gcd(a, b) if a and b else a + b)
    return FgAb.from_cyclics(orders)


def support(m: FgAb) -> SpecSubset:
    if m.rank:
        return SPEC
    return SpecSubset.of(PrimeSet.finite(m.primes())) if m.torsion else NOWHERE


def _split_order(n: int, primes: PrimeSet) -> tuple[int, int]:
    inside = prod(q for p, q in _prime_powers(n) if p in primes)
    return inside, n // inside


def torsion_part(m: FgAb, primes: PrimeSet) -> tuple[FgAb, FgAb]:
    """``(Gamma_P m, m / Gamma_P m)``: the P-primary torsion and the quotient."""
    inside, outside = [], [0] * m.rank
    for d in m.torsion:
        a, b = _split_order(d, primes)
        inside.append(a)
        outside.append(b)
    return FgAb.from_cyclics(inside), FgAb.from_cyclics(outside)


def prime_to_part(n: int, primes: PrimeSet) -> int:
    """Largest divisor of ``n`` with no prime factor in ``primes``."""
    return _split_order(n, primes)[1]


def p_part(n: int, p: int) -> int:
    return _split_order(n, PrimeSet.finite([p]))[0]


def is_p_divisible(m: FgAb, p: int) -> bool:
    return m.rank == 0 and all(d % p for d in m.torsion)


def is_p_torsion_free(m: FgAb, p: int) -> bool:
    return all(d % p for d in m.torsion)


__all__ = [
    "ALL", "EMPTY", "FgAb", "PrimeSet", "SpecSubset", "IntMatrix", "Z", "ZERO", "ext1", "hom", "invariant_factors",
    "is_p_divisible", "is_p_torsion_free", "p_part", "prime_to_part", "smith_normal_form",
    "support", "tensor", "torsion_part",
]
