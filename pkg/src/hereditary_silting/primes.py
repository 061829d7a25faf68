"""Sets of rational primes that are finite or cofinite.

A :class:`PrimeSet` is stored in canonical form: either the finite list of
its members, or the finite list of primes it omits.  The "tail" sets
``{p_k, p_{k+1}, ...}`` of the increasing enumeration ``p_1 = 2, p_2 = 3, ...``
are cofinite and are normalised accordingly; they keep their own JSON spelling.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable

from sympy import isprime, nextprime, prime, primepi


@lru_cache(maxsize=None)
def nth_prime(k: int) -> int:
    """Return ``p_k`` with ``p_1 = 2``."""
    if k < 1:
        raise ValueError(f"prime index must be >= 1, got {k}")
    return int(prime(k))


def prime_index(p: int) -> int:
    """Inverse of :func:`nth_prime`."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    return int(primepi(p))


def next_prime_after(n: int) -> int:
    return int(nextprime(n))


def _check_primes(values: Iterable[int]) -> tuple[int, ...]:
    out = sorted(set(int(v) for v in values))
    for p in out:
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
    return tuple(out)


@dataclass(frozen=True)
class PrimeSet:
    cofinite: bool
    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "primes", _check_primes(self.primes))

    # constructors
    @classmethod
    def finite(cls, primes: Iterable[int] = ()) -> "PrimeSet":
        return cls(False, tuple(primes))

    @classmethod
    def excluding(cls, primes: Iterable[int] = ()) -> "PrimeSet":
        return cls(True, tuple(primes))

    @classmethod
    def tail(cls, k: int) -> "PrimeSet":
        """``{p_j : j >= k}``."""
        if k < 1:
            raise ValueError(f"tail index must be >= 1, got {k}")
        return cls(True, tuple(nth_prime(j) for j in range(1, k)))

    # predicates
    def __contains__(self, p: int) -> bool:
        return (p in self.primes) != self.cofinite

    def is_empty(self) -> bool:
        return not self.cofinite and not self.primes

    def is_all(self) -> bool:
        return self.cofinite and not self.primes

    def is_finite(self) -> bool:
        return not self.cofinite

    def tail_index(self) -> int | None:
        """``k`` if this set equals ``TAIL(k)`` for some ``k >= 2``."""
        if not self.cofinite or not self.primes:
            return None
        k = len(self.primes) + 1
        if self.primes == tuple(nth_prime(j) for j in range(1, k)):
            return k
        return None

    def members(self) -> tuple[int, ...]:
        if self.cofinite:
            raise ValueError("cofinite prime set has infinitely many members")
        return self.primes

    # algebra
    def complement(self) -> "PrimeSet":
        return PrimeSet(not self.cofinite, self.primes)

    def union(self, other: "PrimeSet") -> "PrimeSet":
        a, b = set(self.primes), set(other.primes)
        if not self.cofinite and not other.cofinite:
            return PrimeSet.finite(a | b)
        if self.cofinite and other.cofinite:
            return PrimeSet.excluding(a & b)
        if self.cofinite:
            return PrimeSet.excluding(a - b)
        return PrimeSet.excluding(b - a)

    def intersection(self, other: "PrimeSet") -> "PrimeSet":
        return self.complement().union(other.complement()).complement()

    def difference(self, other: "PrimeSet") -> "PrimeSet":
        return self.intersection(other.complement())

    def issubset(self, other: "PrimeSet") -> bool:
        return self.difference(other).is_empty()

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset

    def mentioned(self) -> frozenset[int]:
        return frozenset(self.primes)

    # presentation
    def to_json(self) -> dict[str, Any]:
        if self.is_empty():
            return {"kind": "empty"}
        if self.is_all():
            return {"kind": "all"}
        if not self.cofinite:
            return {"kind": "finite", "primes": list(self.primes)}
        k = self.tail_index()
        if k is not None:
            return {"kind": "tail", "k": k}
        return {"kind": "cofinite", "excluded": list(self.primes)}

    @classmethod
    def from_json(cls, data: Any) -> "PrimeSet":
        if isinstance(data, list):
            return cls.finite(data)
        if not isinstance(data, dict) or "kind" not in data:
            raise ValueError(f"not a prime set: {data!r}")
        kind = data["kind"]
        if kind == "empty":
            return EMPTY
        if kind == "all":
            return ALL
        if kind == "finite":
            return cls.finite(data.get("primes", []))
        if kind == "cofinite":
            return cls.excluding(data.get("excluded", []))
        if kind == "tail":
            return cls.tail(int(data["k"]))
        raise ValueError(f"unknown prime set kind {kind!r}")

    def __str__(self) -> str:
        if self.is_empty():
            return "{}"
        if self.is_all():
            return "P"
        if not self.cofinite:
            return "{" + ",".join(map(str, self.primes)) + "}"
        k = self.tail_index()
        if k is not None:
            return f"TAIL({k})"
        return "P\\{" + ",".join(map(str, self.primes)) + "}"


EMPTY = PrimeSet(False, ())
ALL = PrimeSet(True, ())


@dataclass(frozen=True)
class SpecSubset:
    """Specialisation-closed subset of Spec(Z).

    Either the whole spectrum (``generic=True``, which forces every closed
    point to be present) or a set of maximal ideals given by a PrimeSet.
    """

    closed: PrimeSet
    generic: bool = False

    def __post_init__(self) -> None:
        if self.generic and not self.closed.is_all():
            raise ValueError("a subset containing the generic point must be all of Spec(Z)")

    @classmethod
    def of(cls, primes: PrimeSet) -> "SpecSubset":
        return cls(primes, False)

    def is_spec(self) -> bool:
        return self.generic

    def is_empty(self) -> bool:
        return not self.generic and self.closed.is_empty()

    def issubset(self, other: "SpecSubset") -> bool:
        if self.generic and not other.generic:
            return False
        return self.closed.issubset(other.closed)

    __le__ = issubset

    def to_json(self) -> Any:
        return "all" if self.generic else self.closed.to_json()

    @classmethod
    def from_json(cls, data: Any) -> "SpecSubset":
        if data == "all":
            return SPEC
        return cls(PrimeSet.from_json(data), False)

    def __str__(self) -> str:
        return "Spec(Z)" if self.generic else str(self.closed)


SPEC = SpecSubset(ALL, True)
NOWHERE = SpecSubset(EMPTY, False)
