"""Flat ring epimorphisms out of Z, chains of them, and the silting and
cosilting complexes they produce.

A flat epimorphism is either ``Z -> 0`` or ``Z -> Z[P^-1]``.  A chain is an
integer ``l`` and decreasing prime sets ``P_0 >= P_1 >= ...``; the epimorphism in
degree ``l + k`` is ``Z -> Z[P_k^-1]`` and it is ``Z -> 0`` below ``l``.  The
prime sets are either an explicit list whose last member persists, or the
rule ``P_k = TAIL(k + offset)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from .dercat import GradedComplex, TailRule
from .primes import ALL, EMPTY, PrimeSet, SpecSubset, nth_prime
from .specz import Filtration, FiltrationTail, intermediate, nondegenerate
from .zatoms import ADIC, PRODUCT, PRUEFER, SUM, ZExpr, adic, dual_loc, loc


@dataclass(frozen=True)
class ZEpi:
    """``Z -> 0`` (``primes is None``) or ``Z -> Z[P^-1]``."""

    primes: PrimeSet | None

    @classmethod
    def zero_ring(cls) -> "ZEpi":
        return cls(None)

    @classmethod
    def loc(cls, primes: PrimeSet) -> "ZEpi":
        return cls(primes)

    @classmethod
    def identity(cls) -> "ZEpi":
        return cls(EMPTY)

    def is_zero_ring(self) -> bool:
        return self.primes is None

    def to_json(self) -> Any:
        return "zero" if self.primes is None else {"loc": self.primes.to_json()}

    @classmethod
    def from_json(cls, data: Any) -> "ZEpi":
        if data == "zero":
            return cls.zero_ring()
        if data == "id":
            return cls.identity()
        return cls(PrimeSet.from_json(data["loc"]))

    def __str__(self) -> str:
        if self.primes is None:
            return "Z->0"
        return "id" if self.primes.is_empty() else f"Z->Z[{self.primes}^-1]"


def leq(a: ZEpi, b: ZEpi) -> bool:
    """Order of bireflective subcategories: ``Z[P^-1] <= Z[Q^-1]`` iff ``Q <= P``."""
    if a.is_zero_ring():
        return True
    if b.is_zero_ring():
        return False
    return b.primes.issubset(a.primes)


def meet(a: ZEpi, b: ZEpi) -> ZEpi:
    if a.is_zero_ring() or b.is_zero_ring():
        return ZEpi.zero_ring()
    return ZEpi(a.primes | b.primes)


def join(a: ZEpi, b: ZEpi) -> ZEpi:
    if a.is_zero_ring():
        return b
    if b.is_zero_ring():
        return a
    return ZEpi(a.primes & b.primes)


@dataclass(frozen=True)
class ZEpiChain:
    l: int
    sets: tuple[PrimeSet, ...] = ()
    tail_offset: int | None = None

    def __post_init__(self) -> None:
        if (self.tail_offset is None) == (not self.sets):
            if self.tail_offset is None:
                raise ValueError("a chain needs a list of prime sets or a TAIL rule")
            raise ValueError("give either a list of prime sets or a TAIL rule, not both")
        if self.tail_offset is not None and self.tail_offset < 1:
            raise ValueError("TAIL offset must be >= 1")

    @classmethod
    def of_list(cls, l: int, sets: list[Any]) -> "ZEpiChain":
        return cls(l, tuple(s if isinstance(s, PrimeSet) else PrimeSet.finite(s) for s in sets))

    @classmethod
    def tail(cls, l: int, offset: int = 1) -> "ZEpiChain":
        return cls(l, (), offset)

    def is_tail(self) -> bool:
        return self.tail_offset is not None

    def P(self, k: int) -> PrimeSet:
        if k < 0:
            raise ValueError("chain index must be >= 0")
        if self.is_tail():
            return PrimeSet.tail(k + self.tail_offset)
        return self.sets[min(k, len(self.sets) - 1)]

    def epi(self, n: int) -> ZEpi:
        return ZEpi.zero_ring() if n < self.l else ZEpi.loc(self.P(n - self.l))

    def length(self) -> int | None:
        return None if self.is_tail() else len(self.sets)

    def to_json(self) -> dict[str, Any]:
        if self.is_tail():
            chain: dict[str, Any] = {"kind": "tail", "offset": self.tail_offset}
        else:
            chain = {"kind": "list", "sets": [_set_json(s) for s in self.sets]}
        return {"l": self.l, "chain": chain}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "ZEpiChain":
        c = data["chain"]
        if c["kind"] == "tail":
            return cls.tail(int(data["l"]), int(c.get("offset", 1)))
        if c["kind"] != "list":
            raise ValueError(f"unknown chain kind {c['kind']!r}")
        return cls(int(data["l"]), tuple(PrimeSet.from_json(s) for s in c["sets"]))

    def __str__(self) -> str:
        if self.is_tail():
            return f"l={self.l}, P_k=TAIL(k+{self.tail_offset})"
        return f"l={self.l}, P=[{', '.join(map(str, self.sets))}]"


def _set_json(s: PrimeSet) -> Any:
    return list(s.primes) if s.is_finite() else s.to_json()


def validate_chain(c: ZEpiChain) -> dict[str, Any]:
    errors = []
    if not c.is_tail():
        for k in range(len(c.sets) - 1):
            if not c.sets[k + 1].issubset(c.sets[k]):
                errors.append({"code": "NOT_DECREASING", "index": k + 1})
        if not c.sets[-1].is_empty():
            errors.append({"code": "NONEMPTY_INTERSECTION", "index": len(c.sets) - 1})
    bounded = not c.is_tail()
    return {"valid": not errors, "errors": errors, "bounded": bounded if not errors else None}


def _jumps(c: ZEpiChain) -> list[tuple[int, PrimeSet]]:
    """``(k, P_k - P_{k+1})`` for the list part of a chain."""
    if c.is_tail():
        return []
    return [(k, c.sets[k] - c.sets[k + 1]) for k in range(len(c.sets) - 1)]


def cone_mu(c: ZEpiChain, n: int) -> GradedComplex:
    """Cone of ``B_n -> B_{n+1}``; a module in degree 0 or ``B_l`` in degree -1."""
    if n < c.l - 1:
        return GradedComplex.zero()
    if n == c.l - 1:
        return GradedComplex.stalk(ZExpr.atom(loc(c.P(0))), -1)
    k = n - c.l
    diff = c.P(k) - c.P(k + 1)
    return GradedComplex.stalk(ZExpr.family(PRUEFER, diff), 0)


def cone_lambda(c: ZEpiChain, n: int) -> GradedComplex:
    """Cone of ``Z -> B_n``."""
    if n < c.l:
        return GradedComplex.stalk(ZExpr.atom(loc(EMPTY)), -1)  # Z -> 0 has cone Z[1]
    return GradedComplex.stalk(ZExpr.family(PRUEFER, c.P(n - c.l)), 0)


def build_silting(c: ZEpiChain) -> GradedComplex:
    """``sum_n Cone(mu_n)[n]``: Pruefer groups for ``P_k - P_{k+1}`` in degree
    ``-(l+k)`` together with ``Z[P_0^-1]`` in degree ``-l``."""
    entries: list[tuple[int, ZExpr]] = [(-c.l, ZExpr.atom(loc(c.P(0))))]
    for k, diff in _jumps(c):
        entries.append((-(c.l + k), ZExpr.family(PRUEFER, diff)))
    tail = TailRule(-c.l, -1, PRUEFER, c.tail_offset, SUM) if c.is_tail() else None
    return GradedComplex(tuple(entries), tail)


def build_cosilting(c: ZEpiChain) -> GradedComplex:
    """``prod_n Cone(mu_n)^+[-n]``: adic groups for ``P_k - P_{k+1}`` in degree
    ``l+k`` together with ``Z[P_0^-1]^+`` in degree ``l``."""
    entries: list[tuple[int, ZExpr]] = [(c.l, ZExpr.atom(dual_loc(c.P(0))))]
    for k, diff in _jumps(c):
        entries.append((c.l + k, ZExpr.family(ADIC, diff, 1, PRODUCT)))
    tail = TailRule(c.l, 1, ADIC, c.tail_offset, PRODUCT) if c.is_tail() else None
    return GradedComplex(tuple(entries), tail)


def filtration_of_chain(c: ZEpiChain) -> Filtration:
    if c.is_tail():
        return Filtration(SpecSubset(ALL, True), (), FiltrationTail("tail", c.l, c.tail_offset))
    steps = tuple((c.l + k, SpecSubset.of(s)) for k, s in enumerate(c.sets) if not s.is_empty())
    empty_at = c.l + next(k for k, s in enumerate(c.sets) if s.is_empty()) if any(
        s.is_empty() for s in c.sets) else None
    tail = FiltrationTail("empty", empty_at) if empty_at is not None else FiltrationTail("const")
    return Filtration(SpecSubset(ALL, True), steps, tail)


def minimal_cosilting_module(e: ZEpi) -> ZExpr:
    """``B^+ + Ker(lambda^+)`` for ``lambda: Z -> Z[P^-1]``; the kernel is the dual
    of ``sum_{p in P} Z_p^inf``."""
    if e.is_zero_ring():
        raise ValueError("the zero ring gives no cosilting module")
    return ZExpr.atom(dual_loc(e.primes)) + ZExpr.family(ADIC, e.primes, 1, PRODUCT)


def boundedness_report(c: ZEpiChain) -> dict[str, Any]:
    f = filtration_of_chain(c)
    t = build_silting(c)
    return {
        "chain_bounded": validate_chain(c)["bounded"],
        "filtration_intermediate": nondegenerate(f) and intermediate(f) is not None,
        "silting_finite": t.is_bounded(),
    }


__all__ = [
    "ZEpi", "ZEpiChain", "boundedness_report", "build_cosilting", "build_silting", "cone_lambda",
    "cone_mu", "filtration_of_chain", "join", "leq", "meet", "minimal_cosilting_module",
    "validate_chain",
]
