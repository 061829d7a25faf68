"""Complexes over a hereditary ring, stored by their cohomology.

Over a hereditary ring every complex is quasi-isomorphic to the sum of its
shifted cohomology modules, so a :class:`GradedComplex` is a map from degrees
to module expressions and derived Hom reduces to module Hom and Ext:

    Hom_D(X, Y[k]) = prod_n Hom(H^n X, H^{n+k} Y) + Ext(H^n X, H^{n+k-1} Y).

Entries are ``ZExpr`` values (integers) or Kronecker expressions; the ring
specific operations are looked up in a small registry.  A complex may carry a
:class:`TailRule` describing infinitely many stalks ``Z_{p_i}^inf`` or
``J_{p_i}`` marching off in one direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping

from sympy import Matrix

from .fgab import FgAb, IntMatrix, smith_normal_form
from .primes import nth_prime
from .zatoms import (
    ADIC, PRODUCT, PRUEFER, SUM, HomVerdict, ZExpr, adic, as_zexpr, atom_dual, combine,
    ZAtom, ext_verdict, hom_verdict, pruefer,
)


class UndualizableComplexError(ValueError):
    code = "UNDUALIZABLE"


# ring registry ---------------------------------------------------------------

@dataclass(frozen=True)
class RingOps:
    name: str
    entry_type: type
    coerce: Callable[[Any], Any]
    hom: Callable[[Any, Any], HomVerdict]
    ext: Callable[[Any, Any], HomVerdict]
    dual: Callable[[Any], Any]
    to_json: Callable[[Any], Any]
    from_json: Callable[[Any], Any]
    zero: Callable[[], Any]


_RINGS: dict[str, RingOps] = {}


def register_ring(ops: RingOps) -> None:
    _RINGS[ops.name] = ops


def ring_ops(name: str) -> RingOps:
    if name not in _RINGS and name == "kronecker":
        from . import kronrep  # noqa: F401  registers itself
    return _RINGS[name]


def _ring_of(entry: Any) -> str:
    for name, ops in _RINGS.items():
        if isinstance(entry, ops.entry_type):
            return name
    if isinstance(entry, (FgAb, ZAtom)):
        return "Z"
    raise TypeError(f"no ring registered for {type(entry).__name__}")


register_ring(RingOps("Z", ZExpr, as_zexpr, hom_verdict, ext_verdict, atom_dual,
                      lambda e: e.to_json(), ZExpr.from_json, ZExpr))


# complexes -----------------------------------------------------------------

@dataclass(frozen=True)
class TailRule:
    """Stalks at degrees ``start + j*step`` (j >= 0) holding the atom ``kind`` at
    the prime ``p_{index + j}``; ``flavor`` records sum or product assembly."""

    start: int
    step: int
    kind: str
    index: int
    flavor: str = SUM

    def __post_init__(self) -> None:
        if self.step not in (1, -1):
            raise ValueError("tail step must be +1 or -1")
        if self.kind not in (PRUEFER, ADIC):
            raise ValueError(f"tail atoms are Pruefer or adic, not {self.kind!r}")
        if self.index < 1:
            raise ValueError("tail prime index must be >= 1")

    def position(self, degree: int) -> int | None:
        j = (degree - self.start) * self.step
        return j if j >= 0 else None

    def entry(self, degree: int) -> ZExpr:
        j = self.position(degree)
        if j is None:
            return ZExpr()
        p = nth_prime(self.index + j)
        return ZExpr.atom(pruefer(p) if self.kind == PRUEFER else adic(p))

    def shifted(self, k: int) -> "TailRule":
        return TailRule(self.start - k, self.step, self.kind, self.index, self.flavor)

    def dual(self) -> "TailRule":
        if self.kind != PRUEFER:
            raise UndualizableComplexError("no dual rule for an adic tail")
        return TailRule(-self.start, -self.step, ADIC, self.index, PRODUCT if self.flavor == SUM else SUM)

    def to_json(self) -> dict[str, Any]:
        return {"start": self.start, "step": self.step, "atom": self.kind, "k": self.index,
                "flavor": self.flavor}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "TailRule":
        return cls(int(data["start"]), int(data["step"]), data["atom"], int(data["k"]),
                   data.get("flavor", SUM))


@dataclass(frozen=True)
class GradedComplex:
    entries: tuple[tuple[int, Any], ...] = ()
    tail: TailRule | None = None
    ring: str = "Z"

    def __post_init__(self) -> None:
        merged: dict[int, Any] = {}
        for d, e in self.entries:
            d = int(d)
            if self.ring == "Z":
                e = as_zexpr(e)
            merged[d] = merged[d] + e if d in merged else e
        object.__setattr__(self, "entries",
                           tuple(sorted((d, e) for d, e in merged.items() if not e.is_zero())))
        if self.tail is not None and self.ring != "Z":
            raise ValueError("tails are only available over Z")

    @classmethod
    def of(cls, entries: Mapping[int, Any] | Iterable[tuple[int, Any]] = (), tail: TailRule | None = None,
           ring: str | None = None) -> "GradedComplex":
        items = list(entries.items()) if isinstance(entries, Mapping) else list(entries)
        if ring is None:
            ring = _ring_of(items[0][1]) if items else "Z"
        return cls(tuple(items), tail, ring)

    @classmethod
    def stalk(cls, entry: Any, degree: int = 0) -> "GradedComplex":
        return cls.of({degree: entry})

    @classmethod
    def zero(cls, ring: str = "Z") -> "GradedComplex":
        return cls((), None, ring)

    # access
    def finite_entries(self) -> dict[int, Any]:
        return dict(self.entries)

    def degrees(self) -> list[int]:
        return [d for d, _ in self.entries]

    def entry(self, degree: int) -> Any:
        e = self.finite_entries().get(degree)
        if self.tail is not None:
            t = self.tail.entry(degree)
            if not t.is_zero():
                e = t if e is None else e + t
        return ring_ops(self.ring).zero() if e is None else e

    def is_zero(self) -> bool:
        return not self.entries and self.tail is None

    def is_bounded(self) -> bool:
        return self.tail is None

    def span(self) -> tuple[int, int] | None:
        ds = self.degrees() + ([self.tail.start] if self.tail else [])
        return (min(ds), max(ds)) if ds else None

    # operations
    def shift(self, k: int) -> "GradedComplex":
        """``x[k]``: the entry at degree n moves to degree n - k."""
        return GradedComplex(tuple((d - k, e) for d, e in self.entries),
                             self.tail.shifted(k) if self.tail else None, self.ring)

    def __add__(self, other: "GradedComplex") -> "GradedComplex":
        if self.ring != other.ring and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add complexes over different rings")
        if self.tail and other.tail:
            raise ValueError("at most one tail per complex is supported")
        ring = self.ring if not self.is_zero() else other.ring
        return GradedComplex(self.entries + other.entries, self.tail or other.tail, ring)

    def to_json(self) -> dict[str, Any]:
        ops = ring_ops(self.ring)
        out: dict[str, Any] = {"entries": {str(d): ops.to_json(e) for d, e in self.entries}}
        if self.ring != "Z":
            out["ring"] = self.ring
        if self.tail is not None:
            out["tail"] = self.tail.to_json()
        return out

    @classmethod
    def from_json(cls, data: Any) -> "GradedComplex":
        ring = data.get("ring", "Z")
        ops = ring_ops(ring)
        entries = [(int(d), ops.from_json(e)) for d, e in data.get("entries", {}).items()]
        tail = TailRule.from_json(data["tail"]) if data.get("tail") else None
        return cls(tuple(entries), tail, ring)

    def __str__(self) -> str:
        parts = [f"{e}@{d}" for d, e in self.entries]
        if self.tail:
            t = self.tail
            sym = "Z_p^inf" if t.kind == PRUEFER else "J_p"
            parts.append(f"{sym}(p=p_{t.index}+j)@{t.start}{'+' if t.step > 0 else '-'}j")
        return " (+) ".join(parts) if parts else "0"


def shift(x: GradedComplex, k: int) -> GradedComplex:
    return x.shift(k)


def direct_sum(xs: Iterable[GradedComplex]) -> GradedComplex:
    out: GradedComplex | None = None
    for x in xs:
        out = x if out is None else out + x
    return out if out is not None else GradedComplex.zero()


# derived Hom ---------------------------------------------------------------

def _degree_terms(x: GradedComplex, y: GradedComplex, k: int, degrees: Iterable[int],
                  ops: RingOps) -> list[HomVerdict]:
    terms = []
    for n in degrees:
        a = x.entry(n)
        if a.is_zero():
            continue
        b0, b1 = y.entry(n + k), y.entry(n + k - 1)
        if not b0.is_zero():
            terms.append(ops.hom(a, b0))
        if not b1.is_zero():
            terms.append(ops.ext(a, b1))
    return terms


def derived_hom(x: GradedComplex, y: GradedComplex, k: int = 0) -> HomVerdict:
    """Verdict for ``Hom_D(x, y[k])``."""
    if x.is_zero() or y.is_zero():
        return HomVerdict.zero()
    if x.ring != y.ring:
        raise ValueError("complexes over different rings")
    ops = ring_ops(x.ring)
    degrees = set(x.degrees())
    deep: list[int] = []
    if x.tail is not None:
        ds = x.degrees() + y.degrees() + [x.tail.start] + ([y.tail.start] if y.tail else [])
        horizon = (max(ds) - min(ds)) + abs(k) + 3
        t = x.tail
        degrees |= {t.start + j * t.step for j in range(horizon)}
        deep = [t.start + j * t.step for j in (horizon, horizon + 1)]
    terms = _degree_terms(x, y, k, sorted(degrees), ops)
    deep_terms = _degree_terms(x, y, k, deep, ops)
    total = combine(terms)
    if any(v.is_nonzero() for v in deep_terms):
        return HomVerdict.nonzero("infinitely many nonzero degree terms")
    if any(v.is_unknown() for v in deep_terms) and not total.is_nonzero():
        return HomVerdict.unknown("; ".join(v.note for v in deep_terms if v.note))
    return total


def hom_window(x: GradedComplex, y: GradedComplex, ks: Iterable[int]) -> dict[int, HomVerdict]:
    return {k: derived_hom(x, y, k) for k in ks}


# dualities -----------------------------------------------------------------

def plus_dual(x: GradedComplex) -> GradedComplex:
    """Character dual: ``H^n(x^+) = H^{-n}(x)^+``."""
    ops = ring_ops(x.ring)
    try:
        entries = tuple((-d, ops.dual(e)) for d, e in x.entries)
        tail = x.tail.dual() if x.tail else None
    except ValueError as exc:
        raise UndualizableComplexError(str(exc)) from exc
    return GradedComplex(entries, tail, x.ring)


@dataclass(frozen=True)
class PerfectComplex:
    """Bounded complex of free Z-modules: ``ranks[n]`` and ``diffs[n]`` the
    matrix of ``d^n: Z^{ranks[n]} -> Z^{ranks[n+1]}`` (rows = ranks[n+1])."""

    ranks: tuple[tuple[int, int], ...]
    diffs: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranks", tuple(sorted((int(d), int(r)) for d, r in self.ranks if r)))
        ds = tuple(sorted((int(d), tuple(tuple(int(v) for v in row) for row in m))
                          for d, m in self.diffs))
        object.__setattr__(self, "diffs", ds)
        for n, m in ds:
            rows, cols = self.rank(n + 1), self.rank(n)
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ValueError(f"differential at degree {n} must be {rows}x{cols}")
        for n, _ in ds:
            a, b = self.matrix(n), self.matrix(n + 1)
            if a and b and any(any(v for v in row) for row in _mul(b, a)):
                raise ValueError(f"d^{n + 1} d^{n} != 0")

    @classmethod
    def of(cls, ranks: Mapping[int, int], diffs: Mapping[int, IntMatrix] | None = None) -> "PerfectComplex":
        return cls(tuple(ranks.items()), tuple((diffs or {}).items()))

    def rank(self, n: int) -> int:
        return dict(self.ranks).get(n, 0)

    def matrix(self, n: int) -> IntMatrix:
        m = dict(self.diffs).get(n)
        rows, cols = self.rank(n + 1), self.rank(n)
        if m is None:
            return [[0] * cols for _ in range(rows)]
        return [list(r) for r in m]

    def to_json(self) -> dict[str, Any]:
        return {"ranks": {str(d): r for d, r in self.ranks},
                "diffs": {str(d): [list(r) for r in m] for d, m in self.diffs}}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "PerfectComplex":
        return cls.of({int(d): int(r) for d, r in data["ranks"].items()},
                      {int(d): m for d, m in data.get("diffs", {}).items()})


def _mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]) if b else 0)]
            for i in range(len(a))]


def star_dual(x: PerfectComplex) -> PerfectComplex:
    """``Hom(x, Z)``: degree n goes to -n and differentials are transposed."""
    ranks = {-d: r for d, r in x.ranks}
    diffs = {-n - 1: [list(col) for col in zip(*m)] if m else [] for n, m in x.diffs}
    for n, m in list(diffs.items()):
        if not m:
            diffs[n] = [[] for _ in range(ranks.get(n + 1, 0))]
    return PerfectComplex.of(ranks, diffs)


def homology(d_in: IntMatrix, d_out: IntMatrix, n_mid: int) -> FgAb:
    """``ker(d_out) / im(d_in)`` for ``Z^a --d_in--> Z^n_mid --d_out--> Z^b``."""
    if n_mid == 0:
        return FgAb()
    rows_out = len(d_out)
    D, _, V = smith_normal_form(d_out, rows_out, n_mid)
    r = sum(1 for i in range(min(rows_out, n_mid)) if D[i][i] != 0)
    kdim = n_mid - r
    if kdim == 0:
        return FgAb()
    cols_in = len(d_in[0]) if d_in else 0
    if cols_in == 0:
        return FgAb.free(kdim)
    Vinv = Matrix(V).inv()
    coords = Vinv * Matrix(d_in)
    sub = [[int(coords[i, j]) for j in range(cols_in)] for i in range(r, n_mid)]
    return FgAb.cokernel(sub, kdim, cols_in)


def cohomology_of_perfect(x: PerfectComplex) -> GradedComplex:
    out: dict[int, FgAb] = {}
    for n, r in x.ranks:
        out[n] = homology(x.matrix(n - 1), x.matrix(n), r)
    return GradedComplex.of({n: ZExpr(g) for n, g in out.items()}, ring="Z")


__all__ = [
    "GradedComplex", "PerfectComplex", "RingOps", "TailRule", "UndualizableComplexError",
    "cohomology_of_perfect", "derived_hom", "direct_sum", "hom_window", "homology", "plus_dual",
    "register_ring", "ring_ops", "shift", "star_dual",
]
