"""Filtrations of Spec(Z) by specialization-closed subsets and the
t-structures they determine.

A filtration is a decreasing map ``Phi`` from degrees to subsets of Spec(Z).
The aisle is ``{X : Supp H^n X in Phi(n)}``; the coaisle is described
intrinsically through divisibility and torsion-freeness of the cohomology.
Truncation is computed stalk by stalk with the derived torsion functors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .dercat import GradedComplex
from .primes import EMPTY, NOWHERE, SPEC, PrimeSet, SpecSubset
from .zatoms import (
    UnsupportedEntryError, ZExpr, derived_torsion, divisible_primes, localize, torsion_primes,
    torsion_quotient, zsupport,
)


@dataclass(frozen=True)
class FiltrationTail:
    """Behaviour beyond the last step: ``const`` keeps the last value, ``empty``
    is the empty set from ``start`` on, ``tail`` is ``TAIL(n - start + offset)``."""

    kind: str = "empty"
    start: int | None = None
    offset: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("empty", "const", "tail"):
            raise ValueError(f"unknown filtration tail {self.kind!r}")
        if self.kind == "tail" and (self.start is None or self.offset < 1):
            raise ValueError("a TAIL tail needs a start degree and offset >= 1")


@dataclass(frozen=True)
class Filtration:
    low: SpecSubset = SPEC
    steps: tuple[tuple[int, SpecSubset], ...] = ()
    tail: FiltrationTail = field(default_factory=FiltrationTail)

    def __post_init__(self) -> None:
        steps = tuple(sorted((int(d), s) for d, s in self.steps))
        if len({d for d, _ in steps}) != len(steps):
            raise ValueError("duplicate step degrees")
        object.__setattr__(self, "steps", steps)
        if self.tail.kind == "empty" and self.tail.start is None and steps:
            object.__setattr__(self, "tail", FiltrationTail("empty", steps[-1][0] + 1))

    @classmethod
    def standard(cls, l: int = 0) -> "Filtration":
        """``Phi(n) = Spec`` for ``n < l`` and empty from ``l`` on."""
        return cls(SPEC, (), FiltrationTail("empty", l))

    @classmethod
    def constant(cls, s: SpecSubset) -> "Filtration":
        return cls(s, (), FiltrationTail("const"))

    def empty_start(self) -> int | None:
        if self.tail.kind != "empty":
            return None
        if self.tail.start is not None:
            return self.tail.start
        return self.steps[-1][0] + 1 if self.steps else None

    def at(self, n: int) -> SpecSubset:
        t = self.tail
        if t.kind == "tail" and n >= t.start:
            return SpecSubset.of(PrimeSet.tail(n - t.start + t.offset))
        e = self.empty_start()
        if e is not None and n >= e:
            return NOWHERE
        value = self.low
        for d, s in self.steps:
            if d <= n:
                value = s
        return value

    __call__ = at

    def change_degrees(self) -> list[int]:
        ds = [d for d, _ in self.steps]
        e = self.empty_start()
        if e is not None:
            ds.append(e)
        if self.tail.kind == "tail":
            ds.append(self.tail.start)
        return sorted(set(ds))

    def window(self, pad: int = 2) -> range:
        ds = self.change_degrees() or [0]
        return range(min(ds) - pad, max(ds) + pad + 1)

    # JSON
    def to_json(self) -> dict[str, Any]:
        t = self.tail
        if t.kind == "const":
            tail: Any = "const"
        elif t.kind == "empty":
            implicit = self.steps[-1][0] + 1 if self.steps else None
            tail = "empty" if t.start is None or t.start == implicit else {"kind": "empty", "start": t.start}
        else:
            tail = {"kind": "tail", "start": t.start, "offset": t.offset}
        return {"low": self.low.to_json(), "steps": [[d, s.to_json()] for d, s in self.steps], "tail": tail}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Filtration":
        low = SpecSubset.from_json(data.get("low", "all"))
        steps = tuple((int(d), SpecSubset.from_json(s)) for d, s in data.get("steps", []))
        raw = data.get("tail", "empty")
        if isinstance(raw, str):
            tail = FiltrationTail(raw)
        else:
            tail = FiltrationTail(raw["kind"], raw.get("start"), int(raw.get("offset", 1)))
        if tail.kind == "empty" and tail.start is None and not steps:
            tail = FiltrationTail("const")
        return cls(low, steps, tail)

    def __str__(self) -> str:
        parts = [f"n<..: {self.low}"] + [f"{d}: {s}" for d, s in self.steps]
        t = self.tail
        if t.kind == "empty" and self.empty_start() is not None:
            parts.append(f"{self.empty_start()}..: {{}}")
        elif t.kind == "tail":
            parts.append(f"{t.start}+j: TAIL({t.offset}+j)")
        return "Phi(" + ", ".join(parts) + ")"


def validate_filtration(f: Filtration) -> list[dict[str, Any]]:
    """Degrees n at which ``Phi(n-1) >= Phi(n)`` fails."""
    out = []
    for n in f.window():
        if not f.at(n + 1).issubset(f.at(n)):
            out.append({"code": "NON_DECREASING", "degree": n + 1})
    return out


def nondegenerate(f: Filtration) -> bool:
    if validate_filtration(f):
        return False
    if not f.low.is_spec():
        return False
    if f.tail.kind == "const":
        last = f.steps[-1][1] if f.steps else f.low
        return last.is_empty()
    return True


def intermediate(f: Filtration) -> tuple[int, int] | None:
    """``(n, m)`` with ``Phi(n) = Spec`` (the largest such n) and ``Phi(m)``
    empty (the smallest such m), when both exist."""
    if not nondegenerate(f):
        return None
    window = list(f.window())
    empties = [n for n in window if f.at(n).is_empty()]
    specs = [n for n in window if f.at(n).is_spec()]
    if not empties or not specs:
        return None
    return max(specs), min(empties)


# membership ----------------------------------------------------------------

def _tail_degrees(x: GradedComplex, f: Filtration, extra: int = 3) -> list[int]:
    if x.tail is None:
        return []
    ds = x.degrees() + f.change_degrees() + [x.tail.start]
    horizon = max(ds) - min(ds) + extra
    t = x.tail
    return [t.start + j * t.step for j in range(horizon + 2)]


def _degrees(x: GradedComplex, f: Filtration) -> list[int]:
    return sorted(set(x.degrees()) | set(_tail_degrees(x, f)))


def aisle_member(x: GradedComplex, f: Filtration) -> bool:
    return all(zsupport(x.entry(n)).issubset(f.at(n)) for n in _degrees(x, f))


def coaisle_failures(x: GradedComplex, f: Filtration) -> list[dict[str, Any]]:
    out = []
    for n in _degrees(x, f):
        h = x.entry(n)
        if h.is_zero():
            continue
        here, above = f.at(n), f.at(n + 1)
        if here.is_spec():
            out.append({"degree": n, "reason": "nonzero where Phi(n) is Spec(Z)"})
            continue
        if not above.closed.issubset(divisible_primes(h)):
            out.append({"degree": n, "reason": f"not divisible by primes of {above}"})
        if not (here.closed & torsion_primes(h)).is_empty():
            out.append({"degree": n, "reason": f"has torsion at primes of {here}"})
    return out


def coaisle_member(x: GradedComplex, f: Filtration) -> bool:
    return not coaisle_failures(x, f)


def dual_coaisle_failures(x: GradedComplex, f: Filtration) -> list[dict[str, Any]]:
    """Failures of membership in the class dual to the coaisle: ``H^d`` with
    ``n = -d`` vanishes when ``Phi(n)`` is Spec(Z), is divisible by the primes
    of ``Phi(n)`` and has no torsion at the primes of ``Phi(n+1)``.  This is the
    aisle of the silting t-structure attached to the same data; ``x`` belongs
    to it exactly when ``x^+`` lies in the coaisle of ``f``."""
    out = []
    for d in _degrees(x, f):
        h = x.entry(d)
        if h.is_zero():
            continue
        n = -d
        here, above = f.at(n), f.at(n + 1)
        if here.is_spec():
            out.append({"degree": d, "reason": "nonzero where Phi(-d) is Spec(Z)"})
            continue
        if not here.closed.issubset(divisible_primes(h)):
            out.append({"degree": d, "reason": f"not divisible by primes of {here}"})
        if not (above.closed & torsion_primes(h)).is_empty():
            out.append({"degree": d, "reason": f"has torsion at primes of {above}"})
    return out


def dual_coaisle_member(x: GradedComplex, f: Filtration) -> bool:
    return not dual_coaisle_failures(x, f)


# truncation ----------------------------------------------------------------

@dataclass(frozen=True)
class TruncationTriangle:
    u: GradedComplex
    v: GradedComplex
    records: tuple[dict[str, Any], ...]
    u_in_aisle: bool
    v_in_coaisle: bool

    def to_json(self) -> dict[str, Any]:
        return {"u": self.u.to_json(), "v": self.v.to_json(), "records": list(self.records),
                "u_in_aisle": self.u_in_aisle, "v_in_coaisle": self.v_in_coaisle}


def truncate_stalk(m: ZExpr, n: int, f: Filtration) -> tuple[dict[int, ZExpr], ZExpr, dict[str, Any]]:
    """Truncate ``m`` placed in degree n.  Returns the aisle part by degree, the
    coaisle part (in degree n) and a bookkeeping record.

    With ``S = Phi(n)``, ``S' = Phi(n+1)`` and ``N = m / Gamma_S m`` the triangle is
    ``Gamma_S m [-n] + R^1Gamma_S' N [-n-1] -> m[-n] -> N[S'^-1][-n]``.
    """
    here, above = f.at(n), f.at(n + 1)
    if here.is_spec():
        return {n: m}, ZExpr(), {"degree": n, "input": str(m), "rule": "aisle stalk"}
    g0, _ = derived_torsion(m, here.closed)
    quot = torsion_quotient(m, here.closed)
    _, r1 = derived_torsion(quot, above.closed)
    local = localize(quot, above.closed)
    record = {
        "degree": n, "input": str(m), "rule": "torsion/localization",
        "levels": [str(here), str(above)],
        "torsion": str(g0), "quotient": str(quot), "local_cohomology": str(r1), "localized": str(local),
    }
    return {n: g0, n + 1: r1}, local, record


def truncate(x: GradedComplex, f: Filtration) -> TruncationTriangle:
    if x.tail is not None:
        raise UnsupportedEntryError("truncation of complexes with infinitely many stalks")
    u: list[tuple[int, ZExpr]] = []
    v: list[tuple[int, ZExpr]] = []
    records = []
    for n, m in x.entries:
        parts, local, rec = truncate_stalk(m, n, f)
        u += list(parts.items())
        v.append((n, local))
        records.append(rec)
    uc, vc = GradedComplex(tuple(u)), GradedComplex(tuple(v))
    return TruncationTriangle(uc, vc, tuple(records), aisle_member(uc, f), coaisle_member(vc, f))


def compact_generators(f: Filtration, degrees: Iterable[int], primes: Iterable[int]) -> list[GradedComplex]:
    """Sample of the generators ``Z/p[-n]`` with ``p in Phi(n)`` (and ``Z[-n]`` when
    ``Phi(n)`` is all of Spec(Z))."""
    from .fgab import FgAb

    out = []
    for n in degrees:
        s = f.at(n)
        if s.is_spec():
            out.append(GradedComplex.stalk(FgAb.free(1), n))
        for p in primes:
            if p in s.closed:
                out.append(GradedComplex.stalk(FgAb.cyclic(p), n))
    return out


__all__ = [
    "Filtration", "FiltrationTail", "TruncationTriangle", "aisle_member", "coaisle_failures",
    "coaisle_member", "compact_generators", "dual_coaisle_failures", "dual_coaisle_member", "intermediate", "nondegenerate", "truncate",
    "truncate_stalk", "validate_filtration",
]
