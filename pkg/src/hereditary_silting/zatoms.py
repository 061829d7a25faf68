"""Symbolic infinite abelian groups built from Pruefer groups, p-adic integers,
the rationals, localizations ``Z[P^-1]`` and their character duals.

A :class:`ZExpr` is a finitely generated part plus symbolic summands.  Pruefer
and adic summands are stored as multiplicity functions on the primes, which
lets a single value describe sums or products over cofinite prime sets.
Hom and Ext are answered by :func:`hom_verdict` / :func:`ext_verdict`, which
extend an atom-pair table bilinearly and fall back to structural rules where
infinite sums or products do not commute with the functor.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Any, Iterable, Union

from .fgab import FgAb, ZERO as FG_ZERO, _prime_powers, support as fg_support, torsion_part
from .primes import ALL, EMPTY, NOWHERE, SPEC, PrimeSet, SpecSubset, next_prime_after


class _Omega:
    """Countably infinite multiplicity."""

    _inst: "_Omega | None" = None

    def __new__(cls) -> "_Omega":
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "OMEGA"

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()
Mult = Union[int, _Omega]

SUM = "sum"
PRODUCT = "product"


def madd(a: Mult, b: Mult) -> Mult:
    if a is OMEGA or b is OMEGA:
        return OMEGA
    return a + b  # type: ignore[operator]


def mmul(a: Mult, b: Mult) -> Mult:
    if a == 0 or b == 0:
        return 0
    if a is OMEGA or b is OMEGA:
        return OMEGA
    return a * b  # type: ignore[operator]


def _mult_json(m: Mult) -> Any:
    return "omega" if m is OMEGA else m


def _mult_from_json(v: Any) -> Mult:
    if v == "omega":
        return OMEGA
    m = int(v)
    if m < 0:
        raise ValueError("multiplicity must be non-negative")
    return m


class UndualizableError(ValueError):
    code = "UNDUALIZABLE"


class UnsupportedEntryError(ValueError):
    code = "UNSUPPORTED_ENTRY"


# atoms ---------------------------------------------------------------------

PRUEFER = "pruefer"
ADIC = "adic"
RATIONALS = "rationals"
LOC = "loc"
DUAL_LOC = "dual_loc"
_TAGS = (PRUEFER, ADIC, RATIONALS, LOC, DUAL_LOC)
_NATURAL = {PRUEFER: SUM, ADIC: PRODUCT}


@dataclass(frozen=True)
class ZAtom:
    tag: str
    p: int | None = None
    primes: PrimeSet | None = None

    def __post_init__(self) -> None:
        if self.tag not in _TAGS:
            raise ValueError(f"unknown atom tag {self.tag!r}")
        if self.tag in (PRUEFER, ADIC) and (self.p is None or self.primes is not None):
            raise ValueError(f"{self.tag} needs exactly a prime p")
        if self.tag in (LOC, DUAL_LOC) and (self.primes is None or self.p is not None):
            raise ValueError(f"{self.tag} needs a prime set")
        if self.tag in (PRUEFER, ADIC):
            PrimeSet.finite([self.p])  # validates primality

    def sort_key(self) -> tuple:
        ps = self.primes
        return (_TAGS.index(self.tag), self.p or 0,
                (ps.cofinite, ps.primes) if ps is not None else (False, ()))

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"atom": self.tag}
        if self.p is not None:
            out["p"] = self.p
        if self.primes is not None:
            out["primes"] = self.primes.to_json()
        return out

    @classmethod
    def from_json(cls, data: Any) -> "ZAtom":
        tag = data["atom"]
        if tag in (PRUEFER, ADIC):
            return cls(tag, int(data["p"]))
        if tag == RATIONALS:
            return cls(tag)
        return cls(tag, primes=PrimeSet.from_json(data["primes"]))

    def __str__(self) -> str:
        if self.tag == PRUEFER:
            return f"Z_{self.p}^inf"
        if self.tag == ADIC:
            return f"J_{self.p}"
        if self.tag == RATIONALS:
            return "Q"
        if self.tag == LOC:
            return f"Z[{self.primes}^-1]"
        return f"Z[{self.primes}^-1]^+"


def pruefer(p: int) -> ZAtom:
    return ZAtom(PRUEFER, p)


def adic(p: int) -> ZAtom:
    return ZAtom(ADIC, p)


def rationals() -> ZAtom:
    return ZAtom(RATIONALS)


def loc(primes: PrimeSet | Iterable[int]) -> ZAtom:
    return ZAtom(LOC, primes=primes if isinstance(primes, PrimeSet) else PrimeSet.finite(primes))


def dual_loc(primes: PrimeSet | Iterable[int]) -> ZAtom:
    return ZAtom(DUAL_LOC, primes=primes if isinstance(primes, PrimeSet) else PrimeSet.finite(primes))


# multiplicity functions on primes -----------------------------------------

@dataclass(frozen=True)
class PrimeFunction:
    """A map primes -> Mult, equal to ``default`` outside finitely many exceptions."""

    default: Mult = 0
    exceptions: tuple[tuple[int, Mult], ...] = ()

    def __post_init__(self) -> None:
        seen: dict[int, Mult] = {}
        for p, m in self.exceptions:
            seen[int(p)] = m
        ex = tuple(sorted((p, m) for p, m in seen.items() if m != self.default))
        object.__setattr__(self, "exceptions", ex)

    @classmethod
    def on(cls, primes: PrimeSet, m: Mult = 1) -> "PrimeFunction":
        if primes.cofinite:
            return cls(m, tuple((p, 0) for p in primes.primes))
        return cls(0, tuple((p, m) for p in primes.primes))

    def at(self, p: int) -> Mult:
        return dict(self.exceptions).get(p, self.default)

    def is_zero(self) -> bool:
        return self.default == 0 and not self.exceptions

    def is_finite(self) -> bool:
        return self.default == 0 and all(m is not OMEGA for _, m in self.exceptions)

    def mentioned(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.exceptions)

    def support(self) -> PrimeSet:
        if self.default != 0:
            return PrimeSet.excluding(p for p, m in self.exceptions if m == 0)
        return PrimeSet.finite(p for p, m in self.exceptions if m != 0)

    def __add__(self, other: "PrimeFunction") -> "PrimeFunction":
        ps = self.mentioned() | other.mentioned()
        return PrimeFunction(madd(self.default, other.default),
                             tuple((p, madd(self.at(p), other.at(p))) for p in ps))

    def scale(self, k: Mult) -> "PrimeFunction":
        return PrimeFunction(mmul(self.default, k), tuple((p, mmul(m, k)) for p, m in self.exceptions))

    def restrict(self, primes: PrimeSet) -> "PrimeFunction":
        if not primes.cofinite:
            return PrimeFunction(0, tuple((p, self.at(p)) for p in primes.primes))
        ex = [(p, m) for p, m in self.exceptions if p in primes]
        ex += [(p, 0) for p in primes.primes]
        return PrimeFunction(self.default, tuple(ex))

    def pieces(self) -> list[tuple[PrimeSet, Mult]]:
        """Disjoint ``(set, multiplicity)`` pieces; at most one is infinite."""
        out: list[tuple[PrimeSet, Mult]] = []
        groups: dict[Any, list[int]] = {}
        for p, m in self.exceptions:
            if m != 0:
                groups.setdefault(m, []).append(p)
        for m, ps in sorted(groups.items(), key=lambda kv: (kv[0] is OMEGA, kv[0] if kv[0] is not OMEGA else 0)):
            out.append((PrimeSet.finite(ps), m))
        if self.default != 0:
            out.append((PrimeSet.excluding(self.mentioned()), self.default))
        return out


# expressions ---------------------------------------------------------------

FamilyKey = tuple[str, str]


@dataclass(frozen=True)
class ZExpr:
    """``fg`` plus Pruefer/adic families (kind, flavor, multiplicity function)
    plus single atoms Q, ``Z[P^-1]`` and ``Z[P^-1]^+`` with multiplicities."""

    fg: FgAb = FG_ZERO
    families: tuple[tuple[str, str, PrimeFunction], ...] = ()
    singles: tuple[tuple[ZAtom, Mult], ...] = ()

    @staticmethod
    def _build(fg: FgAb, fams: dict[FamilyKey, PrimeFunction],
               singles: dict[ZAtom, Mult]) -> "ZExpr":
        fams = dict(fams)
        out_singles: dict[ZAtom, Mult] = {}
        for atom, m in singles.items():
            if m == 0:
                continue
            if atom.tag in (PRUEFER, ADIC):
                key = (atom.tag, _NATURAL[atom.tag])
                fams[key] = fams.get(key, PrimeFunction()) + PrimeFunction(0, ((atom.p, m),))
                continue
            if atom.tag == LOC and atom.primes.is_empty():
                if m is OMEGA:
                    raise ValueError("Z^(omega) is not representable")
                fg = fg + FgAb.free(m)
                continue
            if atom.tag == LOC and atom.primes.is_all():
                atom = rationals()
            if atom.tag == DUAL_LOC and atom.primes.is_empty():
                key = (PRUEFER, SUM if m is not OMEGA else PRODUCT)
                fams[key] = fams.get(key, PrimeFunction()) + PrimeFunction.on(ALL, m)
                continue
            out_singles[atom] = madd(out_singles.get(atom, 0), m)
        merged: dict[FamilyKey, PrimeFunction] = {}
        for (kind, flavor), fn in fams.items():
            if fn.is_zero():
                continue
            if fn.is_finite():
                flavor = _NATURAL[kind]
            key = (kind, flavor)
            merged[key] = merged.get(key, PrimeFunction()) + fn
        return ZExpr(
            fg,
            tuple((k, f, fn) for (k, f), fn in sorted(merged.items())),
            tuple(sorted(out_singles.items(), key=lambda kv: kv[0].sort_key())),
        )

    # constructors
    @classmethod
    def zero(cls) -> "ZExpr":
        return cls()

    @classmethod
    def of_fg(cls, g: FgAb) -> "ZExpr":
        return cls(g)

    @classmethod
    def atom(cls, a: ZAtom, mult: Mult = 1, flavor: str | None = None) -> "ZExpr":
        if a.tag in (PRUEFER, ADIC) and flavor is not None:
            return cls.family(a.tag, PrimeSet.finite([a.p]), mult, flavor)
        return cls._build(FG_ZERO, {}, {a: mult})

    @classmethod
    def family(cls, kind: str, primes: PrimeSet, mult: Mult = 1, flavor: str | None = None) -> "ZExpr":
        if kind not in (PRUEFER, ADIC):
            raise ValueError(f"families are Pruefer or adic, not {kind!r}")
        flavor = flavor or _NATURAL[kind]
        return cls._build(FG_ZERO, {(kind, flavor): PrimeFunction.on(primes, mult)}, {})

    def _dicts(self) -> tuple[dict[FamilyKey, PrimeFunction], dict[ZAtom, Mult]]:
        return {(k, f): fn for k, f, fn in self.families}, dict(self.singles)

    # algebra
    def __add__(self, other: "ZExpr | FgAb") -> "ZExpr":
        other = as_zexpr(other)
        fa, sa = self._dicts()
        fb, sb = other._dicts()
        for key, fn in fb.items():
            fa[key] = fa.get(key, PrimeFunction()) + fn
        for atom, m in sb.items():
            sa[atom] = madd(sa.get(atom, 0), m)
        return ZExpr._build(self.fg + other.fg, fa, sa)

    def scale(self, k: Mult) -> "ZExpr":
        if k == 0:
            return ZExpr()
        if k is OMEGA and not self.fg.is_zero():
            raise ValueError("infinite multiple of a finitely generated group is not representable")
        fg = self.fg * k if k is not OMEGA else FG_ZERO
        fams = {}
        for kind, flavor, fn in self.families:
            fams[(kind, flavor)] = fn.scale(k)
        return ZExpr._build(fg, fams, {a: mmul(m, k) for a, m in self.singles})

    def is_zero(self) -> bool:
        return self.fg.is_zero() and not self.families and not self.singles

    def is_fg(self) -> bool:
        return not self.families and not self.singles

    def mentioned_primes(self) -> frozenset[int]:
        out = set(self.fg.primes())
        for _, _, fn in self.families:
            out |= fn.mentioned()
        for a, _ in self.singles:
            if a.primes is not None:
                out |= a.primes.mentioned()
        return frozenset(out)

    def without_free(self) -> "ZExpr":
        return ZExpr(FgAb(0, self.fg.torsion), self.families, self.singles)

    # presentation
    def atom_records(self) -> list[dict[str, Any]]:
        out: list[dict[str, Any]] = []
        for kind, flavor, fn in self.families:
            for primes, m in fn.pieces():
                if primes.is_finite():
                    for p in primes.members():
                        rec: dict[str, Any] = {"atom": kind, "p": p}
                        if m != 1:
                            rec["mult"] = _mult_json(m)
                        if m is OMEGA or flavor != _NATURAL[kind]:
                            rec["flavor"] = flavor
                        out.append(rec)
                else:
                    rec = {"atom": kind, "primes": primes.to_json(), "flavor": flavor}
                    if m != 1:
                        rec["mult"] = _mult_json(m)
                    out.append(rec)
        for atom, m in self.singles:
            rec = atom.to_json()
            if m != 1:
                rec["mult"] = _mult_json(m)
            out.append(rec)
        return out

    def to_json(self) -> dict[str, Any]:
        return {"fg": self.fg.to_json(), "atoms": self.atom_records()}

    @classmethod
    def from_json(cls, data: Any) -> "ZExpr":
        if isinstance(data, list):
            out = cls()
            for item in data:
                out = out + cls.from_json(item)
            return out
        if not isinstance(data, dict):
            raise ValueError(f"not a module expression: {data!r}")
        if "atom" in data:
            m = _mult_from_json(data.get("mult", 1))
            flavor = data.get("flavor")
            if flavor not in (None, SUM, PRODUCT):
                raise ValueError(f"unknown flavor {flavor!r}")
            tag = data["atom"]
            if tag in (PRUEFER, ADIC) and "primes" in data:
                return cls.family(tag, PrimeSet.from_json(data["primes"]), m, flavor)
            return cls.atom(ZAtom.from_json(data), m, flavor)
        if "rank" in data:
            return cls(FgAb.from_json(data))
        if "fg" in data or "atoms" in data:
            out = cls(FgAb.from_json(data.get("fg", {"rank": 0})))
            for item in data.get("atoms", []):
                out = out + cls.from_json(item)
            return out
        raise ValueError(f"not a module expression: {data!r}")

    def __str__(self) -> str:
        parts = [] if self.fg.is_zero() else [str(self.fg)]
        for kind, flavor, fn in self.families:
            sym = "Z_{p}^inf" if kind == PRUEFER else "J_{p}"
            for primes, m in fn.pieces():
                mult = "" if m == 1 else f"^({m!r})" if m is OMEGA else f"^{m}"
                if primes.is_finite():
                    parts += [sym.format(p=p) + mult for p in primes.members()]
                else:
                    op = "(+)" if flavor == SUM else "prod"
                    parts.append(f"{op}_{{p in {primes}}} {sym}{mult}")
        for atom, m in self.singles:
            parts.append(str(atom) + ("" if m == 1 else f"^({m!r})" if m is OMEGA else f"^{m}"))
        return " + ".join(parts) if parts else "0"


def as_zexpr(x: "ZExpr | FgAb | ZAtom") -> ZExpr:
    if isinstance(x, ZExpr):
        return x
    if isinstance(x, FgAb):
        return ZExpr(x)
    if isinstance(x, ZAtom):
        return ZExpr.atom(x)
    raise TypeError(f"cannot interpret {x!r} as a module expression")


# duality -------------------------------------------------------------------

def atom_dual(x: "ZExpr | FgAb | ZAtom") -> ZExpr:
    """Character dual ``Hom(x, Q/Z)``.

    Finite groups are self-dual, ``Z^r`` goes to ``(Q/Z)^r``, Pruefer groups to
    p-adic integers and ``Z[P^-1]`` (including ``Q``) to its dual atom.  Sums
    dualize to products.
    Adic, rational and dual atoms have no dual rule and raise.
    """
    x = as_zexpr(x)
    out = ZExpr(FgAb(0, x.fg.torsion))
    if x.fg.rank:
        out = out + ZExpr.family(PRUEFER, ALL, x.fg.rank, SUM)
    for kind, flavor, fn in x.families:
        if kind != PRUEFER:
            raise UndualizableError(f"no dual rule for adic summands in {x}")
        if flavor == PRODUCT:
            raise UndualizableError(f"no dual rule for an infinite product of Pruefer groups in {x}")
        out = out + ZExpr._build(FG_ZERO, {(ADIC, PRODUCT): fn}, {})
    for atom, m in x.singles:
        if atom.tag not in (LOC, RATIONALS):
            raise UndualizableError(f"no dual rule for {atom}")
        if m is OMEGA:
            raise UndualizableError(f"no dual rule for an infinite sum of {atom}")
        out = out + ZExpr.atom(dual_loc(atom.primes if atom.tag == LOC else ALL), m)
    return out


# predicates ----------------------------------------------------------------

def divisible_primes(x: "ZExpr | FgAb | ZAtom") -> PrimeSet:
    """Primes p with ``x = p x``."""
    x = as_zexpr(x)
    out = ALL if x.fg.rank == 0 else EMPTY
    if x.fg.torsion:
        out = out & PrimeSet.excluding(x.fg.primes())
    for kind, _, fn in x.families:
        if kind == ADIC:
            out = out & fn.support().complement()
    for atom, _ in x.singles:
        if atom.tag == LOC:
            out = out & atom.primes
    return out


def torsion_primes(x: "ZExpr | FgAb | ZAtom") -> PrimeSet:
    """Primes p such that x has an element of order p."""
    x = as_zexpr(x)
    out = PrimeSet.finite(x.fg.primes())
    for kind, _, fn in x.families:
        if kind == PRUEFER:
            out = out | fn.support()
    for atom, _ in x.singles:
        if atom.tag == DUAL_LOC:
            out = out | atom.primes.complement()
    return out


def is_p_divisible(x: "ZExpr | FgAb | ZAtom", p: int) -> bool:
    return p in divisible_primes(x)


def is_p_torsion_free(x: "ZExpr | FgAb | ZAtom", p: int) -> bool:
    return p not in torsion_primes(x)


def zsupport(x: "ZExpr | FgAb | ZAtom") -> SpecSubset:
    """Classical support; everything other than torsion contains the generic point."""
    x = as_zexpr(x)
    if x.fg.rank or x.singles:
        return SPEC
    closed = PrimeSet.finite(x.fg.primes())
    for kind, flavor, fn in x.families:
        if kind == ADIC:
            return SPEC
        supp = fn.support()
        if flavor == PRODUCT and not supp.is_finite():
            return SPEC
        if any(m is OMEGA for _, m in fn.pieces()) and flavor == PRODUCT:
            return SPEC
        closed = closed | supp
    return NOWHERE if closed.is_empty() else SpecSubset.of(closed)


# derived torsion and localization -----------------------------------------

def derived_torsion(x: "ZExpr | FgAb | ZAtom", primes: PrimeSet) -> tuple[ZExpr, ZExpr]:
    """``(Gamma_P x, R^1 Gamma_P x)`` for the P-primary torsion functor."""
    x = as_zexpr(x)
    t, _ = torsion_part(x.fg, primes)
    g0, g1 = ZExpr(t), ZExpr()
    if x.fg.rank:
        g1 = g1 + ZExpr.family(PRUEFER, primes, x.fg.rank)
    for kind, flavor, fn in x.families:
        if kind == PRUEFER:
            if flavor == PRODUCT:
                raise UnsupportedEntryError("torsion of an infinite product of Pruefer groups")
            g0 = g0 + ZExpr._build(FG_ZERO, {(PRUEFER, SUM): fn.restrict(primes)}, {})
        else:
            if flavor == PRODUCT and any(m is OMEGA for _, m in fn.pieces()):
                raise UnsupportedEntryError("torsion of an infinite power of adic groups")
            g1 = g1 + ZExpr._build(FG_ZERO, {(PRUEFER, SUM): fn.restrict(primes)}, {})
    for atom, m in x.singles:
        if atom.tag == LOC:
            g1 = g1 + ZExpr.family(PRUEFER, primes - atom.primes, m)
        elif atom.tag == DUAL_LOC:
            g0 = g0 + ZExpr.family(PRUEFER, primes - atom.primes, m)
    return g0, g1


def torsion_quotient(x: "ZExpr | FgAb | ZAtom", primes: PrimeSet) -> ZExpr:
    """``x / Gamma_P x``."""
    x = as_zexpr(x)
    _, q = torsion_part(x.fg, primes)
    fams: dict[FamilyKey, PrimeFunction] = {}
    for kind, flavor, fn in x.families:
        if kind == PRUEFER:
            if flavor == PRODUCT:
                raise UnsupportedEntryError("torsion of an infinite product of Pruefer groups")
            fn = fn.restrict(primes.complement())
        fams[(kind, flavor)] = fams.get((kind, flavor), PrimeFunction()) + fn
    singles: dict[ZAtom, Mult] = {}
    for atom, m in x.singles:
        if atom.tag == DUAL_LOC:
            atom = dual_loc(atom.primes | primes)
        singles[atom] = madd(singles.get(atom, 0), m)
    return ZExpr._build(q, fams, singles)


def localize(x: "ZExpr | FgAb | ZAtom", primes: PrimeSet) -> ZExpr:
    """``x (x) Z[P^-1]``.  ``J_q[1/q]`` is a rational vector space of continuum
    dimension and is recorded as ``Z[all^-1]^+``."""
    x = as_zexpr(x)
    _, rest = torsion_part(FgAb(0, x.fg.torsion), primes)
    out = ZExpr(rest) + ZExpr.atom(loc(primes), x.fg.rank)
    for kind, flavor, fn in x.families:
        kept = fn.restrict(primes.complement())
        out = out + ZExpr._build(FG_ZERO, {(kind, flavor): kept}, {})
        if kind == ADIC:
            inverted = fn.restrict(primes)
            if inverted.is_zero():
                continue
            if not inverted.is_finite():
                raise UnsupportedEntryError("localizing infinitely many adic summands")
            total = sum(m for _, m in inverted.exceptions)
            out = out + ZExpr.atom(dual_loc(ALL), total)
    for atom, m in x.singles:
        if atom.tag == LOC:
            out = out + ZExpr.atom(loc(atom.primes | primes), m)
        elif atom.tag == DUAL_LOC:
            out = out + ZExpr.atom(dual_loc(atom.primes | primes), m)
        else:
            out = out + ZExpr.atom(atom, m)
    return out


# verdicts ------------------------------------------------------------------

class Status(str, Enum):
    ZERO = "ZERO"
    NONZERO = "NONZERO"
    GROUP = "GROUP"
    ATOMIC = "ATOMIC"
    UNKNOWN = "UNKNOWN"


def _value_is_zero(v: Any) -> bool:
    return v == 0 if isinstance(v, int) else v.is_zero()


def _value_scale(v: Any, k: Mult) -> Any:
    if isinstance(v, int):
        return None if k is OMEGA else v * k
    try:
        return v.scale(k)
    except ValueError:
        return None


@dataclass(frozen=True)
class HomVerdict:
    """Outcome of a Hom/Ext question.  ``value`` is a ZExpr on the integer side
    and a dimension (int) on the Kronecker side when the answer is exact."""

    status: Status
    value: Any = None
    note: str = ""

    @classmethod
    def zero(cls, note: str = "") -> "HomVerdict":
        return cls(Status.ZERO, None, note)

    @classmethod
    def nonzero(cls, note: str = "") -> "HomVerdict":
        return cls(Status.NONZERO, None, note)

    @classmethod
    def unknown(cls, note: str = "") -> "HomVerdict":
        return cls(Status.UNKNOWN, None, note)

    @classmethod
    def exact(cls, value: Any, note: str = "") -> "HomVerdict":
        if isinstance(value, FgAb):
            value = ZExpr(value)
        if _value_is_zero(value):
            return cls(Status.ZERO, value, note)
        if isinstance(value, int) or value.is_fg():
            return cls(Status.GROUP, value, note)
        return cls(Status.ATOMIC, value, note)

    def is_zero(self) -> bool:
        return self.status == Status.ZERO

    def is_nonzero(self) -> bool:
        return self.status in (Status.NONZERO, Status.GROUP, Status.ATOMIC)

    def is_unknown(self) -> bool:
        return self.status == Status.UNKNOWN

    def is_exact(self) -> bool:
        return self.value is not None

    @property
    def group(self) -> FgAb | None:
        """The value as a finitely generated group, when it is one."""
        if isinstance(self.value, ZExpr) and self.value.is_fg():
            return self.value.fg
        return None

    def __add__(self, other: "HomVerdict") -> "HomVerdict":
        note = "; ".join(n for n in (self.note, other.note) if n)
        if self.is_zero() and other.is_zero():
            if self.is_exact() and other.is_exact():
                return HomVerdict(Status.ZERO, self.value + other.value, note)
            return HomVerdict(Status.ZERO, self.value if self.is_exact() else other.value, note)
        if self.is_nonzero() or other.is_nonzero():
            if self.is_exact() and other.is_exact():
                return HomVerdict.exact(self.value + other.value, note)
            if self.is_zero() and other.is_exact():
                return HomVerdict.exact(other.value, note)
            if other.is_zero() and self.is_exact():
                return HomVerdict.exact(self.value, note)
            return HomVerdict.nonzero(note)
        return HomVerdict.unknown(note)

    def scale(self, k: Mult) -> "HomVerdict":
        if k == 0:
            return HomVerdict.zero(self.note)
        if self.is_exact():
            v = _value_scale(self.value, k)
            if v is not None:
                return HomVerdict.exact(v, self.note)
            return HomVerdict(Status.ZERO if self.is_zero() else Status.NONZERO, None, self.note)
        return self

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"status": self.status.value}
        if self.value is not None:
            out["value"] = self.value if isinstance(self.value, int) else self.value.to_json()
        if self.note:
            out["note"] = self.note
        return out


def combine(verdicts: Iterable[HomVerdict]) -> HomVerdict:
    total = HomVerdict.zero()
    for v in verdicts:
        total = total + v
    return total


# the atom-pair table
#
# Atoms are tuples: ("Z",), ("C", p, p^k), ("PR", p), ("AD", p), ("Q",),
# ("QV",) for a rational vector space of continuum dimension, ("LOC", P).

def _expr_of(atom: tuple) -> ZExpr | None:
    t = atom[0]
    if t == "Z":
        return ZExpr(FgAb.free(1))
    if t == "C":
        return ZExpr(FgAb.cyclic(atom[2]))
    if t == "PR":
        return ZExpr.atom(pruefer(atom[1]))
    if t == "AD":
        return ZExpr.atom(adic(atom[1]))
    if t == "Q":
        return ZExpr.atom(rationals())
    if t == "LOC":
        return ZExpr.atom(loc(atom[1]))
    return None


def _cell(a: tuple, b: tuple) -> tuple[HomVerdict, HomVerdict]:
    """(Hom(a, b), Ext(a, b)) for single atoms."""
    zero = HomVerdict.exact(ZExpr())
    nz = HomVerdict.nonzero()

    def grp(n: int) -> HomVerdict:
        return HomVerdict.exact(FgAb.cyclic(n))

    def jp(p: int) -> HomVerdict:
        return HomVerdict.exact(ZExpr.atom(adic(p)))

    ta, tb = a[0], b[0]
    if ta == "Z":
        v = _expr_of(b)
        return (HomVerdict.exact(v) if v is not None else nz), zero
    if ta == "C":
        p, n = a[1], a[2]
        if tb == "Z":
            return zero, grp(n)
        if tb == "C":
            g = gcd(n, b[2])
            return grp(g), grp(g)
        if tb == "PR":
            return (grp(n) if b[1] == p else zero), zero
        if tb == "AD":
            return zero, (grp(n) if b[1] == p else zero)
        if tb == "LOC":
            return zero, (zero if p in b[1] else grp(n))
        return zero, zero
    if ta == "PR":
        p = a[1]
        if tb == "Z":
            return zero, jp(p)
        if tb == "C":
            return zero, (grp(b[2]) if b[1] == p else zero)
        if tb == "PR":
            return (jp(p) if b[1] == p else zero), zero
        if tb == "AD":
            return zero, (jp(p) if b[1] == p else zero)
        if tb == "LOC":
            return zero, (zero if p in b[1] else jp(p))
        return zero, zero
    if ta == "AD":
        p = a[1]
        if tb in ("Z", "LOC"):
            return zero, nz
        if tb == "C":
            return (grp(b[2]) if b[1] == p else zero), zero
        if tb == "AD":
            return (jp(p) if b[1] == p else zero), zero
        return nz, zero
    if ta in ("Q", "QV"):
        if tb in ("Z", "LOC"):
            return zero, nz
        if tb in ("C", "AD"):
            return zero, zero
        if tb == "PR":
            return nz, zero
        if ta == "Q" and tb == "Q":
            return HomVerdict.exact(ZExpr.atom(rationals())), zero
        return nz, zero
    if ta == "LOC":
        P = a[1]
        if tb == "Z":
            return zero, nz
        if tb == "C":
            return (zero if b[1] in P else grp(b[2])), zero
        if tb == "PR":
            return nz, zero
        if tb == "AD":
            return (zero if b[1] in P else jp(b[1])), zero
        if tb == "Q":
            return HomVerdict.exact(ZExpr.atom(rationals())), zero
        if tb == "QV":
            return nz, zero
        Q = b[1]
        if P <= Q:
            return HomVerdict.exact(ZExpr.atom(loc(Q))), zero
        return zero, nz
    raise ValueError(f"unknown atom {a!r}")


@dataclass(frozen=True)
class _Piece:
    atom: tuple
    count: Mult
    over: PrimeSet | None = None  # indexed family: atom[1] ranges over this set
    flavor: str = SUM

    def infinite(self) -> bool:
        return self.over is not None or self.count is OMEGA

    def prod_inf(self) -> bool:
        return self.infinite() and self.flavor == PRODUCT

    def sum_inf(self) -> bool:
        return self.infinite() and self.flavor == SUM

    def fin_gen(self) -> bool:
        return self.atom[0] in ("Z", "C") and not self.infinite()

    def mentioned(self) -> set[int]:
        out: set[int] = set()
        if self.over is not None:
            out |= self.over.mentioned()
        elif len(self.atom) > 1 and isinstance(self.atom[1], int):
            out.add(self.atom[1])
        if self.atom[0] == "LOC":
            out |= self.atom[1].mentioned()
        return out


def _pieces(x: ZExpr) -> list[_Piece]:
    out: list[_Piece] = []
    if x.fg.rank:
        out.append(_Piece(("Z",), x.fg.rank))
    primary: dict[tuple, int] = {}
    for d in x.fg.torsion:
        for p, q in _prime_powers(d):
            primary[("C", p, q)] = primary.get(("C", p, q), 0) + 1
    out += [_Piece(k, m) for k, m in sorted(primary.items())]

    def add_family(tag: str, primes: PrimeSet, m: Mult, flavor: str) -> None:
        if primes.is_finite():
            out.extend(_Piece((tag, p), m, None, flavor) for p in primes.members())
        else:
            out.append(_Piece((tag, None), m, primes, flavor))

    for kind, flavor, fn in x.families:
        for primes, m in fn.pieces():
            add_family("PR" if kind == PRUEFER else "AD", primes, m, flavor)
    for atom, m in x.singles:
        flavor = SUM if m is not OMEGA else PRODUCT
        if atom.tag == RATIONALS:
            out.append(_Piece(("Q",), m))
        elif atom.tag == LOC:
            out.append(_Piece(("LOC", atom.primes), m))
        else:
            # divisible: a rational vector space plus its torsion part
            out.append(_Piece(("QV",), m))
            add_family("PR", atom.primes.complement(), m, SUM)
    return out


def _fresh(avoid: set[int], k: int) -> list[int]:
    out: list[int] = []
    p = max(avoid | {1})
    while len(out) < k:
        p = next_prime_after(p)
        out.append(p)
    return out


def _instances(piece: _Piece, probe: set[int], generics: list[int]) -> list[tuple[tuple, bool]]:
    if piece.over is None:
        return [(piece.atom, False)]
    out = [((piece.atom[0], p), False) for p in sorted(probe) if p in piece.over]
    out += [((piece.atom[0], g), True) for g in generics]
    return out


def _div_at(pc: _Piece, p: int) -> bool:
    t = pc.atom[0]
    if t in ("PR", "Q", "QV"):
        return True
    if t == "C":
        return pc.atom[1] != p
    if t == "AD":
        return p not in pc.over if pc.over is not None else pc.atom[1] != p
    if t == "LOC":
        return p in pc.atom[1]
    return False


def _p_reduced(pc: _Piece, p: int) -> bool:
    t = pc.atom[0]
    if t == "Z":
        return True
    if t in ("C", "AD"):
        return pc.over is None and pc.atom[1] == p
    if t == "LOC":
        return p not in pc.atom[1]
    return False


def _divisible(pc: _Piece) -> bool:
    return pc.atom[0] in ("PR", "Q", "QV")


def _reduced(pc: _Piece) -> bool:
    return pc.atom[0] in ("Z", "C", "AD", "LOC")


def _torsion_free(pc: _Piece) -> bool:
    return pc.atom[0] in ("Z", "AD", "Q", "QV", "LOC")


def _torsion(pc: _Piece) -> bool:
    return pc.atom[0] == "C" or (pc.atom[0] == "PR" and not pc.prod_inf())


def _slender(pc: _Piece) -> bool:
    return pc.atom[0] in ("Z", "LOC") and not pc.prod_inf()


def _pure_injective(pc: _Piece) -> bool:
    t = pc.atom[0]
    if t in ("PR", "Q", "QV", "C"):
        return True
    return t == "AD" and not pc.sum_inf()


def _hom_rules(a: _Piece, b: _Piece, probe: list[int]) -> HomVerdict:
    for p in probe:
        if _div_at(a, p) and _p_reduced(b, p):
            return HomVerdict.zero(f"{p}-divisible into {p}-reduced")
    if a.prod_inf() and _slender(b):
        return HomVerdict.zero("countable product into a slender group")
    if _torsion(a) and _torsion_free(b):
        return HomVerdict.zero("torsion into torsion-free")
    if a.atom[0] in ("C", "PR") and a.over is None and not a.prod_inf():
        return HomVerdict.zero("primary group into a sum meets only the primary parts")
    if _divisible(a) and _reduced(b):
        return HomVerdict.zero("divisible into reduced")
    return HomVerdict.unknown()


def _ext_rules(a: _Piece, b: _Piece) -> HomVerdict:
    if _divisible(b):
        return HomVerdict.zero("injective target")
    if _torsion_free(a) and _pure_injective(b):
        return HomVerdict.zero("torsion-free into pure-injective")
    return HomVerdict.unknown()


def _pair(a: _Piece, b: _Piece, which: int) -> HomVerdict:
    mentioned = a.mentioned() | b.mentioned()
    generics = _fresh(mentioned, 2)
    ia = _instances(a, b.mentioned(), generics[:1])
    ib = _instances(b, a.mentioned(), generics)
    noncommuting = a.prod_inf() or (b.sum_inf() and not a.fin_gen())
    exact_terms: list[HomVerdict] = []
    any_nonzero = False
    generic_nonzero = False
    for xa, ga in ia:
        for xb, gb in ib:
            v = _cell(xa, xb)[which]
            if v.is_nonzero():
                any_nonzero = True
                generic_nonzero |= ga or gb
            if not (ga or gb):
                exact_terms.append(v)
    if any_nonzero:
        if noncommuting or generic_nonzero:
            return HomVerdict.nonzero()
        if any(t.value is None for t in exact_terms):
            return HomVerdict.nonzero()
        total = combine(exact_terms)
        return total.scale(mmul(a.count, b.count))
    if not noncommuting:
        if a.over is None and b.over is None:
            return HomVerdict.exact(ZExpr())
        return HomVerdict.zero()
    probe = sorted(mentioned) + generics[:1]
    v = _hom_rules(a, b, probe) if which == 0 else _ext_rules(a, b)
    if v.is_unknown():
        return HomVerdict.unknown(f"{'Hom' if which == 0 else 'Ext'}({_describe(a)}, {_describe(b)})")
    return v


def _describe(pc: _Piece) -> str:
    t = pc.atom[0]
    names = {"Z": "Z", "Q": "Q", "QV": "Q^(c)"}
    if t in names:
        base = names[t]
    elif t == "C":
        base = f"Z/{pc.atom[2]}"
    elif t == "LOC":
        base = f"Z[{pc.atom[1]}^-1]"
    else:
        sym = "Z_p^inf" if t == "PR" else "J_p"
        base = sym.replace("p", str(pc.atom[1])) if pc.over is None else sym
    if pc.over is not None:
        op = "(+)" if pc.flavor == SUM else "prod"
        return f"{op}_{{p in {pc.over}}} {base}"
    if pc.count is OMEGA:
        return f"{base}^({'(+)' if pc.flavor == SUM else 'prod'} omega)"
    return base


def _verdict(a: Any, b: Any, which: int) -> HomVerdict:
    a, b = as_zexpr(a), as_zexpr(b)
    total = HomVerdict.exact(ZExpr())
    if which == 0 and a.fg.rank:
        # Hom(Z^r, b) = b^r, whatever b is
        total = HomVerdict.exact(b.scale(a.fg.rank))
        a = a.without_free()
    elif which == 1:
        a = a.without_free()
    for pa in _pieces(a):
        for pb in _pieces(b):
            total = total + _pair(pa, pb, which)
    return total


def hom_verdict(a: Any, b: Any) -> HomVerdict:
    return _verdict(a, b, 0)


def ext_verdict(a: Any, b: Any) -> HomVerdict:
    return _verdict(a, b, 1)


# coverage ------------------------------------------------------------------

def _sample_expressions() -> list[tuple[str, ZExpr]]:
    cof = PrimeSet.excluding([2])
    return [
        ("Z", ZExpr(FgAb.free(1))),
        ("Z/4", ZExpr(FgAb.cyclic(4))),
        ("Z/6", ZExpr(FgAb.cyclic(6))),
        ("Z_2^inf", ZExpr.atom(pruefer(2))),
        ("J_2", ZExpr.atom(adic(2))),
        ("Q", ZExpr.atom(rationals())),
        ("Z[1/2]", ZExpr.atom(loc([2]))),
        ("Z[1/2]^+", ZExpr.atom(dual_loc([2]))),
        ("Z[P\\{2}^-1]", ZExpr.atom(loc(cof))),
        ("Z[P\\{2}^-1]^+", ZExpr.atom(dual_loc(cof))),
        ("Q/Z", ZExpr.family(PRUEFER, ALL)),
        ("prod Z_p^inf", ZExpr.family(PRUEFER, ALL, 1, PRODUCT)),
        ("(+) J_p", ZExpr.family(ADIC, ALL, 1, SUM)),
        ("prod J_p", ZExpr.family(ADIC, ALL, 1, PRODUCT)),
        ("(+)_omega Z_2^inf", ZExpr.atom(pruefer(2), OMEGA, SUM)),
    ]


def coverage_report() -> dict[str, Any]:
    """Every sample pair whose Hom or Ext status the rules cannot settle."""
    samples = _sample_expressions()
    unknown = []
    for na, a in samples:
        for nb, b in samples:
            for name, fn in (("hom", hom_verdict), ("ext", ext_verdict)):
                v = fn(a, b)
                if v.is_unknown():
                    unknown.append({"functor": name, "first": na, "second": nb, "detail": v.note})
    return {
        "schema": "zatoms-coverage/1",
        "samples": [n for n, _ in samples],
        "pairs_checked": 2 * len(samples) ** 2,
        "unknown": unknown,
    }


__all__ = [
    "ADIC", "DUAL_LOC", "HomVerdict", "LOC", "Mult", "OMEGA", "PRODUCT", "PRUEFER", "PrimeFunction",
    "RATIONALS", "SUM", "Status", "UndualizableError", "UnsupportedEntryError", "ZAtom", "ZExpr",
    "adic", "as_zexpr", "atom_dual", "combine", "coverage_report", "derived_torsion", "divisible_primes",
    "dual_loc", "ext_verdict", "hom_verdict", "is_p_divisible", "is_p_torsion_free", "loc", "localize",
    "madd", "mmul", "pruefer", "rationals", "torsion_primes", "torsion_quotient", "zsupport",
]
