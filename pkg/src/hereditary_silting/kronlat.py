"""Homological ring epimorphisms out of the Kronecker algebra A and the
silting/cosilting objects built from chains of them.

Epimorphisms:

* ``ZERO`` and ``ID``;
* ``PP_LOC(i)``: universal localization at the preprojective ``P(i)``;
* ``PI_LOC(j)``: universal localization at the preinjective ``Q(j)``;
* ``UL(U)``: universal localization at the quasi-simples in a nonempty set U
  of rational points (``UL(empty) = ID``).

For ``PP_LOC``/``PI_LOC`` the target is finite dimensional: the left modules
over it form ``Add(E)`` for the exceptional module E perpendicular to the
localized one (``P(i-1)`` for ``P(i)``, ``Q(0)`` for ``P(0)``, ``Q(j+1)`` for
``Q(j)``).  Right modules over the target are ``Add(D E)``.

Silting objects live over right modules and cosilting objects over left
modules; right modules are written as representations through the duality D,
so both sides use the same labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Any, Iterable, Mapping, Sequence

from .dercat import GradedComplex, derived_hom
from .ff import Matrix
from .kronrep import (
    ADIC_K, DUAL_LOCTARGET, GENERIC, LOCTARGET, LUKAS, PRUEFER_K, W_COTILT, KronAtom, KronError,
    KronExpr, KronRep, Label, P, Point, Q, R, adic_k, atom_hom_verdict, cokernel, direct_sum,
    ext1_dim, hom_dim, hom_space, kernel, lukas, pruefer_k, rational_points, w_cotilt,
)

ID, ZERO, PP_LOC, PI_LOC, UL = "id", "zero", "pp_loc", "pi_loc", "ul"


@dataclass(frozen=True, order=True)
class KronEpi:
    tag: str
    i: int = 0
    points: tuple[Point, ...] = ()

    def __post_init__(self) -> None:
        if self.tag not in (ID, ZERO, PP_LOC, PI_LOC, UL):
            raise KronError("BAD_EPI", f"unknown epimorphism {self.tag!r}")
        if self.tag == UL:
            pts = tuple(sorted(set(self.points)))
            if not pts:
                raise KronError("BAD_EPI", "UL needs a nonempty set of points; UL(empty) is ID")
            if any(not p.is_rational for p in pts):
                raise KronError("BAD_EPI", "UL is restricted to rational points")
            object.__setattr__(self, "points", pts)
        elif self.points:
            raise KronError("BAD_EPI", f"{self.tag} takes no points")
        if self.tag in (PP_LOC, PI_LOC):
            if self.i < 0:
                raise KronError("BAD_EPI", "index must be >= 0")
        elif self.i:
            raise KronError("BAD_EPI", f"{self.tag} takes no index")

    @property
    def is_fd(self) -> bool:
        return self.tag in (ID, ZERO, PP_LOC, PI_LOC)

    def to_json(self, q: int = 2) -> dict[str, Any]:
        out: dict[str, Any] = {"epi": self.tag}
        if self.tag in (PP_LOC, PI_LOC):
            out["i"] = self.i
        if self.tag == UL:
            out["points"] = [p.to_json(q) for p in self.points]
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, Any], q: int = 2) -> "KronEpi":
        tag = data.get("epi")
        if tag == UL:
            pts = tuple(Point.from_json(p, q) for p in data.get("points", ()))
            return ul(pts) if pts else cls(ID)
        return cls(tag, int(data.get("i", 0)))

    def name(self, q: int = 2) -> str:
        if self.tag in (PP_LOC, PI_LOC):
            return f"{self.tag}({self.i})"
        if self.tag == UL:
            return "ul{" + ",".join(p.label(q) for p in self.points) + "}"
        return self.tag


EPI_ID, EPI_ZERO = KronEpi(ID), KronEpi(ZERO)


def pp_loc(i: int) -> KronEpi:
    return KronEpi(PP_LOC, i)


def pi_loc(i: int) -> KronEpi:
    return KronEpi(PI_LOC, i)


def ul(points: Iterable[Point]) -> KronEpi:
    pts = tuple(points)
    return KronEpi(UL, 0, pts) if pts else EPI_ID


# lattice -------------------------------------------------------------------

def leq(x: KronEpi, y: KronEpi) -> bool:
    """Order by inclusion of bireflective subcategories."""
    if x == y or x.tag == ZERO or y.tag == ID:
        return True
    if x.tag == UL and y.tag == UL:
        return set(y.points) <= set(x.points)
    return False


def meet(x: KronEpi, y: KronEpi) -> KronEpi:
    if leq(x, y):
        return x
    if leq(y, x):
        return y
    if x.tag == UL and y.tag == UL:
        return ul(set(x.points) | set(y.points))
    return EPI_ZERO


def join(x: KronEpi, y: KronEpi) -> KronEpi:
    if leq(x, y):
        return y
    if leq(y, x):
        return x
    if x.tag == UL and y.tag == UL:
        return ul(set(x.points) & set(y.points))
    return EPI_ID


def covers(x: KronEpi, y: KronEpi, q: int) -> bool:
    """x covers y in the lattice."""
    if x == y or not leq(y, x):
        return False
    if x.tag == ID:
        return y.tag in (PP_LOC, PI_LOC) or (y.tag == UL and len(y.points) == 1)
    if y.tag == ZERO:
        return x.tag in (PP_LOC, PI_LOC) or (x.tag == UL and len(x.points) == q + 1)
    return x.tag == UL and y.tag == UL and len(y.points) == len(x.points) + 1


# the finite-dimensional targets -----------------------------------------------

def localized_module(e: KronEpi) -> Label:
    if e.tag == PP_LOC:
        return P(e.i)
    if e.tag == PI_LOC:
        return Q(e.i)
    raise KronError("UNSUPPORTED_EPI", f"{e.name()} is not a localization at an exceptional module")


def perpendicular_label(e: KronEpi) -> Label:
    """The exceptional E with ``Add(E)`` the left modules over the target."""
    if e.tag == PP_LOC:
        return P(e.i - 1) if e.i >= 1 else Q(0)
    if e.tag == PI_LOC:
        return Q(e.i + 1)
    raise KronError("UNSUPPORTED_EPI", f"{e.name()} has no finite-dimensional target")


def _power(m: KronRep, k: int) -> KronRep:
    return direct_sum([m] * k, m.q)


def _evaluation(m: KronRep, e: KronRep) -> tuple[KronRep, Matrix, Matrix]:
    """The map ``m -> e^h``, ``x -> (f(x))_f`` over a basis of Hom(m, e)."""
    basis = hom_space(m, e).basis
    f1 = [row for f, _ in basis for row in f]
    f2 = [row for _, g in basis for row in g]
    return _power(e, len(basis)), f1, f2


def _coevaluation(e: KronRep, m: KronRep) -> tuple[KronRep, Matrix, Matrix]:
    """The map ``e^h -> m``, the sum of a basis of Hom(e, m)."""
    basis = hom_space(e, m).basis
    f1 = [[v for f, _ in basis for v in f[r]] for r in range(m.d1)]
    f2 = [[v for _, g in basis for v in g[r]] for r in range(m.d2)]
    return _power(e, len(basis)), f1, f2


def reflect(m: KronRep, e: KronEpi) -> KronRep:
    """``B (x)_A m``: the reflection of a left module into the modules over the
    target of e (finite-dimensional targets only).

    For ``Add(E)`` with E exceptional the unit of the reflection is the
    evaluation ``m -> E^{Hom(m, E)}``."""
    if e.tag == ID:
        return m
    if e.tag == ZERO:
        return KronRep.zero(m.q)
    if e.tag == UL:
        raise KronError("UNSUPPORTED_EPI", "targets of UL are infinite dimensional")
    target, _, _ = _evaluation(m, perpendicular_label(e).module(m.q))
    return target


def in_perpendicular(m: KronRep, n: KronRep) -> bool:
    """``Hom(n, m) = 0 = Ext(n, m)``."""
    return hom_dim(n, m) == 0 and ext1_dim(n, m) == 0


def regular_module(q: int) -> KronRep:
    return P(0).module(q) + P(1).module(q)


@dataclass(frozen=True)
class CompactPieces:
    """The data of ``lambda: A -> B`` for a finite-dimensional target, on both sides."""

    b_right: KronExpr      # B as a right module
    ker_right: KronExpr    # Ker lambda
    coker_right: KronExpr  # Coker lambda
    b_plus: KronExpr       # B^+ as a left module
    ker_plus: KronExpr     # Ker lambda^+ = (Coker lambda)^+
    coker_plus: KronExpr   # Coker lambda^+ = (Ker lambda)^+


@lru_cache(maxsize=None)
def compact_pieces(e: KronEpi, q: int) -> CompactPieces:
    """Right side: the reflection ``A -> (D E)^h`` of the regular right module;
    left side: the coreflection ``E^h -> D A`` of the injective cogenerator."""
    E = perpendicular_label(e).module(q)
    A = regular_module(q)
    DE = E.dual()
    B, f1, f2 = _evaluation(A, DE)
    K, _, _ = kernel(A, B, f1, f2)
    C, _, _ = cokernel(A, B, f1, f2)
    DA = A.dual()
    Bp, g1, g2 = _coevaluation(E, DA)
    Kp, _, _ = kernel(Bp, DA, g1, g2)
    Cp, _, _ = cokernel(Bp, DA, g1, g2)
    ex = KronExpr.of_rep
    return CompactPieces(ex(B), ex(K), ex(C), ex(Bp), ex(Kp), ex(Cp))


# chains --------------------------------------------------------------------

@dataclass(frozen=True)
class KronChain:
    """Jump list ``((n_0, e_0), (n_1, e_1), ...)``: ``lambda_n = e_k`` for
    ``n_k <= n < n_{k+1}``, ZERO below ``n_0``; the last epi is ID."""

    jumps: tuple[tuple[int, KronEpi], ...]
    q: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "jumps", tuple((int(n), e) for n, e in self.jumps))

    def at(self, n: int) -> KronEpi:
        out = EPI_ZERO
        for d, e in self.jumps:
            if d <= n:
                out = e
        return out

    @property
    def low(self) -> int:
        return self.jumps[0][0]

    @property
    def high(self) -> int:
        return self.jumps[-1][0]

    def transitions(self) -> list[tuple[int, KronEpi, KronEpi]]:
        """``(n, lambda_{n-1}, lambda_n)`` at every jump."""
        out, prev = [], EPI_ZERO
        for d, e in self.jumps:
            out.append((d, prev, e))
            prev = e
        return out

    def shift(self, k: int) -> "KronChain":
        return KronChain(tuple((d + k, e) for d, e in self.jumps), self.q)

    def canonical(self) -> "KronChain":
        return self.shift(-self.low) if self.jumps else self

    def to_json(self) -> dict[str, Any]:
        return {"q": self.q, "jumps": [{"degree": d, "epi": e.to_json(self.q)} for d, e in self.jumps]}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "KronChain":
        q = int(data.get("q", 2))
        return cls(tuple((int(j["degree"]), KronEpi.from_json(j["epi"], q)) for j in data["jumps"]), q)

    def name(self) -> str:
        return " ".join(f"{d}:{e.name(self.q)}" for d, e in self.jumps)


def validate_kron_chain(c: KronChain) -> dict[str, Any]:
    problems = []
    if not c.jumps:
        problems.append("empty chain")
    else:
        if c.jumps[-1][1] != EPI_ID:
            problems.append("join is not id: the last epimorphism must be ID")
        prev_d, prev_e = None, EPI_ZERO
        for d, e in c.jumps:
            if prev_d is not None and d <= prev_d:
                problems.append(f"degrees not increasing at {d}")
            if e == prev_e or not leq(prev_e, e):
                problems.append(f"not strictly increasing at degree {d}: {prev_e.name(c.q)} -> {e.name(c.q)}")
            prev_d, prev_e = d, e
    kinds = {e.tag for _, e in c.jumps}
    if kinds <= {ID}:
        kind = "trivial"
    elif kinds & {PP_LOC, PI_LOC}:
        kind = "finite_dimensional"
    else:
        kind = "universal_localization"
    return {"valid": not problems, "problems": problems, "kind": kind,
            "meet_is_zero": True, "join_is_id": bool(c.jumps) and c.jumps[-1][1] == EPI_ID}


def _require_valid(c: KronChain) -> None:
    rep = validate_kron_chain(c)
    if not rep["valid"]:
        raise KronError("INVALID_CHAIN", "; ".join(rep["problems"]))


def compact_chain(e: KronEpi, l: int, m: int, q: int = 2) -> KronChain:
    """``lambda_n = e`` for ``l <= n <= m``, ZERO below, ID above."""
    if l > m:
        raise KronError("INVALID_CHAIN", "need l <= m")
    return KronChain(((l, e), (m + 1, EPI_ID)), q)


def ul_chain(sets: Sequence[Iterable[Point]], l: int, q: int = 2) -> KronChain:
    """``lambda_{l+k} = UL(U_k)`` for a strictly decreasing list ending in the empty set."""
    jumps = [(l + k, ul(U)) for k, U in enumerate(sets)]
    if not jumps or jumps[-1][1] != EPI_ID:
        jumps.append((l + len(jumps), EPI_ID))
    return KronChain(tuple(jumps), q)


def trivial_chain(l: int = 0, q: int = 2) -> KronChain:
    return KronChain(((l, EPI_ID),), q)


@dataclass(frozen=True)
class HRS:
    """The Happel-Reiten-Smalo t-structure of the torsion pair (Add q, Cogen W), shifted to degree l."""

    l: int = 0
    q: int = 2

    def to_json(self) -> dict[str, Any]:
        return {"hrs": self.l, "q": self.q}


# builders --------------------------------------------------------------------

def _stalks(items: Iterable[tuple[int, KronExpr]]) -> GradedComplex:
    return GradedComplex(tuple((d, e) for d, e in items if not e.is_zero()), None, "kronecker")


def build_kron_silting(params: KronChain | HRS) -> GradedComplex:
    """``T = (+)_n Cone(mu_n)[n]`` over right modules."""
    if isinstance(params, HRS):
        return _stalks([(-params.l, KronExpr.atom(lukas(), params.q))])
    _require_valid(params)
    q = params.q
    items = []
    for n, before, after in params.transitions():
        k = n - 1  # mu_k : B_{k+1} -> B_k
        if before == EPI_ZERO:
            # Cone(B -> 0) = B[1], placed at degree -(k+1)
            if after == EPI_ID:
                items.append((-n, KronExpr.of_rep(regular_module(q))))
            elif after.tag == UL:
                items.append((-n, KronExpr.loc_target(after.points, q)))
            else:
                items.append((-n, compact_pieces(after, q).b_right))
        elif before.tag in (PP_LOC, PI_LOC):
            pcs = compact_pieces(before, q)
            items += [(-k, pcs.coker_right), (-k - 1, pcs.ker_right)]
        else:
            lost = set(before.points) - set(after.points if after.tag == UL else ())
            for x in sorted(lost):
                items.append((-k, KronExpr.atom(pruefer_k(x), q)))
    return _stalks(items)


def build_kron_cosilting(params: KronChain | HRS) -> GradedComplex:
    """``C = prod_n Cone(mu_n)^+[-n]`` over left modules."""
    if isinstance(params, HRS):
        return _stalks([(params.l, KronExpr.atom(w_cotilt(), params.q))])
    _require_valid(params)
    q = params.q
    items = []
    for n, before, after in params.transitions():
        k = n - 1
        if before == EPI_ZERO:
            if after == EPI_ID:
                items.append((n, KronExpr.of_rep(regular_module(q).dual())))
            elif after.tag == UL:
                items.append((n, KronExpr.dual_loc_target(after.points, q)))
            else:
                items.append((n, compact_pieces(after, q).b_plus))
        elif before.tag in (PP_LOC, PI_LOC):
            pcs = compact_pieces(before, q)
            items += [(k, pcs.ker_plus), (k + 1, pcs.coker_plus)]
        else:
            lost = set(before.points) - set(after.points if after.tag == UL else ())
            for x in sorted(lost):
                items.append((k, KronExpr.atom(adic_k(x), q)))
    return _stalks(items)


def indecomposable_summands(t: GradedComplex) -> set[tuple[int, Any]]:
    out = set()
    for d, e in t.entries:
        out |= {(d, key) for key in e.summand_keys()}
    return out


def equivalence_key(t: GradedComplex) -> frozenset:
    """Summands with degrees, multiplicities forgotten, shifted to start at 0."""
    s = indecomposable_summands(t)
    if not s:
        return frozenset()
    low = min(d for d, _ in s)
    return frozenset((d - low, key) for d, key in s)


def enumerate_compact_silting(index_bound: int = 3, length_bound: int = 4,
                              q: int = 2) -> list[tuple[KronChain, GradedComplex]]:
    """All finite chains of finite-dimensional homological epimorphisms with at
    most ``length_bound`` degrees strictly between ZERO and ID, up to shift."""
    chains = [trivial_chain(0, q)]
    epis = [pp_loc(i) for i in range(index_bound + 1)] + [pi_loc(i) for i in range(index_bound + 1)]
    for e, m in iproduct(epis, range(length_bound)):
        chains.append(compact_chain(e, 0, m, q))
    out, seen = [], set()
    for c in chains:
        t = build_kron_silting(c)
        key = equivalence_key(t)
        if key in seen:
            continue
        seen.add(key)
        out.append((c, t))
    return out


# membership in the coaisle ----------------------------------------------------

def _cogen_fd(lab: Label, e: KronEpi, q: int) -> bool:
    """Is the indecomposable cogenerated by the left modules over the target of e?"""
    if e.tag == ID:
        return True
    if e.tag == ZERO:
        return False
    if e.tag == UL:
        return not (lab.kind == "Q" or (lab.kind == "R" and lab.point in e.points))
    m = lab.module(q)
    target, f1, f2 = _evaluation(m, perpendicular_label(e).module(q))
    k, _, _ = kernel(m, target, f1, f2)
    return k.is_zero()


def _in_x_fd(lab: Label, e: KronEpi, q: int) -> bool:
    if e.tag == ID:
        return True
    if e.tag == ZERO:
        return False
    if e.tag == UL:
        m = lab.module(q)
        return all(hom_dim(m, s) == 0 and ext1_dim(m, s) == 0
                   for s in (R(x).module(q) for x in e.points))
    return lab == perpendicular_label(e)


def _in_x_atom(a: KronAtom, e: KronEpi, q: int) -> bool | None:
    if e.tag == ID:
        return True
    if e.tag == ZERO or e.tag in (PP_LOC, PI_LOC):
        return False
    U = set(e.points)
    if a.tag in (PRUEFER_K, ADIC_K):
        return a.point not in U
    if a.tag == GENERIC:
        return True
    if a.tag == DUAL_LOCTARGET:
        return U <= set(a.points)
    if a.tag == W_COTILT:
        return False
    return None


def _cogen_atom(a: KronAtom, e: KronEpi, q: int) -> bool | None:
    if e.tag == ID:
        return True
    if e.tag == ZERO:
        return False
    if e.tag == UL:
        U = set(e.points)
        if a.tag == PRUEFER_K:
            return a.point not in U
        if a.tag in (ADIC_K, GENERIC):
            return True
        if a.tag == DUAL_LOCTARGET:
            return U <= set(a.points)
        if a.tag == W_COTILT:
            return False
        return None
    # Add(E): a module with no nonzero map to E is not cogenerated by E
    v = atom_hom_verdict(KronExpr.atom(a, q), KronExpr.indec(perpendicular_label(e), q))
    if v.is_zero():
        return False
    if a.tag == PRUEFER_K:
        return False if not _cogen_fd(R(a.point), e, q) else None
    return None


def _and(values: Iterable[bool | None]) -> bool | None:
    vals = list(values)
    if any(v is False for v in vals):
        return False
    if any(v is None for v in vals):
        return None
    return True


def _module_member(x: KronExpr, cogen: KronEpi, inside: KronEpi, q: int) -> bool | None:
    checks: list[bool | None] = []
    for lab, _ in x.fd:
        checks.append(_cogen_fd(lab, cogen, q) and _in_x_fd(lab, inside, q))
    for a, _, _ in x.atoms:
        checks.append(_and([_cogen_atom(a, cogen, q), _in_x_atom(a, inside, q)]))
    return _and(checks)


def _cogen_w(x: KronExpr) -> bool | None:
    checks: list[bool | None] = [lab.kind != "Q" for lab, _ in x.fd]
    for a, _, _ in x.atoms:
        checks.append(True if a.tag in (PRUEFER_K, ADIC_K, GENERIC, DUAL_LOCTARGET, W_COTILT) else None)
    return _and(checks)


def tstructure_member_kron(x: GradedComplex, params: KronChain | HRS) -> bool | None:
    """Coaisle membership: ``H^n(x)`` in ``Cogen(X_n)`` and in ``X_{n+1}`` for all n
    (left modules).  ``None`` means undecided."""
    if x.is_zero():
        return True
    if isinstance(params, HRS):
        checks: list[bool | None] = []
        for d, e in x.entries:
            if d < params.l:
                checks.append(False)
            elif d == params.l:
                checks.append(_cogen_w(e))
        return _and(checks)
    _require_valid(params)
    q = params.q
    return _and(_module_member(e, params.at(d), params.at(d + 1), q) for d, e in x.entries)


def presilting_window(t: GradedComplex, ks: Iterable[int] = range(1, 5)) -> dict[int, Any]:
    return {k: derived_hom(t, t, k) for k in ks}


def all_rational_points(q: int) -> list[Point]:
    return rational_points(q)
