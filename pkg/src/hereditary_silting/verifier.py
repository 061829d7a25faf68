"""Independent oracles, seeded corpora and property suites.

Every suite returns a :class:`Report`.  Items are ``pass``, ``fail`` or
``unknown``; a failing item carries the exact JSON inputs that reproduce it.
Each suite also runs at least one deliberately broken input (a negative
control) which has to fail for the suite to pass.

Exit-code contract: 0 pass, 1 fail, 2 too many unknowns.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .dercat import GradedComplex, UndualizableComplexError, derived_hom, homology, plus_dual
from .fgab import FgAb
from .primes import ALL, EMPTY, NOWHERE, SPEC, PrimeSet, SpecSubset
from .specz import (
    Filtration, FiltrationTail, coaisle_member, dual_coaisle_member, truncate, validate_filtration,
)
from .zatoms import (
    ADIC, PRODUCT, PRUEFER, UndualizableError, UnsupportedEntryError, ZExpr, adic, atom_dual,
    dual_loc, loc, pruefer, rationals,
)
from .zchains import (
    ZEpi, ZEpiChain, build_cosilting, build_silting, filtration_of_chain, minimal_cosilting_module,
    validate_chain,
)

SCHEMA_VERSION = "1.0"
PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"
DEFAULT_WINDOW = 4
UNKNOWN_THRESHOLD = 0.05


# reports -------------------------------------------------------------------

@dataclass
class Report:
    suite: str
    items: list[dict[str, Any]] = field(default_factory=list)
    controls: list[dict[str, Any]] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)
    unknown_threshold: float = UNKNOWN_THRESHOLD

    def add(self, verdict: str, name: str, payload: Any = None, reason: str = "") -> None:
        item: dict[str, Any] = {"item": name, "verdict": verdict}
        if reason:
            item["reason"] = reason
        if payload is not None and verdict != PASS:
            item["input"] = payload
        self.items.append(item)

    def control(self, name: str, failed: bool, detail: str = "") -> None:
        self.controls.append({"control": name, "failed_as_expected": bool(failed), "detail": detail})

    def tally(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, UNKNOWN: 0}
        for it in self.items:
            out[it["verdict"]] += 1
        return out

    @property
    def status(self) -> str:
        t = self.tally()
        if t[FAIL] or any(not c["failed_as_expected"] for c in self.controls):
            return FAIL
        total = sum(t.values())
        if total and t[UNKNOWN] > self.unknown_threshold * total:
            return UNKNOWN
        return PASS

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, UNKNOWN: 2}[self.status]

    def failures(self) -> list[dict[str, Any]]:
        return [it for it in self.items if it["verdict"] == FAIL]

    def unknowns(self) -> list[dict[str, Any]]:
        return [it for it in self.items if it["verdict"] == UNKNOWN]

    def to_json(self, full: bool = False) -> dict[str, Any]:
        t = self.tally()
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "status": self.status,
            "exit_code": self.exit_code,
            "counts": t,
            "unknown_rate": (t[UNKNOWN] / sum(t.values())) if sum(t.values()) else 0.0,
            "negative_controls": self.controls,
            "failures": self.failures(),
            "unknowns": self.unknowns(),
            "notes": self.notes,
            **({"items": self.items} if full else {}),
        }

    def summary(self) -> str:
        t = self.tally()
        return (f"{self.suite}: {self.status} ({t[PASS]} pass, {t[FAIL]} fail, {t[UNKNOWN]} unknown, "
                f"{sum(c['failed_as_expected'] for c in self.controls)}/{len(self.controls)} controls)")


def _verdict(ok: bool | None) -> str:
    return UNKNOWN if ok is None else (PASS if ok else FAIL)


# the resolution oracle ----------------------------------------------------------

@dataclass(frozen=True)
class _FreeComplex:
    """Bounded complex of free abelian groups: ranks by degree and ``d^n`` as
    ``rank(n+1) x rank(n)`` integer matrices."""

    ranks: dict[int, int]
    diffs: dict[int, list[list[int]]]

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def d(self, n: int) -> list[list[int]]:
        m = self.diffs.get(n)
        if m is None:
            return [[0] * self.rank(n) for _ in range(self.rank(n + 1))]
        return m


def free_resolution(x: GradedComplex) -> _FreeComplex:
    """Two-term free resolution of every cohomology group, summed.

    ``Z^r + Z/d_1 + ... + Z/d_t`` in degree n becomes ``Z^t -> Z^(r+t)`` in
    degrees ``n-1, n`` with the diagonal matrix of the ``d_i``."""
    ranks: dict[int, int] = {}
    pieces: list[tuple[int, int, int, list[int]]] = []  # (degree, offset_low, offset_high, orders)
    for n, e in x.entries:
        g = e.fg if hasattr(e, "fg") else e
        if not isinstance(g, FgAb):
            raise UnsupportedEntryError("the resolution oracle needs finitely generated groups")
        t = list(g.torsion)
        lo, hi = ranks.get(n - 1, 0), ranks.get(n, 0)
        ranks[n - 1] = lo + len(t)
        ranks[n] = hi + g.rank + len(t)
        pieces.append((n, lo, hi + g.rank, t))
    diffs: dict[int, list[list[int]]] = {}
    for n, lo, hi, t in pieces:
        if not t:
            continue
        m = diffs.setdefault(n - 1, [[0] * ranks[n - 1] for _ in range(ranks[n])])
        for i, d in enumerate(t):
            m[hi + i][lo + i] = d
    for n in list(diffs):
        rows, cols = ranks.get(n + 1, 0), ranks.get(n, 0)
        m = diffs[n]
        diffs[n] = [row + [0] * (cols - len(row)) for row in m] + [[0] * cols for _ in range(rows - len(m))]
    return _FreeComplex({d: r for d, r in ranks.items() if r}, diffs)


def _hom_basis(a: _FreeComplex, b: _FreeComplex, k: int) -> list[tuple[int, int, int]]:
    """Basis of ``Hom^k = prod_n Hom(a^n, b^(n+k))`` as ``(n, i, j)``: e_i -> e_j."""
    return [(n, i, j) for n in sorted(a.ranks) for i in range(a.rank(n))
            for j in range(b.rank(n + k))]


def _hom_differential(a: _FreeComplex, b: _FreeComplex, k: int) -> tuple[list[list[int]], int, int]:
    """Matrix of ``D f = d_b f - (-1)^k f d_a`` from ``Hom^k`` to ``Hom^(k+1)``."""
    src = _hom_basis(a, b, k)
    dst = _hom_basis(a, b, k + 1)
    index = {e: r for r, e in enumerate(dst)}
    sign = -1 if k % 2 else 1
    m = [[0] * len(src) for _ in dst]
    for col, (n, i, j) in enumerate(src):
        # d_b after f: e_i (deg n) -> e_j (deg n+k) -> sum_l d_b[l][j] e_l (deg n+k+1)
        db = b.d(n + k)
        for l_ in range(b.rank(n + k + 1)):
            v = db[l_][j]
            if v:
                m[index[(n, i, l_)]][col] += v
        # f after d_a: components (n-1, s) -> e_j with d_a[i][s]
        da = a.d(n - 1)
        for s in range(a.rank(n - 1)):
            v = da[i][s]
            if v:
                m[index[(n - 1, s, j)]][col] -= sign * v
    return m, len(dst), len(src)


def oracle_derived_hom_Z(x: GradedComplex, y: GradedComplex, k: int = 0) -> FgAb:
    """``Hom_D(x, y[k])`` as ``H^k`` of the Hom complex between free resolutions.

    Chain maps modulo homotopy, computed with Smith normal forms; shares no
    code with the closed-form engine beyond the group type."""
    a, b = free_resolution(x), free_resolution(y)
    d_in, _, _ = _hom_differential(a, b, k - 1)
    d_out, _, n_mid = _hom_differential(a, b, k)
    if n_mid == 0:
        return FgAb()
    if not d_in:
        d_in = [[] for _ in range(n_mid)]
    return homology(d_in, d_out, n_mid)


# corpora ------------------------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    width: int = 3          # nonzero degrees per complex
    max_order: int = 256    # torsion order of each group
    max_rank: int = 1
    low: int = -3
    high: int = 3


def random_group(rng: random.Random, b: Bounds) -> FgAb:
    orders = [0] * rng.randint(0, b.max_rank)
    budget = b.max_order
    for _ in range(rng.randint(0, 3)):
        choices = [n for n in (2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 25, 27) if n <= budget]
        if not choices:
            break
        n = rng.choice(choices)
        orders.append(n)
        budget //= n
    return FgAb.from_cyclics(orders)


def random_fg_complex(rng: random.Random, b: Bounds = Bounds()) -> GradedComplex:
    degrees = rng.sample(range(b.low, b.high + 1), rng.randint(0, b.width))
    return GradedComplex.of({d: random_group(rng, b) for d in degrees}, ring="Z")


@dataclass(frozen=True)
class Corpus:
    seed: int
    items: tuple[GradedComplex, ...]
    bounds: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {"seed": self.seed, "bounds": self.bounds, "items": [x.to_json() for x in self.items]}


def fg_pair_corpus(seed: int, n: int = 500, bounds: Bounds = Bounds()) -> list[tuple[GradedComplex, GradedComplex, int]]:
    rng = random.Random(seed)
    return [(random_fg_complex(rng, bounds), random_fg_complex(rng, bounds), rng.randint(-3, 3))
            for _ in range(n)]


_SMALL_PRIMES = [2, 3, 5, 7]


def _random_prime_set(rng: random.Random) -> PrimeSet:
    kind = rng.randrange(3)
    if kind == 0:
        return PrimeSet.finite(rng.sample(_SMALL_PRIMES, rng.randint(1, 3)))
    if kind == 1:
        return PrimeSet.excluding(rng.sample(_SMALL_PRIMES, rng.randint(0, 2)))
    return PrimeSet.tail(rng.randint(1, 4))


def random_z_entry(rng: random.Random) -> ZExpr:
    kind = rng.randrange(7)
    if kind <= 1:
        g = random_group(rng, Bounds(max_order=36))
        return ZExpr(g if not g.is_zero() else FgAb.cyclic(rng.choice(_SMALL_PRIMES)))
    if kind == 2:
        return ZExpr.atom(pruefer(rng.choice(_SMALL_PRIMES)))
    if kind == 3:
        return ZExpr.atom(adic(rng.choice(_SMALL_PRIMES)))
    if kind == 4:
        return ZExpr.atom(rationals())
    if kind == 5:
        return ZExpr.atom(loc(_random_prime_set(rng)))
    return ZExpr.family(PRUEFER, _random_prime_set(rng))


def z_corpus(seed: int, n: int = 100) -> Corpus:
    """Complexes mixing f.g. groups with Pruefer, adic, rational and local groups."""
    rng = random.Random(seed)
    items = []
    for _ in range(n):
        degrees = rng.sample(range(-2, 3), rng.randint(1, 2))
        entries = {d: random_z_entry(rng) for d in degrees}
        if rng.random() < 0.3:
            d = degrees[0]
            entries[d] = entries[d] + random_z_entry(rng)
        items.append(GradedComplex.of(entries, ring="Z"))
    return Corpus(seed, tuple(items), {"degrees": [-2, 2], "entries_per_degree": 2})


def random_z_chain(rng: random.Random) -> ZEpiChain:
    l = rng.randint(-2, 2)
    if rng.random() < 0.2:
        return ZEpiChain.tail(l, rng.randint(1, 3))
    top = ALL if rng.random() < 0.2 else _random_prime_set(rng)
    sets = [top]
    for _ in range(rng.randint(0, 3)):
        sets.append(sets[-1] & _random_prime_set(rng))
    if not sets[-1].is_empty():
        sets.append(EMPTY)
    return ZEpiChain(l, tuple(sets))


def z_chains(seed: int, n: int = 50) -> list[ZEpiChain]:
    rng = random.Random(seed)
    out: list[ZEpiChain] = [ZEpiChain.tail(0, 1)]
    while len(out) < n:
        c = random_z_chain(rng)
        if validate_chain(c)["valid"]:
            out.append(c)
    return out


def standard_filtrations() -> list[Filtration]:
    """Ten filtrations: standard, finite steps, TAIL rules and degenerate constants."""
    S = SpecSubset.of
    return [
        Filtration.standard(0),
        Filtration.standard(2),
        Filtration(SPEC, ((0, S(PrimeSet.finite([2, 3, 5]))), (1, S(PrimeSet.finite([3, 5]))),
                          (2, S(PrimeSet.finite([5])))), FiltrationTail("empty", 3)),
        Filtration(SPEC, ((-1, S(PrimeSet.excluding([2]))), (1, S(PrimeSet.finite([7])))),
                   FiltrationTail("empty", 2)),
        Filtration(SPEC, ((0, S(ALL)),), FiltrationTail("empty", 1)),
        Filtration(SPEC, (), FiltrationTail("tail", 0, 1)),
        Filtration(SPEC, ((-2, S(PrimeSet.tail(1))),), FiltrationTail("tail", -1, 2)),
        Filtration.constant(SPEC),
        Filtration.constant(NOWHERE),
        Filtration.constant(S(PrimeSet.finite([3]))),
    ]


def broken_filtration() -> Filtration:
    """Increasing somewhere: not a filtration by supports."""
    S = SpecSubset.of
    return Filtration(SPEC, ((0, S(PrimeSet.finite([2]))), (1, S(PrimeSet.finite([2, 3])))),
                      FiltrationTail("empty", 2))


# helpers -----------------------------------------------------------------------

def _json(x: Any) -> Any:
    return x.to_json() if hasattr(x, "to_json") else x


TAIL_REACH = 6  # tail positions covered by an adaptive window; p_6 = 13 exceeds every corpus prime


def _reach(x: GradedComplex) -> tuple[int, int] | None:
    ds = list(x.degrees())
    if x.tail is not None:
        ds += [x.tail.start, x.tail.start + x.tail.step * TAIL_REACH]
    return (min(ds), max(ds)) if ds else None


def _window_span(x: GradedComplex, c: GradedComplex, base: int) -> int:
    """Largest k with a possibly nonzero ``Hom(x, c[k])``, tails cut at TAIL_REACH."""
    sx, sc = _reach(x), _reach(c)
    if sx is None or sc is None:
        return base
    return max(base, sc[1] - sx[0] + 2)


def _all_zero(verdicts: Iterable[Any]) -> bool | None:
    vs = list(verdicts)
    if any(v.is_nonzero() for v in vs):
        return False
    if any(v.is_unknown() for v in vs):
        return None
    return True


# suites -------------------------------------------------------------------------

def suite_hom_oracle(seed: int = 7, n: int = 500, bounds: Bounds = Bounds()) -> Report:
    """Closed-form derived Hom against the resolution oracle on random pairs."""
    rep = Report("hom-oracle")
    start = time.perf_counter()
    for idx, (x, y, k) in enumerate(fg_pair_corpus(seed, n, bounds)):
        engine = derived_hom(x, y, k)
        oracle = oracle_derived_hom_Z(x, y, k)
        if engine.is_zero():
            ok = oracle.is_zero()
        else:
            ok = engine.group is not None and engine.group == oracle
        rep.add(_verdict(ok), f"pair {idx}", {"x": x.to_json(), "y": y.to_json(), "k": k},
                "" if ok else f"engine {engine.to_json()} vs oracle {oracle}")
    rep.notes["seconds"] = round(time.perf_counter() - start, 3)
    rep.notes["bounds"] = bounds.__dict__
    # negative control: an engine answer off by one summand must be caught
    x, y, _ = fg_pair_corpus(seed, 1, bounds)[0]
    wrong = oracle_derived_hom_Z(x, y, 0) + FgAb.cyclic(2)
    rep.control("perturbed answer", wrong != oracle_derived_hom_Z(x, y, 0))
    return rep


def check_plus_duality_formula(x: GradedComplex) -> bool | None:
    """``H^n(x^+) = H^{-n}(x)^+`` degreewise."""
    try:
        d = plus_dual(x)
    except (UndualizableComplexError, UndualizableError):
        return None
    degrees = set(x.degrees()) | {-n for n in d.degrees()}
    return all(d.entry(-n) == atom_dual(x.entry(n)) for n in degrees) and d.ring == x.ring


def suite_plus_duality(seed: int = 7, n: int = 500, bounds: Bounds = Bounds()) -> Report:
    rep = Report("plus-duality")
    for idx, (x, _, _) in enumerate(fg_pair_corpus(seed, n, bounds)):
        ok = check_plus_duality_formula(x)
        rep.add(_verdict(ok), f"complex {idx}", x.to_json())
    # negative control: a dual placed in the wrong degree
    x = GradedComplex.of({1: FgAb.cyclic(4)}, ring="Z")
    bad = plus_dual(x).shift(1)
    rep.control("dual in the wrong degree", bad.entry(-1) != atom_dual(x.entry(1)))
    return rep


def check_psi_duality(t: GradedComplex, c: GradedComplex) -> Report:
    """``t^+`` against ``c`` entry by entry."""
    rep = Report("psi-duality")
    try:
        d = plus_dual(t)
    except (UndualizableComplexError, UndualizableError) as exc:
        rep.add(FAIL, "plus_dual", {"t": t.to_json()}, f"undualizable: {exc}")
        return rep
    degrees = sorted(set(d.degrees()) | set(c.degrees()))
    for n in degrees:
        ok = d.entry(n) == c.entry(n)
        rep.add(_verdict(ok), f"degree {n}", {"t": t.to_json(), "c": c.to_json()},
                "" if ok else f"{d.entry(n)} != {c.entry(n)}")
    ok = d.tail == c.tail
    rep.add(_verdict(ok), "tail", {"t": t.to_json(), "c": c.to_json()}, "" if ok else "tails differ")
    return rep


def _absorb(rep: Report, sub: Report, prefix: str) -> None:
    for it in sub.items:
        it = dict(it)
        it["item"] = f"{prefix}: {it['item']}"
        rep.items.append(it)


def suite_psi_duality(seed: int = 7, n: int = 50, include_kronecker: bool = True) -> Report:
    rep = Report("psi-duality")
    for c in z_chains(seed, n):
        _absorb(rep, check_psi_duality(build_silting(c), build_cosilting(c)), str(c))
    if include_kronecker:
        for params in kron_parameter_sets():
            from .kronlat import build_kron_cosilting, build_kron_silting
            _absorb(rep, check_psi_duality(build_kron_silting(params), build_kron_cosilting(params)),
                    _param_name(params))
    _absorb(rep, check_psi_duality(GradedComplex.zero(), GradedComplex.zero()), "zero")
    c = ZEpiChain.of_list(0, [[2, 3], [3], []])
    wrong = build_cosilting(c).shift(1)
    rep.control("shifted cosilting object", check_psi_duality(build_silting(c), wrong).status == FAIL)
    return rep


def check_ttriple(f: Filtration | ZEpiChain, corpus: Sequence[GradedComplex],
                  window: int = DEFAULT_WINDOW) -> Report:
    """Truncate every item and check both halves and ``Hom(u[k], v) = 0`` for k >= 0."""
    filt = filtration_of_chain(f) if isinstance(f, ZEpiChain) else f
    rep = Report("ttriple")
    problems = validate_filtration(filt)
    if problems:
        rep.add(FAIL, "filtration", filt.to_json(), f"not decreasing: {problems}")
        return rep
    for idx, x in enumerate(corpus):
        payload = {"filtration": filt.to_json(), "x": x.to_json()}
        try:
            tri = truncate(x, filt)
        except UnsupportedEntryError as exc:
            rep.add(UNKNOWN, f"item {idx}", payload, str(exc))
            continue
        if not (tri.u_in_aisle and tri.v_in_coaisle):
            rep.add(FAIL, f"item {idx}", payload, "truncation halves outside the aisle/coaisle")
            continue
        top = _window_span(tri.u, tri.v, window)
        orth = _all_zero(derived_hom(tri.u, tri.v, -k) for k in range(0, top + 1))
        # a truncation of a truncation changes nothing
        again_u, again_v = truncate(tri.u, filt), truncate(tri.v, filt)
        stable = again_u.v.is_zero() and again_v.u.is_zero()
        ok = None if orth is None else (orth and stable)
        rep.add(_verdict(ok), f"item {idx}", payload,
                "" if ok else ("Hom(u, v) undecided" if orth is None else "orthogonality or idempotence fails"))
    return rep


def suite_ttriple(seed: int = 7, n: int = 100) -> Report:
    rep = Report("ttriple")
    corpus = z_corpus(seed, n).items
    for idx, f in enumerate(standard_filtrations()):
        _absorb(rep, check_ttriple(f, corpus), f"filtration {idx} {f}")
    bad = check_ttriple(broken_filtration(), corpus)
    rep.control("increasing filtration", bad.status == FAIL)
    return rep


def _z_membership(x: GradedComplex, f: Filtration) -> bool | None:
    try:
        return coaisle_member(x, f)
    except UnsupportedEntryError:
        return None


def _top(x: GradedComplex, y: GradedComplex, window: int | None, adaptive: bool) -> int:
    if window is None or adaptive:
        return _window_span(x, y, window or DEFAULT_WINDOW)
    return window


def check_cosilting(c: GradedComplex, params: Any, corpus: Sequence[GradedComplex],
                    window: int | None = DEFAULT_WINDOW) -> Report:
    """C lies in the coaisle and ``x in coaisle <=> Hom(x, C[k]) = 0`` for k in [1, window].

    ``window=None`` stretches the window to the degree spread of the pair."""
    rep = Report("cosilting")
    member = _coaisle_function(params)
    kron = c.ring == "kronecker"
    ok = member(c)
    rep.add(_verdict(ok), "C in coaisle", {"c": c.to_json(), "params": _json(params)})
    for idx, x in enumerate(corpus):
        payload = {"x": x.to_json(), "c": c.to_json(), "params": _json(params)}
        m = member(x)
        top = _top(x, c, window, kron)
        orth = _all_zero(derived_hom(x, c, k) for k in range(1, top + 1))
        if m is None or orth is None:
            rep.add(UNKNOWN, f"item {idx}", payload,
                    "membership undecided" if m is None else "Hom verdict undecided")
            continue
        rep.add(_verdict(m == orth), f"item {idx}", payload,
                "" if m == orth else f"member={m} but orthogonal={orth}")
        if not x.is_zero():
            wide = _window_span(x, c, window or DEFAULT_WINDOW) + 2
            seen = [derived_hom(x, c, k) for k in range(-wide, wide + 1)]
            cogen = not all(v.is_zero() for v in seen)
            if not cogen:
                rep.add(FAIL, f"item {idx} cogenerator", payload, "Hom(x, C[k]) = 0 for every k tried")
    return rep


def check_silting(t: GradedComplex, params: Any, corpus: Sequence[GradedComplex],
                  window: int | None = DEFAULT_WINDOW) -> Report:
    """T lies in its class and ``x in class <=> Hom(T, x[k]) = 0`` for k in [1, window].

    The class is the dual definable one: x belongs exactly when x^+ lies in the
    cosilting coaisle of the same parameters."""
    rep = Report("silting")
    member = _silting_function(params)
    kron = t.ring == "kronecker"
    rep.add(_verdict(member(t)), "T in class", {"t": t.to_json(), "params": _json(params)})
    for idx, x in enumerate(corpus):
        payload = {"x": x.to_json(), "t": t.to_json(), "params": _json(params)}
        m = member(x)
        top = _top(t, x, window, kron)
        orth = _all_zero(derived_hom(t, x, k) for k in range(1, top + 1))
        if m is None or orth is None:
            rep.add(UNKNOWN, f"item {idx}", payload,
                    "membership undecided" if m is None else "Hom verdict undecided")
            continue
        rep.add(_verdict(m == orth), f"item {idx}", payload,
                "" if m == orth else f"member={m} but orthogonal={orth}")
        if not x.is_zero():
            wide = _window_span(t, x, window or DEFAULT_WINDOW) + 2
            if all(derived_hom(t, x, k).is_zero() for k in range(-wide, wide + 1)):
                rep.add(FAIL, f"item {idx} generator", payload, "Hom(T, x[k]) = 0 for every k tried")
    return rep


def _coaisle_function(params: Any) -> Callable[[GradedComplex], bool | None]:
    if isinstance(params, ZEpiChain):
        f = filtration_of_chain(params)
        return lambda x: _z_membership(x, f)
    if isinstance(params, Filtration):
        return lambda x: _z_membership(x, params)
    from .kronlat import tstructure_member_kron
    return lambda x: tstructure_member_kron(x, params)


def _silting_function(params: Any) -> Callable[[GradedComplex], bool | None]:
    if isinstance(params, (ZEpiChain, Filtration)):
        f = filtration_of_chain(params) if isinstance(params, ZEpiChain) else params

        def z_member(x: GradedComplex) -> bool | None:
            try:
                return dual_coaisle_member(x, f)
            except UnsupportedEntryError:
                return None
        return z_member
    from .kronlat import tstructure_member_kron

    def k_member(x: GradedComplex) -> bool | None:
        try:
            return tstructure_member_kron(plus_dual(x), params)
        except (UndualizableComplexError, UndualizableError):
            return None
    return k_member


def suite_orthogonality(seed: int = 7, n_chains: int = 50, n_items: int = 100,
                        window: int | None = DEFAULT_WINDOW) -> Report:
    """Coaisle membership against Hom-vanishing into the built cosilting object."""
    rep = Report("orthogonality")
    corpus = z_corpus(seed, n_items).items
    start = time.perf_counter()
    for c in z_chains(seed, n_chains):
        _absorb(rep, check_cosilting(build_cosilting(c), c, corpus, window), str(c))
    rep.notes["seconds"] = round(time.perf_counter() - start, 3)
    # negative control: the cosilting object of a different chain
    c, other = ZEpiChain.of_list(0, [[2, 3], [3], []]), ZEpiChain.of_list(0, [[5], []])
    bad = check_cosilting(build_cosilting(other), c, corpus, window)
    rep.control("cosilting object of another chain", bad.status == FAIL)
    return rep


def suite_silting(seed: int = 7, n_chains: int = 20, n_items: int = 100,
                  window: int | None = DEFAULT_WINDOW) -> Report:
    rep = Report("silting")
    corpus = z_corpus(seed, n_items).items
    for c in z_chains(seed, n_chains):
        _absorb(rep, check_silting(build_silting(c), c, corpus, window), str(c))
    c, other = ZEpiChain.of_list(0, [[2, 3], [3], []]), ZEpiChain.of_list(1, [[5], []])
    rep.control("silting object of another chain",
                check_silting(build_silting(other), c, corpus).status == FAIL)
    return rep


# the Kronecker side -------------------------------------------------------------

def kron_corpus(q: int = 2, max_dim: int = 5, degrees: Sequence[int] = range(-2, 4)) -> Corpus:
    """Stalks of small indecomposables, a few sums, and Pruefer/adic/generic stalks."""
    from .kronrep import KronExpr, adic_k, generic, indecomposables, pruefer_k, rational_points
    labs = indecomposables(q, max_dim)
    pts = rational_points(q)
    items = [GradedComplex.of({d: KronExpr.indec(lab, q)}) for lab in labs for d in degrees]
    rng = random.Random(q)
    for _ in range(12):
        a, b = rng.sample(labs, 2)
        d = rng.choice(list(degrees))
        items.append(GradedComplex.of({d: KronExpr.indec(a, q), d + 1: KronExpr.indec(b, q)}))
    atoms = [pruefer_k(pts[0]), adic_k(pts[1 % len(pts)]), generic()]
    items += [GradedComplex.of({d: KronExpr.atom(a, q)}) for a in atoms for d in range(-1, 3)]
    return Corpus(q, tuple(items), {"q": q, "max_dim": max_dim, "degrees": [min(degrees), max(degrees)]})


def kron_parameter_sets(q: int = 2) -> list[Any]:
    """Twenty parameter sets across the three cases."""
    from .kronlat import HRS, compact_chain, pi_loc, pp_loc, ul_chain
    from .kronrep import rational_points
    x = rational_points(q)
    out: list[Any] = [HRS(0, q), HRS(2, q), HRS(-1, q)]
    for e, l, m in ((pp_loc(0), 0, 1), (pp_loc(1), 0, 0), (pp_loc(2), -1, 1), (pp_loc(3), 0, 3),
                    (pi_loc(0), 0, 0), (pi_loc(1), 1, 2), (pi_loc(2), 0, 1), (pi_loc(3), -2, 0)):
        out.append(compact_chain(e, l, m, q))
    sets = [([[x[0]], []], 0), ([[x[1]], []], 2), ([[x[0], x[1]], [x[1]], []], 0),
            ([[x[0], x[1], x[2]], [x[2]], []], -1), ([[x[0], x[2]], [x[0]], []], 1),
            ([[x[0], x[1], x[2]], [x[0], x[1]], [x[0]], []], 0), ([[x[2]], []], -2),
            ([[x[1], x[2]], []], 0), ([[x[0], x[1], x[2]], []], 3)]
    out += [ul_chain(s, l, q) for s, l in sets]
    return out


def _param_name(p: Any) -> str:
    return p.name() if hasattr(p, "name") else f"HRS(l={p.l})"


def suite_kron_foundations(qs: Sequence[int] = (2, 3, 4, 5), max_dim: int = 8) -> Report:
    from .kronrep import (
        R, ar_translate, euler_form, ext1_by_resolution, hom_dim, indecomposables, is_isomorphic,
        quasi_simples,
    )
    rep = Report("kron-foundations")
    for q in qs:
        n = len(quasi_simples(q))
        rep.add(_verdict(n == q + 1), f"quasi-simples over F_{q}", {"q": q}, f"found {n}")
        for x in quasi_simples(q):
            r = R(x).module(q)
            ok = is_isomorphic(ar_translate(r), r)
            rep.add(_verdict(ok), f"tau R at {x.label(q)} over F_{q}", {"q": q, "point": x.to_json(q)})
    mods = [lab.module(2) for lab in indecomposables(2, max_dim)]
    bad = 0
    for m in mods:
        for n in mods:
            ok = hom_dim(m, n) - ext1_by_resolution(m, n) == euler_form(m.dim, n.dim)
            bad += not ok
            if not ok:
                rep.add(FAIL, "Euler form", {"m": m.to_json(), "n": n.to_json()})
    rep.add(_verdict(bad == 0), f"Euler form on {len(mods) ** 2} pairs over F_2")
    rep.notes["indecomposables"] = len(mods)
    # negative control: the opposite orientation of the Euler form must fail somewhere
    flipped = any(hom_dim(m, n) - ext1_by_resolution(m, n) != euler_form(n.dim, m.dim)
                  for m in mods for n in mods)
    rep.control("transposed Euler form", flipped)
    return rep


def suite_kron_enumeration(index_bound: int = 3, length_bound: int = 4, q: int = 2) -> Report:
    from .kronlat import enumerate_compact_silting, equivalence_key, indecomposable_summands
    rep = Report("kron-enumeration")
    start = time.perf_counter()
    found = enumerate_compact_silting(index_bound, length_bound, q)
    for c, t in found:
        payload = {"chain": c.to_json(), "t": t.to_json()}
        orth = _all_zero(derived_hom(t, t, k) for k in range(1, 5))
        count = len({key for _, key in indecomposable_summands(t)})
        ok = None if orth is None else (orth and count == 2)
        rep.add(_verdict(ok), c.name(), payload, "" if ok else f"self-orthogonal={orth}, summands={count}")
    keys = [equivalence_key(t) for _, t in found]
    rep.add(_verdict(len(set(keys)) == len(keys)), "pairwise inequivalent")
    rep.notes["objects"] = len(found)
    rep.notes["seconds"] = round(time.perf_counter() - start, 3)
    # negative control: T + T[1] is not presilting
    t = found[0][1]
    doubled = t + t.shift(1)
    rep.control("T + T[1]", not derived_hom(doubled, doubled, 1).is_zero())
    return rep


def suite_kron_builders(q: int = 2) -> Report:
    """Psi-duality, coaisle orthogonality and presilting of T for every parameter set."""
    from .kronlat import HRS, build_kron_cosilting, build_kron_silting
    rep = Report("kron-builders")
    corpus = kron_corpus(q).items
    for p in kron_parameter_sets(q):
        name = _param_name(p)
        t, c = build_kron_silting(p), build_kron_cosilting(p)
        _absorb(rep, check_psi_duality(t, c), name)
        _absorb(rep, check_cosilting(c, p, corpus), f"{name} cosilting")
        if not isinstance(p, HRS) and all(e.is_fd for _, e in p.jumps):
            top = _window_span(t, t, DEFAULT_WINDOW)
            ok = _all_zero(derived_hom(t, t, k) for k in range(1, top + 1))
            rep.add(_verdict(ok), f"{name} presilting", {"params": p.to_json()})
    p = kron_parameter_sets(q)[4]
    wrong = build_kron_cosilting(p).shift(-1)
    rep.control("shifted cosilting object", check_psi_duality(build_kron_silting(p), wrong).status == FAIL)
    return rep


def suite_minimal_cosilting() -> Report:
    rep = Report("minimal-cosilting")
    for p in (2, 3, 5, 7, 11):
        got = minimal_cosilting_module(ZEpi.loc(PrimeSet.finite([p])))
        want = ZExpr.atom(dual_loc([p])) + ZExpr.atom(adic(p))
        rep.add(_verdict(got == want), f"Z -> Z[1/{p}]", {"p": p}, "" if got == want else str(got))
    got = minimal_cosilting_module(ZEpi.identity())
    z_plus = atom_dual(ZExpr(FgAb.free(1)))
    rep.add(_verdict(got == z_plus), "identity", None, "" if got == z_plus else str(got))
    rep.control("missing adic summand",
                minimal_cosilting_module(ZEpi.loc(PrimeSet.finite([3]))) != ZExpr.atom(dual_loc([3])))
    return rep


SUITES: dict[str, Callable[..., Report]] = {
    "hom-oracle": suite_hom_oracle,
    "plus-duality": suite_plus_duality,
    "psi-duality": suite_psi_duality,
    "ttriple": suite_ttriple,
    "orthogonality": suite_orthogonality,
    "silting": suite_silting,
    "kron-foundations": suite_kron_foundations,
    "kron-enumeration": suite_kron_enumeration,
    "kron-builders": suite_kron_builders,
    "minimal-cosilting": suite_minimal_cosilting,
}

SEEDED = {"hom-oracle", "plus-duality", "psi-duality", "ttriple", "orthogonality", "silting"}


def run_suite(name: str, seed: int | None = None) -> Report:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    fn = SUITES[name]
    if seed is not None and name in SEEDED:
        return fn(seed=seed)
    return fn()


__all__ = [
    "Bounds", "Corpus", "Report", "SCHEMA_VERSION", "SUITES", "check_cosilting", "check_plus_duality_formula",
    "check_psi_duality", "check_silting", "check_ttriple", "fg_pair_corpus", "free_resolution",
    "kron_corpus", "kron_parameter_sets", "oracle_derived_hom_Z", "random_fg_complex", "run_suite",
    "standard_filtrations", "z_chains", "z_corpus",
]
