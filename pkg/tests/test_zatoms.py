from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from hereditary_silting.fgab import FgAb
from hereditary_silting.primes import ALL, EMPTY, PrimeSet
from hereditary_silting.zatoms import (
    OMEGA, PRODUCT, PRUEFER, ADIC, Status, UndualizableError, ZExpr, adic, atom_dual, coverage_report,
    derived_torsion, dual_loc, ext_verdict, hom_verdict, is_p_divisible, is_p_torsion_free, loc,
    localize, pruefer, rationals, torsion_quotient, zsupport,
)

Z = FgAb.free(1)
PRIMES = [2, 3, 5, 7]


def cyc(n):
    return FgAb.cyclic(n)


prime_sets = st.one_of(
    st.sets(st.sampled_from(PRIMES), max_size=3).map(PrimeSet.finite),
    st.sets(st.sampled_from(PRIMES), max_size=2).map(PrimeSet.excluding),
    st.integers(1, 4).map(PrimeSet.tail),
)
atoms = st.one_of(
    st.sampled_from(PRIMES).map(lambda p: ZExpr.atom(pruefer(p))),
    st.sampled_from(PRIMES).map(lambda p: ZExpr.atom(adic(p))),
    st.just(ZExpr.atom(rationals())),
    prime_sets.map(lambda s: ZExpr.atom(loc(s))),
    prime_sets.map(lambda s: ZExpr.atom(dual_loc(s))),
    st.lists(st.integers(0, 12), min_size=1, max_size=2).map(lambda ns: ZExpr(FgAb.from_cyclics(ns))),
    prime_sets.map(lambda s: ZExpr.family(PRUEFER, s)),
    prime_sets.map(lambda s: ZExpr.family(ADIC, s)),
)
exprs = st.lists(atoms, max_size=3).map(lambda xs: sum(xs, ZExpr()))


def test_normalisations():
    assert ZExpr.atom(loc(EMPTY)) == ZExpr(Z)
    assert ZExpr.atom(loc(ALL)) == ZExpr.atom(rationals())
    assert ZExpr.atom(dual_loc(EMPTY)) == ZExpr.family(PRUEFER, ALL)
    assert ZExpr.atom(pruefer(2)) + ZExpr.atom(pruefer(3)) == ZExpr.family(PRUEFER, PrimeSet.finite([2, 3]))
    # finite families forget the flavor
    assert ZExpr.family(ADIC, PrimeSet.finite([2]), 1, "sum") == ZExpr.atom(adic(2))


def test_atom_dual_examples():
    assert atom_dual(pruefer(2)) == ZExpr.atom(adic(2))
    assert atom_dual(cyc(6)) == ZExpr(cyc(6))
    assert atom_dual(FgAb()).is_zero()
    assert atom_dual(loc([3])) == ZExpr.atom(dual_loc([3]))
    assert atom_dual(Z) == ZExpr.family(PRUEFER, ALL)
    with pytest.raises(UndualizableError):
        atom_dual(adic(2))
    assert atom_dual(rationals()) == ZExpr.atom(dual_loc(ALL))
    with pytest.raises(UndualizableError):
        atom_dual(ZExpr.atom(dual_loc([2])))


def test_infinite_sum_dualizes_to_product():
    d = atom_dual(ZExpr.family(PRUEFER, PrimeSet.tail(3)))
    assert d == ZExpr.family(ADIC, PrimeSet.tail(3), 1, PRODUCT)


@given(st.lists(st.integers(2, 40), max_size=3))
def test_double_dual_of_finite(ns):
    g = FgAb.from_cyclics(ns)
    assert atom_dual(atom_dual(g)) == ZExpr(g)


def test_verdict_examples():
    for p in (2, 3):
        for g in (cyc(8), Z, cyc(6) + Z):
            assert hom_verdict(pruefer(p), g).is_zero()
    assert hom_verdict(rationals(), cyc(12)).is_zero()
    v = ext_verdict(pruefer(5), Z)
    assert v.status == Status.ATOMIC and v.value == ZExpr.atom(adic(5))
    x = ZExpr.atom(loc([2])) + ZExpr.family(PRUEFER, PrimeSet.tail(2))
    assert hom_verdict(Z, x).value == x


def test_fg_verdicts_agree_with_fgab():
    from hereditary_silting.fgab import ext1, hom
    for a in (cyc(4), Z + cyc(6), FgAb.from_cyclics([2, 4])):
        for b in (cyc(6), Z, Z + cyc(9)):
            assert hom_verdict(a, b).group == hom(a, b)
            assert ext_verdict(a, b).value == ZExpr(ext1(a, b))


def test_localization_sequence_values():
    # 0 -> Z -> Z[1/p] -> Z_p^inf -> 0 gives Hom(Z/n, Z_p^inf) = Z/p^v and Ext(Z/n, Z[1/p]) = Z/n_(p')
    assert hom_verdict(cyc(12), pruefer(2)).group == cyc(4)
    assert ext_verdict(cyc(12), loc([2])).group == cyc(3)
    assert hom_verdict(loc([2]), cyc(9)).group == cyc(9)
    assert hom_verdict(loc([2]), cyc(8)).is_zero()
    assert ext_verdict(loc([2]), Z).is_nonzero()
    assert hom_verdict(loc([2]), loc([2, 3])).value == ZExpr.atom(loc([2, 3]))
    assert hom_verdict(loc([2, 3]), loc([2])).is_zero()
    assert ext_verdict(pruefer(3), loc([2])).value == ZExpr.atom(adic(3))


@given(exprs, st.sampled_from(PRIMES))
def test_ext_from_cyclic_detects_divisibility(x, p):
    v = ext_verdict(cyc(p), x)
    assert not v.is_unknown()
    assert v.is_zero() == is_p_divisible(x, p)


@given(exprs, st.sampled_from(PRIMES))
def test_hom_from_cyclic_detects_torsion(x, p):
    v = hom_verdict(cyc(p), x)
    assert v.is_zero() == is_p_torsion_free(x, p)


def _status_sum(vs):
    if any(v.is_nonzero() for v in vs):
        return "nonzero"
    if any(v.is_unknown() for v in vs):
        return "unknown"
    return "zero"


def _class(v):
    return "nonzero" if v.is_nonzero() else "unknown" if v.is_unknown() else "zero"


@given(exprs, exprs, exprs)
def test_bilinear(a, b, c):
    for f in (hom_verdict, ext_verdict):
        assert _class(f(a + b, c)) == _status_sum([f(a, c), f(b, c)])
        assert _class(f(c, a + b)) == _status_sum([f(c, a), f(c, b)])


@given(exprs)
def test_identity_is_nonzero(x):
    if not x.is_zero():
        assert not hom_verdict(x, x).is_zero()


def test_predicate_examples():
    assert is_p_divisible(adic(3), 2)
    assert not is_p_divisible(adic(3), 3)
    assert is_p_divisible(loc([2]), 2) and not is_p_divisible(loc([2]), 3)
    assert not is_p_torsion_free(pruefer(5), 5) and is_p_torsion_free(pruefer(5), 3)
    assert is_p_divisible(dual_loc([2]), 2) and is_p_divisible(dual_loc([2]), 3)
    assert is_p_torsion_free(dual_loc([2]), 2) and not is_p_torsion_free(dual_loc([2]), 3)


def test_derived_torsion_examples():
    assert derived_torsion(Z, PrimeSet.finite([3])) == (ZExpr(), ZExpr.atom(pruefer(3)))
    assert derived_torsion(cyc(12), PrimeSet.finite([2])) == (ZExpr(cyc(4)), ZExpr())
    assert derived_torsion(rationals(), ALL) == (ZExpr(), ZExpr())
    assert derived_torsion(adic(3), PrimeSet.finite([3])) == (ZExpr(), ZExpr.atom(pruefer(3)))
    assert derived_torsion(loc([2]), PrimeSet.finite([2, 3])) == (ZExpr(), ZExpr.atom(pruefer(3)))
    assert derived_torsion(dual_loc([2]), PrimeSet.finite([2, 3])) == (ZExpr.atom(pruefer(3)), ZExpr())


@given(exprs)
def test_derived_torsion_empty(x):
    assert derived_torsion(x, EMPTY) == (ZExpr(), ZExpr())


@given(st.lists(st.integers(2, 60), max_size=3), st.sets(st.sampled_from(PRIMES), max_size=3))
def test_torsion_orders(ns, ps):
    m = FgAb.from_cyclics(ns)
    g0, _ = derived_torsion(m, PrimeSet.finite(ps))
    q = torsion_quotient(m, PrimeSet.finite(ps))
    assert g0.fg.order() * q.fg.torsion_order() == m.torsion_order()


def test_localize_and_quotient():
    two = PrimeSet.finite([2])
    assert localize(Z + cyc(6), two) == ZExpr.atom(loc([2])) + ZExpr(cyc(3))
    assert localize(adic(2), two) == ZExpr.atom(dual_loc(ALL))
    assert localize(dual_loc([3]), two) == ZExpr.atom(dual_loc([2, 3]))
    assert torsion_quotient(dual_loc([3]), two) == ZExpr.atom(dual_loc([2, 3]))


def test_support():
    assert zsupport(pruefer(2)).closed == PrimeSet.finite([2])
    assert zsupport(adic(2)).is_spec()
    assert zsupport(ZExpr.family(PRUEFER, PrimeSet.tail(2))).closed == PrimeSet.tail(2)


@given(exprs)
def test_json_round_trip(x):
    assert ZExpr.from_json(json.loads(json.dumps(x.to_json()))) == x


def test_omega_multiplicity():
    x = ZExpr.atom(pruefer(2), OMEGA, "sum")
    assert ZExpr.from_json(x.to_json()) == x
    assert hom_verdict(cyc(2), x).is_nonzero()
    assert hom_verdict(x, Z).is_zero()


def test_coverage_report_lists_unknowns():
    rep = coverage_report()
    assert rep["pairs_checked"] > 100
    for item in rep["unknown"]:
        assert item["functor"] in ("hom", "ext")
    # pairs forced by the constructions are all settled
    forced = {"Z", "Z/4", "Z_2^inf", "J_2", "Z[1/2]", "Z[1/2]^+", "Q/Z", "prod J_p"}
    assert not [u for u in rep["unknown"] if u["first"] in forced and u["second"] in forced]
