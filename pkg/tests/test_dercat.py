from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from hereditary_silting.dercat import (
    GradedComplex, PerfectComplex, UndualizableComplexError, cohomology_of_perfect, derived_hom,
    plus_dual, shift, star_dual,
)
from hereditary_silting.fgab import FgAb
from hereditary_silting.primes import PrimeSet
from hereditary_silting.zatoms import PRUEFER, ZExpr, adic, atom_dual, loc, pruefer

Z = FgAb.free(1)


def stalk(g, d=0):
    return GradedComplex.stalk(g, d)


groups = st.builds(
    lambda r, ts: FgAb.from_cyclics([0] * r + ts),
    st.integers(0, 1), st.lists(st.sampled_from([2, 3, 4, 6, 8, 9]), max_size=2),
)
complexes = st.dictionaries(st.integers(-3, 3), groups, max_size=3).map(GradedComplex.of)


def test_shift_examples():
    assert shift(stalk(FgAb.cyclic(2)), 1) == stalk(FgAb.cyclic(2), -1)
    assert shift(GradedComplex.zero(), 5).is_zero()
    x = GradedComplex.of({0: FgAb.cyclic(2), 2: Z})
    assert shift(x, 2) == GradedComplex.of({-2: FgAb.cyclic(2), 0: Z})


@given(complexes, st.integers(-4, 4))
def test_shift_roundtrip(x, k):
    assert shift(shift(x, k), -k) == x


def test_derived_hom_examples():
    z2 = stalk(FgAb.cyclic(2))
    assert derived_hom(z2, z2, 1).group == FgAb.cyclic(2)
    assert derived_hom(z2, stalk(FgAb.cyclic(2), 1), 0).is_zero()
    assert derived_hom(z2, z2, 0).is_nonzero()
    # Ext^1(Z_p^inf, Z) = J_p is nonzero
    assert derived_hom(stalk(pruefer(3)), stalk(Z), 1).is_nonzero()


@given(complexes, complexes, st.integers(-3, 3))
def test_shift_identity(x, y, k):
    a = derived_hom(x, y, k)
    assert derived_hom(shift(x, -k), y, 0) == a
    assert derived_hom(x, shift(y, k), 0) == a


@given(complexes)
def test_identity_is_nonzero(x):
    if not x.is_zero():
        assert derived_hom(x, x, 0).is_nonzero()


def _finite(x):
    return GradedComplex.of({d: FgAb.from_cyclics(g.fg.torsion) for d, g in x.entries})


@given(complexes, complexes, st.integers(-3, 3))
def test_duality_exchange(x, y, k):
    x, y = _finite(x), _finite(y)
    a = derived_hom(x, plus_dual(y), k)
    b = derived_hom(y, plus_dual(x), k)
    assert a.is_zero() == b.is_zero()


def test_plus_dual_examples():
    assert plus_dual(stalk(pruefer(2), -3)) == stalk(adic(2), 3)
    assert plus_dual(stalk(FgAb.cyclic(6))) == stalk(FgAb.cyclic(6))
    assert plus_dual(GradedComplex.zero()).is_zero()
    with pytest.raises(UndualizableComplexError):
        plus_dual(stalk(adic(2)))


@given(complexes)
def test_plus_dual_degreewise(x):
    d = plus_dual(x)
    for n in range(-4, 5):
        assert d.entry(n) == atom_dual(x.entry(-n))


def test_star_dual_examples():
    x = PerfectComplex.of({-1: 1, 0: 1}, {-1: [[2]]})
    s = star_dual(x)
    assert dict(s.ranks) == {0: 1, 1: 1}
    assert s.matrix(0) == [[2]]
    assert star_dual(s) == x
    st_ = PerfectComplex.of({0: 3})
    assert star_dual(st_) == st_


def test_cohomology_of_perfect():
    x = PerfectComplex.of({-1: 1, 0: 1}, {-1: [[5]]})
    assert cohomology_of_perfect(x) == stalk(FgAb.cyclic(5))
    ident = PerfectComplex.of({0: 2, 1: 2}, {0: [[1, 0], [0, 1]]})
    assert cohomology_of_perfect(ident).is_zero()
    free = PerfectComplex.of({0: 2, 3: 1})
    assert cohomology_of_perfect(free) == GradedComplex.of({0: FgAb.free(2), 3: Z})
    with pytest.raises(ValueError):
        PerfectComplex.of({0: 1, 1: 1, 2: 1}, {0: [[1]], 1: [[1]]})


def test_cohomology_of_star_dual_of_koszul():
    # Hom(Z --2--> Z, Z) has cohomology Z/2 in degree 1
    x = PerfectComplex.of({-1: 1, 0: 1}, {-1: [[2]]})
    assert cohomology_of_perfect(star_dual(x)) == stalk(FgAb.cyclic(2), 1)


def test_tail_complexes():
    t = GradedComplex.of({0: loc([2])}, None)
    assert t.is_bounded()
    fam = ZExpr.family(PRUEFER, PrimeSet.tail(2))
    assert fam.is_zero() is False


@given(complexes)
def test_json_roundtrip(x):
    assert GradedComplex.from_json(json.loads(json.dumps(x.to_json()))) == x
