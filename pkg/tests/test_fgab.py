from __future__ import annotations

import itertools
import random
from math import prod

import pytest
from hypothesis import given, strategies as st

from hereditary_silting.fgab import (
    FgAb, ext1, hom, is_p_divisible, is_p_torsion_free, smith_normal_form, support, torsion_part,
)
from hereditary_silting.primes import ALL, PrimeSet, SPEC

Z = FgAb.free(1)


def cyc(*ns: int) -> FgAb:
    return FgAb.from_cyclics(ns)


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def det(m):
    from sympy import Matrix
    return Matrix(m).det()


# element-level model of a finite group Z/a_1 + ... + Z/a_k

def elements(orders):
    return list(itertools.product(*[range(a) for a in orders]))


def kill_count(orders, d):
    """#{x : d x = 0} in the group; these counts for all d determine the group."""
    return prod(__import__("math").gcd(d, a) for a in orders)


def structure_counts(group_orders, exponent):
    return tuple(kill_count(group_orders, d) for d in range(1, exponent + 1))


def brute_hom_counts(src, dst):
    """Hom(src, dst) as the subgroup of dst^k of generator images, described by
    the number of elements killed by each d."""
    dst_elems = elements(dst)
    per_gen = []
    for a in src:
        per_gen.append([x for x in dst_elems if all((a * xi) % m == 0 for xi, m in zip(x, dst))])
    homs = list(itertools.product(*per_gen))
    bound = max(dst) if dst else 1
    counts = []
    for d in range(1, bound + 1):
        counts.append(sum(1 for h in homs if all((d * c) % m == 0 for x in h for c, m in zip(x, dst))))
    return tuple(counts)


small_finite = st.lists(st.sampled_from([2, 3, 4, 5, 6, 8, 9, 12]), min_size=0, max_size=2).map(
    lambda ns: FgAb.from_cyclics(ns))
small_group = st.tuples(st.integers(0, 2), st.lists(st.integers(2, 30), max_size=3)).map(
    lambda t: FgAb.from_cyclics([0] * t[0] + t[1]))


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 6]])[0] == [[2, 0], [0, 6]]
    assert smith_normal_form([[4, 0], [0, 6]])[0] == [[2, 0], [0, 12]]
    assert smith_normal_form([[0, 0], [0, 0]])[0] == [[0, 0], [0, 0]]
    assert FgAb.cokernel([[0, 0], [0, 0]]) == FgAb.free(2)
    assert smith_normal_form([[-3]])[0] == [[3]]


@given(st.integers(1, 4), st.integers(1, 4), st.randoms(use_true_random=False))
def test_snf_reconstructs(r, c, rnd):
    m = [[rnd.randint(-20, 20) for _ in range(c)] for _ in range(r)]
    D, U, V = smith_normal_form(m)
    assert matmul(matmul(U, m), V) == D
    assert det(U) in (1, -1) and det(V) in (1, -1)
    diag = [D[i][i] for i in range(min(r, c))]
    assert all(d >= 0 for d in diag)
    for i in range(len(diag) - 1):
        if diag[i + 1]:
            assert diag[i] and diag[i + 1] % diag[i] == 0
        else:
            assert all(x == 0 for x in diag[i + 1:])
    for i in range(r):
        for j in range(c):
            if i != j:
                assert D[i][j] == 0


def test_canonical_form_validation():
    with pytest.raises(ValueError):
        FgAb(0, (4, 2))
    with pytest.raises(ValueError):
        FgAb(0, (1,))
    assert cyc(2, 3) == cyc(6)
    assert cyc(4, 6) == FgAb(0, (2, 12))


def test_hom_ext_examples():
    assert hom(cyc(4), cyc(6)) == cyc(2)
    assert hom(Z, cyc(3, 0)) == cyc(3, 0)
    assert hom(cyc(5), Z).is_zero()
    assert ext1(cyc(4), cyc(6)) == cyc(2)
    assert ext1(cyc(7), Z) == cyc(7)
    assert ext1(Z, cyc(9)).is_zero()


def test_support_examples():
    assert support(cyc(0, 6)) == SPEC
    assert support(cyc(12)).closed == PrimeSet.finite([2, 3])
    assert support(FgAb()).is_empty()


def test_torsion_part_examples():
    assert torsion_part(cyc(12), PrimeSet.finite([2])) == (cyc(4), cyc(3))
    assert torsion_part(FgAb.free(2), ALL) == (FgAb(), FgAb.free(2))
    assert torsion_part(cyc(6), PrimeSet.finite([2, 3])) == (cyc(6), FgAb())


def test_predicate_examples():
    assert is_p_divisible(cyc(3), 2) and is_p_torsion_free(cyc(3), 2)
    assert not is_p_divisible(Z, 2) and is_p_torsion_free(Z, 2)
    assert not is_p_divisible(cyc(4), 2) and not is_p_torsion_free(cyc(4), 2)


def finite_groups_up_to(n):
    out = []
    for k in range(0, 3):
        for orders in itertools.combinations_with_replacement(range(2, n + 1), k):
            if prod(orders) <= n:
                out.append(FgAb.from_cyclics(orders))
    return sorted(set(out), key=lambda g: (g.order(), g.torsion))


def test_hom_matches_brute_force_enumeration():
    groups = [g for g in finite_groups_up_to(64) if g.order() <= 64]
    rnd = random.Random(3)
    pairs = [(m, n) for m in groups for n in groups if m.order() * n.order() <= 256]
    rnd.shuffle(pairs)
    for m, n in pairs[:150]:
        h = hom(m, n)
        bound = max(n.torsion) if n.torsion else 1
        expected = brute_hom_counts(list(m.torsion), list(n.torsion))
        got = tuple(kill_count(list(h.torsion), d) for d in range(1, bound + 1))
        assert got == expected, (m, n, h)


def test_hom_from_free_and_into_free_by_enumeration():
    # Hom(Z, n) = n and Hom(finite, Z) = 0 by the generator description
    for n in finite_groups_up_to(24):
        assert hom(Z, n) == n
        assert hom(n, Z).is_zero()


def test_ext_matches_quotient_enumeration():
    # Ext(Z/a, N) = N / aN; compare orders and exponents computed from elements
    for a in (2, 3, 4, 6, 8, 9):
        for n in finite_groups_up_to(36):
            orders = list(n.torsion)
            elems = elements(orders)
            image = {tuple((a * x) % m for x, m in zip(e, orders)) for e in elems}
            assert ext1(cyc(a), n).order() == len(elems) // len(image)


@given(small_finite, small_finite)
def test_hom_ext_same_order_for_finite(m, n):
    assert hom(m, n).order() == ext1(m, n).order()


@given(small_group, small_group, small_group)
def test_additivity(a, b, c):
    assert hom(a + b, c) == hom(a, c) + hom(b, c)
    assert hom(c, a + b) == hom(c, a) + hom(c, b)
    assert ext1(a + b, c) == ext1(a, c) + ext1(b, c)
    assert ext1(c, a + b) == ext1(c, a) + ext1(c, b)


@given(small_group, st.sets(st.sampled_from([2, 3, 5, 7]), max_size=3))
def test_torsion_part_conserves_orders(m, ps):
    g, q = torsion_part(m, PrimeSet.finite(ps))
    assert g.rank == 0 and q.rank == m.rank
    assert g.order() * q.torsion_order() == m.torsion_order()


@given(small_group)
def test_json_round_trip(m):
    assert FgAb.from_json(m.to_json()) == m
