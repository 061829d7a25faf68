from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from hereditary_silting.dercat import GradedComplex, derived_hom, plus_dual
from hereditary_silting.kronlat import (
    EPI_ID, EPI_ZERO, HRS, KronChain, KronEpi, build_kron_cosilting, build_kron_silting,
    compact_chain, compact_pieces, covers, enumerate_compact_silting, equivalence_key,
    in_perpendicular, indecomposable_summands, join, leq, localized_module, meet,
    perpendicular_label, pi_loc, pp_loc, reflect, regular_module, trivial_chain,
    tstructure_member_kron, ul, ul_chain, validate_kron_chain,
)
from hereditary_silting.kronrep import (
    KronError, KronExpr, P, Q, R, adic_k, decompose, direct_sum, generic, hom_dim,
    indecomposables, lukas, points_of_degree, pruefer_k, rational_points, w_cotilt,
)

Q2 = 2
X0, X1, X2 = rational_points(Q2)


def ex(label, mult=1):
    return KronExpr.indec(label, Q2, mult)


def stalks(mapping):
    return GradedComplex(tuple(mapping.items()), None, "kronecker")


# lattice ---------------------------------------------------------------------

def _all_epis():
    out = [EPI_ZERO, EPI_ID] + [pp_loc(i) for i in range(3)] + [pi_loc(i) for i in range(3)]
    pts = [X0, X1, X2]
    for mask in range(1, 8):
        out.append(ul([p for k, p in enumerate(pts) if mask >> k & 1]))
    return out


epis = st.sampled_from(_all_epis())


def test_lattice_examples():
    assert join(ul([X0]), ul([X1])) == EPI_ID
    assert meet(pp_loc(0), pi_loc(0)) == EPI_ZERO
    assert leq(ul([X0, X1, X2]), ul([X0]))
    assert not leq(ul([X0]), ul([X0, X1]))
    assert not leq(pp_loc(1), ul([X0])) and not leq(ul([X0]), pp_loc(1))
    assert meet(ul([X0]), ul([X1])) == ul([X0, X1])


@given(epis, epis, epis)
def test_lattice_laws(a, b, c):
    assert meet(a, EPI_ZERO) == EPI_ZERO and join(a, EPI_ID) == EPI_ID
    assert meet(a, b) == meet(b, a) and join(a, b) == join(b, a)
    assert meet(meet(a, b), c) == meet(a, meet(b, c))
    assert join(join(a, b), c) == join(a, join(b, c))
    assert meet(a, join(a, b)) == a and join(a, meet(a, b)) == a
    assert leq(meet(a, b), a) and leq(a, join(a, b))
    if leq(a, b) and leq(b, a):
        assert a == b
    if leq(a, b) and leq(b, c):
        assert leq(a, c)


def test_cover_relations():
    assert covers(EPI_ID, pp_loc(3), Q2) and covers(EPI_ID, ul([X1]), Q2)
    assert covers(pi_loc(0), EPI_ZERO, Q2)
    assert covers(ul([X0, X1, X2]), EPI_ZERO, Q2)
    assert not covers(ul([X0, X1]), EPI_ZERO, Q2)
    assert covers(ul([X0]), ul([X0, X1]), Q2)
    assert not covers(EPI_ID, EPI_ZERO, Q2)


def test_bad_epis_rejected():
    with pytest.raises(KronError):
        KronEpi("ul", 0, ())
    with pytest.raises(KronError):
        ul(points_of_degree(Q2, 2)[:1])
    with pytest.raises(KronError):
        KronEpi("pp_loc", -1)
    assert ul([]) == EPI_ID


def test_epi_json_roundtrip():
    for e in _all_epis():
        back = KronEpi.from_json(json.loads(json.dumps(e.to_json(Q2))), Q2)
        assert back == e
    assert pp_loc(0).to_json() == {"epi": "pp_loc", "i": 0}
    assert ul([X0]).to_json(Q2) == {"epi": "ul", "points": [X0.to_json(Q2)]}


# reflection ----------------------------------------------------------------

def test_reflect_examples():
    A = regular_module(Q2)
    assert reflect(A, EPI_ID) == A
    assert reflect(A, EPI_ZERO).is_zero()
    for e in [pp_loc(i) for i in range(4)] + [pi_loc(i) for i in range(4)]:
        n = localized_module(e).module(Q2)
        assert reflect(n, e).is_zero()
    with pytest.raises(KronError):
        reflect(A, ul([X0]))


@pytest.mark.parametrize("e", [pp_loc(i) for i in range(4)] + [pi_loc(i) for i in range(3)])
def test_reflection_lands_in_perpendicular_category(e):
    n = localized_module(e).module(Q2)
    E = perpendicular_label(e)
    assert in_perpendicular(E.module(Q2), n)
    for lab in indecomposables(Q2, 7):
        m = lab.module(Q2)
        r = reflect(m, e)
        assert in_perpendicular(r, n)
        assert set(decompose(r)) <= {E}
        # universal property: Hom(m, Y) = Hom(reflect(m), Y) for Y in Add(E)
        for k in (1, 2):
            y = direct_sum([E.module(Q2)] * k, Q2)
            assert hom_dim(m, y) == hom_dim(r, y)


def test_compact_pieces_pp_loc_zero():
    # lambda : P0 + P1 -> P0 is the projection
    pcs = compact_pieces(pp_loc(0), Q2)
    assert pcs.b_right == ex(P(0))
    assert pcs.ker_right == ex(P(1)) and pcs.coker_right.is_zero()
    assert pcs.b_plus == ex(Q(0))
    assert pcs.ker_plus.is_zero() and pcs.coker_plus == ex(Q(1))


@pytest.mark.parametrize("e", [pp_loc(i) for i in range(4)] + [pi_loc(i) for i in range(4)])
def test_compact_pieces_are_dual(e):
    pcs = compact_pieces(e, Q2)
    assert pcs.b_right.dual() == pcs.b_plus
    assert pcs.ker_right.dual() == pcs.coker_plus
    assert pcs.coker_right.dual() == pcs.ker_plus


# builders ------------------------------------------------------------------

def test_trivial_chain_gives_regular_module():
    t = build_kron_silting(trivial_chain(0, Q2))
    assert t == stalks({0: ex(P(0)) + ex(P(1))})
    c = build_kron_cosilting(trivial_chain(0, Q2))
    assert c == stalks({0: ex(Q(0)) + ex(Q(1))})


def test_case_two_example():
    ch = compact_chain(pp_loc(0), 0, 1, Q2)
    assert build_kron_silting(ch) == stalks({0: ex(P(0)), -2: ex(P(1))})
    assert build_kron_cosilting(ch) == stalks({0: ex(Q(0)), 2: ex(Q(1))})


def test_case_three_examples():
    ch = ul_chain([[X0], []], 0, Q2)
    assert build_kron_silting(ch) == stalks(
        {0: KronExpr.loc_target([X0], Q2) + KronExpr.atom(pruefer_k(X0), Q2)})
    assert build_kron_cosilting(ch) == stalks(
        {0: KronExpr.dual_loc_target([X0], Q2) + KronExpr.atom(adic_k(X0), Q2)})
    ch = ul_chain([[X0, X1], [X1], []], 2, Q2)
    t = build_kron_silting(ch)
    assert t == stalks({-2: KronExpr.loc_target([X0, X1], Q2) + KronExpr.atom(pruefer_k(X0), Q2),
                        -3: KronExpr.atom(pruefer_k(X1), Q2)})
    c = build_kron_cosilting(ch)
    assert c == stalks({2: KronExpr.dual_loc_target([X0, X1], Q2) + KronExpr.atom(adic_k(X0), Q2),
                        3: KronExpr.atom(adic_k(X1), Q2)})


def test_case_one_markers():
    assert build_kron_silting(HRS(3, Q2)) == stalks({-3: KronExpr.atom(lukas(), Q2)})
    assert build_kron_cosilting(HRS(3, Q2)) == stalks({3: KronExpr.atom(w_cotilt(), Q2)})


def test_invalid_chains_rejected():
    bad = KronChain(((0, pp_loc(0)), (1, pi_loc(0)), (2, EPI_ID)), Q2)
    assert not validate_kron_chain(bad)["valid"]
    with pytest.raises(KronError):
        build_kron_silting(bad)
    assert not validate_kron_chain(KronChain(((0, pp_loc(0)),), Q2))["valid"]
    assert validate_kron_chain(ul_chain([[X0, X1], [X0], []], 0, Q2))["valid"]


def test_chain_json_roundtrip():
    for ch in (compact_chain(pi_loc(2), -1, 1, Q2), ul_chain([[X0, X2], []], 3, Q2), trivial_chain(0, Q2)):
        assert KronChain.from_json(json.loads(json.dumps(ch.to_json()))) == ch


def _parameter_sets():
    out = [trivial_chain(0, Q2), trivial_chain(-2, Q2)]
    out += [compact_chain(e, l, m, Q2) for e in (pp_loc(0), pp_loc(2), pi_loc(1), pi_loc(3))
            for l, m in ((0, 0), (-1, 2))]
    out += [ul_chain(s, l, Q2) for s, l in (([[X0], []], 0), ([[X0, X1, X2], [X2], []], -1),
                                            ([[X1, X2], [X1], []], 2))]
    return out


@pytest.mark.parametrize("params", _parameter_sets(), ids=lambda c: c.name())
def test_psi_duality(params):
    assert plus_dual(build_kron_silting(params)) == build_kron_cosilting(params)


@pytest.mark.parametrize("params", _parameter_sets(), ids=lambda c: c.name())
def test_built_objects_are_self_orthogonal(params):
    t = build_kron_silting(params)
    c = build_kron_cosilting(params)
    for k in range(1, 5):
        assert derived_hom(t, t, k).is_zero()
        assert derived_hom(c, c, k).is_zero()
    assert tstructure_member_kron(c, params) is True


# enumeration ---------------------------------------------------------------

@pytest.fixture(scope="module")
def enumerated():
    return enumerate_compact_silting(3, 4, Q2)


def test_enumeration_is_presilting_with_two_summands(enumerated):
    assert len(enumerated) == 33
    for _, t in enumerated:
        for k in range(1, 5):
            assert derived_hom(t, t, k).is_zero()
        assert len({key for _, key in indecomposable_summands(t)}) == 2


def test_enumeration_is_pairwise_inequivalent(enumerated):
    keys = [equivalence_key(t) for _, t in enumerated]
    assert len(set(keys)) == len(keys)
    assert len({c.canonical() for c, _ in enumerated}) == len(enumerated)


def test_adjacent_degree_chain_is_two_term(enumerated):
    for e in (pp_loc(1), pi_loc(2)):
        t = build_kron_silting(compact_chain(e, 0, 0, Q2))
        assert t.span()[1] - t.span()[0] <= 1
        assert len(indecomposable_summands(t)) == 2


# coaisle membership ----------------------------------------------------------

def test_membership_examples():
    ch = ul_chain([[X0], []], 0, Q2)
    assert tstructure_member_kron(GradedComplex.zero("kronecker"), ch) is True
    assert tstructure_member_kron(stalks({0: ex(R(X0))}), ch) is False
    assert tstructure_member_kron(stalks({0: ex(R(X1))}), ch) is True
    assert tstructure_member_kron(stalks({1: ex(R(X0))}), ch) is True
    assert tstructure_member_kron(stalks({-1: ex(P(0))}), ch) is False
    cc = compact_chain(pp_loc(2), 0, 1, Q2)
    assert tstructure_member_kron(stalks({0: ex(P(1))}), cc) is True
    assert tstructure_member_kron(stalks({0: ex(P(2))}), cc) is False


def _corpus():
    items = [stalks({d: ex(lab)}) for lab in indecomposables(Q2, 5) for d in range(-2, 4)]
    atoms = [pruefer_k(X0), adic_k(X1), generic()]
    items += [stalks({d: KronExpr.atom(a, Q2)}) for a in atoms for d in range(-1, 3)]
    return items


def test_membership_matches_orthogonality(enumerated):
    chains = [c for c, _ in enumerated] + _parameter_sets()
    corpus = _corpus()
    unknown = total = 0
    for ch in chains:
        c = build_kron_cosilting(ch)
        for x in corpus:
            total += 1
            member = tstructure_member_kron(x, ch)
            # the window covers the whole spread of x against c
            top = max(4, c.span()[1] - x.span()[0] + 2)
            vs = [derived_hom(x, c, k) for k in range(1, top + 1)]
            if member is None or any(v.is_unknown() for v in vs):
                unknown += 1
                continue
            assert member == all(v.is_zero() for v in vs), (ch.name(), x)
    assert unknown <= 0.05 * total


def test_hrs_window_law():
    for l in (-1, 0, 2):
        params = HRS(l, Q2)
        for lab in indecomposables(Q2, 6):
            for d in range(l - 2, l + 3):
                member = tstructure_member_kron(stalks({d: ex(lab)}), params)
                if d > l:
                    assert member is True
                elif d < l:
                    assert member is False
                else:
                    assert member is (lab.kind != "Q")
