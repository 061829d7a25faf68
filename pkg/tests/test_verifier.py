from __future__ import annotations

import json
from math import prod

import pytest
from hypothesis import given, strategies as st

from hereditary_silting import verifier as V
from hereditary_silting.dercat import GradedComplex, derived_hom, homology
from hereditary_silting.fgab import FgAb
from hereditary_silting.kronlat import build_kron_cosilting, build_kron_silting, compact_chain, pp_loc
from hereditary_silting.specz import Filtration
from hereditary_silting.zchains import ZEpiChain, build_cosilting, build_silting

from strategies import chains, fg_complexes

EX = ZEpiChain.of_list(0, [[2, 3, 5], [3, 5], [5], []])


def stalk(g: FgAb, n: int = 0) -> GradedComplex:
    return GradedComplex.of({n: g}, ring="Z")


# the resolution oracle ------------------------------------------------------------

@pytest.mark.parametrize("x, y, k, want", [
    (stalk(FgAb.cyclic(2)), stalk(FgAb.cyclic(2)), 1, FgAb.cyclic(2)),
    (stalk(FgAb.free(1)), stalk(FgAb.cyclic(6)), 0, FgAb.cyclic(6)),
    (stalk(FgAb.cyclic(4)), stalk(FgAb.cyclic(6)), 0, FgAb.cyclic(2)),
    (stalk(FgAb.cyclic(5)), stalk(FgAb.free(1)), 1, FgAb.cyclic(5)),
    (stalk(FgAb.cyclic(5)), stalk(FgAb.free(1)), 0, FgAb()),
    (stalk(FgAb.free(1)), stalk(FgAb.from_cyclics([0, 3])), -1, FgAb()),
    (stalk(FgAb.free(2)), stalk(FgAb.free(3)), 0, FgAb.free(6)),
    (stalk(FgAb.cyclic(2), 1), stalk(FgAb.cyclic(2), 0), 0, FgAb.cyclic(2)),
    (stalk(FgAb.cyclic(2), 1), stalk(FgAb.cyclic(2), 0), 2, FgAb()),
])
def test_oracle_known_values(x, y, k, want):
    assert V.oracle_derived_hom_Z(x, y, k) == want


@given(fg_complexes, fg_complexes, st.integers(-3, 3))
def test_oracle_matches_engine(x, y, k):
    v = derived_hom(x, y, k)
    o = V.oracle_derived_hom_Z(x, y, k)
    assert o.is_zero() if v.is_zero() else v.group == o


@given(fg_complexes, fg_complexes, st.integers(-2, 2), st.integers(-2, 2))
def test_oracle_shift_identity(x, y, k, s):
    assert V.oracle_derived_hom_Z(x.shift(s), y.shift(s), k) == V.oracle_derived_hom_Z(x, y, k)


@given(fg_complexes)
def test_resolution_has_the_right_cohomology(x):
    a = V.free_resolution(x)
    for n in range(-5, 5):
        got = homology(a.d(n - 1), a.d(n), a.rank(n))
        assert got == (x.entry(n).fg if not x.entry(n).is_zero() else FgAb())


def test_corpus_bounds_and_determinism():
    b = V.Bounds()
    pairs = V.fg_pair_corpus(11, 200, b)
    for x, y, _ in pairs:
        for c in (x, y):
            assert len(c.degrees()) <= b.width
            assert all(b.low <= d <= b.high for d in c.degrees())
            assert all(prod(c.entry(d).fg.torsion or [1]) <= b.max_order for d in c.degrees())
    again = V.fg_pair_corpus(11, 200, b)
    assert [(x.to_json(), y.to_json(), k) for x, y, k in pairs] == [(x.to_json(), y.to_json(), k) for x, y, k in again]
    assert V.z_corpus(3, 20).to_json() == V.z_corpus(3, 20).to_json()


# reports --------------------------------------------------------------------------

def test_report_status_and_exit_codes():
    r = V.Report("x")
    r.add(V.PASS, "a")
    r.control("c", True)
    assert (r.status, r.exit_code) == ("pass", 0)
    r.add(V.UNKNOWN, "b", {"why": 1})
    assert (r.status, r.exit_code) == ("unknown", 2)
    for i in range(40):
        r.add(V.PASS, f"p{i}")
    assert r.status == "pass"
    r.add(V.FAIL, "f", {"x": 1}, "broken")
    assert (r.status, r.exit_code) == ("fail", 1)
    assert r.failures()[0]["input"] == {"x": 1}


def test_control_that_passes_fails_the_report():
    r = V.Report("x")
    r.add(V.PASS, "a")
    r.control("should have failed", False)
    assert r.status == "fail"


def test_report_json_shape():
    r = V.run_suite("minimal-cosilting")
    d = r.to_json()
    assert d["schema_version"] == V.SCHEMA_VERSION
    assert set(d) >= {"suite", "status", "exit_code", "counts", "negative_controls", "failures", "unknowns"}
    json.dumps(d)
    assert "items" in r.to_json(full=True)


def test_reports_are_deterministic():
    a = V.run_suite("plus-duality", seed=3).to_json(full=True)
    b = V.run_suite("plus-duality", seed=3).to_json(full=True)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_unknown_suite():
    with pytest.raises(KeyError):
        V.run_suite("nope")


# checks ---------------------------------------------------------------------------

def test_psi_duality_examples():
    assert V.check_psi_duality(build_silting(EX), build_cosilting(EX)).status == "pass"
    assert V.check_psi_duality(GradedComplex.zero(), GradedComplex.zero()).status == "pass"
    assert V.check_psi_duality(build_silting(EX), build_cosilting(EX).shift(1)).status == "fail"
    p = compact_chain(pp_loc(1), 0, 1)
    assert V.check_psi_duality(build_kron_silting(p), build_kron_cosilting(p)).status == "pass"


@given(chains())
def test_psi_duality_random_chains(c):
    assert V.check_psi_duality(build_silting(c), build_cosilting(c)).status == "pass"


def test_standard_truncation_passes_and_broken_filtration_fails():
    corpus = V.z_corpus(5, 30).items
    assert V.check_ttriple(Filtration.standard(0), corpus).status == "pass"
    assert V.check_ttriple(EX, corpus).status == "pass"
    assert V.check_ttriple(V.broken_filtration(), corpus).status == "fail"


def test_cosilting_trivial_chain_is_standard():
    corpus = V.z_corpus(5, 40).items
    c = ZEpiChain.of_list(0, [[]])
    rep = V.check_cosilting(build_cosilting(c), c, corpus)
    assert rep.status == "pass"


def test_cosilting_example_on_fg_corpus():
    corpus = [x for x, _, _ in V.fg_pair_corpus(2, 60)]
    assert V.check_cosilting(build_cosilting(EX), EX, corpus).status == "pass"
    assert V.check_silting(build_silting(EX), EX, corpus).status == "pass"


def test_cosilting_wrong_object_fails():
    corpus = [x for x, _, _ in V.fg_pair_corpus(2, 60)]
    other = ZEpiChain.of_list(0, [[7], []])
    assert V.check_cosilting(build_cosilting(other), EX, corpus).status == "fail"


def test_kronecker_compact_case():
    corpus = V.kron_corpus(2).items
    p = compact_chain(pp_loc(0), 0, 1)
    assert V.check_cosilting(build_kron_cosilting(p), p, corpus).status == "pass"
    rep = V.check_silting(build_kron_silting(p), p, corpus)
    assert not rep.failures()
    # undecided items are the infinite-dimensional stalks, never f.d. ones
    assert rep.unknowns()
    for it in rep.unknowns():
        entries = it["input"]["x"]["entries"].values()
        assert all(e["atoms"] and not e["fd"] for e in entries)


def test_tail_aware_window_reaches_far_primes():
    # Z/7 in degree -1 meets J_7 in degree 3 of the TAIL cosilting object at k = 5
    c = ZEpiChain.tail(0, 1)
    x = GradedComplex.of({-1: FgAb.cyclic(7)}, ring="Z")
    cos = build_cosilting(c)
    assert all(derived_hom(x, cos, k).is_zero() for k in range(1, 5))
    assert not derived_hom(x, cos, 5).is_zero()
    assert V.check_cosilting(cos, c, [x], window=4).status == "fail"
    assert V.check_cosilting(cos, c, [x], window=None).status == "pass"


@pytest.mark.parametrize("name", ["minimal-cosilting", "kron-foundations", "kron-enumeration"])
def test_quick_suites_pass(name):
    rep = V.run_suite(name)
    assert rep.status == "pass", rep.summary()
    assert rep.controls and all(c["failed_as_expected"] for c in rep.controls)


def test_kron_parameter_sets_cover_three_cases():
    from hereditary_silting.kronlat import HRS
    ps = V.kron_parameter_sets()
    assert len(ps) == 20
    hrs = [p for p in ps if isinstance(p, HRS)]
    fd = [p for p in ps if not isinstance(p, HRS) and all(e.is_fd for _, e in p.jumps)]
    assert hrs and fd and len(hrs) + len(fd) < len(ps)
