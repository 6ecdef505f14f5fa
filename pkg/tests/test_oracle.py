import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cofinite.analysis import profile
from cofinite.maps import identity, predecessor, stability_window, successor
from cofinite.oracle import (
    EditDeltas,
    FiniteSelfMap,
    all_maps,
    check_comp_identity,
    check_edit_invariance,
    check_finite_identity,
    check_inj_iff_surj,
    check_left_right,
    comp_identity_sides,
    edit_case,
    oracle_profile,
    random_map,
    random_permutation,
    window_scan_profile,
)
from strategies import near_bijections

IDENTITY5 = FiniteSelfMap.of(range(5))
M112 = FiniteSelfMap.of([1, 1, 2])
M000 = FiniteSelfMap.of([0, 0, 0])


def finite_maps(max_size=8):
    return st.integers(1, max_size).flatmap(
        lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(FiniteSelfMap.of)
    )


def test_profile_examples():
    prof = oracle_profile(IDENTITY5)
    assert not prof.monoset_complement and not prof.range_complement
    prof = oracle_profile(M112)
    assert prof.monoset_complement == {0, 1}
    assert prof.range_complement == {0}
    assert prof.image_of_monoset_complement == {1}
    assert prof.defect - len(prof.range_complement) == 0
    prof = oracle_profile(M000)
    assert prof.monoset_complement == {0, 1, 2}
    assert prof.image_of_monoset_complement == {0}
    assert prof.range_complement == {1, 2}


def test_identities_on_examples():
    for m in (IDENTITY5, M112, M000):
        assert check_finite_identity(m)
        assert check_comp_identity(m)
        assert check_inj_iff_surj(m)
    assert comp_identity_sides(M112) == ({1}, {1})
    assert comp_identity_sides(M000) == ({0}, {0})


def test_exhaustive_small_carriers():
    maps = list(all_maps(4))
    assert len(maps) == 256
    assert all(check_finite_identity(m) for m in maps)
    assert all(check_comp_identity(m) for m in maps)
    assert all(check_inj_iff_surj(m) for m in maps)


def test_left_right_exhaustive():
    for n in range(1, 5):
        maps = list(all_maps(n))
        perms = [m for m in maps if len(set(m.table)) == n]
        assert all(check_left_right(f, pi) for f in maps for pi in perms)


def test_edit_examples():
    ident = FiniteSelfMap.of(range(3))
    case = edit_case(ident, 0, 1)
    assert case.case == "iii.a" and case.matches
    assert case.actual.range_complement == 1
    assert case.actual.defect == 1
    assert check_edit_invariance(ident, 0, 1)

    case = edit_case(M112, 1, 0)
    assert case.case == "ii.2" and case.matches
    case = edit_case(M112, 1, 2)
    assert case.case == "iv.2a" and case.actual == EditDeltas(0, 0, 0)
    assert check_edit_invariance(M112, 1, 0)
    assert check_edit_invariance(M112, 1, 2)

    case = edit_case(M112, 2, 2)
    assert case.case == "noop" and case.matches


def test_every_edit_case_occurs_and_matches():
    # iv.3b needs a fiber of three and another of two, hence n = 5
    seen = set()
    for n in range(1, 6):
        for m in all_maps(n):
            for p in range(n):
                for v in range(n):
                    case = edit_case(m, p, v)
                    assert case.matches, (m, p, v, case)
                    seen.add(case.case)
    assert seen == {"noop", "i", "ii.2", "ii.3", "iii.a", "iii.b",
                    "iv.2a", "iv.2b", "iv.3a", "iv.3b"}


def test_window_scan_examples():
    assert window_scan_profile(predecessor(), 100).monoset_complement == {0, 1}
    assert window_scan_profile(successor(), 50).range_complement == {0}
    prof = window_scan_profile(identity(), 30)
    assert not prof.monoset_complement and not prof.range_complement


def test_serialization():
    assert M112.to_dict() == {"n": 3, "table": [1, 1, 2]}
    assert FiniteSelfMap.from_dict({"n": 3, "table": [1, 1, 2]}) == M112


def test_validation():
    with pytest.raises(ValueError):
        FiniteSelfMap(3, (0, 1))
    with pytest.raises(ValueError):
        FiniteSelfMap.of([0, 3, 1])
    with pytest.raises(ValueError):
        FiniteSelfMap(0, ())


def test_random_generators_are_seeded():
    def draw(seed):
        rng = random.Random(seed)
        return [random_map(rng) for _ in range(5)]

    assert draw(7) == draw(7)
    perm = random_permutation(random.Random(1), 9)
    assert sorted(perm.table) == list(range(9))


@given(finite_maps(12))
def test_finite_identity_random(m):
    assert check_finite_identity(m)
    assert check_comp_identity(m)
    assert check_inj_iff_surj(m)


@given(finite_maps(), st.data())
def test_edit_invariance_random(m, data):
    p = data.draw(st.integers(0, m.size - 1))
    v = data.draw(st.integers(0, m.size - 1))
    assert check_edit_invariance(m, p, v)


@given(near_bijections())
def test_window_scan_agrees_with_analysis(f):
    scan = window_scan_profile(f, 4 * stability_window(f))
    prof = profile(f)
    assert scan.monoset_complement == prof.monoset_complement.as_set()
    assert scan.range_complement == prof.range_complement.as_set()
