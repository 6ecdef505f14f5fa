import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import naive
from cofinite.analysis import (
    classify,
    fiber_decomposition,
    image_identity_check,
    index,
    monoset_complement,
    profile,
    range_complement,
    tail_index,
)
from cofinite.constructions import reduce_to_injection, reduce_to_surjection, repair_to_bijection
from cofinite.errors import NotNearBijection, NotNearInjection
from cofinite.maps import (
    Finite,
    SelfMap,
    compose,
    constant,
    disagreement,
    identity,
    pair_swap,
    periodic,
    power,
    predecessor,
    stability_window,
    successor,
    with_exceptions,
)
from strategies import any_maps, near_bijections, periodic_maps, zero_index

U, V, I, PI, C3 = successor(), predecessor(), identity(), pair_swap(), constant(3)


def test_monoset_complement_examples():
    assert monoset_complement(U) == Finite(())
    assert monoset_complement(V) == Finite((0, 1))


def test_monoset_complement_infinite_for_colliding_residues():
    f = periodic([0, -1], {1: 0})
    result = monoset_complement(f)
    assert not result.is_finite
    assert result.pair == (0, 1)
    mono_c, _ = naive.scan(f, 100)
    assert mono_c == set(range(100))


def test_range_complement_examples():
    assert range_complement(U) == Finite((0,))
    assert range_complement(power(U, 3)) == Finite((0, 1, 2))
    assert range_complement(V) == Finite(())


def test_classify_examples():
    assert not any(classify(C3).to_dict().values())
    c = classify(U)
    assert (c.near_injective, c.near_surjective, c.near_bijective, c.injective, c.surjective) == (
        True, True, True, True, False)
    assert compose(PI, PI) == I
    assert all(classify(PI).to_dict().values())


def test_index_examples():
    assert index(U) == -1
    assert index(V) == 1
    for n in range(1, 9):
        assert index(power(V, n)) == n


def test_index_rejects_non_near_bijections():
    with pytest.raises(NotNearBijection):
        index(C3)
    with pytest.raises(NotNearBijection, match="witness all n"):
        index(periodic([0, -1], {1: 0}))
    with pytest.raises(NotNearBijection, match="witness residue 0, 1 mod 3"):
        index(periodic([0, -1, 0], {1: 0}))


def test_image_identity_examples():
    assert image_identity_check(V)
    assert image_identity_check(I)


def test_fiber_decomposition_examples():
    assert fiber_decomposition(V) == {0: frozenset({0, 1})}
    assert fiber_decomposition(U) == {}
    f = periodic([0], {0: 1})
    assert naive.preimage(f, 1, 50) == {0, 1}
    assert fiber_decomposition(f) == {1: frozenset({0, 1})}


def test_fiber_decomposition_requires_near_injectivity():
    with pytest.raises(NotNearInjection):
        fiber_decomposition(C3)


def test_profile_serialization():
    assert profile(V).to_dict() == {
        "monoset_complement": [0, 1],
        "range_complement": [],
        "image_of_monoset_complement": [0],
        "index": 1,
    }
    assert profile(C3).to_dict()["index"] is None
    assert profile(C3).to_dict()["monoset_complement"] == "infinite"


@given(near_bijections())
def test_windowed_sets_match_naive_scan(f):
    w = stability_window(f)
    mono_c, range_c = naive.scan(f, 4 * w)
    assert monoset_complement(f).as_set() == mono_c
    assert range_complement(f).as_set() == range_c


@given(periodic_maps())
def test_infinite_verdicts_carry_real_witnesses(f):
    mono = monoset_complement(f)
    rng = range_complement(f)
    start = 10 * stability_window(f)
    mono_c, range_c = naive.scan(f, start + 12, domain=3 * start + 40)
    for result, found in ((mono, mono_c), (rng, range_c)):
        if result.is_finite:
            continue
        members = [n for n in range(start, start + 12) if n % result.modulus in result.residues]
        assert members and all(n in found for n in members)


@given(periodic_maps())
def test_injective_beyond_window_when_residues_permute(f):
    assume(f.tail.is_residue_permutation())
    w = stability_window(f)
    vals = [f(n) for n in range(w, 4 * w)]
    assert len(set(vals)) == len(vals)


@given(any_maps)
def test_near_bijective_is_both_near_properties(f):
    c = classify(f)
    assert c.near_bijective == (c.near_injective and c.near_surjective)
    assert not c.injective or c.near_injective
    assert not c.surjective or c.near_surjective


@given(any_maps, any_maps)
def test_composition_preserves_near_properties(f, g):
    cf, cg, ch = classify(f), classify(g), classify(compose(g, f))
    if cf.near_injective and cg.near_injective:
        assert ch.near_injective
    if cf.near_surjective and cg.near_surjective:
        assert ch.near_surjective
    if cf.near_bijective and cg.near_bijective:
        assert ch.near_bijective


@given(near_bijections(), near_bijections())
def test_index_is_additive(f, g):
    assert index(compose(g, f)) == index(f) + index(g)


@given(near_bijections())
def test_index_matches_tail_mean(f):
    assert index(f) == tail_index(f) == -sum(f.tail.offsets) // f.tail.period


@given(near_bijections())
def test_image_identity_always_holds(f):
    assert image_identity_check(f)


@given(near_bijections())
def test_fibers_partition_the_monoset_complement(f):
    fibers = fiber_decomposition(f)
    union = set()
    for m, fiber in fibers.items():
        assert len(fiber) >= 2
        assert not union & fiber
        union |= fiber
        assert all(f(n) == m for n in fiber)
    assert union == monoset_complement(f).as_set()


@given(zero_index)
def test_zero_index_injective_iff_surjective(f):
    g = repair_to_bijection(f)
    c = classify(f)
    assert c.injective == c.surjective
    c = classify(g)
    assert c.injective and c.surjective


@given(near_bijections(), zero_index)
def test_permutations_act_on_monoset_and_range(f, h):
    pi = repair_to_bijection(h)
    w = 4 * max(stability_window(f), stability_window(pi), stability_window(compose(pi, f)),
                stability_window(compose(f, pi)))
    f_mono_c = monoset_complement(f).as_set()
    f_range_c = range_complement(f).as_set()
    # pi o f: same monoset; range is pi(range f)
    assert monoset_complement(compose(pi, f)).as_set() == f_mono_c
    left_range_c = range_complement(compose(pi, f)).as_set()
    for m in range(w):
        assert (m in left_range_c) == all(pi(v) != m for v in range(3 * w) if v not in f_range_c)
    # f o pi: same range; monoset is the preimage of the monoset under pi
    assert range_complement(compose(f, pi)).as_set() == f_range_c
    right_mono_c = monoset_complement(compose(f, pi)).as_set()
    for n in range(w):
        assert (n in right_mono_c) == (pi(n) in f_mono_c)


@given(near_bijections(), zero_index)
def test_index_invariant_under_permutations(f, h):
    pi = repair_to_bijection(h)
    assert index(compose(pi, f)) == index(f) == index(compose(f, pi))


@given(near_bijections(), st.integers(0, 30), st.integers(0, 30))
def test_single_point_edit_keeps_index(f, point, value):
    g = with_exceptions(f, {point: value})
    assert index(g) == index(f)


@given(near_bijections())
def test_injection_never_almost_equal_to_surjection(f):
    k = index(f)
    assume(k != 0)
    if k < 0:
        inj = reduce_to_injection(f)
        g = reduce_to_surjection(compose(power(V, -k), f))
        assert not disagreement(inj, g).is_finite
    else:
        sur = reduce_to_surjection(f)
        g = reduce_to_injection(compose(power(U, k), f))
        assert not disagreement(sur, g).is_finite
