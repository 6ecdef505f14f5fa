"""Constructive procedures on near-bijections.

Every free choice (which fiber member survives, how a finite set is matched
to another of the same size) is resolved deterministically: the smallest
fiber member survives, and finite sets are matched in increasing order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Tuple

from . import analysis
from .analysis import image, index, require_near_bijective
from .errors import (
    FibersMismatch,
    IndexMismatch,
    IndexNegative,
    IndexNonzero,
    IndexPositive,
    NotSurjective,
)
from .maps import (
    Periodic,
    SelfMap,
    canonicalize,
    compose,
    disagreement,
    preimage,
    stability_window,
    with_exceptions,
)


def _increasing_match(source: Iterable[int], target: Iterable[int]) -> Dict[int, int]:
    source, target = sorted(source), sorted(target)
    if len(source) != len(target):
        raise AssertionError("cannot match %r onto %r" % (source, target))
    return dict(zip(source, target))


def _preimage_of(f: SelfMap, values: Iterable[int]) -> FrozenSet[int]:
    out = set()
    for m in values:
        out.update(preimage(f, m))
    return frozenset(out)


def class_inverse(f: SelfMap) -> SelfMap:
    """A map inverting ``f`` off a finite set.

    On ``f(monoset)`` it is the true inverse; every other point goes to 0.
    """
    mono, _ = require_near_bijective(f)
    tail = f.tail
    p = tail.period
    back = {s: r for r, s in enumerate(tail.residue_map())}
    inv_tail = Periodic(p, tuple(-tail.offsets[back[s]] for s in range(p)))
    table = {}
    for m in range(stability_window(f)):
        fiber = preimage(f, m)
        table[m] = fiber.elements[0] if len(fiber) == 1 else 0
    return canonicalize(SelfMap(inv_tail, table))


def _marked_points(f: SelfMap) -> List[int]:
    """All fiber members except the smallest of each fiber."""
    marked = []
    for fiber in analysis.fiber_decomposition(f).values():
        marked.extend(sorted(fiber)[1:])
    return sorted(marked)


def repair_to_bijection(f: SelfMap) -> SelfMap:
    k = index(f)
    if k != 0:
        raise IndexNonzero(k)
    missing = analysis.range_complement(f).elements
    return with_exceptions(f, _increasing_match(_marked_points(f), missing))


def reduce_to_injection(f: SelfMap) -> SelfMap:
    k = index(f)
    if k > 0:
        raise IndexPositive(k)
    marked = _marked_points(f)
    missing = analysis.range_complement(f).elements
    return with_exceptions(f, _increasing_match(marked, missing[: len(marked)]))


def reduce_to_surjection(f: SelfMap) -> SelfMap:
    k = index(f)
    if k < 0:
        raise IndexNegative(k)
    missing = analysis.range_complement(f).elements
    remaining = {m: sorted(fiber) for m, fiber in analysis.fiber_decomposition(f).items()}
    marked = []
    for _ in missing:
        # largest fiber first, ties broken towards the larger element
        m = max(
            (m for m, pts in remaining.items() if len(pts) > 1),
            key=lambda m: (len(remaining[m]), remaining[m][-1]),
        )
        marked.append(remaining[m].pop())
    return with_exceptions(f, _increasing_match(marked, missing))


@dataclass(frozen=True)
class SynthesisCertificate:
    f: SelfMap
    g: SelfMap
    index: int
    route: str
    lam: SelfMap
    rho: SelfMap
    residual_lambda: Tuple[int, ...]
    residual_rho: Tuple[int, ...]
    checks: Dict[str, bool] = field(default_factory=dict)
    observations: Dict[str, object] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "f": self.f.to_dict(),
            "g": self.g.to_dict(),
            "index": self.index,
            "route": self.route,
            "lambda": self.lam.to_dict(),
            "rho": self.rho.to_dict(),
            "residual_lambda": list(self.residual_lambda),
            "residual_rho": list(self.residual_rho),
            "checks": dict(sorted(self.checks.items())),
            "observations": dict(sorted(self.observations.items())),
        }


def _equal(f: SelfMap, g: SelfMap) -> bool:
    d = disagreement(f, g)
    return d.is_finite and not d.elements


def _inside(d, allowed) -> bool:
    return d.is_finite and set(d.elements) <= set(allowed)


def _is_permutation(h: SelfMap) -> bool:
    c = analysis.classify(h)
    return c.injective and c.surjective


def _finite_elements(result) -> Tuple[int, ...]:
    if not result.is_finite:
        return ()
    return result.elements


def _lambda_rho_injective(f: SelfMap, g: SelfMap, checks: dict, obs: dict):
    # f, g injective with equal index
    f_inv = class_inverse(f)
    f_missing = analysis.range_complement(f).elements
    g_missing = analysis.range_complement(g).elements

    lam = with_exceptions(compose(g, f_inv), _increasing_match(f_missing, g_missing))

    # rho(n) = f^-1(g(n)) wherever g(n) is a value of f
    rho_off = _preimage_of(g, f_missing)
    rho_target = _preimage_of(f, g_missing)
    checks["injective route: |g^-1(f(O)')| = |f^-1(g(O)')|"] = len(rho_off) == len(rho_target)
    rho = with_exceptions(compose(f_inv, g), _increasing_match(rho_off, rho_target))

    checks["injective route: lambda o f = g exactly"] = _equal(compose(lam, f), g)
    checks["injective route: f o rho = g off g^-1(f(O)')"] = _inside(
        disagreement(compose(f, rho), g), rho_off)
    obs["reduced: f o rho = g exactly"] = _equal(compose(f, rho), g)
    obs["reduced: f = g o rho exactly"] = _equal(f, compose(g, rho))
    return lam, rho


def _lambda_rho_surjective(f: SelfMap, g: SelfMap, checks: dict, obs: dict):
    # f, g surjective with equal index; A, B are the monosets
    f_inv = class_inverse(f)
    a_c = analysis.monoset_complement(f).as_set()
    b_c = analysis.monoset_complement(g).as_set()

    # complements of f(A n B) and g(A n B)
    f_hole = image(f, a_c) | image(f, b_c - a_c)
    g_hole = image(g, b_c) | image(g, a_c - b_c)
    claim1 = len(f_hole) == len(g_hole)
    checks["surjective route: |f(A n B)'| = |g(A n B)'|"] = claim1
    checks["surjective route: |f(A n B)'| = |f(A')| + |A n B'|"] = (
        len(f_hole) == len(image(f, a_c)) + len(b_c - a_c)
    )
    if not claim1:
        raise AssertionError("cardinality claim for lambda failed")
    lam = with_exceptions(compose(g, f_inv), _increasing_match(f_hole, g_hole))

    # complements of B n g^-1(f(A)) and A n f^-1(g(B))
    f_a_hole = image(f, a_c)  # f(A)' = f(A') for surjective f
    g_b_hole = image(g, b_c)
    rho_off = b_c | (_preimage_of(g, f_a_hole) - b_c)
    rho_target = a_c | (_preimage_of(f, g_b_hole) - a_c)
    claim2 = len(rho_off) == len(rho_target)
    checks["surjective route: |(B n g^-1(f(A)))'| = |(A n f^-1(g(B)))'|"] = claim2
    g_b_meets_f_hole = [m for m in f_a_hole if len(preimage(g, m)) == 1]
    checks["surjective route: |(B n g^-1(f(A)))'| = |B'| + |g(B) n f(A)'|"] = (
        len(rho_off) == len(b_c) + len(g_b_meets_f_hole)
    )
    if not claim2:
        raise AssertionError("cardinality claim for rho failed")
    rho = with_exceptions(compose(f_inv, g), _increasing_match(rho_off, rho_target))

    checks["surjective route: lambda o f = g on A n B"] = _inside(
        disagreement(compose(lam, f), g), a_c | b_c)
    checks["surjective route: f o rho = g on B n g^-1(f(A))"] = _inside(
        disagreement(compose(f, rho), g), rho_off)
    return lam, rho


def synthesize_lambda_rho(f: SelfMap, g: SelfMap) -> SynthesisCertificate:
    """Permutations ``lam``, ``rho`` with ``lam o f == g == f o rho`` up to finite sets."""
    kf, kg = index(f), index(g)
    if kf != kg:
        raise IndexMismatch(kf, kg)
    checks: Dict[str, bool] = {}
    obs: Dict[str, object] = {}
    if kf <= 0:
        route = "injective"
        fr, gr = reduce_to_injection(f), reduce_to_injection(g)
        lam, rho = _lambda_rho_injective(fr, gr, checks, obs)
    else:
        route = "surjective"
        fr, gr = reduce_to_surjection(f), reduce_to_surjection(g)
        lam, rho = _lambda_rho_surjective(fr, gr, checks, obs)

    res_lam = disagreement(compose(lam, f), g)
    res_rho = disagreement(g, compose(f, rho))
    checks["lambda is a permutation"] = _is_permutation(lam)
    checks["rho is a permutation"] = _is_permutation(rho)
    checks["lambda o f == g"] = res_lam.is_finite
    checks["g == f o rho"] = res_rho.is_finite
    obs["f == g o rho"] = disagreement(f, compose(g, rho)).is_finite
    return SynthesisCertificate(
        f=f, g=g, index=kf, route=route, lam=lam, rho=rho,
        residual_lambda=_finite_elements(res_lam),
        residual_rho=_finite_elements(res_rho),
        checks=checks, observations=obs,
    )


def _require_surjective_near_injection(f: SelfMap):
    mono = analysis.require_near_injective(f)
    if not analysis.classify(f).surjective:
        raise NotSurjective("not surjective: range complement is nonempty")
    return mono


def fibers_match(f: SelfMap, g: SelfMap) -> bool:
    _require_surjective_near_injection(f)
    _require_surjective_near_injection(g)
    ff = analysis.fiber_decomposition(f)
    gf = analysis.fiber_decomposition(g)
    return ff.keys() == gf.keys() and all(len(ff[m]) == len(gf[m]) for m in ff)


def synthesize_rho_exact(f: SelfMap, g: SelfMap) -> SelfMap:
    """A permutation ``rho`` with ``f o rho == g`` exactly."""
    _require_surjective_near_injection(f)
    _require_surjective_near_injection(g)
    ff = analysis.fiber_decomposition(f)
    gf = analysis.fiber_decomposition(g)
    for m in sorted(set(ff) | set(gf)):
        nf, ng = len(ff.get(m, ())), len(gf.get(m, ()))
        if nf != ng:
            raise FibersMismatch(
                m, "fibers over %d differ: %d point(s) under f, %d under g" % (m, nf, ng)
            )
    table = {}
    for m in gf:
        table.update(_increasing_match(gf[m], ff[m]))
    rho = with_exceptions(compose(class_inverse(f), g), table)
    if disagreement(compose(f, rho), g).elements:
        raise AssertionError("constructed rho does not satisfy f o rho = g")
    return rho
