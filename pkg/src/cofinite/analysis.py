"""Ranges, monosets, the near-X predicates and the integer index.

For a periodic tail the residue map ``r -> (r + d_r) mod p`` decides
everything asymptotic: if it permutes the residues, then past the stability
window the map is injective and hits every number, so both complements are
finite and lie inside ``[0, W)``.  If it does not, two residue classes
collide (infinitely many non-singleton fibers) and some residue class is
never hit (infinitely many missing values).  Constant tails are neither
nearly injective nor nearly surjective.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional

from .errors import InfiniteSetError, NotNearBijection, NotNearInjection
from .maps import (
    Finite,
    FinitenessResult,
    Infinite,
    SelfMap,
    evaluate,
    preimage,
    stability_window,
)


def _collisions(f: SelfMap) -> Optional[Infinite]:
    if not f.is_periodic:
        return Infinite(1, (0,), "constant tail")
    image = f.tail.residue_map()
    p = f.tail.period
    owners: Dict[int, list] = {}
    for r, s in enumerate(image):
        owners.setdefault(s, []).append(r)
    colliding = [rs for rs in owners.values() if len(rs) > 1]
    if not colliding:
        return None
    first = colliding[0]
    residues = [r for rs in colliding for r in rs]
    return Infinite(
        p, residues,
        "residues %d and %d collide mod %d" % (first[0], first[1], p),
        pair=(first[0], first[1]),
    )


def _missing_residues(f: SelfMap) -> Optional[Infinite]:
    if not f.is_periodic:
        return Infinite(1, (0,), "constant tail")
    p = f.tail.period
    missing = sorted(set(range(p)) - set(f.tail.residue_map()))
    if not missing:
        return None
    return Infinite(p, missing, "residue %d mod %d is never hit" % (missing[0], p))


def monoset_complement(f: SelfMap) -> FinitenessResult:
    """Points whose fiber is not a singleton."""
    verdict = _collisions(f)
    if verdict is not None:
        return verdict
    return Finite(
        n for n in range(stability_window(f))
        if len(preimage(f, evaluate(f, n))) > 1
    )


def range_complement(f: SelfMap) -> FinitenessResult:
    """Numbers that are not values of ``f``."""
    verdict = _missing_residues(f)
    if verdict is not None:
        return verdict
    return Finite(
        m for m in range(stability_window(f)) if len(preimage(f, m)) == 0
    )


@dataclass(frozen=True)
class Classification:
    near_injective: bool
    near_surjective: bool
    near_bijective: bool
    injective: bool
    surjective: bool

    def to_dict(self) -> dict:
        return {
            "near_injective": self.near_injective,
            "near_surjective": self.near_surjective,
            "near_bijective": self.near_bijective,
            "injective": self.injective,
            "surjective": self.surjective,
        }


def classify(f: SelfMap) -> Classification:
    mono = monoset_complement(f)
    rng = range_complement(f)
    return Classification(
        near_injective=mono.is_finite,
        near_surjective=rng.is_finite,
        near_bijective=mono.is_finite and rng.is_finite,
        injective=mono.is_finite and len(mono) == 0,
        surjective=rng.is_finite and len(rng) == 0,
    )


def is_near_bijective(f: SelfMap) -> bool:
    return _collisions(f) is None and _missing_residues(f) is None


def require_near_injective(f: SelfMap) -> Finite:
    mono = monoset_complement(f)
    if not mono.is_finite:
        raise NotNearInjection(
            "not near-injective: monoset complement infinite, %s" % mono.describe()
        )
    return mono


def require_near_bijective(f: SelfMap):
    mono = monoset_complement(f)
    if not mono.is_finite:
        raise NotNearBijection(
            "not near-bijective: monoset complement infinite, %s" % mono.describe()
        )
    rng = range_complement(f)
    if not rng.is_finite:
        raise NotNearBijection(
            "not near-bijective: range complement infinite, %s" % rng.describe()
        )
    return mono, rng


def image(f: SelfMap, points) -> FrozenSet[int]:
    return frozenset(evaluate(f, n) for n in points)


@dataclass(frozen=True)
class MapProfile:
    monoset_complement: FinitenessResult
    range_complement: FinitenessResult
    image_of_monoset_complement: Optional[FrozenSet[int]]
    index: Optional[int]

    def to_dict(self) -> dict:
        img = self.image_of_monoset_complement
        return {
            "monoset_complement": self.monoset_complement.to_json(),
            "range_complement": self.range_complement.to_json(),
            "image_of_monoset_complement": None if img is None else sorted(img),
            "index": self.index,
        }


def profile(f: SelfMap) -> MapProfile:
    mono = monoset_complement(f)
    rng = range_complement(f)
    img = image(f, mono) if mono.is_finite else None
    idx = None
    if mono.is_finite and rng.is_finite:
        idx = (len(mono) - len(img)) - len(rng)
    return MapProfile(mono, rng, img, idx)


def index(f: SelfMap) -> int:
    mono, rng = require_near_bijective(f)
    return (len(mono) - len(image(f, mono))) - len(rng)


def tail_index(f: SelfMap) -> int:
    """Index read off the tail alone: minus the mean offset."""
    if not is_near_bijective(f):
        raise NotNearBijection("tail index needs a residue-permuting periodic tail")
    total = sum(f.tail.offsets)
    q, r = divmod(total, f.tail.period)
    if r:
        raise AssertionError("offset sum %d not divisible by period" % total)
    return -q


def image_identity_check(f: SelfMap) -> bool:
    """Compare ``f(complement of monoset)`` with ``f(range) - f(monoset)``.

    The left side is the pointwise image of the finite set; the right side
    is computed by counting fibers over a window that contains every value
    ``f`` takes on that set.
    """
    mono, _ = require_near_bijective(f)
    left = image(f, mono)
    bound = stability_window(f) + f.tail.reach + f.max_value + 1
    right = frozenset(m for m in range(bound) if len(preimage(f, m)) >= 2)
    return left == right


def fiber_decomposition(f: SelfMap) -> Dict[int, FrozenSet[int]]:
    mono = require_near_injective(f)
    fibers: Dict[int, FrozenSet[int]] = {}
    for m in sorted(image(f, mono)):
        fiber = preimage(f, m)
        if not fiber.is_finite:  # pragma: no cover - excluded by near-injectivity
            raise InfiniteSetError(fiber, "fiber over %d" % m)
        fibers[m] = fiber.as_set()
    return fibers
