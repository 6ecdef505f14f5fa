"""Random representable maps for property sweeps and the CLI oracle."""

from __future__ import annotations

import random

from . import analysis, constructions
from .maps import Constant, Periodic, SelfMap, canonicalize, compose, power, predecessor, successor


def random_offsets(rng: random.Random, max_period: int = 6, max_offset: int = 5):
    """Offsets whose residue map is a uniformly random permutation."""
    p = rng.randint(1, max_period)
    sigma = list(range(p))
    rng.shuffle(sigma)
    offsets = []
    for r in range(p):
        base = sigma[r] - r
        choices = [base + p * k for k in range(-2 * max_offset, 2 * max_offset + 1)
                   if abs(base + p * k) <= max_offset]
        offsets.append(rng.choice(choices))
    return tuple(offsets)


def random_near_bijection(
    rng: random.Random,
    max_period: int = 6,
    max_offset: int = 5,
    max_exceptions: int = 8,
    key_range: int = 20,
) -> SelfMap:
    offsets = random_offsets(rng, max_period, max_offset)
    tail = Periodic(len(offsets), offsets)
    table = {}
    for _ in range(rng.randint(0, max_exceptions)):
        table[rng.randrange(key_range)] = rng.randrange(key_range)
    for n in range(tail.reach):
        if tail.at(n) < 0 and n not in table:
            table[n] = rng.randrange(key_range)
    return canonicalize(SelfMap(tail, table))


def random_map(rng: random.Random, constant_rate: float = 0.15, **kw) -> SelfMap:
    """Any representable map: constant tails and non-permuting tails included."""
    if rng.random() < constant_rate:
        table = {rng.randrange(20): rng.randrange(20) for _ in range(rng.randint(0, 5))}
        return canonicalize(SelfMap(Constant(rng.randrange(10)), table))
    p = rng.randint(1, kw.get("max_period", 6))
    m = kw.get("max_offset", 5)
    offsets = tuple(rng.randint(-m, m) for _ in range(p))
    tail = Periodic(p, offsets)
    table = {rng.randrange(20): rng.randrange(20) for _ in range(rng.randint(0, 6))}
    for n in range(tail.reach):
        if tail.at(n) < 0 and n not in table:
            table[n] = rng.randrange(20)
    return canonicalize(SelfMap(tail, table))


def random_with_index(rng: random.Random, k: int, **kw) -> SelfMap:
    """A random near-bijection adjusted to have index ``k``."""
    f = random_near_bijection(rng, **kw)
    shift = k - analysis.index(f)
    adjust = power(predecessor(), shift) if shift >= 0 else power(successor(), -shift)
    g = compose(adjust, f) if rng.random() < 0.5 else compose(f, adjust)
    if analysis.index(g) != k:
        raise AssertionError("index adjustment failed: wanted %d, got %d" % (k, analysis.index(g)))
    return g


def random_permutation_map(rng: random.Random, **kw) -> SelfMap:
    return constructions.repair_to_bijection(random_with_index(rng, 0, **kw))
