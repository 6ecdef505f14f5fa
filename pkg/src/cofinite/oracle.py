"""Brute-force ground truth on finite carriers ``{0, ..., n-1}``.

Everything here is computed by direct enumeration, with no use of tails,
windows or residue arguments, so it can be used to check the exact
algorithms of :mod:`cofinite.analysis`.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, FrozenSet, Iterator, Mapping, Tuple

from .maps import SelfMap, evaluate


@dataclass(frozen=True)
class FiniteSelfMap:
    size: int
    table: Tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", table)
        if self.size < 1:
            raise ValueError("size must be positive")
        if len(table) != self.size:
            raise ValueError("table has %d entries, expected %d" % (len(table), self.size))
        if any(not 0 <= v < self.size for v in table):
            raise ValueError("table entries must lie in [0, %d)" % self.size)

    @classmethod
    def of(cls, table) -> "FiniteSelfMap":
        table = tuple(table)
        return cls(len(table), table)

    def __call__(self, n: int) -> int:
        return self.table[n]

    def edited(self, point: int, new_value: int) -> "FiniteSelfMap":
        table = list(self.table)
        table[point] = new_value
        return FiniteSelfMap(self.size, table)

    def to_dict(self) -> dict:
        return {"n": self.size, "table": list(self.table)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "FiniteSelfMap":
        return cls(int(data["n"]), tuple(data["table"]))


@dataclass(frozen=True)
class OracleProfile:
    monoset_complement: FrozenSet[int]
    range_complement: FrozenSet[int]
    image_of_monoset_complement: FrozenSet[int]

    @property
    def defect(self) -> int:
        """``|monoset complement| - |its image|``."""
        return len(self.monoset_complement) - len(self.image_of_monoset_complement)

    def to_dict(self) -> dict:
        return {
            "monoset_complement": sorted(self.monoset_complement),
            "range_complement": sorted(self.range_complement),
            "image_of_monoset_complement": sorted(self.image_of_monoset_complement),
        }


def oracle_profile(m: FiniteSelfMap) -> OracleProfile:
    counts = Counter(m.table)
    mono_c = frozenset(n for n in range(m.size) if counts[m.table[n]] > 1)
    range_c = frozenset(v for v in range(m.size) if counts[v] == 0)
    return OracleProfile(mono_c, range_c, frozenset(m.table[n] for n in mono_c))


def check_finite_identity(m: FiniteSelfMap) -> bool:
    prof = oracle_profile(m)
    return prof.defect == len(prof.range_complement)


def comp_identity_sides(m: FiniteSelfMap) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """``f(monoset complement)`` and ``f(range) - f(monoset)``, by enumeration."""
    counts = Counter(m.table)
    mono = [n for n in range(m.size) if counts[m.table[n]] == 1]
    outside = [n for n in range(m.size) if counts[m.table[n]] != 1]
    left = frozenset(m.table[n] for n in outside)
    right = frozenset(m.table) - frozenset(m.table[n] for n in mono)
    return left, right


def check_comp_identity(m: FiniteSelfMap) -> bool:
    left, right = comp_identity_sides(m)
    return left == right


def check_inj_iff_surj(m: FiniteSelfMap) -> bool:
    prof = oracle_profile(m)
    return (not prof.monoset_complement) == (not prof.range_complement)


def check_left_right(f: FiniteSelfMap, pi: FiniteSelfMap) -> bool:
    """Range and monoset of ``pi o f`` and ``f o pi`` for a permutation ``pi``."""
    pf, fp = compose_finite(pi, f), compose_finite(f, pi)
    base, left, right = oracle_profile(f), oracle_profile(pf), oracle_profile(fp)
    everything = frozenset(range(f.size))
    f_range = everything - base.range_complement
    left_ok = (
        everything - left.range_complement == frozenset(pi(v) for v in f_range)
        and left.monoset_complement == base.monoset_complement
    )
    mono = everything - base.monoset_complement
    right_ok = (
        right.range_complement == base.range_complement
        and everything - right.monoset_complement
        == frozenset(n for n in everything if pi(n) in mono)
    )
    return left_ok and right_ok


# -- single point edits ----------------------------------------------------

@dataclass(frozen=True)
class EditDeltas:
    range_complement: int
    monoset_complement: int
    image_of_monoset_complement: int

    @property
    def defect(self) -> int:
        return self.monoset_complement - self.image_of_monoset_complement


@dataclass(frozen=True)
class EditCase:
    case: str
    predicted: EditDeltas
    actual: EditDeltas

    @property
    def matches(self) -> bool:
        return self.predicted == self.actual


def predict_edit(
    monoset_c,
    range_c,
    fiber_size: Callable[[int], int],
    f: Callable[[int], int],
    point: int,
    new_value: int,
) -> Tuple[str, EditDeltas]:
    """Case label and predicted size changes when ``f(point)`` becomes ``new_value``.

    ``fiber_size(v)`` is the number of preimages of ``v``.  Labels follow the
    four-way split on whether the new value was already attained and whether
    the edited point had a singleton fiber; cases (ii) and (iv) are refined
    by the size of the old fiber, and (iii), (iv) by whether a preimage of
    the new value had a singleton fiber.
    """
    old = f(point)
    if new_value == old:
        return "noop", EditDeltas(0, 0, 0)
    in_mono = point not in monoset_c
    if new_value in range_c:
        if in_mono:
            return "i", EditDeltas(0, 0, 0)
        if fiber_size(old) == 2:
            return "ii.2", EditDeltas(-1, -2, -1)
        return "ii.3", EditDeltas(-1, -1, 0)
    bar_in_mono = fiber_size(new_value) == 1
    if in_mono:
        if bar_in_mono:
            return "iii.a", EditDeltas(+1, +2, +1)
        return "iii.b", EditDeltas(+1, +1, 0)
    if fiber_size(old) == 2:
        if bar_in_mono:
            return "iv.2a", EditDeltas(0, 0, 0)
        return "iv.2b", EditDeltas(0, -1, -1)
    if bar_in_mono:
        return "iv.3a", EditDeltas(0, +1, +1)
    return "iv.3b", EditDeltas(0, 0, 0)


def _deltas(before, after) -> EditDeltas:
    return EditDeltas(
        len(after.range_complement) - len(before.range_complement),
        len(after.monoset_complement) - len(before.monoset_complement),
        len(after.image_of_monoset_complement) - len(before.image_of_monoset_complement),
    )


def edit_case(m: FiniteSelfMap, point: int, new_value: int) -> EditCase:
    before = oracle_profile(m)
    after = oracle_profile(m.edited(point, new_value))
    counts = Counter(m.table)
    label, predicted = predict_edit(
        before.monoset_complement, before.range_complement,
        counts.__getitem__, m, point, new_value,
    )
    return EditCase(label, predicted, _deltas(before, after))


def check_edit_invariance(m: FiniteSelfMap, point: int, new_value: int) -> bool:
    edited = m.edited(point, new_value)
    before, after = oracle_profile(m), oracle_profile(edited)
    balance_kept = (
        before.defect - len(before.range_complement)
        == after.defect - len(after.range_complement)
    )
    return balance_kept and edit_case(m, point, new_value).matches


# -- windowed scans of infinite maps ---------------------------------------

def window_scan_profile(f: SelfMap, bound: int, domain: int = None) -> OracleProfile:
    """Naive monoset and range complements of ``f`` restricted to ``[0, bound)``.

    Values are collected from ``[0, domain)`` (default ``2 * bound``); the
    answer is exact once no point outside the domain maps below ``bound`` or
    collides with a point inside it.
    """
    if domain is None:
        domain = 2 * bound
    values = [evaluate(f, n) for n in range(domain)]
    counts = Counter(values)
    mono_c = frozenset(n for n in range(bound) if counts[values[n]] > 1)
    range_c = frozenset(v for v in range(bound) if counts[v] == 0)
    return OracleProfile(mono_c, range_c, frozenset(values[n] for n in mono_c))


# -- enumeration -----------------------------------------------------------

def all_maps(n: int) -> Iterator[FiniteSelfMap]:
    for table in itertools.product(range(n), repeat=n):
        yield FiniteSelfMap(n, table)


def random_map(rng: random.Random, max_size: int = 12) -> FiniteSelfMap:
    n = rng.randint(1, max_size)
    return FiniteSelfMap(n, [rng.randrange(n) for _ in range(n)])


def random_permutation(rng: random.Random, n: int) -> FiniteSelfMap:
    table = list(range(n))
    rng.shuffle(table)
    return FiniteSelfMap(n, table)


def compose_finite(g: FiniteSelfMap, f: FiniteSelfMap) -> FiniteSelfMap:
    return FiniteSelfMap(f.size, [g.table[v] for v in f.table])
