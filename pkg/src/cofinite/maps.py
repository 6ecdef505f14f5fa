"""Representable self-maps of the natural numbers.

A map is described by an eventual rule (its *tail*) and a finite table of
exceptional values.  Two tail kinds are supported:

* ``Periodic(p, (d_0, ..., d_{p-1}))`` sends ``n`` to ``n + d[n % p]``;
* ``Constant(c)`` sends every ``n`` to ``c``.

The class is closed under composition, and every map has a unique canonical
form (minimal period, no redundant exceptions), so structural equality of
canonical maps is equality of functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Mapping, Tuple, Union

from .errors import CofiniteError, TotalityError


@dataclass(frozen=True)
class Periodic:
    period: int
    offsets: Tuple[int, ...]

    def __post_init__(self):
        offsets = tuple(int(d) for d in self.offsets)
        object.__setattr__(self, "offsets", offsets)
        if self.period < 1:
            raise ValueError("period must be positive, got %r" % self.period)
        if len(offsets) != self.period:
            raise ValueError(
                "expected %d offsets, got %d" % (self.period, len(offsets))
            )

    def at(self, n: int) -> int:
        return n + self.offsets[n % self.period]

    @property
    def reach(self) -> int:
        """Largest absolute offset."""
        return max(abs(d) for d in self.offsets)

    def residue_map(self) -> Tuple[int, ...]:
        """The induced map ``r -> (r + d_r) mod p`` on residues."""
        p = self.period
        return tuple((r + d) % p for r, d in enumerate(self.offsets))

    def is_residue_permutation(self) -> bool:
        return len(set(self.residue_map())) == self.period

    def minimal(self) -> "Periodic":
        p = self.period
        for q in range(1, p + 1):
            if p % q == 0 and all(
                self.offsets[i] == self.offsets[i % q] for i in range(p)
            ):
                return Periodic(q, self.offsets[:q])
        return self  # pragma: no cover

    def to_dict(self) -> dict:
        return {"kind": "periodic", "period": self.period, "offsets": list(self.offsets)}


@dataclass(frozen=True)
class Constant:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("constant value must be a natural, got %r" % self.value)

    def at(self, n: int) -> int:
        return self.value

    def minimal(self) -> "Constant":
        return self

    def to_dict(self) -> dict:
        return {"kind": "constant", "value": self.value}


Tail = Union[Periodic, Constant]


def _normalize_exceptions(exceptions) -> Tuple[Tuple[int, int], ...]:
    if isinstance(exceptions, Mapping):
        pairs = list(exceptions.items())
    else:
        pairs = [tuple(kv) for kv in exceptions]
    seen = set()
    out = []
    for k, v in pairs:
        k, v = int(k), int(v)
        if k < 0 or v < 0:
            raise ValueError("exception entries must be naturals: %d -> %d" % (k, v))
        if k in seen:
            raise ValueError("duplicate exception key %d" % k)
        seen.add(k)
        out.append((k, v))
    return tuple(sorted(out))


@dataclass(frozen=True)
class SelfMap:
    """A tail plus a finite exception table (stored sorted by key)."""

    tail: Tail
    exceptions: Tuple[Tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "exceptions", _normalize_exceptions(self.exceptions))

    @cached_property
    def table(self) -> Dict[int, int]:
        return dict(self.exceptions)

    @cached_property
    def reverse_table(self) -> Dict[int, Tuple[int, ...]]:
        rev: Dict[int, list] = {}
        for k, v in self.exceptions:
            rev.setdefault(v, []).append(k)
        return {v: tuple(ks) for v, ks in rev.items()}

    @property
    def is_periodic(self) -> bool:
        return isinstance(self.tail, Periodic)

    @property
    def max_key(self) -> int:
        return self.exceptions[-1][0] if self.exceptions else 0

    @property
    def max_value(self) -> int:
        return max((v for _, v in self.exceptions), default=0)

    def __call__(self, n: int) -> int:
        return evaluate(self, n)

    def to_dict(self) -> dict:
        return {"tail": self.tail.to_dict(), "exceptions": [list(kv) for kv in self.exceptions]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "SelfMap":
        tail = data["tail"]
        kind = tail["kind"]
        if kind == "periodic":
            t: Tail = Periodic(int(tail["period"]), tuple(tail["offsets"]))
        elif kind == "constant":
            t = Constant(int(tail["value"]))
        else:
            raise ValueError("unknown tail kind %r" % kind)
        return cls(t, data.get("exceptions", ()))


def evaluate(f: SelfMap, n: int) -> int:
    if n < 0:
        raise ValueError("argument must be a natural, got %d" % n)
    try:
        return f.table[n]
    except KeyError:
        pass
    value = f.tail.at(n)
    if value < 0:
        raise CofiniteError("totality breach: tail sends %d to %d" % (n, value))
    return value


def totality_violations(f: SelfMap) -> Tuple[int, ...]:
    if not f.is_periodic:
        return ()
    tail = f.tail
    return tuple(
        n for n in range(tail.reach)
        if tail.at(n) < 0 and n not in f.table
    )


def canonicalize(f: SelfMap) -> SelfMap:
    bad = totality_violations(f)
    if bad:
        raise TotalityError(bad)
    tail = f.tail.minimal()
    kept = [(k, v) for k, v in f.exceptions if tail.at(k) != v]
    return SelfMap(tail, kept)


def is_canonical(f: SelfMap) -> bool:
    return canonicalize(f) == f


def stability_window(f: SelfMap) -> int:
    """Bound past which a periodic map acts as its bare tail.

    Beyond the window no key is exceptional, no value can collide with an
    exceptional value, and (for residue-permuting tails) the tail is
    injective and hits every number.
    """
    if not f.is_periodic:
        raise ValueError("stability window is defined for periodic tails only")
    p = f.tail.period
    return max(f.max_key, f.max_value, p) + f.tail.reach + p + 1


def _agreement_bound(g: SelfMap, f: SelfMap) -> int:
    # past this point g(f(n)) equals the composite tail
    if not f.is_periodic:
        return f.max_key + 1
    bound = max(f.max_key + 1, g.max_key + 1 + f.tail.reach, f.tail.reach)
    if g.is_periodic:
        bound = max(bound, f.tail.reach + g.tail.reach)
    return bound


def _composite_tail(g: SelfMap, f: SelfMap) -> Tail:
    if not f.is_periodic:
        return Constant(evaluate(g, f.tail.value))
    if not g.is_periodic:
        return g.tail
    pf, pg = f.tail.period, g.tail.period
    period = pf * pg // math.gcd(pf, pg)
    df, dg = f.tail.offsets, g.tail.offsets
    offsets = tuple(
        df[r % pf] + dg[(r + df[r % pf]) % pg] for r in range(period)
    )
    return Periodic(period, offsets)


def compose(g: SelfMap, f: SelfMap) -> SelfMap:
    """Canonical form of ``g o f`` (apply ``f`` first)."""
    tail = _composite_tail(g, f)
    bound = _agreement_bound(g, f)
    table = {n: evaluate(g, evaluate(f, n)) for n in range(bound)}
    return canonicalize(SelfMap(tail, table))


def power(f: SelfMap, n: int) -> SelfMap:
    if n < 0:
        raise ValueError("power exponent must be a natural")
    result = identity()
    for _ in range(n):
        result = compose(f, result)
    return result


def with_exceptions(f: SelfMap, updates: Mapping[int, int]) -> SelfMap:
    """Canonical map equal to ``f`` except at the keys of ``updates``."""
    table = dict(f.exceptions)
    table.update(updates)
    return canonicalize(SelfMap(f.tail, table))


# -- named maps ------------------------------------------------------------

def identity() -> SelfMap:
    return SelfMap(Periodic(1, (0,)))


def successor() -> SelfMap:
    """Injective shift ``n -> n + 1``, missing only 0."""
    return SelfMap(Periodic(1, (1,)))


def predecessor() -> SelfMap:
    """Left inverse of the successor, fixing 0."""
    return SelfMap(Periodic(1, (-1,)), {0: 0})


def pair_swap() -> SelfMap:
    """The involution swapping ``2m`` and ``2m + 1``."""
    return SelfMap(Periodic(2, (1, -1)))


def constant(c: int) -> SelfMap:
    return SelfMap(Constant(c))


def periodic(offsets: Iterable[int], exceptions=()) -> SelfMap:
    """Canonical map built from an offset sequence and exceptions."""
    offsets = tuple(offsets)
    return canonicalize(SelfMap(Periodic(len(offsets), offsets), exceptions))


# -- finiteness verdicts ----------------------------------------------------

@dataclass(frozen=True)
class Finite:
    elements: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    is_finite = True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, n):
        return n in self.elements

    def as_set(self) -> frozenset:
        return frozenset(self.elements)

    def describe(self) -> str:
        return "finite %s" % list(self.elements)

    def to_json(self):
        return list(self.elements)


@dataclass(frozen=True)
class Infinite:
    """An infinite set, witnessed by residue classes it eventually contains.

    Every sufficiently large ``n`` with ``n % modulus in residues`` belongs
    to the set.  ``pair`` optionally names two colliding residues.
    """

    modulus: int
    residues: Tuple[int, ...]
    reason: str = ""
    pair: Tuple[int, ...] = ()

    is_finite = False

    def __post_init__(self):
        object.__setattr__(self, "residues", tuple(sorted(set(self.residues))))
        if not self.residues:
            raise ValueError("an infinite verdict needs at least one residue class")

    def covers_all_residues(self) -> bool:
        return set(self.residues) == set(range(self.modulus))

    def describe(self) -> str:
        if self.covers_all_residues():
            where = "all n"
            if self.modulus > 1:
                where += " (every residue mod %d)" % self.modulus
        else:
            where = "residue %s mod %d" % (
                ", ".join(str(r) for r in self.residues), self.modulus)
        text = "witness %s" % where
        if self.reason:
            text += " (%s)" % self.reason
        return text

    def to_json(self):
        return "infinite"

    def witness_json(self) -> dict:
        out = {"modulus": self.modulus, "residues": list(self.residues)}
        if self.reason:
            out["reason"] = self.reason
        if self.pair:
            out["pair"] = list(self.pair)
        return out


FinitenessResult = Union[Finite, Infinite]


def preimage(f: SelfMap, m: int) -> FinitenessResult:
    """Exact preimage of the single point ``m``."""
    hits = [k for k in f.reverse_table.get(m, ())]
    if f.is_periodic:
        p = f.tail.period
        for r, d in enumerate(f.tail.offsets):
            n = m - d
            if n >= 0 and n % p == r and n not in f.table:
                hits.append(n)
        return Finite(hits)
    if m == f.tail.value:
        return Infinite(1, (0,), "constant tail takes the value %d" % m)
    return Finite(hits)


def disagreement(f: SelfMap, g: SelfMap) -> FinitenessResult:
    f, g = canonicalize(f), canonicalize(g)
    if f.tail == g.tail:
        keys = set(f.table) | set(g.table)
        return Finite(n for n in keys if evaluate(f, n) != evaluate(g, n))
    if f.is_periodic and g.is_periodic:
        pf, pg = f.tail.period, g.tail.period
        period = pf * pg // math.gcd(pf, pg)
        residues = [
            r for r in range(period)
            if f.tail.offsets[r % pf] != g.tail.offsets[r % pg]
        ]
        return Infinite(period, residues, "tails differ")
    if not f.is_periodic and not g.is_periodic:
        return Infinite(1, (0,), "distinct constant tails")
    p = (f.tail if f.is_periodic else g.tail).period
    return Infinite(p, range(p), "periodic tail against constant tail")


def almost_equal(f: SelfMap, g: SelfMap) -> bool:
    return disagreement(f, g).is_finite
