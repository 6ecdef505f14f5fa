"""Almost-equality classes of near-bijections and the index homomorphism.

Two representable maps are almost equal exactly when their canonical tails
coincide, so a class is stored through its tail: the representative carries
only the exceptions that totality forces (each sent to 0).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import analysis, constructions
from .errors import NotNearBijection
from .maps import (
    FinitenessResult,
    SelfMap,
    almost_equal,
    canonicalize,
    compose,
    disagreement,
    identity,
    pair_swap,
    power,
    predecessor,
    successor,
    totality_violations,
)


@dataclass(frozen=True)
class ClassRep:
    representative: SelfMap
    class_index: int

    def __mul__(self, other: "ClassRep") -> "ClassRep":
        return class_compose(self, other)

    def to_dict(self) -> dict:
        out = self.representative.to_dict()
        out["index"] = self.class_index
        return out


def class_of(f: SelfMap) -> ClassRep:
    if not analysis.is_near_bijective(f):
        analysis.require_near_bijective(f)
        raise NotNearBijection("not near-bijective")  # pragma: no cover
    bare = SelfMap(f.tail.minimal())
    rep = canonicalize(SelfMap(bare.tail, {n: 0 for n in totality_violations(bare)}))
    return ClassRep(rep, analysis.index(rep))


def class_compose(a: ClassRep, b: ClassRep) -> ClassRep:
    """The class of ``a o b``."""
    return class_of(compose(a.representative, b.representative))


def class_inverse_op(a: ClassRep) -> ClassRep:
    return class_of(constructions.class_inverse(a.representative))


def class_identity() -> ClassRep:
    return class_of(identity())


def Ind(a: ClassRep) -> int:
    return a.class_index


def splitting(n: int) -> ClassRep:
    """Image of ``n`` under the section ``n -> [predecessor]^n``."""
    if n >= 0:
        return class_of(power(predecessor(), n))
    return class_of(power(successor(), -n))


def in_S(a: ClassRep) -> bool:
    """Membership in the kernel of ``Ind`` (classes of almost bijective maps)."""
    return Ind(a) == 0


def noncentrality_demo() -> FinitenessResult:
    swap, shift = pair_swap(), successor()
    return disagreement(compose(swap, shift), compose(shift, swap))


def is_unit_in_I(f: SelfMap, g: SelfMap) -> bool:
    analysis.require_near_injective(f)
    analysis.require_near_injective(g)
    ident = identity()
    unit = almost_equal(compose(g, f), ident) and almost_equal(compose(f, g), ident)
    if unit:
        assert analysis.classify(f).near_bijective and analysis.classify(g).near_bijective
    return unit
