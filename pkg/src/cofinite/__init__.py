"""Index theory for near-bijections of the natural numbers.

Self-maps of {0, 1, 2, ...} are represented by an eventually periodic shift
(or an eventually constant value) plus finitely many exceptional values.
On this class the package computes monosets, ranges, the integer index,
repairs and reductions of near-bijections, and the group of almost-equality
classes together with its index homomorphism.
"""

from .analysis import (
    classify,
    fiber_decomposition,
    image_identity_check,
    index,
    monoset_complement,
    profile,
    range_complement,
)
from .constructions import (
    class_inverse,
    fibers_match,
    reduce_to_injection,
    reduce_to_surjection,
    repair_to_bijection,
    synthesize_lambda_rho,
    synthesize_rho_exact,
)
from .maps import (
    Constant,
    Finite,
    Infinite,
    Periodic,
    SelfMap,
    almost_equal,
    canonicalize,
    compose,
    constant,
    disagreement,
    evaluate,
    identity,
    pair_swap,
    periodic,
    power,
    preimage,
    predecessor,
    successor,
)
from .quotient import (
    ClassRep,
    Ind,
    class_compose,
    class_identity,
    class_inverse_op,
    class_of,
    in_S,
    is_unit_in_I,
    noncentrality_demo,
    splitting,
)

__version__ = "0.1.0"
