"""Partial n-place functions, Mann compositions and representations of (2,n)-semigroups."""

from .algebra import (
    MultiSemigroup,
    OpMove,
    Selector,
    cyclic_add,
    eval_sequence,
    left_zero,
    mu,
    mu_star,
    mu_step,
    one_element,
    right_zero,
    validate,
)
from .core_types import Carrier, PlaceFunction, domain, includes, restrict
from .determining_pairs import (
    BinaryRelation,
    DeterminingPair,
    PartialEquivalence,
    decompose,
    simplest_representation,
    validate_determining_pair,
)
from .mann_ops import mann_compose, menger_superpose, projector, verify_identity
from .quasi_order import (
    QuasiOrderInput,
    build_projection_representation,
    check_projection_system,
    chi_of,
    epsilon_of,
)
from .representability import (
    Representation,
    closure,
    extension_of,
    faithful_representation,
    is_representable,
    totalize,
    unitary_extension,
    verify_representation,
)

__version__ = "0.1.0"
