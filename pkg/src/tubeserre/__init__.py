"""Exact verification of Serre duality on tubes and their equivariantizations."""

__version__ = "0.1.0"

from .gfmat import GF, field
from .tube import (
    ExtClassSpace,
    ExtCocycle,
    TubeContext,
    TubeError,
    TubeMorphism,
    TubeObject,
    coboundary,
    compose,
    direct_sum,
    ext_space,
    hom_basis,
    hom_dim,
    identity,
    indecomposable,
    pullback,
    pushout,
    random_morphism,
    random_object,
    realize_extension,
    simple,
    zero_object,
)
from .functors import AdmissibleFunctor, ScalarNatTrans, compose_functors, functor_apply
from .serre import CentralElement, SerreStructure, central_eval, pairing_matrix, retwist, serre_apply, trace
from .commutator import (
    DualityBroken,
    Periodicity,
    closed_form_commutator,
    commutator,
    commutator_power,
    commutator_tuple,
    extract_central,
    is_center_linear,
    kappa,
)
from .actions import (
    ActionError,
    FiniteGroup,
    GroupAction,
    compatible_periodicity,
    epsilon_power,
    induced_cyclic,
    rotation_action,
    scaling_action,
    twist_action,
    twisted_action,
    unit,
    validate_action,
)
from .equivariant import (
    EqExtSpace,
    EquivariantMorphism,
    EquivariantObject,
    SetupError,
    check_prop_a,
    check_prop_b,
    check_prop_c,
    ext_baer,
    ext_g_action,
    ext_invariants,
    gamma_hom,
    hom_eq,
    induction,
    prop_a_delta,
    psi_pairing,
    rho_twist,
    serre_G,
    trace_G,
    validate_eq_object,
)
from .orbit import OrbitCategory, OrbitMorphism, orbit_compose, orbit_hom
from .report import Report
