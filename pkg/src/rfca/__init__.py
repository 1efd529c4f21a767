"""Residually finite monoids and their cellular automata, computed at desk scale."""

from .monoid_core import (
    CATALOG,
    BadIdentity,
    Congruence,
    FiniteMonoid,
    IndexOutOfRange,
    MonoidError,
    NotACongruence,
    NotAMorphism,
    NotAssociative,
    QuotientResult,
    SemigroupMorphism,
    all_congruences,
    catalog_monoid,
    enumerate_morphisms,
    generating_set,
    intersect_congruences,
    is_congruence,
    kernel_relation,
    make_congruence,
    make_monoid,
    opposite,
    quotient,
)
from .shift_space import (
    Alphabet,
    CapExceeded,
    Configuration,
    PeriodicWord,
    integer_orbit_congruence,
    inv,
    inv_integer,
    is_periodic,
    orbit,
    orbit_congruence,
    periodic_cylinder_witness,
    shift,
)
from .cellular import (
    EquivariantMap,
    LocalRule,
    Transformation,
    apply_rule,
    compose,
    enumerate_ca,
    from_wolfram,
    is_equivariant,
    rules_equal,
    tau_m,
    transformation_monoid,
)
from .witness_engine import (
    EndSeparationCertificate,
    NotDistinct,
    NoSeparatingMorphism,
    SeparationCertificate,
    malcev_hopf_check,
    separate_ca,
    separate_ca_finite,
    separate_ca_integer,
    separate_endomorphisms,
    verify_certificate,
)

__version__ = "0.1.0"
