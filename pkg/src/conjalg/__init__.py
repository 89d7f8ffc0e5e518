"""Conjugacy machinery for finite dynamical systems and Mobius disk maps."""

from .charspace import Character, CharacterCatalog, build_catalog, catalog_equal, eval_character
from .diskmaps import (
    DiskClassification,
    MobiusMap,
    analytically_conjugate,
    classify,
    mobius_apply,
    mobius_compose,
    mobius_derivative,
    mobius_inverse,
    normal_form,
    semicrossed_iso_verdict,
    verify_conjugacy_witness,
)
from .dynsys import (
    ConjugacyWitness,
    FiniteDynSys,
    OrbitStructure,
    are_conjugate,
    brute_force_conjugate,
    canonical_form,
    fixed_points,
    orbit_structure,
    relabel,
)
from .reps import (
    FixedDerivativeRep,
    OffFixedRep,
    PencilRep,
    TruncatedRep,
    build_fixed_derivative,
    build_offfixed,
    build_pencil,
    extract_characters,
    norm_estimate,
    rep_matrix,
    spectral_radius_estimate,
)
from .skewpoly import SkewPoly, coefficient, l1_norm, skew_add, skew_mul, skew_scale, transport

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
