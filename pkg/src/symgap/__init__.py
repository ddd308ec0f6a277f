"""Submaximal symmetry data for parabolic geometries, computed exactly.

The modules build on each other: ``rootsystem`` and ``chevalley`` give the
Lie algebra, ``parabolic`` the grading, ``homology`` the cochain complex,
``kostant`` the harmonic curvature modules, ``prolong`` the symmetry bounds
and ``model`` the canonical curved models.
"""

__version__ = "0.1.0"

from .chevalley import ConstructionError, build_algebra
from .kostant import HasseWord2, harmonic_module, harmonic_modules
from .model import (AlgebraicModel, WeightLatticeSpec, build_canonical_model,
                    split_real_sign_check, twistor_descend, verify_algebraic_model)
from .parabolic import build_parabolic
from .prolong import module_bound, upper_bounds
from .rootsystem import InvalidInput, RootSystem, SimpleType

__all__ = [
    "AlgebraicModel", "ConstructionError", "HasseWord2", "InvalidInput", "RootSystem",
    "SimpleType", "WeightLatticeSpec", "build_algebra", "build_canonical_model",
    "build_parabolic", "harmonic_module", "harmonic_modules", "module_bound",
    "split_real_sign_check", "twistor_descend", "upper_bounds", "verify_algebraic_model",
]
