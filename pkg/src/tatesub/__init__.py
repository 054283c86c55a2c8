"""Exact computations around the universal order-N subgroup of the Tate curve."""

from .qseries import QSeries, discriminant, eta_product_24, j_invariant, tate_a4, tate_a6
from .rings import (
    ProductRing,
    RingElement,
    RingHom,
    RingPresentation,
    WellDefinednessError,
    build_O_sStar,
    build_O_Sub,
    build_O_tStar,
    build_O_TN,
    ring_hom,
)
from .torsion import CycloQUnit, TatePoint, enumerate_torsion, weil_pairing
from .subgroups import classify, enumerate_subgroups, kernel_of_psi, verify_universal_bijection
from .power_operation import compare_formula_vs_pointwise, verify_psi_star_hom

__version__ = "0.1.0"

__all__ = [
    "QSeries",
    "discriminant",
    "eta_product_24",
    "j_invariant",
    "tate_a4",
    "tate_a6",
    "ProductRing",
    "RingElement",
    "RingHom",
    "RingPresentation",
    "WellDefinednessError",
    "build_O_sStar",
    "build_O_Sub",
    "build_O_tStar",
    "build_O_TN",
    "ring_hom",
    "CycloQUnit",
    "TatePoint",
    "enumerate_torsion",
    "weil_pairing",
    "classify",
    "enumerate_subgroups",
    "kernel_of_psi",
    "verify_universal_bijection",
    "compare_formula_vs_pointwise",
    "verify_psi_star_hom",
]
