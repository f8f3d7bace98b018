"""Exact K-theoretic invariants of filtered chain complexes.

Novikov polynomials with rational exponents, the step-function ring with its
convolution product, filtered chain complexes over prime fields with barcode
normal forms, and the Euler-type pairing on their classes.
"""

from math import inf as INF

from .errors import DomainError, InputError
from .novikov import (DoubleExpPoly, Exponent, NovikovPoly, as_exponent,
                      format_exponent, in_image_qr, qr_tilde, sigma_inverse)
from .stepfn import (StepFn, convolve, convolve_piecewise, l1_distance, length,
                     theta, theta_inverse, weighted_length)
from .fcomplex import (FieldSpec, FilteredChainMap, FilteredComplex, Generator,
                       acyclic_truncation, eta_map, hom_complex, random_chain_map,
                       random_complex, random_planted)
from .barcode import (GradedBarcode, MorseData, bottleneck, decompose,
                      decompose_with_ghosts, morse_data, rank_invariant)
from .ktheory import (Combination, CombinationTerm, KClass, PairingTable,
                      TableGenerator, euler_alpha, is_r_acyclic, is_r_isomorphism,
                      kappa_direct, kappa_formula, kappa_table, kclass, kq_r,
                      seminorm_witness, strong_seminorm_upper)

__version__ = "0.1.0"

__all__ = [
    "INF", "DomainError", "InputError",
    "DoubleExpPoly", "Exponent", "NovikovPoly", "as_exponent", "format_exponent",
    "in_image_qr", "qr_tilde", "sigma_inverse",
    "StepFn", "convolve", "convolve_piecewise", "l1_distance", "length",
    "theta", "theta_inverse", "weighted_length",
    "FieldSpec", "FilteredChainMap", "FilteredComplex", "Generator",
    "acyclic_truncation", "eta_map", "hom_complex", "random_chain_map",
    "random_complex", "random_planted",
    "GradedBarcode", "MorseData", "bottleneck", "decompose",
    "decompose_with_ghosts", "morse_data", "rank_invariant",
    "Combination", "CombinationTerm", "KClass", "PairingTable", "TableGenerator",
    "euler_alpha", "is_r_acyclic", "is_r_isomorphism", "kappa_direct",
    "kappa_formula", "kappa_table", "kclass", "kq_r", "seminorm_witness",
    "strong_seminorm_upper",
]
