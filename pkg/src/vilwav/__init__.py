"""Orthogonal wavelet systems on p-adic Vilenkin groups generated by rooted trees."""

from .group import DigitVector, MeasureScale, add, dilate, digits_of, index_of, pair
from .mask import MaskTable, check_row_condition, check_vanishing, mask_from_tree, mask_to_tree
from .refinable import (
    SpectrumTable,
    StepFunction,
    check_elementary,
    check_orthonormality_spectral,
    forward_transform,
    gram_matrix,
    inverse_transform,
    phi_hat_from_tree,
)
from .transform import CoeffGrid, CoeffPyramid, analyze, analyze_level, project, synthesize, synthesize_level
from .tree import RootedTree, enumerate_trees
from .wavelet import (
    WaveletSystem,
    beta_shifted,
    build_system,
    psi_freq,
    psi_time,
    solve_beta,
    verify_wavelet_system,
)

__all__ = [
    "DigitVector",
    "MeasureScale",
    "MaskTable",
    "SpectrumTable",
    "StepFunction",
    "CoeffGrid",
    "CoeffPyramid",
    "RootedTree",
    "WaveletSystem",
    "add",
    "analyze",
    "analyze_level",
    "beta_shifted",
    "build_system",
    "check_elementary",
    "check_orthonormality_spectral",
    "check_row_condition",
    "check_vanishing",
    "digits_of",
    "dilate",
    "enumerate_trees",
    "forward_transform",
    "gram_matrix",
    "index_of",
    "inverse_transform",
    "mask_from_tree",
    "mask_to_tree",
    "pair",
    "phi_hat_from_tree",
    "project",
    "psi_freq",
    "psi_time",
    "solve_beta",
    "synthesize",
    "synthesize_level",
    "verify_wavelet_system",
]

__version__ = "0.1.0"
