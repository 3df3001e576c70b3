"""Finite Gabor frames on Z_L: bounds, duality, twisted convolution, diagnostics."""

from ._core import (
    AlternatingProbe,
    BoundsReport,
    DualWindow,
    DualityReport,
    EquivalenceVerdict,
    GaborError,
    NonCommutativeLatticeError,
    NotAFrameError,
    ParameterError,
    PartitionKernel,
    SeparableLattice,
    ShapeError,
    SingularAlgebraError,
    SizeLimitError,
    __version__,
    adjoint_lattice,
    algebra_adjoint,
    alternating_kernel_probe,
    alternating_sequence,
    analyze,
    autocorrelation_l1,
    character,
    check_all_conditions,
    coefficient_map,
    coefficient_matrix,
    compose_shifts,
    cross_gramian,
    duality_check,
    frame_bounds,
    frame_operator_matrix,
    gaussian_alternating_kernel_probe,
    gramian_matrix,
    index_commutative,
    janssen_coefficients,
    kernel_basis,
    make_window,
    modulation_norm_proxy,
    partition_of_unity_kernel,
    periodized_gaussian,
    shift_matrix,
    synthesis_map,
    synthesis_matrix,
    tf_shift,
    twisted_convolve,
    twisted_invert,
    wexler_raz_defect,
    wexler_raz_dual,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
