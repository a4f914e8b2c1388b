from motionloom.numerics.dct import (
    DctBasis,
    build_dct_basis,
    dct,
    dct_matrices,
    idct,
)
from motionloom.numerics.gradcheck import (
    FiniteDiffGradient,
    GradCheckReport,
    check_gradients,
    finite_diff_gradient,
    relative_error,
)

__all__ = [
    "DctBasis",
    "FiniteDiffGradient",
    "GradCheckReport",
    "build_dct_basis",
    "check_gradients",
    "dct",
    "dct_matrices",
    "finite_diff_gradient",
    "idct",
    "relative_error",
]
