"""Orthonormal DCT-II / DCT-III pair over the temporal axis.

Row ``l`` of the basis (0-based) is
``sqrt(2/L) * w_l * cos(pi/L * (n + 1/2) * l)`` with ``w_0 = 1/sqrt(2)`` and
``w_l = 1`` otherwise, so ``B @ B.T == I``. Sequences are transformed along
their last axis: ``coefficients = x @ B[:c].T`` and ``x = coefficients @ B[:c]``.
"""

from functools import lru_cache
from typing import overload

import numpy as np
import torch
from pydantic import BaseModel, ConfigDict, model_validator

from motionloom.exceptions import InvalidArgument
from motionloom.types import FloatMatrix, PositiveInt

ORTHONORMALITY_TOLERANCE = 1e-9


class DctBasis(BaseModel):
    model_config = ConfigDict(frozen=True)

    length: PositiveInt
    matrix: FloatMatrix

    @model_validator(mode="after")
    def check_orthonormal(self):
        if self.matrix.shape != (self.length, self.length):
            raise ValueError(
                f"basis must be {self.length}x{self.length}, "
                f"got {self.matrix.shape}"
            )
        residual = self.matrix @ self.matrix.T - np.eye(self.length)
        if np.abs(residual).max() >= ORTHONORMALITY_TOLERANCE:
            raise ValueError("basis is not orthonormal")
        return self


def _basis_matrix(length: int) -> np.ndarray:
    n = np.arange(length, dtype=np.float64)
    rows = np.arange(length, dtype=np.float64)[:, None]
    weights = np.where(rows == 0, 1.0 / np.sqrt(2.0), 1.0)
    return (
        np.sqrt(2.0 / length)
        * weights
        * np.cos(np.pi / length * (n[None, :] + 0.5) * rows)
    )


@lru_cache(maxsize=128)
def build_dct_basis(length: int) -> DctBasis:
    if length < 1:
        raise InvalidArgument(f"DCT length must be >= 1, got {length}")
    return DctBasis(length=length, matrix=_basis_matrix(length))


@lru_cache(maxsize=128)
def dct_matrices(length: int, retain: int) -> tuple[torch.Tensor, torch.Tensor]:
    """Truncated forward (c x L) and inverse (L x c) matrices."""
    if not 1 <= retain <= length:
        raise InvalidArgument(
            f"retained coefficients must be in [1, {length}], got {retain}"
        )
    basis = torch.from_numpy(
        np.array(build_dct_basis(length).matrix[:retain])
    )
    return basis, basis.T.contiguous()


@overload
def dct(seq: np.ndarray, basis: DctBasis, retain: int) -> np.ndarray: ...
@overload
def dct(seq: torch.Tensor, basis: DctBasis, retain: int) -> torch.Tensor: ...
def dct(seq, basis: DctBasis, retain: int):
    if seq.shape[-1] != basis.length:
        raise InvalidArgument(
            f"sequence length {seq.shape[-1]} does not match "
            f"basis length {basis.length}"
        )
    if not 1 <= retain <= basis.length:
        raise InvalidArgument(
            f"retained coefficients must be in [1, {basis.length}], "
            f"got {retain}"
        )
    if isinstance(seq, torch.Tensor):
        forward, _ = dct_matrices(basis.length, retain)
        return seq @ forward.to(seq).T
    return np.asarray(seq, dtype=np.float64) @ basis.matrix[:retain].T


@overload
def idct(coef: np.ndarray, basis: DctBasis, length: int) -> np.ndarray: ...
@overload
def idct(coef: torch.Tensor, basis: DctBasis, length: int) -> torch.Tensor: ...
def idct(coef, basis: DctBasis, length: int):
    retain = coef.shape[-1]
    if length != basis.length:
        raise InvalidArgument(
            f"output length {length} does not match basis length "
            f"{basis.length}"
        )
    if not 1 <= retain <= length:
        raise InvalidArgument(
            f"{retain} coefficients cannot be inverted to length {length}"
        )
    # zero-padding the dropped coefficients equals using the first rows only
    if isinstance(coef, torch.Tensor):
        _, inverse = dct_matrices(length, retain)
        return coef @ inverse.to(coef).T
    return np.asarray(coef, dtype=np.float64) @ basis.matrix[:retain]
