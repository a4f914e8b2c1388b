from typing import Annotated, Any

import numpy as np
from pydantic import Field, GetCoreSchemaHandler
from pydantic_core import core_schema


class Float64Array:
    """Read-only, finite, non-empty float64 array of a fixed rank.

    Used as ``Annotated[np.ndarray, Float64Array(ndim)]``; models holding
    these fields need no ``arbitrary_types_allowed``.
    """

    def __init__(self, ndim: int) -> None:
        self.ndim = ndim

    def validate(self, value: Any) -> np.ndarray:
        try:
            array = np.array(value, dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"not a numeric array: {exc}") from exc
        if self.ndim == 2 and array.ndim == 1:
            array = array.reshape(1, -1)
        if array.ndim != self.ndim:
            raise ValueError(
                f"expected a {self.ndim}-d array, got {array.ndim} dims"
            )
        if array.size == 0:
            raise ValueError("array must not be empty")
        if not np.isfinite(array).all():
            raise ValueError("array entries must be finite")
        array.setflags(write=False)
        return array

    def __get_pydantic_core_schema__(
        self, source: Any, handler: GetCoreSchemaHandler
    ) -> core_schema.CoreSchema:
        items: core_schema.CoreSchema = core_schema.float_schema()
        for _ in range(self.ndim):
            items = core_schema.list_schema(items)
        return core_schema.no_info_plain_validator_function(
            self.validate,
            serialization=core_schema.plain_serializer_function_ser_schema(
                lambda array: array.tolist(), return_schema=items
            ),
        )


FloatMatrix = Annotated[np.ndarray, Float64Array(2)]
FloatVector = Annotated[np.ndarray, Float64Array(1)]

PositiveInt = Annotated[int, Field(ge=1)]
NonNegativeInt = Annotated[int, Field(ge=0)]
PositiveFloat = Annotated[float, Field(gt=0)]
UnitInterval = Annotated[float, Field(ge=0, lt=1)]
KernelPair = tuple[PositiveInt, PositiveInt]
