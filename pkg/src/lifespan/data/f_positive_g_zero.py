"""Module that defines the nonnegative-position, zero-speed data family.

f >= 0, g = 0 の初期データ族を定義するモジュール.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from lifespan.data.datum import Family, InitialDatum

if TYPE_CHECKING:
    from lifespan.model import FloatArray


class FPositiveGZero(InitialDatum):
    """Data with f = amp_f * B >= 0 and g identically zero.

    f = amp_f * B >= 0, g ≡ 0 の初期データ.
    """

    family = Family.F_POSITIVE_G_ZERO

    def g(self, x: FloatArray | float) -> FloatArray:
        """Identically zero speed."""
        return np.zeros_like(np.asarray(x, dtype=np.float64))

    def dg(self, x: FloatArray | float) -> FloatArray:
        """Identically zero."""
        return np.zeros_like(np.asarray(x, dtype=np.float64))

    def g_primitive(self, x: FloatArray | float) -> FloatArray:
        """Identically zero."""
        return np.zeros_like(np.asarray(x, dtype=np.float64))

    @property
    def integral_g(self) -> float:
        """Exactly zero."""
        return 0.0
