"""Module that defines the zero-integral odd data family.

初速度の積分が 0 となる (奇関数の) 初期データ族を定義するモジュール.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from lifespan.data.datum import Family, InitialDatum, odd_bump, odd_bump_d1, odd_bump_primitive

if TYPE_CHECKING:
    from lifespan.model import FloatArray


class GZeroOdd(InitialDatum):
    """Data with odd g = amp_g (x/R) B, whose integral vanishes exactly.

    g が奇関数で積分が厳密に 0 となる初期データ.
    """

    family = Family.G_ZERO_ODD

    def g(self, x: FloatArray | float) -> FloatArray:
        """Initial speed profile.

        初期速度.
        """
        return self.amp_g * odd_bump(x, self.R)

    def dg(self, x: FloatArray | float) -> FloatArray:
        """First derivative of g."""
        return self.amp_g * odd_bump_d1(x, self.R)

    def g_primitive(self, x: FloatArray | float) -> FloatArray:
        """Antiderivative of g; zero outside the support."""
        return self.amp_g * odd_bump_primitive(x, self.R)

    @property
    def integral_g(self) -> float:
        """Exactly zero."""
        return 0.0
