"""Module that defines the positive-integral data family.

初速度の積分が正となる初期データ族を定義するモジュール.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from lifespan.data.datum import BUMP_MASS, Family, InitialDatum, bump, bump_d1, bump_primitive

if TYPE_CHECKING:
    from lifespan.model import FloatArray


class GPositive(InitialDatum):
    """Data with g = amp_g * B, so that the integral of g is positive.

    g = amp_g * B で初速度の積分が正となる初期データ.
    """

    family = Family.G_POSITIVE

    def g(self, x: FloatArray | float) -> FloatArray:
        """Initial speed profile.

        初期速度.
        """
        return self.amp_g * bump(x, self.R)

    def dg(self, x: FloatArray | float) -> FloatArray:
        """First derivative of g."""
        return self.amp_g * bump_d1(x, self.R)

    def g_primitive(self, x: FloatArray | float) -> FloatArray:
        """Antiderivative of g vanishing at -infinity."""
        return self.amp_g * bump_primitive(x, self.R)

    @property
    def integral_g(self) -> float:
        """Exact integral 256 R amp_g / 315."""
        return self.amp_g * BUMP_MASS * self.R
