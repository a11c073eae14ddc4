"""Module that defines the base class for initial data.

初期データの基底クラスを定義するモジュール.
"""

from __future__ import annotations

from enum import StrEnum

import numpy as np
from scipy.integrate import quad

from lifespan.model import FloatArray

BUMP_MASS = 256.0 / 315.0
HALF_BUMP_MASS = 128.0 / 315.0


class Family(StrEnum):
    """Initial data families, named as on the command line.

    初期データの族 (コマンドラインでの名前).
    """

    G_POSITIVE = "g-positive"
    G_ZERO_ODD = "g-zero-odd"
    F_POSITIVE_G_ZERO = "f-positive-g-zero"


def _scaled(x: FloatArray | float, R: float) -> tuple[FloatArray, FloatArray]:  # noqa: N803
    u = np.asarray(x, dtype=np.float64) / R
    inside = np.abs(u) < 1.0
    return u, inside


def bump(x: FloatArray | float, R: float) -> FloatArray:  # noqa: N803
    """Quartic bump (1 - (x/R)^2)^4 on |x| < R, zero elsewhere.

    4 次のバンプ関数.
    """
    u, inside = _scaled(x, R)
    q = 1.0 - u * u
    return np.where(inside, q**4, 0.0)


def bump_d1(x: FloatArray | float, R: float) -> FloatArray:  # noqa: N803
    """First derivative of the bump."""
    u, inside = _scaled(x, R)
    q = 1.0 - u * u
    return np.where(inside, -8.0 * u * q**3 / R, 0.0)


def bump_d2(x: FloatArray | float, R: float) -> FloatArray:  # noqa: N803
    """Second derivative of the bump."""
    u, inside = _scaled(x, R)
    q = 1.0 - u * u
    return np.where(inside, -8.0 * q * q * (1.0 - 7.0 * u * u) / (R * R), 0.0)


def bump_primitive(x: FloatArray | float, R: float) -> FloatArray:  # noqa: N803
    """Antiderivative of the bump vanishing at -infinity.

    -∞ で 0 となるバンプの原始関数.
    """
    u = np.clip(np.asarray(x, dtype=np.float64) / R, -1.0, 1.0)
    u2 = u * u
    poly = u * (1.0 + u2 * (-4.0 / 3.0 + u2 * (6.0 / 5.0 + u2 * (-4.0 / 7.0 + u2 / 9.0))))
    # exact constants off the support
    return np.where(u <= -1.0, 0.0, np.where(u >= 1.0, R * BUMP_MASS, R * (poly + HALF_BUMP_MASS)))


def odd_bump(x: FloatArray | float, R: float) -> FloatArray:  # noqa: N803
    """Odd bump (x/R)(1 - (x/R)^2)^4, zero outside |x| < R."""
    u, inside = _scaled(x, R)
    q = 1.0 - u * u
    return np.where(inside, u * q**4, 0.0)


def odd_bump_d1(x: FloatArray | float, R: float) -> FloatArray:  # noqa: N803
    """First derivative of the odd bump."""
    u, inside = _scaled(x, R)
    q = 1.0 - u * u
    return np.where(inside, q**3 * (1.0 - 9.0 * u * u) / R, 0.0)


def odd_bump_primitive(x: FloatArray | float, R: float) -> FloatArray:  # noqa: N803
    """Antiderivative of the odd bump; vanishes outside the support on both sides."""
    u, inside = _scaled(x, R)
    q = 1.0 - u * u
    return np.where(inside, -R * q**5 / 10.0, 0.0)


class InitialDatum:
    """Base class for compactly supported initial data (f, g).

    コンパクト台を持つ初期データ (f, g) の基底クラス.

    The position datum is f = amp_f * B for every family; subclasses choose g.
    """

    family: Family

    def __init__(self, R: float, amp_f: float, amp_g: float) -> None:  # noqa: N803
        """Initialize the datum.

        初期データを初期化する.

        Args:
            R (float): Support radius / 台の半径
            amp_f (float): Amplitude of f / f の振幅
            amp_g (float): Amplitude of g / g の振幅
        """
        self.R = R
        self.amp_f = amp_f
        self.amp_g = amp_g

    def __repr__(self) -> str:
        """Return a compact description."""
        return f"{type(self).__name__}(R={self.R}, amp_f={self.amp_f}, amp_g={self.amp_g})"

    def f(self, x: FloatArray | float) -> FloatArray:
        """Initial position profile.

        初期位置.
        """
        return self.amp_f * bump(x, self.R)

    def df(self, x: FloatArray | float) -> FloatArray:
        """First derivative of f."""
        return self.amp_f * bump_d1(x, self.R)

    def d2f(self, x: FloatArray | float) -> FloatArray:
        """Second derivative of f."""
        return self.amp_f * bump_d2(x, self.R)

    def g(self, x: FloatArray | float) -> FloatArray:
        """Initial speed profile.

        初期速度.
        """
        raise NotImplementedError

    def dg(self, x: FloatArray | float) -> FloatArray:
        """First derivative of g."""
        raise NotImplementedError

    def g_primitive(self, x: FloatArray | float) -> FloatArray:
        """Antiderivative of g vanishing at -infinity.

        -∞ で 0 となる g の原始関数.
        """
        raise NotImplementedError

    @property
    def integral_g(self) -> float:
        """Exact total integral of g.

        g の全積分 (厳密値).
        """
        raise NotImplementedError

    @property
    def amplitude(self) -> float:
        """Largest data amplitude, used to scale tolerances."""
        return max(abs(self.amp_f), abs(self.amp_g))

    @property
    def sup_f(self) -> float:
        """Supremum of |f| (the bump peaks at x = 0)."""
        return abs(self.amp_f)

    @property
    def size_constant(self) -> float:
        """Return ||f||_inf + ||g||_1 / 2.

        データの大きさを表す定数.
        """
        l1_g, _ = quad(lambda y: abs(float(self.g(y))), -self.R, self.R, points=[0.0], epsabs=1e-13, limit=200)
        return self.sup_f + 0.5 * l1_g
