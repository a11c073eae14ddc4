"""Module defining the exact free wave and the Huygens support check.

自由波動方程式の厳密解とホイヘンスの原理の検査を定義するモジュール.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from lifespan.errors import DomainError, PreconditionError

if TYPE_CHECKING:
    from lifespan.data.datum import InitialDatum
    from lifespan.model import FloatArray

logger = logging.getLogger(__name__)

HUYGENS_TOL = 1e-12


class FreeWave:
    """d'Alembert solution u0 of the free wave equation for a datum.

    初期データに対するダランベールの公式による自由波の解.
    """

    def __init__(self, datum: InitialDatum) -> None:
        """Initialize the free wave.

        自由波を初期化する.

        Args:
            datum (InitialDatum): Initial data (f, g) / 初期データ
        """
        self.datum = datum

    def u0(self, x: FloatArray | float, t: FloatArray | float) -> FloatArray:
        """Evaluate u0(x,t) = (f(x+t)+f(x-t))/2 + (G(x+t)-G(x-t))/2.

        自由波 u0 を評価する.

        The g-integral uses the closed-form antiderivative G of the family.

        Args:
            x (FloatArray | float): Positions / 位置
            t (FloatArray | float): Times, t >= 0 / 時刻

        Returns:
            FloatArray: Values of u0 broadcast over x and t / u0 の値

        Raises:
            DomainError: If some t is negative / t が負の場合
        """
        x_arr = np.asarray(x, dtype=np.float64)
        t_arr = np.asarray(t, dtype=np.float64)
        if np.any(t_arr < 0.0):
            raise DomainError(t, "u0 is defined for t >= 0")
        plus = x_arr + t_arr
        minus = x_arr - t_arr
        d = self.datum
        return 0.5 * (d.f(plus) + d.f(minus)) + 0.5 * (d.g_primitive(plus) - d.g_primitive(minus))

    def __call__(self, x: FloatArray | float, t: FloatArray | float) -> FloatArray:
        """Alias of u0."""
        return self.u0(x, t)


def huygens_check(datum: InitialDatum, t_max: float, n_samples: int) -> bool:
    """Check that u0 vanishes inside the shifted cone |x| < t - R.

    |x| < t - R で u0 が消えることを確かめる.

    Args:
        datum (InitialDatum): Datum with zero total speed / 初速度の積分が 0 の初期データ
        t_max (float): Largest sampled time, t_max > R / 最大時刻
        n_samples (int): Total number of samples / サンプル総数

    Returns:
        bool: True iff all samples vanish to 1e-12 * amplitude / 全サンプルが消えれば True

    Raises:
        PreconditionError: If the integral of g is not zero / g の積分が 0 でない場合
        DomainError: If t_max <= R / t_max <= R の場合
    """
    if datum.integral_g != 0.0:
        raise PreconditionError(datum.integral_g, "Huygens' principle needs a zero integral of g")
    if not t_max > datum.R:
        raise DomainError(t_max, "huygens_check needs t_max > R")
    side = max(2, int(np.ceil(np.sqrt(max(1, n_samples)))))
    t = np.linspace(datum.R, t_max, side)
    frac = np.linspace(-1.0, 1.0, side + 2)[1:-1]
    tt, ff = np.meshgrid(t, frac, indexing="ij")
    # open interval; at t = R it collapses to x = 0
    xx = ff * (tt - datum.R)
    values = FreeWave(datum).u0(xx, tt)
    tol = HUYGENS_TOL * datum.amplitude
    worst = float(np.max(np.abs(values)))
    logger.debug("Huygens check on %d samples, worst |u0| = %.3e", values.size, worst)
    return worst <= tol
