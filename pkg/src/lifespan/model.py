"""Module defining problem parameters, gauge functions, weights and regions.

問題パラメータ・ゲージ関数・重み・領域分類を定義するモジュール.
"""

from __future__ import annotations

import math
from enum import StrEnum
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy.optimize import bisect

from lifespan.errors import DomainError

if TYPE_CHECKING:
    from collections.abc import Callable

FloatArray = npt.NDArray[np.float64]

GAUGE_TOL = 1e-10
MAX_BRACKET_DOUBLINGS = 2000


class Region(StrEnum):
    """Pieces of the support of a solution.

    解の台の分割.
    """

    INTERIOR = "interior"
    EXTERIOR = "exterior"
    ORIGIN = "origin"
    OUTSIDE_CONE = "outside-cone"


class IntegralCase(StrEnum):
    """Sign case of the total integral of the initial speed.

    初速度の全積分による場合分け.
    """

    NONZERO = "nonzero"
    ZERO = "zero"


class Params(BaseModel):
    """Problem parameters (p, a, eps, R).

    問題パラメータ.

    Attributes:
        p (float): Exponent of the nonlinearity, p > 1 / 非線形項の指数
        a (float): Weight exponent, any real / 重みの指数
        eps (float): Data amplitude, eps > 0 / データの振幅
        R (float): Support radius of the data, R >= 1 / データの台の半径
    """

    model_config = ConfigDict(frozen=True)

    p: float = Field(gt=1.0)
    a: float
    eps: float = Field(gt=0.0)
    R: float = Field(default=1.0, ge=1.0)

    @field_validator("p", "a", "eps", "R")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            msg = "parameters must be finite"
            raise ValueError(msg)
        return value

    def with_eps(self, eps: float) -> Params:
        """Return a copy with a different amplitude.

        振幅だけを変えたコピーを返す.

        Args:
            eps (float): New amplitude / 新しい振幅

        Returns:
            Params: Updated parameters / 更新されたパラメータ
        """
        return Params(p=self.p, a=self.a, eps=eps, R=self.R)


def phi(s: float) -> float:
    """Evaluate the gauge s log(2+s).

    ゲージ関数 φ を評価する.

    Args:
        s (float): Nonnegative argument / 非負の引数

    Returns:
        float: s log(2+s)

    Raises:
        DomainError: If s is negative / s が負の場合
    """
    if not s >= 0.0:
        raise DomainError(s, "phi requires s >= 0")
    return s * math.log(2.0 + s)


def psi_p(s: float, p: float) -> float:
    """Evaluate the gauge s log^p(2+s).

    ゲージ関数 ψ_p を評価する.

    Args:
        s (float): Nonnegative argument / 非負の引数
        p (float): Exponent, p > 1 / 指数

    Returns:
        float: s log^p(2+s)

    Raises:
        DomainError: If s is negative or p <= 1 / s が負または p <= 1 の場合
    """
    if not s >= 0.0:
        raise DomainError(s, "psi_p requires s >= 0")
    if not p > 1.0:
        raise DomainError(p, "psi_p requires p > 1")
    return s * math.log(2.0 + s) ** p


def invert_gauge(gauge: Callable[[float], float], y: float, tol: float = GAUGE_TOL) -> float:
    """Invert a strictly increasing gauge with gauge(0) = 0.

    単調増加なゲージ関数の逆関数値を二分法で求める.

    The upper bracket is doubled from s = 1 until it encloses y, then the root is
    refined by bisection.

    Args:
        gauge (Callable[[float], float]): Strictly increasing evaluator / 単調増加な関数
        y (float): Target value, y >= 0 / 目標値
        tol (float): Relative residual tolerance / 相対残差の許容値

    Returns:
        float: s with |gauge(s) - y| <= tol * max(1, y)

    Raises:
        DomainError: If y is negative or not finite / y が負または有限でない場合
    """
    if not math.isfinite(y):
        raise DomainError(y, "gauge inversion requires a finite target")
    if y < 0.0:
        raise DomainError(y, "gauge inversion requires y >= 0")
    if y == 0.0:
        return 0.0
    lo, hi = 0.0, 1.0
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if gauge(hi) >= y:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise DomainError(y, "could not bracket the gauge inverse")
    return float(
        bisect(
            lambda s: gauge(s) - y,
            lo,
            hi,
            xtol=1e-3 * tol,
            rtol=4.0 * float(np.finfo(np.float64).eps),
            maxiter=4000,
        ),
    )


def weight(r: float | FloatArray, t: float | FloatArray, params: Params) -> float | FloatArray:
    """Weight of the existence norm.

    存在証明のノルムに用いる重み w(r,t).

    Args:
        r (float | FloatArray): Distance |x| >= 0 / 原点からの距離
        t (float | FloatArray): Time t >= 0 / 時刻
        params (Params): Problem parameters / 問題パラメータ

    Returns:
        float | FloatArray: (t+r+3R)^a for a<0, 1/log(t+r+3R) for a=0, 1 for a>0
    """
    base = np.asarray(t, dtype=np.float64) + np.asarray(r, dtype=np.float64) + 3.0 * params.R
    if params.a < 0.0:
        out = np.power(base, params.a)
    elif params.a == 0.0:
        out = 1.0 / np.log(base)
    else:
        out = np.ones_like(base)
    if out.ndim == 0:
        return float(out)
    return out


def D_of_T(T: float, params: Params) -> float:  # noqa: N802, N803
    """Growth envelope of the linear a-priori estimate.

    線形 a priori 評価の増大関数 D(T).

    Args:
        T (float): Time horizon / 時間幅
        params (Params): Problem parameters / 問題パラメータ

    Returns:
        float: (T+2R)^{-a} for a<0, log(T+3R) for a=0, 1 for a>0
    """
    if params.a < 0.0:
        return (T + 2.0 * params.R) ** (-params.a)
    if params.a == 0.0:
        return math.log(T + 3.0 * params.R)
    return 1.0


def E_of_T(T: float, params: Params) -> float:  # noqa: N802, N803
    """Growth envelope of the nonlinear a-priori estimate.

    非線形 a priori 評価の増大関数 E(T).

    Args:
        T (float): Time horizon / 時間幅
        params (Params): Problem parameters / 問題パラメータ

    Returns:
        float: (T+2R)^{1-pa} for a<0, (T+R)log^p(T+3R) for a=0, T+R for a>0
    """
    if params.a < 0.0:
        return (T + 2.0 * params.R) ** (1.0 - params.p * params.a)
    if params.a == 0.0:
        return (T + params.R) * math.log(T + 3.0 * params.R) ** params.p
    return T + params.R


def classify_region(x: float, t: float, R: float) -> Region:  # noqa: N803
    """Classify a space-time point.

    時空の点を領域に分類する.

    Boundary lines belong to the first matching region in the order
    Interior, Origin, Exterior.

    Args:
        x (float): Position / 位置
        t (float): Time, t >= 0 / 時刻
        R (float): Support radius / 台の半径

    Returns:
        Region: Region containing (x, t) / 点を含む領域

    Raises:
        DomainError: If t is negative / t が負の場合
    """
    if not t >= 0.0:
        raise DomainError(t, "regions are defined for t >= 0")
    r = abs(x)
    if t + r >= R and t - r >= R:
        return Region.INTERIOR
    if t + r <= R:
        return Region.ORIGIN
    if abs(t - r) <= R:
        return Region.EXTERIOR
    return Region.OUTSIDE_CONE


def lifespan_exponent(case: IntegralCase, p: float, a: float) -> float:
    """Magnitude of the eps-exponent in the lifespan law.

    寿命評価における eps の指数の大きさを返す.

    For a = 0 this is the exponent inside the inverse gauge.

    Args:
        case (IntegralCase): Integral case of the data / データの積分の場合
        p (float): Nonlinearity exponent / 非線形項の指数
        a (float): Weight exponent / 重みの指数

    Returns:
        float: k such that T(eps) ~ C eps^{-k} (or gauge^{-1}(C eps^{-k}))
    """
    if case == IntegralCase.NONZERO:
        return (p - 1.0) / (1.0 - a) if a < 0.0 else p - 1.0
    return p * (p - 1.0) / (1.0 - p * a) if a < 0.0 else p * (p - 1.0)
