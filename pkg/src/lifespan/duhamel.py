"""Module defining lattice fields, the weighted Duhamel operator and a-priori checks.

格子上の場, 重み付きデュアメル作用素, a priori 評価の数値検証を定義するモジュール.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from numpy.polynomial.legendre import leggauss

from lifespan.errors import GridMismatchError
from lifespan.model import D_of_T, E_of_T, Region, classify_region, weight

if TYPE_CHECKING:
    from collections.abc import Callable

    from lifespan.model import FloatArray, Params

logger = logging.getLogger(__name__)

GRID_TOL = 1e-9
S_PANELS = 64
S_NODES = 8
Y_NODES = 16


@dataclass
class Field:
    """Lattice samples of a function on the unit-CFL grid.

    単位 CFL 格子上の関数値.

    Attributes:
        h (float): Spacing in both x and t / x, t 共通の刻み幅
        x (FloatArray): Nodes j*h for j = -J..J / 空間格子点
        t (FloatArray): Levels n*h for n = 0..nt-1 / 時間格子点
        values (FloatArray): Array of shape (len(x), len(t)) / 値の配列
        blowup_flag (bool): Set when the values stopped being usable / 爆発の有無
        blowup_index (int | None): First time level that is not usable / 爆発した時間レベル
    """

    h: float
    x: FloatArray
    t: FloatArray
    values: FloatArray
    blowup_flag: bool = False
    blowup_index: int | None = field(default=None)

    @property
    def t_max(self) -> float:
        """Last time level."""
        return float(self.t[-1])

    @property
    def shape(self) -> tuple[int, int]:
        """Shape of the value array."""
        return (len(self.x), len(self.t))

    @staticmethod
    def grid(h: float, t_max: float, R: float) -> tuple[FloatArray, FloatArray]:  # noqa: N803
        """Build the x and t nodes covering the light cone of [-R, R] up to t_max.

        t_max までの光錐を覆う格子点を作る.

        Args:
            h (float): Spacing / 刻み幅
            t_max (float): Final time, an integer multiple of h / 最終時刻 (h の整数倍)
            R (float): Support radius / 台の半径

        Returns:
            tuple[FloatArray, FloatArray]: x nodes and t nodes / 空間と時間の格子点

        Raises:
            GridMismatchError: If h does not divide t_max / h が t_max を割り切らない場合
        """
        if not (h > 0.0 and t_max >= 0.0):
            raise GridMismatchError((h, t_max), "Grid needs h > 0 and t_max >= 0")
        steps = round(t_max / h)
        if abs(steps * h - t_max) > GRID_TOL * max(1.0, t_max):
            raise GridMismatchError((h, t_max), "Step does not divide the time extent")
        half = math.ceil((t_max + R) / h - GRID_TOL) + 1
        x = h * np.arange(-half, half + 1, dtype=np.float64)
        t = h * np.arange(steps + 1, dtype=np.float64)
        return x, t

    @classmethod
    def zeros(cls, h: float, t_max: float, R: float) -> Field:  # noqa: N803
        """Create a zero field on the grid for (h, t_max, R).

        零の場を作る.

        Args:
            h (float): Spacing / 刻み幅
            t_max (float): Final time / 最終時刻
            R (float): Support radius / 台の半径

        Returns:
            Field: Zero field / 零の場
        """
        x, t = cls.grid(h, t_max, R)
        return cls(h=h, x=x, t=t, values=np.zeros((len(x), len(t)), dtype=np.float64))

    @classmethod
    def sample(
        cls,
        func: Callable[[FloatArray, FloatArray], FloatArray],
        h: float,
        t_max: float,
        R: float,  # noqa: N803
    ) -> Field:
        """Sample func(x, t) on the grid for (h, t_max, R).

        関数を格子上で標本化する.

        Args:
            func (Callable[[FloatArray, FloatArray], FloatArray]): Vectorized function / ベクトル化された関数
            h (float): Spacing / 刻み幅
            t_max (float): Final time / 最終時刻
            R (float): Support radius / 台の半径

        Returns:
            Field: Sampled field / 標本化された場
        """
        x, t = cls.grid(h, t_max, R)
        xx, tt = np.meshgrid(x, t, indexing="ij")
        values = np.broadcast_to(np.asarray(func(xx, tt), dtype=np.float64), xx.shape).copy()
        return cls(h=h, x=x, t=t, values=values)

    def like(self, values: FloatArray) -> Field:
        """Return a field on the same grid with other values.

        同じ格子で値だけ異なる場を返す.
        """
        if values.shape != self.values.shape:
            raise GridMismatchError(values.shape, "Values do not match the grid shape")
        return Field(h=self.h, x=self.x, t=self.t, values=values)

    def check_compatible(self, other: Field) -> None:
        """Raise if two fields do not live on the same grid.

        二つの場が同じ格子上にあることを確かめる.

        Raises:
            GridMismatchError: On shape or spacing mismatch / 形状または刻み幅が異なる場合
        """
        if self.shape != other.shape or abs(self.h - other.h) > GRID_TOL * self.h:
            raise GridMismatchError((self.shape, other.shape), "Fields live on different grids")


def kernel(y: FloatArray | float, a: float) -> FloatArray:
    """Spatial factor (1+y^2)^{-(1+a)/2} of the nonlinearity.

    非線形項の空間因子.

    Args:
        y (FloatArray | float): Positions / 位置
        a (float): Weight exponent / 重みの指数

    Returns:
        FloatArray: Positive kernel values / 正の値
    """
    y_arr = np.asarray(y, dtype=np.float64)
    return np.power(1.0 + y_arr * y_arr, -0.5 * (1.0 + a))


def _check_lattice(v: Field) -> None:
    if v.values.ndim != 2 or v.values.shape != (len(v.x), len(v.t)):  # noqa: PLR2004
        raise GridMismatchError(v.values.shape, "Values do not match the grid shape")
    if len(v.t) > 1 and abs((v.t[1] - v.t[0]) - v.h) > GRID_TOL * v.h:
        raise GridMismatchError(v.h, "Time step differs from the space step")
    if len(v.x) > 1 and abs((v.x[1] - v.x[0]) - v.h) > GRID_TOL * v.h:
        raise GridMismatchError(v.h, "Space step differs from the declared spacing")


def apply_La(v: Field, a: float) -> Field:  # noqa: N802
    """Apply the Duhamel operator by direct trapezoid quadrature.

    台形則による直接求積でデュアメル作用素を適用する.

    On the unit-CFL lattice the interval ends x +- (t - s) are nodes, so the inner
    trapezoid sums have no partial cells. The integrand is taken as zero beyond
    the grid ends, including the half cell next to each end.

    Args:
        v (Field): Integrand on the lattice / 被積分関数
        a (float): Weight exponent / 重みの指数

    Returns:
        Field: L_a(v) on the same grid / 同じ格子上の L_a(v)

    Raises:
        GridMismatchError: If the field is not on a unit-CFL grid / 単位 CFL 格子でない場合
    """
    _check_lattice(v)
    h = v.h
    g = v.values * kernel(v.x, a)[:, None]
    nx, nt = g.shape
    # one zero node on each side, cumulative trapezoid from the left
    padded = np.pad(g, ((1, 1), (0, 0)))
    cum = np.zeros_like(padded)
    cum[1:, :] = np.cumsum(0.5 * h * (padded[1:, :] + padded[:-1, :]), axis=0)
    idx = np.arange(nx) + 1
    out = np.zeros_like(g)
    for n in range(1, nt):
        inner = np.empty((nx, n + 1), dtype=np.float64)
        for m in range(n + 1):
            d = n - m
            hi = np.minimum(idx + d, nx + 1)
            lo = np.maximum(idx - d, 0)
            inner[:, m] = cum[hi, m] - cum[lo, m]
        w_s = np.full(n + 1, h)
        w_s[0] = w_s[-1] = 0.5 * h
        out[:, n] = 0.5 * (inner @ w_s)
    return v.like(out)


def diamond_update(prev: FloatArray, curr: FloatArray, source: FloatArray, h: float) -> FloatArray:
    """Advance one level with u(N) = u(E) + u(W) - u(S) + h^2 F.

    菱形恒等式で 1 ステップ進める.

    The end nodes are set to zero; callers keep the support away from them.

    Args:
        prev (FloatArray): Level n-1 / 時間レベル n-1
        curr (FloatArray): Level n / 時間レベル n
        source (FloatArray): Source F at level n / レベル n の源泉項
        h (float): Spacing / 刻み幅

    Returns:
        FloatArray: Level n+1 / 時間レベル n+1
    """
    nxt = np.zeros_like(curr)
    nxt[1:-1] = curr[2:] + curr[:-2] - prev[1:-1] + (h * h) * source[1:-1]
    return nxt


def first_level(source0: FloatArray, h: float) -> FloatArray:
    """Duhamel integral over the first time step from the level-0 source.

    最初の時間ステップのデュアメル積分.

    Equals the trapezoid value h^2/4 * (F_j + (F_{j-1} + F_{j+1}) / 2).
    """
    out = 0.5 * source0
    out[1:-1] += 0.25 * (source0[:-2] + source0[2:])
    out[0] = out[-1] = 0.0
    return 0.5 * (h * h) * out


def apply_La_incremental(v: Field, a: float) -> Field:  # noqa: N802
    """Apply the Duhamel operator row by row with the diamond recurrence.

    菱形の漸化式で行ごとにデュアメル作用素を適用する.

    Costs O(N^2) for an N x N grid and agrees with apply_La to second order.
    The rows are padded with nt zero nodes per side so the zeroed end nodes of
    the recurrence never reach the returned grid.

    Args:
        v (Field): Integrand on the lattice / 被積分関数
        a (float): Weight exponent / 重みの指数

    Returns:
        Field: L_a(v) on the same grid / 同じ格子上の L_a(v)
    """
    _check_lattice(v)
    h = v.h
    nx, nt = v.values.shape
    g = np.pad(v.values * kernel(v.x, a)[:, None], ((nt, nt), (0, 0)))
    out = np.zeros_like(g)
    if nt > 1:
        out[:, 1] = first_level(g[:, 0], h)
    for n in range(1, nt - 1):
        out[:, n + 1] = diamond_update(out[:, n - 1], out[:, n], g[:, n], h)
    return v.like(out[nt : nt + nx])


def _gauss_panels(lo: float, hi: float, panels: int, nodes: int) -> tuple[FloatArray, FloatArray]:
    xi, wi = leggauss(nodes)
    edges = np.linspace(lo, hi, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mid[:, None] + half[:, None] * xi[None, :]).ravel()
    wts = (half[:, None] * wi[None, :]).ravel()
    return pts, wts


def _piece_integral(
    lo: FloatArray,
    hi: FloatArray,
    s: FloatArray,
    integrand: Callable[[FloatArray, FloatArray], FloatArray],
) -> FloatArray:
    """Gauss-Legendre integral of integrand(y, s) over [lo, hi] for each s (empty when hi <= lo)."""
    xi, wi = leggauss(Y_NODES)
    length = np.maximum(hi - lo, 0.0)
    y = lo[:, None] + 0.5 * length[:, None] * (xi[None, :] + 1.0)
    vals = integrand(y, np.broadcast_to(s[:, None], y.shape))
    return 0.5 * length * (vals @ wi)


def _cone_integral(
    x: float,
    t: float,
    bands: Callable[[FloatArray], list[tuple[FloatArray, FloatArray]]],
    integrand: Callable[[FloatArray, FloatArray], FloatArray],
) -> float:
    """Integrate over the backward triangle of (x, t) restricted to the given bands."""
    if t <= 0.0:
        return 0.0
    s, ws = _gauss_panels(0.0, t, S_PANELS, S_NODES)
    left = x - (t - s)
    right = x + (t - s)
    inner = np.zeros_like(s)
    for b_lo, b_hi in bands(s):
        inner += _piece_integral(np.maximum(left, b_lo), np.minimum(right, b_hi), s, integrand)
    return float(inner @ ws)


def _samples(T: float, R: float, n_samples: int) -> list[tuple[float, float]]:  # noqa: N803
    n = max(2, n_samples)
    out: list[tuple[float, float]] = []
    for t in np.linspace(T / n, T, n):
        out.extend((float(x), float(t)) for x in np.linspace(0.0, t + R, n))
    return out


def integral_I0(x: float, t: float, m: int, params: Params) -> float:  # noqa: N802
    """Integral of w^{-m} * kernel over the backward triangle within the free-wave annulus.

    自由波の台 (s-R)_+ <= |y| <= s+R 上での後退三角形の積分.
    """
    R = params.R  # noqa: N806

    def bands(s: FloatArray) -> list[tuple[FloatArray, FloatArray]]:
        inner = np.maximum(s - R, 0.0)
        return [(-(s + R), -inner), (inner, s + R)]

    def integrand(y: FloatArray, s: FloatArray) -> FloatArray:
        w = np.asarray(weight(np.abs(y), s, params))
        return np.power(w, -m) * kernel(y, params.a)

    return _cone_integral(x, t, bands, integrand)


def integral_I(x: float, t: float, params: Params) -> float:  # noqa: N802
    """Integral of w^{-p} * kernel over the backward triangle within |y| <= s+R.

    |y| <= s+R 上での後退三角形の積分.
    """
    R = params.R  # noqa: N806

    def bands(s: FloatArray) -> list[tuple[FloatArray, FloatArray]]:
        zero = np.zeros_like(s)
        return [(-(s + R), zero), (zero, s + R)]

    def integrand(y: FloatArray, s: FloatArray) -> FloatArray:
        w = np.asarray(weight(np.abs(y), s, params))
        return np.power(w, -params.p) * kernel(y, params.a)

    return _cone_integral(x, t, bands, integrand)


def verify_apriori_I0(m: int, T: float, params: Params, n_samples: int = 64) -> float:  # noqa: N802, N803
    """Measure the constant M in I0(x,t) <= M w(|x|,t)^{-1} D(T)^m.

    I0 の a priori 評価の定数 M を測定する.

    Samples are taken with x >= 0 (I0 is even in x) in the exterior and origin regions.

    Args:
        m (int): Power of the weight, 0 or 1 / 重みの冪 (0 または 1)
        T (float): Time horizon, T > 0 / 時間幅
        params (Params): Problem parameters / 問題パラメータ
        n_samples (int): Samples per axis / 軸あたりのサンプル数

    Returns:
        float: max over samples of I0 * w / D(T)^m / 測定された定数
    """
    scale = D_of_T(T, params) ** m
    best = 0.0
    for x, t in _samples(T, params.R, n_samples):
        if classify_region(x, t, params.R) not in (Region.EXTERIOR, Region.ORIGIN):
            continue
        value = integral_I0(x, t, m, params) * float(weight(x, t, params)) / scale
        best = max(best, value)
    logger.debug("Measured M = %.6g for m=%d, T=%g, a=%g", best, m, T, params.a)
    return best


def verify_apriori_I(T: float, params: Params, n_samples: int = 64) -> float:  # noqa: N802, N803
    """Measure the constant C in I(x,t) <= C E(T) w(|x|,t)^{-1}.

    I の a priori 評価の定数 C を測定する.

    Args:
        T (float): Time horizon, T > 0 / 時間幅
        params (Params): Problem parameters / 問題パラメータ
        n_samples (int): Samples per axis / 軸あたりのサンプル数

    Returns:
        float: max over samples of I * w / E(T) / 測定された定数
    """
    scale = E_of_T(T, params)
    best = 0.0
    for x, t in _samples(T, params.R, n_samples):
        if classify_region(x, t, params.R) == Region.OUTSIDE_CONE:
            continue
        value = integral_I(x, t, params) * float(weight(x, t, params)) / scale
        best = max(best, value)
    logger.debug("Measured C = %.6g for T=%g, p=%g, a=%g", best, T, params.p, params.a)
    return best
