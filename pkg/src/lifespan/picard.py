"""Module defining the weighted-norm Picard iteration and its contraction conditions.

重み付きノルムでの逐次近似とその縮小条件を定義するモジュール.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.optimize import brentq

from lifespan.duhamel import Field, apply_La, apply_La_incremental
from lifespan.errors import DomainError, PreconditionError
from lifespan.freewave import FreeWave
from lifespan.model import D_of_T, E_of_T, invert_gauge, psi_p, weight

if TYPE_CHECKING:
    from lifespan.data.datum import InitialDatum
    from lifespan.model import Params

logger = logging.getLogger(__name__)

DIVERGENCE_NORM = 1e12
MAX_LOG = 700.0
MAX_T_DOUBLINGS = 2000


@dataclass
class PicardResult:
    """Outcome of the successive approximation U_{n+1} = L_a(|U_n + eps u0|^p).

    逐次近似の結果.

    Attributes:
        U (Field): Last computed iterate / 最後の反復
        norms (list[float]): Weighted norms of U_1, U_2, ... / 各反復の重み付きノルム
        deltas (list[float]): Norms of U_{n+1} - U_n / 差分のノルム
        converged (bool): Whether the relative delta reached tol / 収束したかどうか
        contraction_ratio (float): Largest of the last three delta ratios / 直近の差分比の最大値
        diverged_at (int | None): Index n of the iterate whose norm exceeded the limit / 発散した反復の番号
    """

    U: Field
    norms: list[float] = field(default_factory=list)
    deltas: list[float] = field(default_factory=list)
    converged: bool = False
    contraction_ratio: float = 0.0
    diverged_at: int | None = None


class ContractionConditions(BaseModel):
    """Truth values of the two contraction inequalities.

    縮小条件の真偽.
    """

    model_config = ConfigDict(frozen=True)

    cond1: bool
    cond2: bool

    @property
    def both(self) -> bool:
        """Whether both inequalities hold."""
        return self.cond1 and self.cond2


def _weights(U: Field, params: Params) -> np.ndarray:  # noqa: N803
    return np.asarray(weight(np.abs(U.x)[:, None], U.t[None, :], params))


def weighted_norm(U: Field, params: Params) -> float:  # noqa: N803
    """Weighted sup norm max w(|x|,t) |U(x,t)| over the grid.

    格子上の重み付き sup ノルム.

    Args:
        U (Field): Lattice field / 格子上の場
        params (Params): Problem parameters / 問題パラメータ

    Returns:
        float: Weighted norm / 重み付きノルム

    Raises:
        DomainError: If U has non-finite entries / 有限でない値を含む場合
    """
    if not np.all(np.isfinite(U.values)):
        raise DomainError(U.values.shape, "weighted_norm needs finite values")
    if U.values.size == 0:
        return 0.0
    return float(np.max(_weights(U, params) * np.abs(U.values)))


def holder_gap(U: Field, V: Field, theta: float, params: Params) -> float:  # noqa: N803
    """Return ||U||^theta ||V||^(1-theta) - || |U|^theta |V|^(1-theta) ||.

    重み付きノルムのヘルダー不等式の余裕 (非負であるべき値).

    Args:
        U (Field): First field / 一つ目の場
        V (Field): Second field on the same grid / 同じ格子上の二つ目の場
        theta (float): Exponent in [0, 1] / 指数
        params (Params): Problem parameters / 問題パラメータ

    Returns:
        float: Gap of the inequality / 不等式の差
    """
    if not 0.0 <= theta <= 1.0:
        raise DomainError(theta, "theta must lie in [0, 1]")
    U.check_compatible(V)
    mixed = U.like(np.abs(U.values) ** theta * np.abs(V.values) ** (1.0 - theta))
    return weighted_norm(U, params) ** theta * weighted_norm(V, params) ** (1.0 - theta) - weighted_norm(
        mixed,
        params,
    )


def free_field(datum: InitialDatum, params: Params, T: float, h: float) -> Field:  # noqa: N803
    """Sample eps * u0 on the grid for (h, T, R).

    eps * u0 を格子上で標本化する.
    """
    wave = FreeWave(datum)
    return Field.sample(lambda x, t: params.eps * wave.u0(x, t), h, T, datum.R)


def iterate(
    datum: InitialDatum,
    params: Params,
    T: float,  # noqa: N803
    h: float,
    n_max: int = 50,
    tol: float = 1e-8,
    *,
    naive: bool = False,
) -> PicardResult:
    """Run U_{n+1} = L_a(|U_n + eps u0|^p) from U_1 = 0.

    U_1 = 0 から逐次近似を行う.

    Args:
        datum (InitialDatum): Initial data / 初期データ
        params (Params): Problem parameters / 問題パラメータ
        T (float): Time horizon, a multiple of h / 時間幅
        h (float): Grid spacing / 刻み幅
        n_max (int): Largest iterate index, n_max >= 2 / 反復の最大番号
        tol (float): Relative tolerance on the weighted delta / 相対許容誤差
        naive (bool): Use the direct quadrature operator / 直接求積の作用素を使う

    Returns:
        PicardResult: Iterates, norms and convergence data / 反復結果
    """
    if n_max < 2:  # noqa: PLR2004
        raise DomainError(n_max, "iterate needs n_max >= 2")
    if not T > 0.0:
        raise DomainError(T, "iterate needs T > 0")
    operator = apply_La if naive else apply_La_incremental
    free = free_field(datum, params, T, h)
    U = free.like(np.zeros_like(free.values))  # noqa: N806
    result = PicardResult(U=U, norms=[0.0])
    for n in range(1, n_max):
        with np.errstate(over="ignore", invalid="ignore"):
            source = free.like(np.abs(U.values + free.values) ** params.p)
            nxt = operator(source, params.a)
        if not np.all(np.isfinite(nxt.values)):
            result.diverged_at = n + 1
            logger.warning("Picard iterate %d overflowed", n + 1)
            break
        norm = weighted_norm(nxt, params)
        delta = weighted_norm(nxt.like(nxt.values - U.values), params)
        result.norms.append(norm)
        result.deltas.append(delta)
        U = nxt  # noqa: N806
        result.U = U
        logger.debug("Picard iterate %d: norm=%.6e delta=%.6e", n + 1, norm, delta)
        if norm > DIVERGENCE_NORM:
            result.diverged_at = n + 1
            logger.warning("Picard iterate %d exceeded norm %.1e", n + 1, DIVERGENCE_NORM)
            break
        if delta <= tol * norm:
            result.converged = True
            break
    result.contraction_ratio = _contraction_ratio(result.deltas)
    return result


def _contraction_ratio(deltas: list[float]) -> float:
    ratios = [b / a for a, b in zip(deltas[:-1], deltas[1:], strict=True) if a > 0.0]
    if not ratios:
        return 0.0
    return max(ratios[-3:])


def _log_terms(M: float, C: float, params: Params, T: float) -> tuple[float, float, float, float]:  # noqa: N803
    p, eps = params.p, params.eps
    log_e = math.log(E_of_T(T, params))
    log_d = math.log(D_of_T(T, params))
    lhs1 = (p * p + 2.0 * p) * math.log(2.0) + math.log(C) + p * math.log(M) + log_e + p * p * math.log(eps)
    rhs1 = p * math.log(2.0) + math.log(M) + p * math.log(eps)
    log_k = (p - 1.0) * math.log(3.0) + math.log(p)
    log_inner = (p + 1.0) * math.log(2.0) + math.log(M) + p * math.log(eps)
    first = log_k + math.log(C) + math.log(2.0) + (p - 1.0) * log_inner + log_e
    second = log_k + math.log(M) + (p - 1.0) * math.log(eps) + log_d
    return lhs1, rhs1, first, second


def _exp(value: float) -> float:
    return math.exp(min(value, MAX_LOG))


def contraction_conditions(
    M_meas: float,  # noqa: N803
    C_meas: float,  # noqa: N803
    params: Params,
    T: float,  # noqa: N803
) -> ContractionConditions:
    """Evaluate the boundedness and contraction inequalities with measured constants.

    測定された定数で有界性と縮小性の不等式を評価する.

    Args:
        M_meas (float): Constant of the I0 estimate / I0 評価の定数
        C_meas (float): Constant of the I estimate / I 評価の定数
        params (Params): Problem parameters / 問題パラメータ
        T (float): Time horizon / 時間幅

    Returns:
        ContractionConditions: cond1 and cond2 / 二つの条件の真偽
    """
    if not (M_meas > 0.0 and C_meas > 0.0):
        raise DomainError((M_meas, C_meas), "measured constants must be positive")
    lhs1, rhs1, first, second = _log_terms(M_meas, C_meas, params, T)
    cond1 = lhs1 <= rhs1
    cond2 = _exp(first) + _exp(second) <= 0.5  # noqa: PLR2004
    return ContractionConditions(cond1=cond1, cond2=cond2)


def _margin(M: float, C: float, params: Params, T: float) -> float:  # noqa: N803
    lhs1, rhs1, first, second = _log_terms(M, C, params, T)
    return max(lhs1 - rhs1, math.log(_exp(first) + _exp(second)) - math.log(0.5))


def max_contraction_time(M: float, C: float, params: Params) -> float:  # noqa: N803
    """Largest T for which both contraction conditions hold.

    縮小条件が両方成り立つ最大の T.

    Both left-hand sides increase with T, so the boundary is found by root finding.

    Args:
        M (float): Constant of the I0 estimate / I0 評価の定数
        C (float): Constant of the I estimate / I 評価の定数
        params (Params): Problem parameters / 問題パラメータ

    Returns:
        float: Boundary time, 0.0 if the conditions fail already at T = 0 / 境界の時刻
    """
    if _margin(M, C, params, 0.0) > 0.0:
        return 0.0
    hi = 1.0
    for _ in range(MAX_T_DOUBLINGS):
        if _margin(M, C, params, hi) > 0.0:
            break
        hi *= 2.0
    else:
        return math.inf
    return float(brentq(lambda T: _margin(M, C, params, T), 0.0, hi, xtol=1e-12 * hi))  # noqa: N803


def existence_time(M: float, C: float, params: Params) -> float:  # noqa: N803
    """Explicit existence time psi_p^{-1}(C' eps^{-p(p-1)}) for a = 0.

    a = 0 の場合の明示的な存在時間.

    C' = (2^{p^2+2p+2} 3^{p-1} p C M^{p-1})^{-1}.

    Raises:
        PreconditionError: If a != 0 / a が 0 でない場合
    """
    if params.a != 0.0:
        raise PreconditionError(params.a, "existence_time is stated for a = 0")
    p = params.p
    log_c_prime = -(
        (p * p + 2.0 * p + 2.0) * math.log(2.0)
        + (p - 1.0) * math.log(3.0)
        + math.log(p)
        + math.log(C)
        + (p - 1.0) * math.log(M)
    )
    target = math.exp(log_c_prime - p * (p - 1.0) * math.log(params.eps))
    return invert_gauge(lambda s: psi_p(s, p), target)


def sufficient_conditions_a0(M: float, C: float, params: Params, T: float) -> tuple[bool, bool, bool]:  # noqa: N803
    """Evaluate the three sufficient inequalities for a = 0 and T >= R.

    a = 0, T >= R での三つの十分条件を評価する.

    Raises:
        PreconditionError: If a != 0 / a が 0 でない場合
        DomainError: If T < R / T < R の場合
    """
    if params.a != 0.0:
        raise PreconditionError(params.a, "sufficient conditions are stated for a = 0")
    if T < params.R:
        raise DomainError(T, "sufficient conditions need T >= R")
    p, eps = params.p, params.eps
    common = math.log(C) + (p - 1.0) * math.log(M) + p * (p - 1.0) * math.log(eps)
    common += math.log(T) + p * math.log(math.log(T + 2.0))
    log_k = (p - 1.0) * math.log(3.0) + math.log(p)
    first = (p * p + 2.0 * p + 1.0) * math.log(2.0) + common <= 0.0
    second = (p * p + p + 3.0) * math.log(2.0) + log_k + common <= 0.0
    third = 3.0 * math.log(2.0) + log_k + math.log(M) + (p - 1.0) * math.log(eps) + math.log(math.log(T + 2.0)) <= 0.0
    return first, second, third
