"""Module defining the blow-up constants, iteration sequences and lifespan bounds.

爆発の定数・反復列・寿命の上界と下界の形を定義するモジュール.
"""

from __future__ import annotations

import logging
import math
from enum import StrEnum
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.integrate import quad

from lifespan.errors import DomainError, PreconditionError
from lifespan.model import IntegralCase, Params, invert_gauge, lifespan_exponent, phi, psi_p

if TYPE_CHECKING:
    from collections.abc import Callable

    from lifespan.data.datum import InitialDatum

logger = logging.getLogger(__name__)

NUDGE_STEPS = 64


class KCase(StrEnum):
    """Blow-up functionals, one per theorem sub-case.

    定理の場合ごとの爆発判定汎関数.
    """

    K1 = "K1"
    K2 = "K2"
    K3 = "K3"
    K4 = "K4"
    K5 = "K5"
    K6 = "K6"


class BlowupConstants(BaseModel):
    """Explicit constants of the iterated lower bounds.

    反復下界の明示的な定数.

    Data constants are None when the corresponding hypothesis does not hold,
    and C6, C7 are None for a >= 0.
    """

    model_config = ConfigDict(frozen=True)

    C0: float
    C1: float
    C2: float
    C3: float
    C4: float
    C5: float
    C6: float | None = None
    C7: float | None = None
    Sp: float
    Sp_prime: float
    Cg: float | None = None
    Cf: float | None = None
    Cf_prime: float | None = None
    Cf_dprime: float | None = None


class Sequences(BaseModel):
    """First n terms of a_n, b_n and log M_n.

    数列 a_n, b_n, log M_n の最初の n 項.
    """

    model_config = ConfigDict(frozen=True)

    case: IntegralCase
    a_n: list[float]
    b_n: list[float] | None
    log_M: list[float]  # noqa: N815


class UpperBound(BaseModel):
    """Blow-up time t0 guaranteed by the upper-bound theorems.

    上界定理により保証される爆発時刻.

    Attributes:
        t0 (float): Smallest admissible t0 >= 4R / 4R 以上の最小の t0
        clamped (bool): True when the inequality already holds at 4R / 4R で既に成り立つ場合 True
    """

    model_config = ConfigDict(frozen=True)

    case: IntegralCase
    t0: float
    clamped: bool


def compute_constants(params: Params, datum: InitialDatum) -> BlowupConstants:
    """Compute all blow-up constants for the parameters and data.

    パラメータと初期データに対する爆発の定数を計算する.

    Args:
        params (Params): Problem parameters / 問題パラメータ
        datum (InitialDatum): Initial data / 初期データ

    Returns:
        BlowupConstants: Constants / 定数

    Raises:
        PreconditionError: If neither integral g > 0 nor (f >= 0, g = 0, f(-beta) not identically 0) holds /
                どちらの仮定も成り立たない場合
    """
    p, a, R = params.p, params.a, params.R  # noqa: N806
    c0 = 0.125 * (1.0 / math.sqrt(2.0)) ** max(0.0, -(1.0 + a))
    c1 = 2.0 * c0 / (1.0 + R) ** (1.0 + a)
    c2 = (p - 1.0) ** 2 * c1
    c3 = math.exp(-math.log(c2) / (p - 1.0))
    c5 = 2.0 * (p - 1.0) ** 2 * c0
    c4 = math.exp(-math.log(c5) / (p - 1.0))
    c7 = 2.0 * (p - 1.0) ** 2 * c0 / (1.0 - a) if a < 0.0 else None
    c6 = math.exp(-math.log(c7) / (p - 1.0)) if c7 is not None else None
    sp = p / (p - 1.0) ** 2
    sp_prime = sp + 1.0 / (p - 1.0)

    cg = 0.5 * datum.integral_g if datum.integral_g > 0.0 else None
    cf = cf_prime = cf_dprime = None
    if _speed_vanishes(datum) and _position_nonnegative(datum):
        j_int, _ = quad(lambda beta: float(datum.f(-beta)) ** p, 0.0, R, epsrel=1e-10, epsabs=0.0, limit=200)
        if j_int > 0.0:
            cf = 2.0 * c0 / (2.0**p * (1.0 + R) ** (1.0 + a)) * j_int
            cf_prime = 2.0 * c0 / 2.0**p * j_int
            cf_dprime = cf_prime / (1.0 - a) if a < 0.0 else None
    if cg is None and cf is None:
        raise PreconditionError(
            datum,
            "blow-up constants need either a positive integral of g or f >= 0, f(-beta) not identically 0, g = 0",
        )
    return BlowupConstants(
        C0=c0,
        C1=c1,
        C2=c2,
        C3=c3,
        C4=c4,
        C5=c5,
        C6=c6,
        C7=c7,
        Sp=sp,
        Sp_prime=sp_prime,
        Cg=cg,
        Cf=cf,
        Cf_prime=cf_prime,
        Cf_dprime=cf_dprime,
    )


def _grid_in_support(datum: InitialDatum) -> np.ndarray:
    return np.linspace(-datum.R, datum.R, 2001)


def _speed_vanishes(datum: InitialDatum) -> bool:
    return datum.integral_g == 0.0 and bool(np.all(datum.g(_grid_in_support(datum)) == 0.0))


def _position_nonnegative(datum: InitialDatum) -> bool:
    return bool(np.all(datum.f(_grid_in_support(datum)) >= 0.0))


def _rate_constant(consts: BlowupConstants, a: float) -> float:
    if a > 0.0:
        return consts.C2
    if a == 0.0:
        return consts.C5
    if consts.C7 is None:
        raise PreconditionError(a, "C7 is defined only for a < 0")
    return consts.C7


def _seed(case: IntegralCase, consts: BlowupConstants, params: Params) -> float:
    """log M_1 for the case and weight regime."""
    if case == IntegralCase.NONZERO:
        if consts.Cg is None:
            raise PreconditionError(consts, "the nonzero case needs a positive integral of g")
        return math.log(consts.Cg * params.eps)
    if params.a > 0.0:
        c = consts.Cf
    elif params.a == 0.0:
        c = consts.Cf_prime
    else:
        c = consts.Cf_dprime
    if c is None:
        raise PreconditionError(consts, "the zero case needs f >= 0 with g = 0")
    return math.log(c) + params.p * math.log(params.eps)


def sequences(params: Params, n: int, consts: BlowupConstants, case: IntegralCase) -> Sequences:
    """Evaluate a_n, b_n and log M_n by their recursions.

    漸化式により a_n, b_n, log M_n を計算する.

    log M_{n+1} = log C + p log M_n - 2n log p (nonzero case) or - 2(n+1) log p (zero case),
    with C = C2, C5 or C7 for a > 0, a = 0 or a < 0.

    Args:
        params (Params): Problem parameters / 問題パラメータ
        n (int): Number of terms, n >= 1 / 項数
        consts (BlowupConstants): Constants / 定数
        case (IntegralCase): Integral case / 積分の場合

    Returns:
        Sequences: Terms 1..n / 1 から n 番目までの項
    """
    if n < 1:
        raise DomainError(n, "sequences need n >= 1")
    p = params.p
    log_c = math.log(_rate_constant(consts, params.a))
    a_n = [0.0]
    b_n = [1.0]
    log_m = [_seed(case, consts, params)]
    shift = 1 if case == IntegralCase.ZERO else 0
    for k in range(1, n):
        a_n.append(p * a_n[-1] + 1.0)
        b_n.append(p * b_n[-1] + 1.0)
        log_m.append(log_c - 2.0 * (k + shift) * math.log(p) + p * log_m[-1])
    return Sequences(case=case, a_n=a_n, b_n=b_n if case == IntegralCase.ZERO else None, log_M=log_m)


def _check_domain(case: KCase, x: float, t: float, R: float) -> None:  # noqa: N803
    if not (x > 0.0 and t - x > R):
        raise DomainError((x, t), "K functionals need x > 0 and t - x > R")
    if case in (KCase.K1, KCase.K4) and x > R:
        raise DomainError((x, t), "K1 and K4 need x <= R")


def K(case: KCase | str, x: float, t: float, consts: BlowupConstants, params: Params) -> float:  # noqa: N802
    """Evaluate a blow-up functional; blow-up happens by t when it is positive at (x, t).

    爆発判定汎関数を評価する. 正なら時刻 t までに爆発する.

    Args:
        case (KCase | str): Functional K1..K6 / 汎関数
        x (float): Position / 位置
        t (float): Time / 時刻
        consts (BlowupConstants): Constants / 定数
        params (Params): Problem parameters / 問題パラメータ

    Returns:
        float: Value of the functional / 汎関数の値

    Raises:
        DomainError: If (x, t) lies outside the domain of the functional / 定義域外の場合
        PreconditionError: If a needed constant is missing / 必要な定数がない場合
    """
    case = KCase(case)
    p, a, R, eps = params.p, params.a, params.R, params.eps  # noqa: N806
    _check_domain(case, x, t, R)
    tail = t - x - R
    log_p = math.log(p)
    nonzero = case in (KCase.K1, KCase.K2, KCase.K3)
    s = consts.Sp if nonzero else consts.Sp_prime
    power = 1.0 if nonzero else p
    if case in (KCase.K1, KCase.K4):
        rate, geometry = consts.C2, tail * x**power
        seed = consts.Cg if nonzero else consts.Cf
    elif case in (KCase.K2, KCase.K5):
        rate, geometry = consts.C5, tail * math.log(1.0 + x) ** power
        seed = consts.Cg if nonzero else consts.Cf_prime
    else:
        rate, geometry = consts.C7, tail * (x ** (1.0 - a) / (1.0 + t + x)) ** power
        seed = consts.Cg if nonzero else consts.Cf_dprime
    if rate is None or seed is None:
        raise PreconditionError(case, "constants for this functional are not defined")
    log_seed = math.log(seed) + (math.log(eps) if nonzero else p * math.log(eps))
    return (math.log(geometry) + math.log(rate)) / (p - 1.0) - 2.0 * s * log_p + log_seed


def _display(case: IntegralCase, params: Params, consts: BlowupConstants) -> tuple[Callable[[float], float], float]:
    """Gauge G and target A such that blow-up is guaranteed once G(t0) > A and t0 >= 4R."""
    p, a, R, eps = params.p, params.a, params.R, params.eps  # noqa: N806
    nonzero = case == IntegralCase.NONZERO
    s = consts.Sp if nonzero else consts.Sp_prime
    shift = math.exp(2.0 * (p - 1.0) * s * math.log(p))
    k = p - 1.0 if nonzero else p * (p - 1.0)
    if nonzero:
        if consts.Cg is None:
            raise PreconditionError(consts, "the nonzero case needs a positive integral of g")
        seed = consts.Cg
    else:
        seed = consts.Cf if a > 0.0 else consts.Cf_prime if a == 0.0 else consts.Cf_dprime
        if seed is None:
            raise PreconditionError(consts, "the zero case needs f >= 0 with g = 0")
    data_term = seed ** (1.0 - p) * eps ** (-k)
    if a > 0.0:
        lead = 2.0 / R if nonzero else 2.0 * R**-p
        return (lambda s_: s_), lead / consts.C2 * shift * data_term
    if a == 0.0:
        if nonzero:
            return phi, 8.0 / consts.C5 * shift * data_term
        return (lambda s_: psi_p(s_, p)), 4.0 * 2.0**p / consts.C5 * shift * data_term
    c7 = _rate_constant(consts, a)
    if nonzero:
        return (lambda s_: s_ ** (1.0 - a)), 5.0 * 2.0 ** (2.0 - a) / c7 * shift * data_term
    return (lambda s_: s_ ** (1.0 - p * a)), 5.0**p * 2.0 ** (2.0 - p * a) / c7 * shift * data_term


def upper_bound_time(case: IntegralCase, params: Params, consts: BlowupConstants) -> UpperBound:
    """Smallest t0 >= 4R satisfying the blow-up inequality of the case.

    爆発の不等式を満たす 4R 以上の最小の t0.

    For a < 0 in the zero case the gauge is t0^{1-pa}.

    Args:
        case (IntegralCase): Integral case / 積分の場合
        params (Params): Problem parameters / 問題パラメータ
        consts (BlowupConstants): Constants / 定数

    Returns:
        UpperBound: t0 with the clamping flag / t0 と 4R に切り上げたかどうか
    """
    gauge, target = _display(case, params, consts)
    floor = 4.0 * params.R
    if gauge(floor) > target:
        return UpperBound(case=case, t0=floor, clamped=True)
    t0 = max(floor, invert_gauge(gauge, target))
    step = max(math.ulp(t0), 1e-15 * t0)
    for _ in range(NUDGE_STEPS):
        if gauge(t0) > target:
            break
        t0 += step
        step *= 2.0
    logger.debug("Upper bound t0=%.6g for %s, eps=%g", t0, case, params.eps)
    return UpperBound(case=case, t0=t0, clamped=False)


def epsilon_threshold(case: IntegralCase, params: Params, consts: BlowupConstants) -> float:
    """Amplitude at which the blow-up inequality holds with equality at t0 = 4R.

    t0 = 4R で爆発の不等式が等号となる振幅.

    Args:
        case (IntegralCase): Integral case / 積分の場合
        params (Params): Problem parameters (eps is ignored) / 問題パラメータ (eps は使わない)
        consts (BlowupConstants): Constants / 定数

    Returns:
        float: Threshold amplitude / 閾値となる振幅
    """
    k = params.p - 1.0 if case == IntegralCase.NONZERO else params.p * (params.p - 1.0)
    gauge, target = _display(case, params.with_eps(1.0), consts)
    return (target / gauge(4.0 * params.R)) ** (1.0 / k)


def lower_bound_shape(case: IntegralCase, params: Params) -> Callable[[float], float]:
    """Shape of the lifespan lower bound with unit constant.

    単位定数での寿命の下界の形.

    Args:
        case (IntegralCase): Integral case / 積分の場合
        params (Params): Problem parameters (eps is ignored) / 問題パラメータ

    Returns:
        Callable[[float], float]: eps -> bound shape / 振幅から下界の形への関数
    """
    p, a = params.p, params.a
    k = lifespan_exponent(case, p, a)
    if a == 0.0:
        if case == IntegralCase.NONZERO:
            return lambda eps: invert_gauge(phi, eps ** (-k))
        return lambda eps: invert_gauge(lambda s: psi_p(s, p), eps ** (-k))
    return lambda eps: eps ** (-k)


def theory_gauge(case: IntegralCase, params: Params) -> Callable[[float], float]:
    """Gauge in which the lifespan law is a power law in eps.

    寿命則が eps のべき乗となるゲージ関数.
    """
    p = params.p
    if params.a != 0.0:
        return lambda s: s
    if case == IntegralCase.NONZERO:
        return phi
    return lambda s: psi_p(s, p)
