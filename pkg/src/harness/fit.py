"""Module providing the scaling-law fits of a sweep.

スイープのスケーリング則の当てはめを提供するモジュール.
"""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import numpy as np
from scipy.stats import linregress

from harness.result import FitResult, RunRecord
from lifespan.errors import FitError

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

logger = logging.getLogger(__name__)

MIN_RECORDS = 4


def usable_records(records: Sequence[RunRecord]) -> list[RunRecord]:
    """Return the records entering a fit, raising if fewer than four remain.

    当てはめに使うレコードを返す.

    Raises:
        FitError: If fewer than four records are usable / 使えるレコードが 4 未満の場合
    """
    used = [r for r in records if r.usable]
    skipped = len(records) - len(used)
    if skipped:
        logger.warning("%d flagged records excluded from the fit", skipped)
    if len(used) < MIN_RECORDS:
        raise FitError(len(used), f"fits need at least {MIN_RECORDS} usable records")
    return used


def fit_exponent(records: Sequence[RunRecord]) -> FitResult:
    """Ordinary least squares of log T_num against log eps.

    log T_num を log eps に対して最小二乗で当てはめる.

    Args:
        records (Sequence[RunRecord]): Sweep records / スイープのレコード

    Returns:
        FitResult: Slope, intercept and r^2 / 傾き, 切片, 決定係数

    Raises:
        FitError: If fewer than four records are usable / 使えるレコードが 4 未満の場合
    """
    used = usable_records(records)
    log_eps = np.log([r.eps for r in used])
    log_t = np.log([float(r.T_num) for r in used if r.T_num is not None])
    fit = linregress(log_eps, log_t)
    return FitResult(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(fit.rvalue) ** 2,
        n_used=len(used),
    )


def fit_gauge_constancy(
    records: Sequence[RunRecord],
    gauge: Callable[[float], float],
    exponent: float,
) -> float:
    """Spread max q / min q of q(eps) = gauge(T_num) * eps^exponent.

    q(eps) = gauge(T_num) * eps^exponent のばらつき max q / min q.

    A spread near 1 means T_num follows gauge^{-1}(C eps^{-exponent}).

    Args:
        records (Sequence[RunRecord]): Sweep records / スイープのレコード
        gauge (Callable[[float], float]): Gauge function / ゲージ関数
        exponent (float): Positive exponent / 正の指数

    Returns:
        float: Spread ratio, at least 1 / ばらつきの比

    Raises:
        FitError: If fewer than four records are usable / 使えるレコードが 4 未満の場合
    """
    used = usable_records(records)
    log_q = [math.log(gauge(float(r.T_num))) + exponent * math.log(r.eps) for r in used if r.T_num is not None]
    return math.exp(max(log_q) - min(log_q))
