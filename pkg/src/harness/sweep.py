"""Module for running eps-sweeps of the numerical lifespan.

数値的な寿命の eps スイープを実行するモジュール.
"""

from __future__ import annotations

import logging
import multiprocessing
from typing import TYPE_CHECKING, Any

from harness.config import SweepConfig
from harness.fit import fit_exponent, fit_gauge_constancy
from harness.result import RunRecord, SweepResult, Verdict
from lifespan.bounds import compute_constants, epsilon_threshold, lower_bound_shape, theory_gauge, upper_bound_time
from lifespan.data.families import integral_case, make_data
from lifespan.errors import FitError, PreconditionError
from lifespan.marcher import Status, default_threshold, detect_lifespan
from lifespan.model import IntegralCase, lifespan_exponent

if TYPE_CHECKING:
    from utils.run_logger import RunLogger

logger = logging.getLogger(__name__)

WRONG_LAW_MIN = 5.0


def ladder(config: SweepConfig, t_max: float) -> list[float]:
    """Grid ladder for a march up to t_max.

    t_max までの時間発展に使う格子列.

    The reference ladder is scaled by max(1, t_max / h_reference_time), so every
    amplitude gets the same relative resolution, until the coarsest spacing
    reaches h_max * R.
    """
    coarsest = max(config.h_list)
    scale = min(max(1.0, t_max / config.h_reference_time), max(1.0, config.h_max * config.R / coarsest))
    return [h * scale for h in config.h_list]


def run_one(config: SweepConfig, eps: float) -> RunRecord:
    """Measure the numerical lifespan at one amplitude.

    一つの振幅で数値的な寿命を測る.

    t_max starts at tmax_factor times the lower-bound shape and doubles while the
    marches survive, at most tmax_retries times. The ladder is rebuilt for each t_max.

    Args:
        config (SweepConfig): Sweep configuration / スイープの設定
        eps (float): Amplitude / 振幅

    Returns:
        RunRecord: Record for the amplitude / 振幅のレコード
    """
    params = config.params(eps)
    datum = make_data(config.family, config.R, config.amp_f, config.amp_g)
    case = integral_case(datum)
    t_max = config.tmax_factor * max(lower_bound_shape(case, params)(eps), 4.0 * config.R)
    grids = ladder(config, t_max)
    threshold = config.threshold if config.threshold is not None else default_threshold(eps)
    report = detect_lifespan(datum, params, grids, threshold, t_max, config.nonlinearity)
    for _ in range(config.tmax_retries):
        if report.status != Status.SURVIVED_TO_TMAX:
            break
        t_max *= 2.0
        grids = ladder(config, t_max)
        logger.info("eps=%g survived, retrying with t_max=%g and h=%s", eps, t_max, grids)
        report = detect_lifespan(datum, params, grids, threshold, t_max, config.nonlinearity)
    return RunRecord(
        eps=eps,
        T_num=report.T_extrapolated,
        status=report.status,
        grids=grids,
        threshold=threshold,
        t_max=t_max,
        unreliable=report.unreliable,
        upper_bound=_upper_bound(config, eps, case),
        T_blow_per_grid=report.T_blow_per_grid,
    )


def _upper_bound(config: SweepConfig, eps: float, case: IntegralCase) -> float | None:
    """Guaranteed blow-up time when the theorem applies and eps is below its threshold."""
    datum = make_data(config.family, config.R, config.amp_f, config.amp_g)
    params = config.params(eps)
    try:
        consts = compute_constants(params, datum)
        if eps > epsilon_threshold(case, params, consts):
            return None
        return upper_bound_time(case, params, consts).t0
    except PreconditionError:
        return None


def _run_task(task: tuple[dict[str, Any], float]) -> RunRecord:
    raw, eps = task
    return run_one(SweepConfig.model_validate(raw), eps)


def collect_records(config: SweepConfig) -> list[RunRecord]:
    """Run every amplitude, in parallel when workers > 1, and return records in eps order.

    全ての振幅を実行し eps の順にレコードを返す.
    """
    tasks = [(config.model_dump(mode="json"), eps) for eps in config.eps_list]
    if config.workers > 1:
        ctx = multiprocessing.get_context("spawn")
        with ctx.Pool(processes=min(config.workers, len(tasks))) as pool:
            records = pool.map(_run_task, tasks)
    else:
        records = [_run_task(task) for task in tasks]
    return sorted(records, key=lambda r: r.eps, reverse=True)


def sweep(config: SweepConfig, run_logger: RunLogger | None = None) -> SweepResult:
    """Run an eps-sweep and check the scaling law of the case.

    eps スイープを実行し, スケーリング則を判定する.

    Power laws (a != 0) are fitted by least squares; for a = 0 the constancy of
    gauge(T) eps^k is measured, together with the spread under the other case's law.

    Args:
        config (SweepConfig): Sweep configuration / スイープの設定
        run_logger (RunLogger | None): Event logger / イベントのロガー

    Returns:
        SweepResult: Records, fits and verdict / レコード, 当てはめ, 判定
    """
    datum = make_data(config.family, config.R, config.amp_f, config.amp_g)
    case = integral_case(datum)
    k = lifespan_exponent(case, config.p, config.a)
    records = collect_records(config)
    if run_logger is not None:
        for record in records:
            run_logger.event("march", {"eps": record.eps, "grids": record.grids, "T_blow": record.T_blow_per_grid})
            run_logger.event("lifespan", record.model_dump(mode="json"))
    excluded = [r.eps for r in records if not r.usable]
    violations = [
        r.eps for r in records if r.upper_bound is not None and r.T_num is not None and not r.T_num < r.upper_bound
    ]
    fit = None
    spread = None
    wrong = None
    verdict = Verdict.FAIL
    try:
        if config.a != 0.0:
            fit = fit_exponent(records)
            ok = abs(fit.slope + k) <= config.tol_abs and fit.r_squared >= config.r2_min
        else:
            params = config.params(1.0)
            spread = fit_gauge_constancy(records, theory_gauge(case, params), k)
            other = IntegralCase.ZERO if case == IntegralCase.NONZERO else IntegralCase.NONZERO
            wrong = fit_gauge_constancy(
                records,
                theory_gauge(other, params),
                lifespan_exponent(other, config.p, config.a),
            )
            ok = spread <= config.spread_tol and wrong >= WRONG_LAW_MIN
        verdict = Verdict.PASS if ok else Verdict.FAIL
    except FitError as e:
        logger.warning("Fit skipped: %s", e)
    result = SweepResult(
        p=config.p,
        a=config.a,
        family=str(config.family),
        R=config.R,
        case=str(case),
        records=records,
        theoretical_exponent=-k,
        fit=fit,
        gauge_spread=spread,
        wrong_law_spread=wrong,
        tol_abs=config.tol_abs,
        verdict=verdict,
        excluded=excluded,
        bound_violations=violations,
    )
    if run_logger is not None:
        run_logger.event(
            "fit",
            {"fit": fit.model_dump() if fit else None, "spread": spread, "wrong": wrong, "verdict": str(verdict)},
        )
    logger.info("Sweep %s a=%g p=%g: %s", config.family, config.a, config.p, verdict)
    return result


def ordering_violations(zero: SweepResult, nonzero: SweepResult) -> list[float]:
    """Amplitudes where the zero-integral lifespan is not longer than the nonzero one.

    積分 0 の寿命が非零の寿命より長くない振幅の一覧.

    A zero-integral run that survived to t_max counts with t_max as its lifespan.
    Amplitudes missing from either sweep are skipped.
    """
    other = {r.eps: r.T_num for r in nonzero.records if r.T_num is not None}
    out: list[float] = []
    for r in zero.records:
        value = r.t_max if r.status == Status.SURVIVED_TO_TMAX else r.T_num
        if value is None or r.eps not in other:
            continue
        if not value > other[r.eps]:
            out.append(r.eps)
    return out
