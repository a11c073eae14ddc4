"""Module defining the unit-CFL lattice solver and numerical lifespan detection.

単位 CFL 格子上の陽的解法と数値的な寿命の検出を定義するモジュール.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ConfigDict

from lifespan.duhamel import Field, diamond_update, kernel
from lifespan.errors import ConfigurationError
from lifespan.freewave import FreeWave

if TYPE_CHECKING:
    from lifespan.data.datum import InitialDatum
    from lifespan.model import FloatArray, Params

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD_SCALE = 1e6
UNRELIABLE_JUMP = 0.2
MIN_GRIDS = 2


class Status(StrEnum):
    """Outcome of a march.

    時間発展の結果.
    """

    BLEW_UP = "BlewUp"
    SURVIVED_TO_TMAX = "SurvivedToTmax"
    DIVERGED = "Diverged"


class Nonlinearity(StrEnum):
    """Form of the power nonlinearity.

    非線形項の形.
    """

    ABS = "abs"
    SIGNED = "signed"


def default_threshold(eps: float) -> float:
    """Blow-up threshold 1e6 * max(1, eps)."""
    return DEFAULT_THRESHOLD_SCALE * max(1.0, eps)


def nonlinear_source(
    u: FloatArray,
    weight_x: FloatArray,
    p: float,
    nonlinearity: Nonlinearity = Nonlinearity.ABS,
) -> FloatArray:
    """Source F = |u|^p * kernel (or |u|^{p-1} u * kernel).

    源泉項 F を計算する.

    Args:
        u (FloatArray): Solution values / 解の値
        weight_x (FloatArray): Kernel values at the nodes / 格子点での核の値
        p (float): Exponent / 指数
        nonlinearity (Nonlinearity): Absolute or signed power / 絶対値型または符号付き

    Returns:
        FloatArray: Source values / 源泉項の値
    """
    with np.errstate(over="ignore", invalid="ignore"):
        power = np.abs(u) ** p
        if nonlinearity == Nonlinearity.SIGNED:
            power = np.sign(u) * power
    return power * weight_x


@dataclass
class MarchState:
    """Two consecutive time levels of a march.

    連続する二つの時間レベル.

    Attributes:
        h (float): Spacing / 刻み幅
        x (FloatArray): Space nodes / 空間格子点
        R (float): Support radius / 台の半径
        n (int): Index of the current level / 現在の時間レベル
        prev (FloatArray): Level n-1 / 時間レベル n-1
        curr (FloatArray): Level n / 時間レベル n
        diverged (bool): Set when a level became non-finite / 非有限になったかどうか
    """

    h: float
    x: FloatArray
    R: float
    n: int
    prev: FloatArray
    curr: FloatArray
    diverged: bool = False

    @property
    def t(self) -> float:
        """Time of the current level."""
        return self.n * self.h


def _window(state: MarchState, level: int) -> slice:
    center = (len(state.x) - 1) // 2
    reach = math.ceil((level * state.h + state.R) / state.h) + 2
    return slice(max(0, center - reach), min(len(state.x), center + reach + 1))


def step_scheme(
    state: MarchState,
    params: Params,
    nonlinearity: Nonlinearity = Nonlinearity.ABS,
    *,
    source: bool = True,
) -> MarchState:
    """Advance one level with u_j^{n+1} = u_{j+1}^n + u_{j-1}^n - u_j^{n-1} + h^2 F(x_j, t_n, u_j^n).

    菱形恒等式に基づくスキームで 1 ステップ進める.

    Only the window covering |x| <= t + R is updated; nodes outside stay zero.
    The state carries levels n-1 and n in place of a whole field, and the datum
    enters only through the exact start built by initial_state.

    Args:
        state (MarchState): Levels n-1 and n / 時間レベル n-1 と n
        params (Params): Problem parameters / 問題パラメータ
        nonlinearity (Nonlinearity): Form of the power / 非線形項の形
        source (bool): False drops the source term (free wave) / False なら源泉項を除く

    Returns:
        MarchState: Levels n and n+1 / 時間レベル n と n+1
    """
    win = _window(state, state.n + 1)
    nxt = np.zeros_like(state.curr)
    if source:
        forcing = nonlinear_source(state.curr[win], kernel(state.x[win], params.a), params.p, nonlinearity)
    else:
        forcing = np.zeros_like(state.curr[win])
    with np.errstate(over="ignore", invalid="ignore"):
        nxt[win] = diamond_update(state.prev[win], state.curr[win], forcing, state.h)
    diverged = not bool(np.all(np.isfinite(nxt[win])))
    return MarchState(
        h=state.h,
        x=state.x,
        R=state.R,
        n=state.n + 1,
        prev=state.curr,
        curr=nxt,
        diverged=diverged,
    )


def initial_state(
    datum: InitialDatum,
    params: Params,
    x: FloatArray,
    h: float,
    nonlinearity: Nonlinearity = Nonlinearity.ABS,
    *,
    source: bool = True,
    taylor_start: bool = False,
) -> MarchState:
    """Build levels 0 and 1.

    時間レベル 0 と 1 を作る.

    The default start is eps u0(x, h) + h^2/2 F(x, 0, eps f); the Taylor start is
    eps f + h eps g + h^2/2 (eps f'' + F(x, 0, eps f)).
    """
    eps = params.eps
    level0 = eps * np.asarray(datum.f(x), dtype=np.float64)
    if source:
        forcing = nonlinear_source(level0, kernel(x, params.a), params.p, nonlinearity)
    else:
        forcing = np.zeros_like(level0)
    if taylor_start:
        level1 = level0 + h * eps * datum.g(x) + 0.5 * h * h * (eps * datum.d2f(x) + forcing)
    else:
        level1 = eps * FreeWave(datum).u0(x, h) + 0.5 * h * h * forcing
    return MarchState(h=h, x=x, R=datum.R, n=1, prev=level0, curr=np.asarray(level1, dtype=np.float64))


@dataclass
class MarchResult:
    """Trajectory summary of one march.

    一回の時間発展の要約.

    Attributes:
        h (float): Spacing / 刻み幅
        status (Status): Outcome / 結果
        t_blow (float | None): First time with max |u| >= threshold / 閾値を超えた最初の時刻
        t_end (float): Last computed time / 最後に計算した時刻
        threshold (float): Blow-up threshold / 爆発の閾値
        times (list[float]): Times of the levels / 各レベルの時刻
        max_abs (list[float]): max |u| per level / 各レベルの max |u|
        lattice (Field | None): Full lattice values when kept / 格子上の全値
    """

    h: float
    status: Status
    t_blow: float | None
    t_end: float
    threshold: float
    times: list[float] = field(default_factory=list)
    max_abs: list[float] = field(default_factory=list)
    lattice: Field | None = None


def march(  # noqa: PLR0913
    datum: InitialDatum,
    params: Params,
    h: float,
    t_max: float,
    threshold: float | None = None,
    *,
    keep_field: bool = False,
    source: bool = True,
    taylor_start: bool = False,
    nonlinearity: Nonlinearity | str = Nonlinearity.ABS,
) -> MarchResult:
    """March until max |u| reaches the threshold or t_max.

    max |u| が閾値に達するか t_max まで時間発展する.

    Args:
        datum (InitialDatum): Initial data / 初期データ
        params (Params): Problem parameters / 問題パラメータ
        h (float): Spacing dividing t_max / t_max を割り切る刻み幅
        t_max (float): Final time / 最終時刻
        threshold (float | None): Blow-up threshold / 爆発の閾値
        keep_field (bool): Store all levels in a Field / 全レベルを保存する
        source (bool): False solves the free wave equation / False なら自由波動方程式
        taylor_start (bool): Use the Taylor first level / テイラー展開による初期レベル
        nonlinearity (Nonlinearity | str): Form of the power / 非線形項の形

    Returns:
        MarchResult: Status, blow-up time and max |u| history / 結果
    """
    nonlinearity = Nonlinearity(nonlinearity)
    threshold = default_threshold(params.eps) if threshold is None else threshold
    x, t = Field.grid(h, t_max, datum.R)
    nt = len(t)
    values = np.zeros((len(x), nt), dtype=np.float64) if keep_field else None
    state = initial_state(datum, params, x, h, nonlinearity, source=source, taylor_start=taylor_start)
    times = [0.0]
    max_abs = [float(np.max(np.abs(state.prev)))]
    if values is not None:
        values[:, 0] = state.prev
    status = Status.SURVIVED_TO_TMAX
    t_blow: float | None = None
    blow_index: int | None = None
    n = 1
    while n < nt:
        if n > 1:
            state = step_scheme(state, params, nonlinearity, source=source)
        level = state.curr
        if state.diverged:
            status = Status.DIVERGED
            blow_index = n
            logger.warning("March diverged at t=%.6g (h=%g)", n * h, h)
            break
        peak = float(np.max(np.abs(level)))
        times.append(n * h)
        max_abs.append(peak)
        if values is not None:
            values[:, n] = level
        if peak >= threshold:
            status = Status.BLEW_UP
            t_blow = n * h
            blow_index = n
            break
        n += 1
    t_end = times[-1]
    logger.debug("March h=%g ended at t=%.6g with %s", h, t_end, status)
    kept = None
    if values is not None:
        kept = Field(h=h, x=x, t=t, values=values)
        if blow_index is not None:
            kept.blowup_flag = True
            kept.blowup_index = blow_index
    return MarchResult(
        h=h,
        status=status,
        t_blow=t_blow,
        t_end=t_end,
        threshold=threshold,
        times=times,
        max_abs=max_abs,
        lattice=kept,
    )


class LifespanReport(BaseModel):
    """Numerical lifespan over a ladder of grids.

    格子列に対する数値的な寿命.
    """

    model_config = ConfigDict(frozen=True)

    eps: float
    p: float
    a: float
    R: float
    family: str
    grids: list[float]
    T_blow_per_grid: list[float | None]
    T_extrapolated: float | None
    threshold: float
    t_max: float
    status: Status
    unreliable: bool = False


def _round_up(t_max: float, h: float) -> float:
    return math.ceil(t_max / h - 1e-9) * h


def extrapolate(coarse: tuple[float, float], fine: tuple[float, float]) -> float:
    """Linear extrapolation in h to h = 0 from (h, T) pairs.

    h について線形に h = 0 へ外挿する.
    """
    (h1, t1), (h2, t2) = coarse, fine
    return t2 + (t2 - t1) * h2 / (h1 - h2)


def detect_lifespan(  # noqa: PLR0913
    datum: InitialDatum,
    params: Params,
    h_list: list[float],
    threshold: float | None = None,
    t_max: float = 10.0,
    nonlinearity: Nonlinearity | str = Nonlinearity.ABS,
) -> LifespanReport:
    """March on each grid and extrapolate the threshold-crossing time.

    各格子で時間発展し閾値到達時刻を外挿する.

    t_max is rounded up to a multiple of each h.

    Args:
        datum (InitialDatum): Initial data / 初期データ
        params (Params): Problem parameters / 問題パラメータ
        h_list (list[float]): At least two decreasing spacings / 二つ以上の減少する刻み幅
        threshold (float | None): Blow-up threshold / 爆発の閾値
        t_max (float): Final time / 最終時刻
        nonlinearity (Nonlinearity | str): Form of the power / 非線形項の形

    Returns:
        LifespanReport: Per-grid and extrapolated lifespans / 各格子と外挿の寿命

    Raises:
        ConfigurationError: If fewer than two decreasing spacings are given / 刻み幅の指定が不正な場合
    """
    grids = [float(h) for h in h_list]
    if len(grids) < MIN_GRIDS or any(b >= a for a, b in zip(grids[:-1], grids[1:], strict=True)):
        raise ConfigurationError(h_list, "h_list needs at least two strictly decreasing entries")
    threshold = default_threshold(params.eps) if threshold is None else threshold
    results = [
        march(datum, params, h, _round_up(t_max, h), threshold, nonlinearity=nonlinearity) for h in grids
    ]
    t_blow = [r.t_blow for r in results]
    statuses = [r.status for r in results]
    unreliable = False
    if Status.DIVERGED in statuses:
        status = Status.DIVERGED
        extrapolated = None
    elif all(s == Status.BLEW_UP for s in statuses):
        status = Status.BLEW_UP
        times = [t for t in t_blow if t is not None]
        extrapolated = extrapolate((grids[-2], times[-2]), (grids[-1], times[-1]))
        diffs = np.diff(times)
        if np.any(diffs > 0.0) and np.any(diffs < 0.0):
            jumps = np.abs(diffs) / np.asarray(times[:-1])
            if float(np.max(jumps)) > UNRELIABLE_JUMP:
                unreliable = True
                logger.warning("Non-monotone lifespans %s for eps=%g", times, params.eps)
        if abs(times[-1] - times[-2]) > UNRELIABLE_JUMP * times[-1]:
            unreliable = True
            logger.warning("Finest grids disagree on the lifespan %s for eps=%g", times[-2:], params.eps)
        if extrapolated <= 0.0:
            unreliable = True
            extrapolated = times[-1]
    else:
        status = Status.SURVIVED_TO_TMAX
        extrapolated = None
    logger.info("Lifespan eps=%g: %s per grid, extrapolated %s (%s)", params.eps, t_blow, extrapolated, status)
    return LifespanReport(
        eps=params.eps,
        p=params.p,
        a=params.a,
        R=params.R,
        family=str(datum.family),
        grids=grids,
        T_blow_per_grid=t_blow,
        T_extrapolated=extrapolated,
        threshold=threshold,
        t_max=t_max,
        status=status,
        unreliable=unreliable,
    )


def write_dump(result: MarchResult, path: Path | str) -> tuple[Path, Path]:
    """Write the lattice values as "x t u" lines and the max |u| series as CSV.

    格子上の値を "x t u" 形式で, max |u| の時系列を CSV で書き出す.

    Args:
        result (MarchResult): March with a kept field / 全値を保存した時間発展
        path (Path | str): Path of the node dump / 格子値の出力先

    Returns:
        tuple[Path, Path]: Node dump and series CSV paths / 出力したファイルのパス
    """
    node_path = Path(path)
    series_path = node_path.with_name(f"{node_path.stem}_max_abs.csv")
    if result.lattice is None:
        raise ConfigurationError(path, "dump needs a march run with keep_field=True")
    node_path.parent.mkdir(parents=True, exist_ok=True)
    f = result.lattice
    last = len(result.times)
    with node_path.open("w", encoding="utf-8") as out:
        for n in range(last):
            for j in range(len(f.x)):
                out.write(f"{float(f.x[j])!r} {float(f.t[n])!r} {float(f.values[j, n])!r}\n")
    with series_path.open("w", encoding="utf-8", newline="") as out:
        writer = csv.writer(out)
        writer.writerow(["t", "max_abs_u"])
        writer.writerows([repr(t), repr(m)] for t, m in zip(result.times, result.max_abs, strict=True))
    logger.info("Wrote %s and %s", node_path, series_path)
    return node_path, series_path
