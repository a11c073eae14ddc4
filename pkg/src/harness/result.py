"""Module defining the records and results of a sweep.

スイープの記録と結果を定義するモジュール.
"""

from __future__ import annotations

from enum import StrEnum

from pydantic import BaseModel, ConfigDict

from lifespan.marcher import Status


class Verdict(StrEnum):
    """Outcome of the scaling-law check.

    スケーリング則の判定.
    """

    PASS = "pass"
    FAIL = "fail"


class RunRecord(BaseModel):
    """Numerical lifespan at one amplitude.

    一つの振幅での数値的な寿命.

    Attributes:
        eps (float): Amplitude / 振幅
        T_num (float | None): Extrapolated lifespan / 外挿した寿命
        status (Status): Outcome of the marches / 時間発展の結果
        grids (list[float]): Spacings used / 使用した刻み幅
        threshold (float): Blow-up threshold / 爆発の閾値
        t_max (float): Final time of the last attempt / 最後の試行の最終時刻
        unreliable (bool): Lifespans disagree across grids / 格子間で寿命が食い違う
        upper_bound (float | None): Guaranteed blow-up time when a theorem applies / 定理による爆発時刻の上界
        T_blow_per_grid (list[float | None]): Threshold-crossing time per grid / 格子ごとの閾値到達時刻
    """

    model_config = ConfigDict(frozen=True)

    eps: float
    T_num: float | None
    status: Status
    grids: list[float]
    threshold: float
    t_max: float
    unreliable: bool = False
    upper_bound: float | None = None
    T_blow_per_grid: list[float | None] = []

    @property
    def h_finest(self) -> float:
        """Finest spacing used."""
        return min(self.grids)

    @property
    def usable(self) -> bool:
        """Whether the record enters the fits."""
        return self.status == Status.BLEW_UP and not self.unreliable and self.T_num is not None


class FitResult(BaseModel):
    """Least-squares fit of log T against log eps.

    log T の log eps に対する最小二乗当てはめ.
    """

    model_config = ConfigDict(frozen=True)

    slope: float
    intercept: float
    r_squared: float
    n_used: int


class SweepResult(BaseModel):
    """Aggregated result of an eps-sweep.

    eps スイープの集計結果.

    theoretical_exponent is the expected slope of log T against log eps, so it is
    negative; for a = 0 its magnitude is the exponent inside the inverse gauge.
    """

    model_config = ConfigDict(frozen=True)

    p: float
    a: float
    family: str
    R: float
    case: str
    records: list[RunRecord]
    theoretical_exponent: float
    fit: FitResult | None = None
    gauge_spread: float | None = None
    wrong_law_spread: float | None = None
    tol_abs: float
    verdict: Verdict = Verdict.FAIL
    excluded: list[float] = []
    bound_violations: list[float] = []
