"""Module defining the sweep configuration.

スイープの設定を定義するモジュール.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from lifespan.data.datum import Family
from lifespan.data.families import make_data
from lifespan.errors import ConfigurationError
from lifespan.marcher import Nonlinearity
from lifespan.model import Params

logger = logging.getLogger(__name__)

MIN_EPS = 4


class LogEvents(BaseModel):
    """Per-event logging switches.

    イベントごとのログ出力の切り替え.
    """

    march: bool = True
    lifespan: bool = True
    fit: bool = True
    report: bool = True


class LogConfig(BaseModel):
    """Logging section of the configuration.

    設定のログ部分.
    """

    console_output: bool = True
    file_output: bool = False
    output_dir: str = "./log"
    level: str = "INFO"
    events: LogEvents = Field(default_factory=LogEvents)

    @field_validator("level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        if value.upper() not in logging.getLevelNamesMapping():
            msg = f"unknown log level {value}"
            raise ValueError(msg)
        return value.upper()


class SweepConfig(BaseModel):
    """Configuration of an eps-sweep.

    eps スイープの設定.

    Attributes:
        p (float): Exponent / 指数
        a (float): Weight exponent / 重みの指数
        family (Family): Data family / データ族
        R (float): Support radius / 台の半径
        amp_f (float | None): Amplitude of f, family default when omitted / f の振幅
        amp_g (float | None): Amplitude of g, family default when omitted / g の振幅
        eps_list (list[float]): Amplitudes to sweep / スイープする振幅
        h_list (list[float]): Grid ladder at the reference time / 基準時刻での格子列
        threshold (float | None): Blow-up threshold / 爆発の閾値
        h_max (float): Cap on the coarsest spacing in units of R / R を単位とした最も粗い刻み幅の上限
        tol_abs (float): Tolerance on the slope / 傾きの許容誤差
        out_csv (str): CSV report path / CSV の出力先
        out_json (str): JSON report path / JSON の出力先
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    p: float = Field(gt=1.0)
    a: float
    family: Family
    R: float = Field(default=1.0, ge=1.0)
    amp_f: float | None = None
    amp_g: float | None = None
    eps_list: list[float]
    h_list: list[float] = Field(default_factory=lambda: [1.0 / 128.0, 1.0 / 256.0, 1.0 / 512.0])
    threshold: float | None = None
    tol_abs: float = Field(default=0.15, gt=0.0)
    out_csv: str = "./out/sweep.csv"
    out_json: str = "./out/sweep.json"
    r2_min: float = 0.98
    spread_tol: float = 2.0
    tmax_factor: float = Field(default=3.0, gt=0.0)
    tmax_retries: int = Field(default=7, ge=0)
    h_reference_time: float = Field(default=8.0, gt=0.0)
    h_max: float = Field(default=0.5, gt=0.0)
    workers: int = Field(default=1, ge=1)
    nonlinearity: Nonlinearity = Nonlinearity.ABS
    log: LogConfig = Field(default_factory=LogConfig)

    @field_validator("eps_list")
    @classmethod
    def _positive_eps(cls, value: list[float]) -> list[float]:
        if len(value) < MIN_EPS:
            msg = f"eps_list needs at least {MIN_EPS} values"
            raise ValueError(msg)
        if any(not eps > 0.0 for eps in value):
            msg = "eps_list entries must be positive"
            raise ValueError(msg)
        return sorted(value, reverse=True)

    @field_validator("h_list")
    @classmethod
    def _decreasing_h(cls, value: list[float]) -> list[float]:
        if len(value) < 2 or any(not h > 0.0 for h in value):  # noqa: PLR2004
            msg = "h_list needs at least two positive spacings"
            raise ValueError(msg)
        return sorted(value, reverse=True)

    @model_validator(mode="after")
    def _family_amplitudes(self) -> SweepConfig:
        make_data(self.family, self.R, self.amp_f, self.amp_g)
        return self

    def params(self, eps: float) -> Params:
        """Problem parameters at amplitude eps.

        振幅 eps での問題パラメータ.
        """
        return Params(p=self.p, a=self.a, eps=eps, R=self.R)

    def logging_config(self) -> dict[str, Any]:
        """Configuration dictionary for RunLogger.

        RunLogger 用の設定辞書.
        """
        return {"log": self.log.model_dump()}


def load_config(path: Path | str) -> SweepConfig:
    """Load a sweep configuration from a JSON or YAML file.

    JSON または YAML の設定ファイルを読み込む.

    Args:
        path (Path | str): Path to the configuration file / 設定ファイルのパス

    Returns:
        SweepConfig: Validated configuration / 検証済みの設定

    Raises:
        ConfigurationError: If the file does not describe a valid sweep / 設定が不正な場合
    """
    with Path(path).open(encoding="utf-8") as f:
        raw = yaml.safe_load(f)
    if not isinstance(raw, dict):
        raise ConfigurationError(path, "Configuration must be a mapping")
    try:
        config = SweepConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigurationError(path, str(e)) from e
    logger.info("設定ファイルを読み込みました: %s", path)
    return config
