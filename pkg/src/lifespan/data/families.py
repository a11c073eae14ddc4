"""Module providing the family registry and support checks for initial data.

初期データ族の登録と台の検査を提供するモジュール.
"""

from __future__ import annotations

import math

import numpy as np

from lifespan.data.datum import Family, InitialDatum
from lifespan.data.f_positive_g_zero import FPositiveGZero
from lifespan.data.g_positive import GPositive
from lifespan.data.g_zero_odd import GZeroOdd
from lifespan.errors import ConfigurationError
from lifespan.model import IntegralCase

FAMILY_TO_DATUM_CLS: dict[Family, type[InitialDatum]] = {
    Family.G_POSITIVE: GPositive,
    Family.G_ZERO_ODD: GZeroOdd,
    Family.F_POSITIVE_G_ZERO: FPositiveGZero,
}

DEFAULT_AMPLITUDES: dict[Family, tuple[float, float]] = {
    Family.G_POSITIVE: (0.0, 1.0),
    Family.G_ZERO_ODD: (0.0, 1.0),
    Family.F_POSITIVE_G_ZERO: (1.0, 0.0),
}


def make_data(
    family: Family | str,
    R: float,  # noqa: N803
    amp_f: float | None = None,
    amp_g: float | None = None,
) -> InitialDatum:
    """Initialize the datum class corresponding to the family.

    データ族に対応する初期データクラスを初期化する.

    Omitted amplitudes take the family defaults (f = 0 for the g families,
    g = 0 for the f family).

    Args:
        family (Family | str): Family name / データ族の名前
        R (float): Support radius, R >= 1 / 台の半径
        amp_f (float | None): Amplitude of f / f の振幅
        amp_g (float | None): Amplitude of g / g の振幅

    Returns:
        InitialDatum: Initialized datum for the family /
                指定されたデータ族用に初期化された初期データ

    Raises:
        ConfigurationError: If the family is unknown or the amplitudes do not match it /
                データ族が不明, または振幅がデータ族と整合しない場合
    """
    try:
        family = Family(family)
    except ValueError as e:
        raise ConfigurationError(family, "Unknown data family") from e
    default_f, default_g = DEFAULT_AMPLITUDES[family]
    amp_f = default_f if amp_f is None else float(amp_f)
    amp_g = default_g if amp_g is None else float(amp_g)
    if not (math.isfinite(R) and R >= 1.0):
        raise ConfigurationError(R, "Support radius must satisfy R >= 1")
    if not (math.isfinite(amp_f) and math.isfinite(amp_g)):
        raise ConfigurationError((amp_f, amp_g), "Amplitudes must be finite")
    if family == Family.G_POSITIVE and amp_g <= 0.0:
        raise ConfigurationError(amp_g, "g-positive requires amp_g > 0")
    if family == Family.F_POSITIVE_G_ZERO:
        if amp_f <= 0.0:
            raise ConfigurationError(amp_f, "f-positive-g-zero requires amp_f > 0")
        if amp_g != 0.0:
            raise ConfigurationError(amp_g, "f-positive-g-zero requires amp_g = 0")
    return FAMILY_TO_DATUM_CLS[family](R=R, amp_f=amp_f, amp_g=amp_g)


def check_support(datum: InitialDatum, n_samples: int) -> bool:
    """Check that f and g vanish on R <= |x| <= 2R.

    R <= |x| <= 2R で f, g が 0 であることを確かめる.

    Args:
        datum (InitialDatum): Datum to check / 検査する初期データ
        n_samples (int): Samples per side, n_samples >= 1 / 片側あたりのサンプル数

    Returns:
        bool: True iff every sample is exactly zero / 全サンプルが厳密に 0 なら True
    """
    r = np.linspace(datum.R, 2.0 * datum.R, max(1, n_samples))
    x = np.concatenate([r, -r])
    values = np.concatenate(
        [np.broadcast_to(datum.f(x), x.shape), np.broadcast_to(datum.g(x), x.shape)],
    )
    return bool(np.all(values == 0.0))


def integral_case(datum: InitialDatum) -> IntegralCase:
    """Return the integral case of the datum.

    初期データの積分の場合を返す.
    """
    return IntegralCase.ZERO if datum.integral_g == 0.0 else IntegralCase.NONZERO
