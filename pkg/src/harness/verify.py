"""Module providing the property checks behind the verify command.

verify コマンドの性質検査を提供するモジュール.
"""

from __future__ import annotations

import logging
from enum import StrEnum
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ConfigDict

from lifespan.duhamel import Field, verify_apriori_I, verify_apriori_I0
from lifespan.errors import PreconditionError
from lifespan.freewave import huygens_check
from lifespan.picard import contraction_conditions, holder_gap, iterate

if TYPE_CHECKING:
    from lifespan.data.datum import InitialDatum
    from lifespan.model import Params

logger = logging.getLogger(__name__)

STABILITY_TOL = 0.2
HOLDER_TRIALS = 1000
HOLDER_SLACK = 1e-12
PICARD_RATIO = 0.5


class Check(StrEnum):
    """Properties checked by the verify command.

    verify コマンドで検査する性質.
    """

    HUYGENS = "huygens"
    APRIORI_I0 = "apriori-i0"
    APRIORI_I = "apriori-i"
    PICARD = "picard"
    HOLDER = "holder"


class VerifyOutcome(BaseModel):
    """Outcome of one property check.

    性質検査の結果.
    """

    model_config = ConfigDict(frozen=True)

    check: Check
    passed: bool
    details: dict[str, float | bool | str]


def _stable(first: float, second: float) -> bool:
    if first <= 0.0:
        return False
    return abs(second / first - 1.0) <= STABILITY_TOL


def check_huygens(datum: InitialDatum, n_samples: int = 10_000) -> VerifyOutcome:
    """Huygens' principle on t in [R, 10R]."""
    try:
        passed = huygens_check(datum, 10.0 * datum.R, n_samples)
    except PreconditionError as e:
        return VerifyOutcome(check=Check.HUYGENS, passed=False, details={"error": str(e)})
    return VerifyOutcome(check=Check.HUYGENS, passed=passed, details={"t_max": 10.0 * datum.R})


def check_apriori_i0(params: Params, T: float, n_samples: int = 64) -> VerifyOutcome:  # noqa: N803
    """Stability of the measured I0 constants under doubling of T, for m = 0 and 1."""
    details: dict[str, float | bool | str] = {}
    passed = True
    for m in (0, 1):
        first = verify_apriori_I0(m, T, params, n_samples)
        second = verify_apriori_I0(m, 2.0 * T, params, n_samples)
        details[f"M_m{m}_T"] = first
        details[f"M_m{m}_2T"] = second
        passed = passed and _stable(first, second)
    return VerifyOutcome(check=Check.APRIORI_I0, passed=passed, details=details)


def check_apriori_i(params: Params, T: float, n_samples: int = 64) -> VerifyOutcome:  # noqa: N803
    """Stability of the measured I constant under doubling of T."""
    first = verify_apriori_I(T, params, n_samples)
    second = verify_apriori_I(2.0 * T, params, n_samples)
    return VerifyOutcome(
        check=Check.APRIORI_I,
        passed=_stable(first, second),
        details={"C_T": first, "C_2T": second},
    )


def check_picard(datum: InitialDatum, params: Params, T: float, h: float, n_samples: int = 16) -> VerifyOutcome:  # noqa: N803
    """Convergence of the Picard iteration with the measured contraction conditions.

    Passes when the iteration converges with a contraction ratio of at most 1/2.
    """
    m_meas = max(verify_apriori_I0(0, T, params, n_samples), verify_apriori_I0(1, T, params, n_samples))
    c_meas = verify_apriori_I(T, params, n_samples)
    conditions = contraction_conditions(m_meas, c_meas, params, T)
    result = iterate(datum, params, T, h)
    passed = result.converged and result.contraction_ratio <= PICARD_RATIO
    return VerifyOutcome(
        check=Check.PICARD,
        passed=passed,
        details={
            "M": m_meas,
            "C": c_meas,
            "cond1": conditions.cond1,
            "cond2": conditions.cond2,
            "converged": result.converged,
            "iterations": len(result.deltas),
            "contraction_ratio": result.contraction_ratio,
        },
    )


def check_holder(params: Params, trials: int = HOLDER_TRIALS, seed: int = 0) -> VerifyOutcome:
    """Hoelder inequality of the weighted norm on random fields and exponents."""
    rng = np.random.default_rng(seed)
    base = Field.zeros(0.25, 2.0, params.R)
    worst = np.inf
    violations = 0
    for _ in range(trials):
        u = base.like(rng.normal(size=base.values.shape))
        v = base.like(rng.normal(size=base.values.shape) * rng.uniform(0.1, 10.0))
        theta = float(rng.uniform(0.0, 1.0))
        gap = holder_gap(u, v, theta, params)
        worst = min(worst, gap)
        if gap < -HOLDER_SLACK:
            violations += 1
    return VerifyOutcome(
        check=Check.HOLDER,
        passed=violations == 0,
        details={"trials": float(trials), "violations": float(violations), "worst_gap": float(worst)},
    )
