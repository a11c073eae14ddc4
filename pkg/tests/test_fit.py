import math

import pytest

from harness.fit import fit_exponent, fit_gauge_constancy, usable_records
from harness.result import RunRecord
from lifespan.errors import FitError
from lifespan.marcher import Status
from lifespan.model import invert_gauge, phi

EPS = [0.4, 0.2, 0.1, 0.05, 0.025]


def _record(eps: float, t_num: float | None, status: Status = Status.BLEW_UP, *, unreliable: bool = False) -> RunRecord:
    return RunRecord(
        eps=eps,
        T_num=t_num,
        status=status,
        grids=[1.0 / 64.0, 1.0 / 128.0],
        threshold=1e6,
        t_max=100.0,
        unreliable=unreliable,
    )


def test_exact_inverse_law() -> None:
    fit = fit_exponent([_record(eps, 1.0 / eps) for eps in EPS])
    assert fit.slope == pytest.approx(-1.0)
    assert fit.intercept == pytest.approx(0.0, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0)
    assert fit.n_used == 5


def test_exact_fractional_law() -> None:
    fit = fit_exponent([_record(eps, 3.0 * eps ** (-2.0 / 3.0)) for eps in EPS])
    assert fit.slope == pytest.approx(-2.0 / 3.0)
    assert fit.intercept == pytest.approx(math.log(3.0))


def test_flagged_records_are_excluded() -> None:
    records = [_record(eps, 1.0 / eps) for eps in EPS[:4]]
    records.append(_record(0.0125, None, Status.SURVIVED_TO_TMAX))
    records.append(_record(0.01, 5.0, unreliable=True))
    records.append(_record(0.005, None, Status.DIVERGED))
    assert len(usable_records(records)) == 4
    assert fit_exponent(records).slope == pytest.approx(-1.0)


def test_too_few_records() -> None:
    records = [_record(eps, 1.0 / eps) for eps in EPS[:3]]
    records.append(_record(0.01, None, Status.SURVIVED_TO_TMAX))
    with pytest.raises(FitError):
        fit_exponent(records)
    with pytest.raises(FitError):
        fit_gauge_constancy(records, phi, 1.0)


def test_gauge_constancy_for_exact_law() -> None:
    records = [_record(eps, invert_gauge(phi, 5.0 / eps)) for eps in EPS]
    assert fit_gauge_constancy(records, phi, 1.0) == pytest.approx(1.0, abs=1e-6)


def test_gauge_constancy_detects_wrong_law() -> None:
    records = [_record(eps, invert_gauge(phi, 5.0 / eps)) for eps in EPS]
    assert fit_gauge_constancy(records, phi, 2.0) >= 5.0
