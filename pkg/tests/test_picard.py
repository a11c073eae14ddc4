import math

import numpy as np
import pytest

from lifespan.data.datum import Family
from lifespan.data.families import make_data
from lifespan.duhamel import Field, apply_La, apply_La_incremental
from lifespan.errors import DomainError, PreconditionError
from lifespan.marcher import march
from lifespan.model import Params
from lifespan.picard import (
    contraction_conditions,
    existence_time,
    free_field,
    holder_gap,
    iterate,
    max_contraction_time,
    sufficient_conditions_a0,
    weighted_norm,
)


def test_weighted_norm_of_zero_field() -> None:
    params = Params(p=2.0, a=-1.0, eps=0.1)
    assert weighted_norm(Field.zeros(0.25, 1.0, 1.0), params) == 0.0


def test_weighted_norm_uses_weight() -> None:
    params = Params(p=2.0, a=-1.0, eps=0.1)
    field = Field.zeros(0.25, 1.0, 1.0)
    values = np.zeros_like(field.values)
    center = (len(field.x) - 1) // 2
    values[center, 0] = 6.0
    assert weighted_norm(field.like(values), params) == pytest.approx(2.0)


def test_weighted_norm_rejects_non_finite() -> None:
    params = Params(p=2.0, a=1.0, eps=0.1)
    field = Field.zeros(0.25, 1.0, 1.0)
    values = field.values.copy()
    values[0, 0] = np.nan
    with pytest.raises(DomainError):
        weighted_norm(field.like(values), params)


@pytest.mark.parametrize("a", [-1.0, 0.0, 1.0])
def test_holder_inequality_on_random_fields(a: float) -> None:
    params = Params(p=2.0, a=a, eps=0.1)
    rng = np.random.default_rng(6)
    base = Field.zeros(0.25, 2.0, 1.0)
    for _ in range(1000):
        u = base.like(rng.normal(size=base.values.shape))
        v = base.like(rng.normal(size=base.values.shape) * rng.uniform(0.1, 10.0))
        assert holder_gap(u, v, float(rng.uniform()), params) >= -1e-12


def test_holder_gap_rejects_bad_theta() -> None:
    params = Params(p=2.0, a=1.0, eps=0.1)
    field = Field.zeros(0.25, 1.0, 1.0)
    with pytest.raises(DomainError):
        holder_gap(field, field, 1.5, params)


def test_iterate_converges_for_small_data() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    params = Params(p=2.0, a=1.0, eps=0.02)
    result = iterate(datum, params, 4.0, 1.0 / 16.0)
    assert result.converged
    assert result.diverged_at is None
    assert result.contraction_ratio <= 0.5
    assert result.norms[0] == 0.0
    assert len(result.norms) == len(result.deltas) + 1


def test_iterate_reports_divergence() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    params = Params(p=3.0, a=-1.0, eps=5.0)
    result = iterate(datum, params, 8.0, 1.0 / 8.0, n_max=50)
    assert not result.converged
    assert result.diverged_at is not None


def test_iterate_validates_arguments() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    params = Params(p=2.0, a=1.0, eps=0.02)
    with pytest.raises(DomainError):
        iterate(datum, params, 1.0, 0.25, n_max=1)
    with pytest.raises(DomainError):
        iterate(datum, params, 0.0, 0.25)


def _oracle_gap(h: float) -> float:
    datum = make_data(Family.G_POSITIVE, 1.0)
    params = Params(p=2.0, a=1.0, eps=0.02)
    T = 4.0  # noqa: N806
    limit = iterate(datum, params, T, h, tol=1e-12)
    assert limit.converged
    total = limit.U.values + free_field(datum, params, T, h).values
    lattice = march(datum, params, h, T, keep_field=True).lattice
    assert lattice is not None
    return float(np.max(np.abs(total - lattice.values)))


def test_picard_limit_matches_marcher() -> None:
    coarse_h, fine_h = 1.0 / 32.0, 1.0 / 64.0
    coarse = _oracle_gap(coarse_h)
    fine = _oracle_gap(fine_h)
    assert coarse <= 1e-6
    assert fine / fine_h <= 1.5 * coarse / coarse_h + 1e-9


def test_naive_and_incremental_iterations_agree() -> None:
    datum = make_data(Family.G_ZERO_ODD, 1.0)
    params = Params(p=2.0, a=0.0, eps=0.5)

    def gap(h: float) -> float:
        naive = iterate(datum, params, 1.0, h, naive=True)
        fast = iterate(datum, params, 1.0, h)
        return float(np.max(np.abs(naive.U.values - fast.U.values)))

    assert gap(1.0 / 32.0) <= gap(1.0 / 16.0) / 3.0 + 1e-14


def test_contraction_conditions_small_and_large_eps() -> None:
    small = contraction_conditions(1.0, 1.0, Params(p=2.0, a=1.0, eps=1e-3), 1.0)
    assert small.cond1
    assert small.cond2
    assert small.both
    large = contraction_conditions(1.0, 1.0, Params(p=2.0, a=1.0, eps=1.0), 1.0)
    assert not large.cond1
    assert not large.both


def test_contraction_conditions_need_positive_constants() -> None:
    with pytest.raises(DomainError):
        contraction_conditions(0.0, 1.0, Params(p=2.0, a=1.0, eps=1e-3), 1.0)


def test_max_contraction_time_is_the_boundary() -> None:
    params = Params(p=2.0, a=1.0, eps=1e-3)
    boundary = max_contraction_time(1.0, 1.0, params)
    assert 0.0 < boundary < math.inf
    assert contraction_conditions(1.0, 1.0, params, 0.99 * boundary).both
    assert not contraction_conditions(1.0, 1.0, params, 1.01 * boundary).both


def test_max_contraction_time_grows_as_eps_shrinks() -> None:
    times = [max_contraction_time(1.0, 1.0, Params(p=2.0, a=-1.0, eps=eps)) for eps in (1e-2, 1e-3, 1e-4)]
    assert times[0] < times[1] < times[2]


def test_max_contraction_time_zero_when_conditions_fail_at_start() -> None:
    assert max_contraction_time(1.0, 1.0, Params(p=2.0, a=1.0, eps=1.0)) == 0.0


def test_existence_time_for_zero_weight() -> None:
    times = [existence_time(1.0, 1.0, Params(p=2.0, a=0.0, eps=eps)) for eps in (1e-2, 1e-3)]
    assert 0.0 < times[0] < times[1]
    with pytest.raises(PreconditionError):
        existence_time(1.0, 1.0, Params(p=2.0, a=1.0, eps=1e-2))


def test_sufficient_conditions_for_zero_weight() -> None:
    assert sufficient_conditions_a0(1.0, 1.0, Params(p=2.0, a=0.0, eps=1e-4), 2.0) == (True, True, True)
    assert not all(sufficient_conditions_a0(1.0, 1.0, Params(p=2.0, a=0.0, eps=1.0), 2.0))
    with pytest.raises(DomainError):
        sufficient_conditions_a0(1.0, 1.0, Params(p=2.0, a=0.0, eps=1e-4), 0.5)
    with pytest.raises(PreconditionError):
        sufficient_conditions_a0(1.0, 1.0, Params(p=2.0, a=-1.0, eps=1e-4), 2.0)


def test_iterates_are_nondecreasing_for_positive_data() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    params = Params(p=2.0, a=1.0, eps=0.5)
    previous = iterate(datum, params, 2.0, 1.0 / 16.0, n_max=2, tol=0.0).U.values
    assert np.all(previous >= 0.0)
    for n_max in (3, 4, 5):
        current = iterate(datum, params, 2.0, 1.0 / 16.0, n_max=n_max, tol=0.0).U.values
        assert np.all(current >= previous - 1e-15)
        previous = current


def test_second_iterate_is_duhamel_of_free_power() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    params = Params(p=3.0, a=0.5, eps=0.4)
    T, h = 1.5, 1.0 / 16.0  # noqa: N806
    free = free_field(datum, params, T, h)
    power = free.like(np.abs(free.values) ** params.p)
    naive = iterate(datum, params, T, h, n_max=2, naive=True)
    fast = iterate(datum, params, T, h, n_max=2)
    np.testing.assert_allclose(naive.U.values, apply_La(power, params.a).values, rtol=1e-12, atol=1e-15)
    np.testing.assert_allclose(fast.U.values, apply_La_incremental(power, params.a).values, rtol=1e-12, atol=1e-15)
