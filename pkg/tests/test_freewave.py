import numpy as np
import pytest

from lifespan.data.datum import Family
from lifespan.data.families import make_data
from lifespan.errors import DomainError, PreconditionError
from lifespan.freewave import FreeWave, huygens_check


@pytest.mark.parametrize("family", list(Family))
def test_initial_level_is_f(family: Family) -> None:
    datum = make_data(family, 1.0, amp_f=0.8 if family != Family.F_POSITIVE_G_ZERO else None)
    x = np.linspace(-2.0, 2.0, 81)
    np.testing.assert_array_equal(FreeWave(datum).u0(x, 0.0), datum.f(x))


def test_plateau_of_positive_speed() -> None:
    wave = FreeWave(make_data(Family.G_POSITIVE, 1.0))
    for x, t in [(0.0, 2.0), (0.5, 3.0), (-1.0, 5.0)]:
        assert float(wave(x, t)) == pytest.approx(128.0 / 315.0, rel=1e-14)


def test_odd_speed_vanishes_inside_shifted_cone() -> None:
    wave = FreeWave(make_data(Family.G_ZERO_ODD, 1.0))
    t = 4.0
    x = np.linspace(-(t - 1.0), t - 1.0, 101)
    assert np.max(np.abs(wave(x, t))) == 0.0


@pytest.mark.parametrize("family", list(Family))
def test_finite_propagation_speed(family: Family) -> None:
    wave = FreeWave(make_data(family, 1.0))
    t = 2.5
    x = np.concatenate([np.linspace(t + 1.0 + 1e-9, 10.0, 50), -np.linspace(t + 1.0 + 1e-9, 10.0, 50)])
    assert np.max(np.abs(wave(x, t))) == 0.0


def test_even_data_give_even_wave() -> None:
    wave = FreeWave(make_data(Family.G_POSITIVE, 1.0, amp_f=0.5))
    rng = np.random.default_rng(1)
    x = rng.uniform(-4.0, 4.0, 200)
    t = rng.uniform(0.0, 3.0, 200)
    np.testing.assert_allclose(wave(-x, t), wave(x, t), rtol=0.0, atol=1e-15)


def test_odd_speed_splits_into_even_and_odd_parts() -> None:
    datum = make_data(Family.G_ZERO_ODD, 1.0, amp_f=0.5)
    wave = FreeWave(datum)
    rng = np.random.default_rng(2)
    x = rng.uniform(-4.0, 4.0, 200)
    t = rng.uniform(0.0, 3.0, 200)
    even = 0.5 * (wave(x, t) + wave(-x, t))
    np.testing.assert_allclose(even, 0.5 * (datum.f(x + t) + datum.f(x - t)), atol=1e-15)


def test_negative_time_is_rejected() -> None:
    with pytest.raises(DomainError):
        FreeWave(make_data(Family.G_POSITIVE, 1.0)).u0(0.0, -1.0)


@pytest.mark.parametrize("family", [Family.G_ZERO_ODD, Family.F_POSITIVE_G_ZERO])
@pytest.mark.parametrize("R", [1.0, 3.0])
def test_huygens_holds_for_zero_integral(family: Family, R: float) -> None:  # noqa: N803
    assert huygens_check(make_data(family, R), 10.0 * R, 10_000)


def test_huygens_needs_zero_integral() -> None:
    with pytest.raises(PreconditionError):
        huygens_check(make_data(Family.G_POSITIVE, 1.0), 10.0, 100)


def test_huygens_needs_time_beyond_radius() -> None:
    with pytest.raises(DomainError):
        huygens_check(make_data(Family.G_ZERO_ODD, 2.0), 2.0, 100)
