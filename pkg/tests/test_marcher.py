import math
from pathlib import Path

import numpy as np
import pytest

from lifespan.data.datum import Family
from lifespan.data.families import make_data
from lifespan.errors import ConfigurationError, GridMismatchError
from lifespan.freewave import FreeWave
from lifespan.marcher import (
    Nonlinearity,
    Status,
    default_threshold,
    detect_lifespan,
    extrapolate,
    march,
    nonlinear_source,
    write_dump,
)
from lifespan.model import Params


def test_default_threshold() -> None:
    assert default_threshold(0.1) == 1e6
    assert default_threshold(2.0) == 2e6


def test_nonlinear_source_forms() -> None:
    u = np.array([-2.0, 0.0, 3.0])
    k = np.array([1.0, 1.0, 0.5])
    np.testing.assert_allclose(nonlinear_source(u, k, 2.0), [4.0, 0.0, 4.5])
    np.testing.assert_allclose(nonlinear_source(u, k, 2.0, Nonlinearity.SIGNED), [-4.0, 0.0, 4.5])


def test_free_wave_mode_is_exact() -> None:
    h = 1.0 / 512.0
    datum = make_data(Family.G_POSITIVE, 1.0, amp_f=0.5)
    params = Params(p=2.0, a=1.0, eps=0.3)
    result = march(datum, params, h, 2.0, keep_field=True, source=False)
    assert result.status == Status.SURVIVED_TO_TMAX
    assert result.lattice is not None
    xx, tt = np.meshgrid(result.lattice.x, result.lattice.t, indexing="ij")
    exact = params.eps * FreeWave(datum).u0(xx, tt)
    assert float(np.max(np.abs(result.lattice.values - exact))) <= 1e-8


def test_small_data_survive() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    result = march(datum, Params(p=2.0, a=1.0, eps=1e-3), 1.0 / 32.0, 2.0)
    assert result.status == Status.SURVIVED_TO_TMAX
    assert result.t_blow is None
    assert result.t_end == pytest.approx(2.0)
    assert len(result.times) == len(result.max_abs) == 65


def test_large_data_blow_up() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    result = march(datum, Params(p=2.0, a=1.0, eps=4.0), 1.0 / 64.0, 20.0, keep_field=True)
    assert result.status == Status.BLEW_UP
    assert result.t_blow is not None
    assert result.t_blow == result.t_end
    assert result.max_abs[-1] >= result.threshold
    assert result.lattice is not None
    assert result.lattice.blowup_flag


def test_step_must_divide_final_time() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    with pytest.raises(GridMismatchError):
        march(datum, Params(p=2.0, a=1.0, eps=0.1), 0.3, 1.0)


def test_signed_power_matches_absolute_for_nonnegative_solutions() -> None:
    datum = make_data(Family.F_POSITIVE_G_ZERO, 1.0)
    params = Params(p=3.0, a=0.0, eps=0.5)
    plain = march(datum, params, 1.0 / 64.0, 2.0)
    signed = march(datum, params, 1.0 / 64.0, 2.0, nonlinearity="signed")
    np.testing.assert_allclose(plain.max_abs, signed.max_abs)


def test_signed_power_differs_for_sign_changing_solutions() -> None:
    datum = make_data(Family.G_ZERO_ODD, 1.0)
    params = Params(p=2.0, a=0.0, eps=1.0)
    plain = march(datum, params, 1.0 / 32.0, 3.0, keep_field=True).lattice
    signed = march(datum, params, 1.0 / 32.0, 3.0, keep_field=True, nonlinearity=Nonlinearity.SIGNED).lattice
    assert plain is not None
    assert signed is not None
    assert float(np.max(np.abs(plain.values - signed.values))) > 1e-6


def test_taylor_start_is_close_to_exact_start() -> None:
    h = 1.0 / 64.0
    datum = make_data(Family.G_POSITIVE, 1.0, amp_f=0.5)
    params = Params(p=2.0, a=1.0, eps=0.5)
    exact = march(datum, params, h, 1.0, keep_field=True).lattice
    taylor = march(datum, params, h, 1.0, keep_field=True, taylor_start=True).lattice
    assert exact is not None
    assert taylor is not None
    assert float(np.max(np.abs(exact.values - taylor.values))) <= 10.0 * h * h


def _solution_at(datum_family: Family, params: Params, h: float, t_star: float) -> tuple[np.ndarray, np.ndarray]:
    datum = make_data(datum_family, 1.0, amp_f=0.5 if datum_family != Family.F_POSITIVE_G_ZERO else None)
    result = march(datum, params, h, t_star, keep_field=True)
    assert result.status == Status.SURVIVED_TO_TMAX
    assert result.lattice is not None
    return result.lattice.x, result.lattice.values[:, -1]


@pytest.mark.parametrize(
    ("family", "params"),
    [
        (Family.G_POSITIVE, Params(p=2.0, a=1.0, eps=0.5)),
        (Family.G_ZERO_ODD, Params(p=2.0, a=0.0, eps=1.0)),
        (Family.F_POSITIVE_G_ZERO, Params(p=3.0, a=-1.0, eps=0.5)),
    ],
)
def test_convergence_order(family: Family, params: Params) -> None:
    t_star = 1.0
    ref_h = 1.0 / 512.0
    ref_x, ref_u = _solution_at(family, params, ref_h, t_star)
    ref_center = (len(ref_x) - 1) // 2
    errors = []
    for h in (1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0):
        x, u = _solution_at(family, params, h, t_star)
        idx = np.rint(x / ref_h).astype(int) + ref_center
        keep = (idx >= 0) & (idx < len(ref_x))
        errors.append(float(np.max(np.abs(u[keep] - ref_u[idx[keep]]))))
    orders = [math.log2(errors[0] / errors[1]), math.log2(errors[1] / errors[2])]
    for order in orders:
        assert 1.7 <= order <= 2.3


def test_extrapolate_is_linear_in_h() -> None:
    assert extrapolate((0.1, 1.1), (0.05, 1.05)) == pytest.approx(1.0)


def test_detect_lifespan_validates_grids() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    params = Params(p=2.0, a=1.0, eps=4.0)
    with pytest.raises(ConfigurationError):
        detect_lifespan(datum, params, [1.0 / 32.0])
    with pytest.raises(ConfigurationError):
        detect_lifespan(datum, params, [1.0 / 64.0, 1.0 / 32.0])


def test_detect_lifespan_for_blowing_data() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    params = Params(p=2.0, a=1.0, eps=4.0)
    report = detect_lifespan(datum, params, [1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0], t_max=20.0)
    assert report.status == Status.BLEW_UP
    assert report.T_extrapolated is not None
    finest = report.T_blow_per_grid[-1]
    assert finest is not None
    assert report.T_extrapolated == pytest.approx(finest, rel=0.1)
    assert report.family == "g-positive"


def test_detect_lifespan_for_surviving_data() -> None:
    datum = make_data(Family.G_ZERO_ODD, 1.0)
    params = Params(p=2.0, a=1.0, eps=1e-3)
    report = detect_lifespan(datum, params, [1.0 / 8.0, 1.0 / 16.0], t_max=2.0)
    assert report.status == Status.SURVIVED_TO_TMAX
    assert report.T_extrapolated is None
    assert report.T_blow_per_grid == [None, None]


def test_write_dump(tmp_path: Path) -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    result = march(datum, Params(p=2.0, a=1.0, eps=0.1), 0.25, 1.0, keep_field=True)
    assert result.lattice is not None
    nodes, series = write_dump(result, tmp_path / "run.txt")
    lines = nodes.read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(result.times) * len(result.lattice.x)
    assert len(lines[0].split()) == 3
    rows = series.read_text(encoding="utf-8").splitlines()
    assert rows[0] == "t,max_abs_u"
    assert len(rows) == len(result.times) + 1
    assert series.name == "run_max_abs.csv"


def test_write_dump_needs_field(tmp_path: Path) -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    result = march(datum, Params(p=2.0, a=1.0, eps=0.1), 0.25, 1.0)
    with pytest.raises(ConfigurationError):
        write_dump(result, tmp_path / "run.txt")


def test_lifespan_is_insensitive_to_threshold() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    params = Params(p=2.0, a=1.0, eps=0.5)
    low = march(datum, params, 1.0 / 64.0, 20.0, 1e6)
    high = march(datum, params, 1.0 / 64.0, 20.0, 1e8)
    assert low.t_blow is not None
    assert high.t_blow is not None
    assert abs(high.t_blow - low.t_blow) < 0.05 * low.t_blow


@pytest.mark.parametrize(
    ("family", "params"),
    [
        (Family.G_POSITIVE, Params(p=2.0, a=1.0, eps=0.5)),
        (Family.G_ZERO_ODD, Params(p=2.0, a=0.0, eps=1.0)),
        (Family.F_POSITIVE_G_ZERO, Params(p=3.0, a=-1.0, eps=0.5)),
    ],
)
def test_march_vanishes_outside_cone(family: Family, params: Params) -> None:
    result = march(make_data(family, 1.0), params, 1.0 / 32.0, 2.0, keep_field=True)
    assert result.lattice is not None
    xx, tt = np.meshgrid(result.lattice.x, result.lattice.t, indexing="ij")
    outside = np.abs(xx) > tt + 1.0 + 1e-9
    assert np.any(outside)
    assert np.all(result.lattice.values[outside] == 0.0)


@pytest.mark.parametrize(
    ("family", "params"),
    [
        (Family.G_POSITIVE, Params(p=2.0, a=1.0, eps=0.5)),
        (Family.F_POSITIVE_G_ZERO, Params(p=3.0, a=0.0, eps=0.5)),
    ],
)
def test_positive_data_give_nonnegative_solutions(family: Family, params: Params) -> None:
    result = march(make_data(family, 1.0), params, 1.0 / 32.0, 3.0, keep_field=True)
    assert result.lattice is not None
    assert float(np.min(result.lattice.values)) >= -1e-12


def test_zero_integral_data_live_longer() -> None:
    params = Params(p=2.0, a=1.0, eps=4.0)
    positive = march(make_data(Family.G_POSITIVE, 1.0), params, 1.0 / 32.0, 10.0)
    odd = march(make_data(Family.G_ZERO_ODD, 1.0), params, 1.0 / 32.0, 10.0)
    assert positive.t_blow is not None
    assert odd.t_blow is None or odd.t_blow > positive.t_blow


def test_disagreeing_grids_are_unreliable() -> None:
    datum = make_data(Family.G_POSITIVE, 1.0)
    params = Params(p=2.0, a=1.0, eps=0.5)
    report = detect_lifespan(datum, params, [1.0, 1.0 / 128.0], t_max=20.0)
    assert report.status == Status.BLEW_UP
    coarse, fine = report.T_blow_per_grid
    assert coarse is not None
    assert fine is not None
    assert abs(coarse - fine) > 0.2 * fine
    assert report.unreliable
