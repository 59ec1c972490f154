import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from chargetomo.core import (
    CoherentLabel,
    FockLabel,
    Grid1D,
    Grid2D,
    InvalidArgumentError,
    SymplecticFrame,
    TwoModeFrame,
    optical_frame,
    orbit_center,
    rescale_frame,
    rescale_two_mode,
)

finite = st.floats(-50, 50, allow_nan=False)
nonzero = st.floats(0.01, 50) | st.floats(-50, -0.01)


def test_zero_frame_rejected():
    with pytest.raises(InvalidArgumentError):
        SymplecticFrame(0.0, 0.0)


@pytest.mark.parametrize("bad", [math.nan, math.inf])
def test_nonfinite_frame_rejected(bad):
    with pytest.raises(InvalidArgumentError):
        SymplecticFrame(bad, 1.0)


def test_optical_frame_unit_scale():
    f = optical_frame(0.3, 2.0)
    assert f.f1.scale == pytest.approx(1.0)
    assert f.f2.mu == pytest.approx(math.cos(2.0))


def test_ground_state_variance_law():
    assert SymplecticFrame(1.0, 0.0).quadrature_variance == 1.0
    assert SymplecticFrame(0.0, 1.0).quadrature_variance == 0.25


@given(finite, finite, nonzero)
def test_rescale_roundtrip(mu, nu, lam):
    if mu == 0 and nu == 0:
        return
    f = SymplecticFrame(mu, nu)
    g = rescale_frame(1 / lam, rescale_frame(lam, f))
    assert g.mu == pytest.approx(mu, abs=1e-9)
    assert g.nu == pytest.approx(nu, abs=1e-9)


@given(st.floats(0.1, 5), st.floats(0, 2 * math.pi), nonzero)
def test_rescale_scales_variance(r, th, lam):
    f = SymplecticFrame(r * math.cos(th), r * math.sin(th))
    assert rescale_frame(lam, f).quadrature_variance == pytest.approx(lam ** 2 * f.quadrature_variance)


def test_rescale_by_zero_rejected():
    with pytest.raises(InvalidArgumentError):
        rescale_two_mode(0.0, optical_frame(0, 0))


def test_fock_label_validation():
    assert FockLabel(2, 3).total == 5
    with pytest.raises(InvalidArgumentError):
        FockLabel(-1, 0)
    with pytest.raises(InvalidArgumentError):
        FockLabel(1.5, 0)


def test_coherent_label_rejects_nan():
    with pytest.raises(InvalidArgumentError):
        CoherentLabel(complex(math.nan, 0), 0)


def test_orbit_center_from_beta():
    x0, y0 = orbit_center(CoherentLabel(0, (1 - 2j) / math.sqrt(2)))
    assert (x0, y0) == pytest.approx((1.0, 2.0))


def test_grid_points_and_spacing():
    g = Grid1D(-1, 1, 5)
    np.testing.assert_allclose(g.points, [-1, -0.5, 0, 0.5, 1])
    assert g.spacing == 0.5
    assert g.refined().spacing == 0.25


@pytest.mark.parametrize("args", [(1, 0, 5), (0, 1, 1), (0, math.inf, 3)])
def test_bad_grids(args):
    with pytest.raises(InvalidArgumentError):
        Grid1D(*args)


def test_grid2d_mesh_orientation():
    g = Grid2D(Grid1D(0, 1, 2), Grid1D(0, 2, 3))
    x, y = g.mesh()
    assert x.shape == (2, 3)
    assert x[1, 0] == 1 and y[0, 2] == 2
    assert g.cell_area == 1.0


def test_two_mode_as_dict():
    d = TwoModeFrame.from_values(1, 2, 3, 4).as_dict()
    assert d == {"mu1": 1.0, "nu1": 2.0, "mu2": 3.0, "nu2": 4.0}
