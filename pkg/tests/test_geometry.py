"""Metric jets, curvature, frames, holonomy spans: frozen desk oracles."""
import numpy as np
import pytest

from lkholonomy import geometry as G
from lkholonomy import potentials as P
from lkholonomy.jetmat import jmat_max_abs, jmat_residual
from lkholonomy.jets import JetSpace, real_part


def _fc_metric(a, b, order=8):
    space = JetSpace(2, order)
    return G.metric_from_potential(P.fc_potential(space, a, b))


def test_flat_metric_everything_vanishes():
    for n in (0, 1, 3):
        space = JetSpace(n + 2, 7)
        f = P.fc_potential(space, 0.0, 0.0) + P.fun_potential(space, n, [])
        m = G.metric_from_potential(f)
        gamma = G.christoffel(m)
        assert max(jmat_max_abs(g) for g in gamma) < 1e-12
        curv = G.curvature(m, gamma)
        assert max(jmat_max_abs(c) for row in curv for c in row) < 1e-12
        hol = G.infinitesimal_holonomy(m, r_max=3)
        assert hol.algebra.dim == 0


def test_fc_huv_series_identity():
    """h_{ubar v} must equal exp(-i a u ubar - (i b / 4)(u ubar)^2)."""
    a, b = 1.0, 1.0
    m = _fc_metric(a, b)
    space = m.space
    u, ub = space.variable(1), space.conj_variable(1)
    target = (u * ub * (-1j * a) + u * u * ub * ub * (-0.25j * b)).exp()
    assert (m.h[1, 0] - target).max_abs() < 1e-12


def test_fc_christoffel_oracle():
    a, b = 1.0, 1.0
    m = _fc_metric(a, b)
    space = m.space
    u, ub = space.variable(1), space.conj_variable(1)
    gamma = G.christoffel(m)
    target = ub * (-1j * a) + u * ub * ub * (-0.5j * b)
    assert (gamma[1][0, 0] - target).max_abs() < 1e-9


def test_fc_curvature_oracle():
    a, b = 1.0, 1.0
    m = _fc_metric(a, b)
    space = m.space
    u, ub = space.variable(1), space.conj_variable(1)
    curv = G.curvature(m)
    target = space.constant(1j * a) + u * ub * (1j * b)
    assert (curv[1][1][0, 0] - target).max_abs() < 1e-9


def test_fc_second_covariant_derivative_oracle():
    a, b = 1.0, 1.0
    m = _fc_metric(a, b)
    gamma = G.christoffel(m)
    curv = G.curvature(m, gamma)
    xi = G.covariant_derivative(curv[1][1], gamma, 1, holomorphic=True)
    xi = G.covariant_derivative(xi, gamma, 1, holomorphic=False)
    from lkholonomy.jetmat import jmat_eval0
    assert abs(jmat_eval0(xi)[0, 0] - 1j * b) < 1e-9


def test_walker_inverse_equals_generic():
    for d in ((1.0, 1.0),):
        m = _fc_metric(*d)
        assert jmat_residual(G.walker_inverse(m), G.generic_inverse(m)) < 1e-10
    m2 = P.small_dim_metric("g2", order=6)
    assert jmat_residual(G.walker_inverse(m2), G.generic_inverse(m2)) < 1e-10


def test_witt_frame_gram():
    m = _fc_metric(1.0, 1.0)
    F = G.witt_frame(m)
    assert G.frame_gram_residual(m, F) < 1e-10


def test_metric_invariants():
    m = _fc_metric(1.0, 1.0)
    assert m.hermitian_residual() < 1e-12
    assert m.kahler_residual() < 1e-12
    assert m.is_walker()


def test_degenerate_potential_rejected():
    space = JetSpace(2, 4)
    # f = |v|^2 has h_{ubar v} = 0: the isotropic pairing degenerates
    f = space.variable(0) * space.conj_variable(0)
    with pytest.raises(G.DegeneracyError):
        G.metric_from_potential(f)


def test_holonomy_matches_iterated_span():
    m = _fc_metric(1.0, 1.0)
    hol = G.infinitesimal_holonomy(m, r_max=3)
    direct = G.iterated_covariant_span(m, 3)
    assert hol.algebra.dim == len(direct)


def test_ppwave_check_positive_and_negative():
    space = JetSpace(3, 8)
    z, ub = space.variable(1), space.conj_variable(2)
    phi = z * z * ub * ub + z * ub * ub * ub * 0.5
    m = G.metric_from_potential(P.ppwave_potential(space, 1, phi))
    rep = G.ppwave_check(m)
    assert rep.parallel_p and rep.is_ppwave and rep.consistent
    hol = G.infinitesimal_holonomy(m, r_max=3)
    assert hol.algebra.dim == 3  # C^1 |x iR

    bad = _fc_metric(1.0, 0.0)
    rep2 = G.ppwave_check(bad)
    assert not rep2.parallel_p and not rep2.is_ppwave


def test_insufficient_order_raises():
    m = _fc_metric(1.0, 1.0, order=4)
    with pytest.raises(Exception):
        G.infinitesimal_holonomy(m, r_max=5)
