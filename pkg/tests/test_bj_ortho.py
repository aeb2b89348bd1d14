import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from bjgeo import norm_core as nc
from bjgeo.bj_ortho import (MINUS, PLUS, DerivativePair, Hyperspace, OrthogonalityCertificate,
                            cone_membership, directional_derivatives, is_bj_orthogonal,
                            norming_point, orthogonal_hyperspace)
from bjgeo.corpus import hexagon
from bjgeo.exceptions import NotSupportingError, NotUnitError
from bjgeo.linesearch import golden_section
from bjgeo.verify import asymmetry_search, bj_violation

SQRT3 = math.sqrt(3.0)
LAMBDAS = np.linspace(-4, 4, 40_001)


def grid_orthogonal(space, x, y, slack=1e-12):
    """x ⊥_B y decided on a dense grid of lambda, no derivatives involved."""
    vals = nc.norms(space, x[None, :] + LAMBDAS[:, None] * y[None, :])
    return vals.min() >= nc.norm_eval(space, x) - slack


def test_linf_remark_pair():
    L = nc.sup_norm(2)
    assert is_bj_orthogonal(L, [1, 1], [0, 1])
    # the images under T(1,1)=(0,1), T(-1,1)=(-1,0)
    cert = is_bj_orthogonal(L, [0, 1], [-0.5, 0.5])
    assert not cert
    assert (cert.rho_minus, cert.rho_plus) == (0.5, 0.5)


def test_hexagon_derivative_interval_at_vertex():
    H = hexagon()
    d = directional_derivatives(H, [-0.5, SQRT3 / 2], [0.75, SQRT3 / 4])
    assert d.rho_minus == pytest.approx(-0.5, abs=1e-15)
    assert d.rho_plus == pytest.approx(0.5, abs=1e-15)


def test_inner_product_orthogonality_is_gram_orthogonality():
    G = np.array([[2.0, 0.5], [0.5, 1.0]])
    S = nc.inner_product(G)
    rng = np.random.default_rng(0)
    for _ in range(200):
        x, y = rng.standard_normal((2, 2))
        x = nc.normalize(S, x)
        y_perp = y - (x @ G @ y) / (x @ G @ x) * x
        assert is_bj_orthogonal(S, x, y_perp)
        assert bool(is_bj_orthogonal(S, x, y)) == (abs(x @ G @ y) <= 1e-9 * nc.norm_eval(S, y))


SPACES = [nc.lp(1, 2), nc.lp(3, 2), nc.sup_norm(2), hexagon(), nc.euclidean(2),
          nc.polygon([(2, 0), (1, 1), (0, 1.5), (-1, 1)])]


@pytest.mark.parametrize("space", SPACES, ids=str)
def test_interval_test_agrees_with_lambda_grid(space):
    rng = np.random.default_rng(1)
    checked = 0
    for _ in range(300):
        x = nc.random_unit_vectors(space, 1, rng)[0]
        if rng.uniform() < 0.5:
            f = nc.support_functionals(space, x).midpoint
            y = Hyperspace.from_normal(f).basis[0] + rng.uniform(-0.05, 0.05) * x
        else:
            y = rng.standard_normal(2)
        viol = bj_violation(space, x, y)
        if 1e-9 < viol < 1e-5:
            continue  # too close to call on the grid
        checked += 1
        assert bool(is_bj_orthogonal(space, x, y)) == grid_orthogonal(space, x, y)
    assert checked > 250


@settings(max_examples=500, deadline=None)
@given(t=st.floats(-50, 50).filter(lambda v: abs(v) > 1e-3),
       k=st.integers(0, len(SPACES) - 1), seed=st.integers(0, 2**32 - 1))
def test_homogeneity(t, k, seed):
    space = SPACES[k]
    rng = np.random.default_rng(seed)
    x = nc.random_unit_vectors(space, 1, rng)[0]
    f = nc.support_functionals(space, x).extremes[0]
    y = Hyperspace.from_normal(f).basis[0]
    assert is_bj_orthogonal(space, x, y)
    assert is_bj_orthogonal(space, x, t * y)
    assert is_bj_orthogonal(space, -x, t * y)
    z = rng.standard_normal(2)
    assert bool(is_bj_orthogonal(space, x, z)) == bool(is_bj_orthogonal(space, x, t * z))


@pytest.mark.parametrize("space", SPACES, ids=str)
def test_line_minimizer_is_zero_exactly_when_orthogonal(space):
    rng = np.random.default_rng(6)
    for _ in range(200):
        x = nc.random_unit_vectors(space, 1, rng)[0]
        f = nc.support_functionals(space, x).midpoint
        y = Hyperspace.from_normal(f).basis[0] if rng.uniform() < 0.5 else rng.standard_normal(2)
        if 1e-9 < bj_violation(space, x, y) < 1e-4:
            continue
        c = is_bj_orthogonal(space, x, y)
        assert (c.lambda_star == 0.0) == bool(c)
        if c:
            assert c.min_value == pytest.approx(1.0, abs=1e-7)
        else:
            assert c.min_value < 1.0


def test_zero_direction_is_orthogonal():
    assert is_bj_orthogonal(hexagon(), [1, 0], [0, 0])


def test_cones():
    L = nc.sup_norm(2)
    x = np.array([1.0, 1.0])
    # ||(1+t, 1-t)|| = 1+|t|: both cones
    assert cone_membership(L, x, [1, -1], PLUS)
    assert cone_membership(L, x, [1, -1], MINUS)
    # along (-1,-1) the norm decreases for t > 0
    assert not cone_membership(L, x, [-1, -1], PLUS)
    assert cone_membership(L, x, [-1, -1], MINUS)
    with pytest.raises(ValueError):
        cone_membership(L, x, [1, 0], "both")


@pytest.mark.parametrize("space", SPACES, ids=str)
def test_cones_against_grid(space):
    rng = np.random.default_rng(3)
    for _ in range(100):
        x = nc.random_unit_vectors(space, 1, rng)[0]
        y = rng.standard_normal(2)
        d = directional_derivatives(space, x, y)
        if min(abs(d.rho_plus), abs(d.rho_minus)) < 1e-5:
            continue
        t = np.linspace(1e-7, 1e-4, 50)
        up = nc.norms(space, x + t[:, None] * y).min() >= 1 - 1e-13
        down = nc.norms(space, x - t[:, None] * y).min() >= 1 - 1e-13
        assert cone_membership(space, x, y, PLUS) == up
        assert cone_membership(space, x, y, MINUS) == down


def test_hexagon_orthogonality_is_symmetric():
    """The regular hexagon is a Radon plane: x ⊥_B y forces y ⊥_B x."""
    H = hexagon()
    rng = np.random.default_rng(4)
    for _ in range(500):
        x = nc.random_unit_vectors(H, 1, rng)[0]
        f = rng.dirichlet(np.ones(len(nc.support_functionals(H, x)))) @ nc.support_functionals(H, x).extremes
        y = Hyperspace.from_normal(f).basis[0]
        assert is_bj_orthogonal(H, x, y)
        assert is_bj_orthogonal(H, y, x)


def test_asymmetry_witness_in_linf():
    found = asymmetry_search(nc.sup_norm(2), 100, seed=0)
    assert found is not None
    x, y, _ = found
    L = nc.sup_norm(2)
    assert grid_orthogonal(L, x, y) and not grid_orthogonal(L, y, x)


def test_orthogonal_hyperspace():
    H = hexagon()
    rng = np.random.default_rng(5)
    for x in nc.random_unit_vectors(H, 50, rng):
        Hx = orthogonal_hyperspace(H, x)
        for h in Hx.basis:
            assert is_bj_orthogonal(H, x, h)
    hx = orthogonal_hyperspace(nc.sup_norm(2), [1, 1], selector=[1, 0])
    assert np.allclose(np.abs(hx.basis), [[0, 1]])
    with pytest.raises(NotSupportingError):
        orthogonal_hyperspace(nc.sup_norm(2), [1, 1], selector=[0.5, 0.6])
    with pytest.raises(NotUnitError):
        orthogonal_hyperspace(H, [2, 0])


def test_hyperspace_construction():
    h = Hyperspace.from_normal([1.0, 2.0, 3.0])
    assert h.dim == 2
    assert np.allclose(h.basis @ [1, 2, 3], 0)
    assert h.contains([3, 0, -1]) and not h.contains([1, 0, 0])
    g = Hyperspace.from_basis(h.basis)
    assert np.allclose(np.cross(g.normal, [1, 2, 3]), 0)
    with pytest.raises(ValueError):
        Hyperspace.from_normal([0, 0])


def test_norming_points():
    assert np.allclose(norming_point(hexagon(), [0, 2 / SQRT3]), [0.5, SQRT3 / 2])
    assert np.allclose(norming_point(nc.sup_norm(2), [1, 0]), [1, 1])
    assert np.allclose(norming_point(nc.lp(1, 2), [1, -1]), [1, 0])
    L3 = nc.lp(3, 2)
    f = np.array([1.0, -1.0])
    x = norming_point(L3, f)
    assert f @ x == pytest.approx(nc.dual_norm_eval(L3, f), rel=1e-14)
    assert np.allclose(x, np.array([1, -1]) / 2 ** (1 / 3))
    G = nc.inner_product([[2.0, 0.5], [0.5, 1.0]])
    x = norming_point(G, [1.0, 0.3])
    assert nc.norm_eval(G, x) == pytest.approx(1.0)
    assert np.array([1.0, 0.3]) @ x == pytest.approx(nc.dual_norm_eval(G, [1.0, 0.3]))


def test_certificate_round_trip_and_validation():
    c = is_bj_orthogonal(nc.sup_norm(2), [1, 1], [0, 1])
    assert OrthogonalityCertificate.from_dict(c.to_dict()) == c
    with pytest.raises(ValueError):
        DerivativePair(1.0, 0.0)


@pytest.mark.parametrize("f, lo, hi", [
    (lambda t: (t - 0.3) ** 2, -2.0, 2.0),
    (lambda t: abs(t + 1.25) + 0.1 * t * t, -3.0, 1.0),
    (lambda t: math.cosh(t - 0.7), -1.0, 4.0),
])
def test_golden_section_against_scipy(f, lo, hi):
    t, v = golden_section(f, lo, hi)
    ref = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    assert v <= ref.fun + 1e-12
    assert t == pytest.approx(ref.x, abs=1e-5)


def test_golden_section_endpoint_minimum():
    t, v = golden_section(lambda s: s, -1.0, 2.0)
    assert (t, v) == (-1.0, -1.0)
    t, v = golden_section(lambda s: -s, -1.0, 2.0)
    assert (t, v) == (2.0, -2.0)
