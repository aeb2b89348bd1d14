import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from shapely.geometry import LineString, Polygon

from bjgeo import norm_core as nc
from bjgeo.corpus import hexagon
from bjgeo.exceptions import DimensionError, NotUnitError

SQRT3 = math.sqrt(3.0)

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
vec2 = arrays(np.float64, (2,), elements=finite)
vec3 = arrays(np.float64, (3,), elements=finite)

SPACES_2D = [
    nc.euclidean(2),
    nc.inner_product([[2.0, 0.5], [0.5, 1.0]]),
    nc.lp(1, 2),
    nc.lp(3, 2),
    nc.lp(4.5, 2),
    nc.sup_norm(2),
    hexagon(),
    nc.polygon([(2, 0), (1, 1), (0, 1.5), (-1, 1)]),
]


def shapely_gauge(space, x):
    """Gauge by intersecting the ray through x with the polygon boundary."""
    poly = Polygon(space.vertex_array)
    far = 1e3 * x / np.linalg.norm(x)
    hit = LineString([(0, 0), tuple(far)]).intersection(poly.exterior)
    pts = np.array(hit.coords) if hit.geom_type == "Point" else np.array(
        [c for g in hit.geoms for c in g.coords])
    r = np.linalg.norm(pts, axis=1).max()
    return np.linalg.norm(x) / r


@pytest.mark.parametrize("space", [hexagon(), nc.polygon([(2, 0), (1, 1), (0, 1.5), (-1, 1)]),
                                   nc.polyhedral_as_polygon(nc.sup_norm(2))])
def test_polygon_gauge_matches_shapely(space):
    rng = np.random.default_rng(0)
    X = rng.standard_normal((1000, 2)) * rng.uniform(0.1, 10, size=(1000, 1))
    expected = np.array([shapely_gauge(space, x) for x in X])
    assert np.allclose(nc.norms(space, X), expected, rtol=1e-12, atol=0)
    assert np.allclose([nc.norm_eval(space, x) for x in X[:50]], expected[:50], rtol=1e-12)


def test_hexagon_vertices_and_edge_functionals():
    H = hexagon()
    V = H.vertex_array
    assert len(V) == 6
    for k, v in enumerate(V):
        assert np.allclose(v, [math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)])
        assert nc.norm_eval(H, v) == pytest.approx(1.0, abs=1e-15)
    # the top edge is y = sqrt(3)/2, whose functional is (0, 2/sqrt(3))
    assert any(np.allclose(f, [0, 2 / SQRT3]) for f in H.edge_functionals)
    assert nc.norm_eval(H, [0, SQRT3 / 2]) == pytest.approx(1.0, abs=1e-15)


def test_polygon_canonicalization():
    full = nc.polygon([(1, 1), (-1, 1), (-1, -1), (1, -1)])
    half = nc.polygon([(-1, 1), (1, 1)])
    with_midpoint = nc.polygon([(1, 1), (0, 1), (-1, 1)])
    assert full == half == with_midpoint
    V = full.vertex_array
    assert np.allclose(V[2:], -V[:2])
    with pytest.raises(ValueError):
        nc.polygon([(1, 0), (0.2, 0.2), (0, 1)])


def test_lp_matches_numpy():
    rng = np.random.default_rng(1)
    X = rng.standard_normal((200, 4))
    for p in (1, 1.5, 2, 3, 7):
        S = nc.lp(p, 4)
        assert np.allclose(nc.norms(S, X), np.linalg.norm(X, ord=p, axis=1), rtol=1e-13)
    S = nc.sup_norm(4)
    assert np.allclose(nc.norms(S, X), np.abs(X).max(axis=1))


def test_inner_product_norm():
    G = np.array([[2.0, 0.5], [0.5, 1.0]])
    S = nc.inner_product(G)
    x = np.array([0.3, -1.2])
    assert nc.norm_eval(S, x) == pytest.approx(math.sqrt(x @ G @ x), rel=1e-15)
    with pytest.raises(ValueError):
        nc.inner_product([[1, 2], [2, 1]])
    with pytest.raises(ValueError):
        nc.inner_product([[1, 0.1], [0, 1]])


@pytest.mark.parametrize("space", SPACES_2D, ids=str)
@settings(max_examples=200, deadline=None)
@given(x=vec2, y=vec2, t=finite)
def test_norm_axioms(space, x, y, t):
    nx, ny = nc.norm_eval(space, x), nc.norm_eval(space, y)
    assert nc.norm_eval(space, t * x) == pytest.approx(abs(t) * nx, rel=1e-12, abs=1e-300)
    assert nc.norm_eval(space, x + y) <= nx + ny + 1e-12 * (nx + ny)
    assert nx >= 0 and (nx > 0) == bool(np.any(x))


@pytest.mark.parametrize("space", SPACES_2D, ids=str)
def test_dual_norm_against_sampling(space):
    rng = np.random.default_rng(2)
    ang = np.linspace(0, 2 * np.pi, 200_000, endpoint=False)
    U = np.column_stack([np.cos(ang), np.sin(ang)])
    U /= nc.norms(space, U)[:, None]
    for f in rng.standard_normal((10, 2)):
        sampled = (U @ f).max()
        exact = nc.dual_norm_eval(space, f)
        assert sampled <= exact + 1e-12
        # corners are missed by O(grid step) on polygons
        assert exact == pytest.approx(sampled, rel=1e-4)


@pytest.mark.parametrize("space", SPACES_2D + [nc.lp(3, 3), nc.sup_norm(3), nc.lp(1, 3)], ids=str)
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_support_functionals_support(space, data):
    x = data.draw(vec2 if space.dim == 2 else vec3)
    if not np.any(np.abs(x) > 1e-6):
        return
    u = nc.normalize(space, x)
    S = nc.support_functionals(space, u)
    for f in S.extremes:
        assert f @ u == pytest.approx(1.0, abs=1e-9)
        assert nc.dual_norm_eval(space, f) == pytest.approx(1.0, abs=1e-9)
    assert nc.dual_norm_eval(space, S.midpoint) <= 1 + 1e-9


def test_support_sets_at_corners():
    H = hexagon()
    S = nc.support_functionals(H, [0.5, SQRT3 / 2])
    assert len(S) == 2
    assert sorted(map(tuple, np.round(S.extremes, 12))) == sorted(
        [(1.0, round(1 / SQRT3, 12)), (0.0, round(2 / SQRT3, 12))])
    assert nc.support_functionals(H, [0, SQRT3 / 2]).is_unique
    L = nc.sup_norm(2)
    assert len(nc.support_functionals(L, [1, 1])) == 2
    assert np.allclose(nc.support_functionals(L, [1, 0.3]).extremes, [[1, 0]])
    assert len(nc.support_functionals(nc.lp(1, 3), [1, 0, 0])) == 4


def test_space_properties():
    assert nc.space_properties(nc.lp(3, 2)) == (True, True)
    assert nc.space_properties(nc.euclidean(4)) == (True, True)
    assert nc.space_properties(nc.sup_norm(2)) == (False, False)
    assert nc.space_properties(nc.lp(1, 3)) == (False, False)
    assert nc.space_properties(hexagon()) == (False, False)


def test_errors():
    H = hexagon()
    with pytest.raises(DimensionError):
        nc.norm_eval(H, [1, 2, 3])
    with pytest.raises(NotUnitError):
        nc.check_unit(H, [2, 0])
    with pytest.raises(ValueError):
        nc.normalize(H, [0, 0])
    with pytest.raises(ValueError):
        nc.lp(0.5, 2)


def test_random_unit_vectors_are_unit_and_seeded():
    for space in SPACES_2D:
        a = nc.random_unit_vector(space, 7)
        assert nc.norm_eval(space, a) == pytest.approx(1.0, abs=1e-14)
        assert np.array_equal(a, nc.random_unit_vector(space, 7))
