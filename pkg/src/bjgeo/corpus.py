"""Named example spaces and operators, plus seeded random generators."""

from __future__ import annotations

import math

import numpy as np

from . import norm_core as nc
from .attain import Operator

SQRT3 = math.sqrt(3.0)


def hexagon() -> nc.NormSpace:
    """Regular hexagon with vertices at angles k*pi/3."""
    return nc.polygon([(1.0, 0.0), (0.5, SQRT3 / 2), (-0.5, SQRT3 / 2)])


def hexagon_projection() -> Operator:
    H = hexagon()
    return Operator(np.diag([1.0, 0.0]), H, H)


def hexagon_rotation() -> Operator:
    """(sqrt(3)/2) times rotation by 30 degrees: vertices go to edge midpoints."""
    H = hexagon()
    A = np.array([[0.75, -SQRT3 / 4], [SQRT3 / 4, 0.75]])
    return Operator(A, H, H)


def linf_rotation() -> Operator:
    """T(1,1) = (0,1), T(-1,1) = (-1,0) on the plane with the max norm."""
    X = nc.sup_norm(2)
    return Operator(np.array([[0.5, -0.5], [0.5, 0.5]]), X, X)


def linf_projection() -> Operator:
    X = nc.sup_norm(2)
    return Operator(np.diag([1.0, 0.0]), X, X)


def example_corpus() -> dict:
    """Fixed operators covering every space kind and solver path."""
    E2, E3 = nc.euclidean(2), nc.euclidean(3)
    G = nc.inner_product([[2.0, 0.5], [0.5, 1.0]])
    L3, L4 = nc.lp(3, 2), nc.lp(4, 2)
    L33 = nc.lp(3, 3)
    L1 = nc.lp(1, 2)
    Linf = nc.sup_norm(2)
    H = hexagon()
    return {
        "hexagon-projection": hexagon_projection(),
        "hexagon-rotation": hexagon_rotation(),
        "linf-rotation": linf_rotation(),
        "linf-projection": linf_projection(),
        "euclid-diag-2-1": Operator(np.diag([2.0, 1.0]), E2, E2),
        "euclid-diag-3-1-1": Operator(np.diag([3.0, 1.0, 1.0]), E3, E3),
        "gram-shear": Operator([[1.0, 2.0], [0.0, 1.0]], G, G),
        "l3-diag-2-1": Operator(np.diag([2.0, 1.0]), L3, L3),
        "l4-shear": Operator([[1.0, 1.0], [0.0, 1.0]], L4, L4),
        "l1-mix": Operator([[2.0, 1.0], [1.0, 3.0]], L1, L1),
        "hexagon-to-euclid": Operator([[1.0, 0.5], [0.2, 0.8]], H, E2),
        "l3-to-linf": Operator([[1.0, 0.4], [-0.3, 0.9]], L3, Linf),
        "l3-3d": Operator([[2.0, 0.3, 0.0], [0.1, 1.0, 0.2], [0.0, 0.4, 1.5]], L33, L33),
    }


# --- random generators -------------------------------------------------------

def random_gram(rng, n: int) -> np.ndarray:
    B = rng.standard_normal((n, n))
    G = B.T @ B / n + 0.5 * np.eye(n)
    return 0.5 * (G + G.T)


def random_inner_product_space(rng, n: int) -> nc.NormSpace:
    return nc.inner_product(random_gram(rng, n))


def random_operator(rng, domain: nc.NormSpace, codomain: nc.NormSpace | None = None) -> Operator:
    codomain = domain if codomain is None else codomain
    return Operator(rng.standard_normal((codomain.dim, domain.dim)), domain, codomain)


def random_orthogonal(rng, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def clustered_operator(rng, space: nc.NormSpace, spectrum) -> Operator:
    """Q^T D Q in the whitened coordinates of an inner-product space, so that
    T*T has eigenvalues spectrum**2 with the given repetitions."""
    n = space.dim
    Q = random_orthogonal(rng, n)
    M = Q.T @ np.diag(np.asarray(spectrum, dtype=float)) @ Q
    L = np.linalg.cholesky(space.gram_matrix)
    # ||T x||_G = ||L^T T x|| and ||x||_G = ||L^T x||, so T = L^-T M L^T
    A = np.linalg.solve(L.T, M @ L.T)
    return Operator(A, space, space)
