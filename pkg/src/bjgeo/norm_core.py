"""Finite-dimensional real normed spaces.

Three kinds of space are supported:

* ``lp``: the coordinate p-norm on R^n, 1 <= p <= inf;
* ``polygon``: a planar norm whose unit ball is a centrally symmetric convex
  polygon, evaluated as the Minkowski gauge of that polygon;
* ``inner_product``: the norm sqrt(x^T G x) of a symmetric positive-definite
  Gram matrix G.

Vectors and covectors are plain 1-D numpy arrays. Non-smooth support sets
are carried as the list of their extreme covectors (a segment in the planar
case), never as sampled clouds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .exceptions import DimensionError, NotUnitError

TOL = 1e-9
INF = math.inf

LP = "lp"
POLYGON = "polygon"
INNER_PRODUCT = "inner_product"

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class NormSpace:
    kind: str
    dim: int
    p: float | None = None
    vertices: tuple | None = None
    gram: tuple | None = None
    # derived arrays, filled in by __post_init__
    _V: np.ndarray = field(default=None, repr=False, compare=False)
    _F: np.ndarray = field(default=None, repr=False, compare=False)
    _angles: np.ndarray = field(default=None, repr=False, compare=False)
    _G: np.ndarray = field(default=None, repr=False, compare=False)
    _Ginv: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be a positive integer")
        if self.kind == LP:
            if self.p is None or not (self.p >= 1):
                raise ValueError(f"p must be >= 1 or inf, got {self.p!r}")
        elif self.kind == POLYGON:
            V = np.array(self.vertices, dtype=float)
            V.setflags(write=False)
            F = _edge_functionals(V)
            F.setflags(write=False)
            ang = _angles(V)
            ang.setflags(write=False)
            object.__setattr__(self, "_V", V)
            object.__setattr__(self, "_F", F)
            object.__setattr__(self, "_angles", ang)
        elif self.kind == INNER_PRODUCT:
            G = np.array(self.gram, dtype=float)
            Ginv = np.linalg.inv(G)
            G.setflags(write=False)
            Ginv.setflags(write=False)
            object.__setattr__(self, "_G", G)
            object.__setattr__(self, "_Ginv", Ginv)
        else:
            raise ValueError(f"unknown space kind {self.kind!r}")

    @property
    def is_polyhedral(self) -> bool:
        return self.kind == POLYGON or (
            self.kind == LP and self.p in (1.0, INF) and self.dim >= 2)

    @property
    def is_hilbert(self) -> bool:
        return self.kind == INNER_PRODUCT or (self.kind == LP and self.p == 2.0)

    @property
    def vertex_array(self) -> np.ndarray:
        return self._V

    @property
    def edge_functionals(self) -> np.ndarray:
        """Row i is the covector equal to 1 on the edge from vertex i to i+1."""
        return self._F

    @property
    def gram_matrix(self) -> np.ndarray:
        if self.kind == INNER_PRODUCT:
            return self._G
        if self.is_hilbert:
            return np.eye(self.dim)
        raise TypeError(f"{self.kind} space has no Gram matrix")

    def __str__(self):
        if self.kind == LP:
            p = "inf" if self.p == INF else f"{self.p:g}"
            return f"l{p}^{self.dim}"
        if self.kind == POLYGON:
            return f"polygon[{len(self.vertices)}]"
        return f"inner_product^{self.dim}"


# --- constructors ---------------------------------------------------------

def lp(p, dim: int) -> NormSpace:
    if isinstance(p, str):
        if p.lower() not in ("inf", "infinity"):
            raise ValueError(f"p must be a number >= 1 or 'inf', got {p!r}")
        p = INF
    return NormSpace(LP, int(dim), p=float(p))


def sup_norm(dim: int) -> NormSpace:
    return lp(INF, dim)


def euclidean(dim: int) -> NormSpace:
    return inner_product(np.eye(dim))


def inner_product(gram) -> NormSpace:
    G = np.array(gram, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValueError("gram must be a square matrix")
    if not np.allclose(G, G.T, rtol=0, atol=1e-12 * max(1.0, np.abs(G).max())):
        raise ValueError("gram must be symmetric")
    if np.linalg.eigvalsh(G).min() <= 0:
        raise ValueError("gram must be positive definite")
    G = 0.5 * (G + G.T)
    return NormSpace(INNER_PRODUCT, G.shape[0], gram=tuple(map(tuple, G)))


def polygon(vertices) -> NormSpace:
    """Planar norm with the given unit polygon.

    Vertices may be given in any order and need only cover one half of the
    polygon; missing antipodes are added. Vertices in the middle of an edge
    are dropped. Non-convex input is rejected.
    """
    V = _canonical_polygon(vertices)
    return NormSpace(POLYGON, 2, vertices=tuple(map(tuple, V)))


def polyhedral_as_polygon(space: NormSpace) -> NormSpace:
    """The same planar norm expressed as a polygon (identity for polygons)."""
    if space.kind == POLYGON:
        return space
    if space.kind == LP and space.dim == 2 and space.p == INF:
        return polygon([(1, 1), (-1, 1), (-1, -1), (1, -1)])
    if space.kind == LP and space.dim == 2 and space.p == 1.0:
        return polygon([(1, 0), (0, 1), (-1, 0), (0, -1)])
    raise TypeError(f"{space} is not a planar polyhedral norm")


def _angles(V):
    ang = np.arctan2(V[:, 1], V[:, 0])
    ang = np.where(ang < 0, ang + TWO_PI, ang)
    return np.where(ang >= TWO_PI - 1e-13, 0.0, ang)


def _canonical_polygon(vertices) -> np.ndarray:
    V = np.array(vertices, dtype=float)
    if V.ndim != 2 or V.shape[1] != 2 or len(V) < 2:
        raise ValueError("polygon vertices must be a list of at least two 2-vectors")
    scale = np.abs(V).max()
    if not np.all(np.isfinite(V)) or np.any(np.hypot(V[:, 0], V[:, 1]) <= 1e-12 * scale):
        raise ValueError("polygon vertices must be finite and nonzero")
    pts = [v for v in V]
    for v in V:
        if not any(np.abs(w + v).max() <= 1e-9 * scale for w in pts):
            pts.append(-v)
    P = np.array(pts)
    P = P[np.argsort(_angles(P), kind="stable")]
    keep = [P[0]]
    for v in P[1:]:
        if np.abs(v - keep[-1]).max() > 1e-12 * scale:
            keep.append(v)
    if len(keep) > 1 and np.abs(keep[-1] - keep[0]).max() <= 1e-12 * scale:
        keep.pop()
    P = np.array(keep)

    changed = True
    while changed:
        changed = False
        n = len(P)
        if n < 4:
            raise ValueError("polygon is degenerate (fewer than 4 vertices)")
        for i in range(n):
            a, b, c = P[i - 1], P[i], P[(i + 1) % n]
            cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            if abs(cross) <= 1e-12 * scale * scale:
                P = np.delete(P, i, axis=0)
                changed = True
                break
            if cross < 0:
                raise ValueError("polygon is not convex")
    n = len(P)
    if n % 2 or not np.allclose(P[n // 2:], -P[: n // 2], rtol=0, atol=1e-9 * scale):
        raise ValueError("polygon is not centrally symmetric")
    # exact antipodes
    P[n // 2:] = -P[: n // 2]
    return P


def _edge_functionals(V):
    n = len(V)
    F = np.empty_like(V)
    for i in range(n):
        A = np.array([V[i], V[(i + 1) % n]])
        F[i] = np.linalg.solve(A, np.ones(2))
    return F


# --- evaluation -------------------------------------------------------------

def _as_vector(space, x, name="x"):
    x = np.asarray(x, dtype=float)
    if x.shape != (space.dim,):
        raise DimensionError(
            f"{name} has shape {x.shape}, expected ({space.dim},) for {space}")
    return x


def norm_eval(space: NormSpace, x) -> float:
    x = _as_vector(space, x)
    if not x.any():
        return 0.0
    if space.kind == POLYGON:
        return float(space._F[_edge_index(space, x)] @ x)
    # rescale so that powers of tiny or huge coordinates neither underflow nor overflow
    s = float(np.abs(x).max())
    x = x / s
    if space.kind == LP:
        return s * float(np.linalg.norm(x, ord=space.p))
    return s * math.sqrt(max(x @ space._G @ x, 0.0))


def _edge_index(space, x):
    # the ray from the origin through x leaves the polygon through this edge
    theta = math.atan2(x[1], x[0])
    if theta < 0:
        theta += TWO_PI
    i = int(np.searchsorted(space._angles, theta, side="right")) - 1
    return i % len(space._angles)


def norms(space: NormSpace, X) -> np.ndarray:
    """Row-wise norms of an (k, dim) array."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != space.dim:
        raise DimensionError(f"expected an array of shape (k, {space.dim})")
    if space.kind != POLYGON:
        s = np.abs(X).max(axis=1)
        s = np.where(s > 0, s, 1.0)
        Xs = X / s[:, None]
        if space.kind == LP:
            return s * np.linalg.norm(Xs, ord=space.p, axis=1)
        return s * np.sqrt(np.maximum(np.einsum("ij,jk,ik->i", Xs, space._G, Xs), 0.0))
    theta = np.arctan2(X[:, 1], X[:, 0])
    theta = np.where(theta < 0, theta + TWO_PI, theta)
    idx = (np.searchsorted(space._angles, theta, side="right") - 1) % len(space._angles)
    return np.einsum("ij,ij->i", space._F[idx], X)


def dual_norm_eval(space: NormSpace, f) -> float:
    f = _as_vector(space, f, "f")
    if space.kind == POLYGON:
        return float(np.max(space._V @ f))
    s = float(np.abs(f).max())
    if s == 0.0:
        return 0.0
    return s * _dual_norm_unscaled(space, f / s)


def _dual_norm_unscaled(space, f):
    if space.kind == LP:
        p = space.p
        if p == INF:
            q = 1.0
        elif p == 1.0:
            q = INF
        else:
            q = p / (p - 1.0)
        return float(np.linalg.norm(f, ord=q))
    return math.sqrt(max(f @ space._Ginv @ f, 0.0))


def check_unit(space: NormSpace, x, tol: float = TOL) -> np.ndarray:
    x = _as_vector(space, x)
    nx = norm_eval(space, x)
    if abs(nx - 1.0) > tol:
        raise NotUnitError(f"expected a unit vector, got norm {nx!r}")
    return x


def normalize(space: NormSpace, x) -> np.ndarray:
    x = _as_vector(space, x)
    nx = norm_eval(space, x)
    if nx == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return x / nx


# --- support functionals ----------------------------------------------------

@dataclass(frozen=True)
class SupportSet:
    """Convex hull of finitely many extreme support functionals at a point.

    One extreme means the point is smooth; two describe a segment.
    """

    extremes: np.ndarray

    @property
    def is_unique(self) -> bool:
        return len(self.extremes) == 1

    @property
    def midpoint(self) -> np.ndarray:
        return self.extremes.mean(axis=0)

    def range_on(self, y) -> tuple[float, float]:
        vals = self.extremes @ np.asarray(y, dtype=float)
        return float(vals.min()), float(vals.max())

    def __len__(self):
        return len(self.extremes)


def support_functionals(space: NormSpace, x, tol: float = TOL) -> SupportSet:
    x = _as_vector(space, x)
    if not x.any():
        raise ValueError("no support functional at the zero vector")
    check_unit(space, x, tol)
    if space.kind == INNER_PRODUCT:
        f = space._G @ x / norm_eval(space, x)
        return SupportSet(f[None, :])
    if space.kind == POLYGON:
        vals = space._F @ x
        active = np.flatnonzero(vals >= 1.0 - tol)
        if len(active) == 0:
            active = np.array([int(np.argmax(vals))])
        if len(active) == 2 and active[0] == 0 and active[1] == len(vals) - 1:
            active = active[::-1]
        return SupportSet(space._F[active].copy())
    p = space.p
    if p == INF:
        active = np.flatnonzero(np.abs(x) >= 1.0 - tol)
        ext = np.zeros((len(active), space.dim))
        ext[np.arange(len(active)), active] = np.sign(x[active])
        return SupportSet(ext)
    if p == 1.0:
        zero = np.flatnonzero(np.abs(x) <= tol)
        base = np.where(np.abs(x) <= tol, 0.0, np.sign(x))
        if len(zero) == 0:
            return SupportSet(base[None, :])
        if len(zero) > 16:
            raise ValueError("support set of l1 at this point is too large to enumerate")
        ext = []
        for signs in itertools.product((1.0, -1.0), repeat=len(zero)):
            f = base.copy()
            f[zero] = signs
            ext.append(f)
        return SupportSet(np.array(ext))
    nx = norm_eval(space, x)
    f = np.sign(x) * np.abs(x / nx) ** (p - 1.0)
    return SupportSet(f[None, :])


# --- geometry classification -----------------------------------------------

class SpaceProperties(NamedTuple):
    strictly_convex: bool
    smooth: bool


def space_properties(space: NormSpace) -> SpaceProperties:
    if space.dim == 1:
        return SpaceProperties(True, True)
    if space.kind == LP:
        both = 1.0 < space.p < INF
        return SpaceProperties(both, both)
    if space.kind == POLYGON:
        return SpaceProperties(False, False)
    return SpaceProperties(True, True)


# --- sampling ---------------------------------------------------------------

def random_unit_vector(space: NormSpace, seed) -> np.ndarray:
    """Gaussian direction rescaled onto the unit sphere of ``space``."""
    rng = np.random.default_rng(seed)
    return random_unit_vectors(space, 1, rng)[0]


def random_unit_vectors(space: NormSpace, count: int, rng) -> np.ndarray:
    X = rng.standard_normal((count, space.dim))
    return X / norms(space, X)[:, None]
