"""Operator norm, minimum norm, and the sets M_T and m_T where they are attained.

``solve`` dispatches on the domain:

* inner-product domain and codomain: exact, via the SVD of the Gram-whitened
  matrix (``attain_hilbert``);
* planar polyhedral domain: exact vertex scan for the maximum, golden-section
  search along each edge for the minimum (``attain_polygon``);
* smooth domain otherwise (lp with 1 < p < inf, or inner product into a
  non-Hilbert codomain): multi-start search on the sphere, flagged
  approximate (``attain_lp``).

For the minimum of a non-injective operator the answer is exact in every
space: m(T) = 0 and m_T is the unit sphere of ker T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import brentq, least_squares, minimize

from . import norm_core as nc
from .exceptions import DimensionError, SolverError, UnsupportedError
from .linesearch import golden_section
from .norm_core import TOL, NormSpace

MAX = "max"
MIN = "min"

WHOLE_SPHERE = "whole_sphere"
SUBSPACE_SPHERE = "subspace_sphere"
FINITE_PAIRS = "finite_pairs"
SEGMENTS = "segments"
FORMS = (WHOLE_SPHERE, SUBSPACE_SPHERE, FINITE_PAIRS, SEGMENTS)

EIG_RELTOL = 1e-8
CLUSTER_RADIUS = 1e-6
# Euclidean coordinate distance used when matching points of attainment sets
POSITION_TOL = 1e-6


def _check_mode(mode):
    if mode not in (MAX, MIN):
        raise ValueError(f"mode must be 'max' or 'min', got {mode!r}")


@dataclass(frozen=True, eq=False)
class Operator:
    matrix: np.ndarray
    domain: NormSpace
    codomain: NormSpace

    def __post_init__(self):
        A = np.array(self.matrix, dtype=float)
        if A.ndim != 2 or A.shape != (self.codomain.dim, self.domain.dim):
            raise DimensionError(
                f"matrix has shape {A.shape}, expected "
                f"({self.codomain.dim}, {self.domain.dim})")
        A.setflags(write=False)
        object.__setattr__(self, "matrix", A)

    def __call__(self, x):
        return self.matrix @ np.asarray(x, dtype=float)

    def image_norm(self, x) -> float:
        return nc.norm_eval(self.codomain, self(x))

    def image_norms(self, X) -> np.ndarray:
        return nc.norms(self.codomain, np.asarray(X, dtype=float) @ self.matrix.T)

    def scaled(self, t) -> "Operator":
        return Operator(t * self.matrix, self.domain, self.codomain)

    @property
    def is_zero(self) -> bool:
        return not self.matrix.any()

    def __eq__(self, other):
        return (isinstance(other, Operator) and self.domain == other.domain
                and self.codomain == other.codomain
                and np.array_equal(self.matrix, other.matrix))

    __hash__ = None


def canonical_sign(v) -> np.ndarray:
    """The member of {v, -v} whose last nonzero coordinate is positive."""
    v = np.asarray(v, dtype=float)
    scale = np.abs(v).max()
    nz = np.flatnonzero(np.abs(v) > 1e-12 * scale)
    if len(nz) and v[nz[-1]] < 0:
        v = -v
    return v + 0.0  # no negative zeros


@dataclass(frozen=True, eq=False)
class AttainmentSet:
    """Symbolic description of M_T (mode max) or m_T (mode min).

    ``points`` holds one representative per antipodal pair of isolated
    members. ``segments`` holds one representative per antipodal pair of
    boundary segments (each an endpoint pair). ``basis`` spans the subspace
    whose unit sphere is the set, for the subspace form.
    """

    form: str
    value: float
    mode: str
    dim: int
    points: np.ndarray = None
    segments: np.ndarray = None
    basis: np.ndarray = None
    approximate: bool = False
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.form not in FORMS:
            raise ValueError(f"unknown form {self.form!r}")
        n = self.dim
        pts = np.zeros((0, n)) if self.points is None else np.array(self.points, dtype=float).reshape(-1, n)
        segs = np.zeros((0, 2, n)) if self.segments is None else np.array(self.segments, dtype=float).reshape(-1, 2, n)
        basis = np.zeros((0, n)) if self.basis is None else np.array(self.basis, dtype=float).reshape(-1, n)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "value", float(self.value))

    # -- queries ---------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.form == FINITE_PAIRS

    def count(self) -> float:
        """Number of points in the set (inf unless it is finite)."""
        if self.is_finite:
            return 2 * len(self.points)
        if self.form == SUBSPACE_SPHERE and len(self.basis) == 1:
            return 2
        return math.inf

    def subspace_dim(self) -> int | None:
        """Dimension of the subspace whose sphere this is, if it is one."""
        if self.form == WHOLE_SPHERE:
            return self.dim
        if self.form == SUBSPACE_SPHERE:
            return len(self.basis)
        if self.form == FINITE_PAIRS and len(self.points) == 1:
            return 1
        return None

    def members(self, space: NormSpace | None = None) -> np.ndarray:
        """Representative unit members: isolated points, segment endpoints
        and midpoints, subspace basis vectors. Antipodes are implied."""
        out = list(self.points)
        for a, b in self.segments:
            mid = 0.5 * (a + b)
            if space is not None:
                mid = nc.normalize(space, mid)
            out.extend([a, mid, b])
        if self.form == SUBSPACE_SPHERE:
            out.extend(self.basis)
        if self.form == WHOLE_SPHERE:
            eye = np.eye(self.dim)
            out.extend(eye if space is None else [nc.normalize(space, e) for e in eye])
        return np.array(out).reshape(-1, self.dim)

    def contains(self, x, tol: float = POSITION_TOL) -> bool:
        """Membership of a unit vector, up to Euclidean coordinate distance ``tol``."""
        x = np.asarray(x, dtype=float)
        if self.form == WHOLE_SPHERE:
            return True
        if self.form == SUBSPACE_SPHERE:
            coef, *_ = np.linalg.lstsq(self.basis.T, x, rcond=None)
            return np.linalg.norm(self.basis.T @ coef - x) <= tol
        for r in self.points:
            if min(np.linalg.norm(x - r), np.linalg.norm(x + r)) <= tol:
                return True
        for a, b in self.segments:
            for s in (1.0, -1.0):
                if _on_segment(s * x, a, b, tol):
                    return True
        return False

    def to_dict(self) -> dict:
        d = {"form": self.form, "mode": self.mode, "value": self.value,
             "dim": self.dim, "approximate": self.approximate}
        if len(self.points):
            d["points"] = self.points.tolist()
            d["members"] = [v for r in self.points.tolist() for v in (r, [-c for c in r])]
        if len(self.segments):
            d["segments"] = self.segments.tolist()
        if len(self.basis):
            d["basis"] = self.basis.tolist()
        if self.info:
            d["info"] = self.info
        return d

    @classmethod
    def from_dict(cls, d) -> "AttainmentSet":
        return cls(d["form"], d["value"], d["mode"], int(d["dim"]),
                   points=d.get("points"), segments=d.get("segments"),
                   basis=d.get("basis"), approximate=bool(d.get("approximate", False)),
                   info=dict(d.get("info", {})))


def _on_segment(x, a, b, tol):
    d = b - a
    t = float(np.clip((x - a) @ d / (d @ d), 0.0, 1.0))
    return np.linalg.norm(a + t * d - x) <= tol


def _subspace_as_pairs(s: AttainmentSet):
    """Rewrite a one-dimensional subspace sphere as a single antipodal pair."""
    if s.form == SUBSPACE_SPHERE and len(s.basis) == 1:
        return FINITE_PAIRS, s.basis / np.linalg.norm(s.basis)
    if s.form == FINITE_PAIRS:
        return FINITE_PAIRS, s.points / np.linalg.norm(s.points, axis=1)[:, None]
    return s.form, None


def same_set(A: AttainmentSet, B: AttainmentSet, tol: float = POSITION_TOL) -> bool:
    """Symbolic equality of two attainment sets (values are not compared).

    Points are compared by direction, so a one-dimensional subspace sphere
    equals the finite pair spanning it regardless of normalization.
    """
    fa, pa = _subspace_as_pairs(A)
    fb, pb = _subspace_as_pairs(B)
    if fa != fb:
        whole = {WHOLE_SPHERE, SUBSPACE_SPHERE}
        if {fa, fb} <= whole:
            return A.subspace_dim() == B.subspace_dim()
        return False
    if fa == WHOLE_SPHERE:
        return True
    if fa == FINITE_PAIRS:
        if len(pa) != len(pb):
            return False
        return all(min(min(np.linalg.norm(p - q), np.linalg.norm(p + q)) for q in pb) <= tol
                   for p in pa)
    if fa == SUBSPACE_SPHERE:
        if len(A.basis) != len(B.basis):
            return False
        coef, *_ = np.linalg.lstsq(A.basis.T, B.basis.T, rcond=None)
        return np.linalg.norm(A.basis.T @ coef - B.basis.T) <= tol
    if len(A.segments) != len(B.segments) or len(A.points) != len(B.points):
        return False
    for a, b in A.segments:
        if not any(all(_on_segment(s * e, c, d, tol) for e in (a, b))
                   for c, d in B.segments for s in (1.0, -1.0)):
            return False
    return all(B.contains(p, tol) for p in A.points)


# --- dispatch ---------------------------------------------------------------

def solve(T: Operator, mode: str, tol: float = TOL, restarts: int = 32, seed: int = 0) -> AttainmentSet:
    """Compute ||T|| and M_T (``mode="max"``) or m(T) and m_T (``mode="min"``)."""
    _check_mode(mode)
    n = T.domain.dim
    if T.is_zero:
        return AttainmentSet(WHOLE_SPHERE, 0.0, mode, n, info={"method": "zero"})
    if T.domain.is_hilbert and T.codomain.is_hilbert:
        return attain_hilbert(T, mode)
    if mode == MIN:
        K = null_space(T.matrix)
        if K.shape[1]:
            return _kernel_set(T, K)
    if T.domain.is_polyhedral:
        if n != 2:
            raise UnsupportedError(f"attainment sets on {T.domain} are only implemented in dimension 2")
        return attain_polygon(T, mode, tol)
    return attain_lp(T, mode, restarts=restarts, seed=seed, tol=tol)


def _kernel_set(T, K):
    n = T.domain.dim
    B = np.array([canonical_sign(nc.normalize(T.domain, k)) for k in K.T])
    info = {"method": "kernel"}
    if len(B) == n:
        return AttainmentSet(WHOLE_SPHERE, 0.0, MIN, n, info=info)
    if len(B) == 1:
        return AttainmentSet(FINITE_PAIRS, 0.0, MIN, n, points=B, info=info)
    return AttainmentSet(SUBSPACE_SPHERE, 0.0, MIN, n, basis=B, info=info)


# --- Hilbert spaces ---------------------------------------------------------

def whitened_matrix(T: Operator):
    """(M, Lx) with ||T x||_Y = ||M Lx^T x||_2 and ||x||_X = ||Lx^T x||_2."""
    Lx = np.linalg.cholesky(T.domain.gram_matrix)
    Ly = np.linalg.cholesky(T.codomain.gram_matrix)
    M = np.linalg.solve(Lx, (Ly.T @ T.matrix).T).T
    return M, Lx


def attain_hilbert(T: Operator, mode: str, reltol: float = EIG_RELTOL) -> AttainmentSet:
    """Extreme singular value of T and its right singular subspace.

    The squared singular values are the eigenvalues of T*T (adjoint taken
    with respect to both Gram matrices); eigenvalues within ``reltol`` of
    the extreme one (relative to the largest) count as equal.
    """
    _check_mode(mode)
    if not (T.domain.is_hilbert and T.codomain.is_hilbert):
        raise TypeError("attain_hilbert needs inner-product domain and codomain")
    n = T.domain.dim
    M, Lx = whitened_matrix(T)
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    s = np.concatenate([s, np.zeros(n - len(s))])
    lam = s * s
    k = int(np.argmax(lam) if mode == MAX else np.argmin(lam))
    cluster = np.abs(lam - lam[k]) <= reltol * lam.max()
    value = float(s[k])
    info = {"method": "svd", "eigenvalues": sorted(lam.tolist())}
    if cluster.all():
        return AttainmentSet(WHOLE_SPHERE, value, mode, n, info=info)
    W = Vh[cluster]
    X = np.linalg.solve(Lx.T, W.T).T
    X = np.array([canonical_sign(x) for x in X])
    return AttainmentSet(SUBSPACE_SPHERE, value, mode, n, basis=X, info=info)


# --- planar polyhedral domain -----------------------------------------------

def attain_polygon(T: Operator, mode: str, tol: float = TOL) -> AttainmentSet:
    _check_mode(mode)
    P = nc.polyhedral_as_polygon(T.domain)
    V = P.vertex_array
    n = len(V)
    h = n // 2
    A = T.matrix
    Y = T.codomain

    def g(x):
        return nc.norm_eval(Y, A @ x)

    if mode == MAX:
        vals = T.image_norms(V[:h])
        best = float(vals.max())
        thr = tol * max(1.0, best)
        att = vals >= best - thr
        segs, on_seg = [], set()
        for i in range(h):
            j = (i + 1) % h
            if att[i] and att[j]:
                a, b = V[i], V[i + 1]
                if g(0.5 * (a + b)) >= best - thr:
                    segs.append((a, b))
                    on_seg.update((i, j))
        info = {"method": "vertex-scan", "vertex_values": vals.tolist()}
        if len(segs) == h:
            return AttainmentSet(WHOLE_SPHERE, best, MAX, 2, info=info)
        pts = [canonical_sign(V[i]) for i in range(h) if att[i] and i not in on_seg]
        form = SEGMENTS if segs else FINITE_PAIRS
        return AttainmentSet(form, best, MAX, 2, points=pts, segments=segs, info=info)

    cands = []
    for i in range(h):
        a, b = V[i], V[i + 1]
        edge = lambda t, a=a, b=b: g((1.0 - t) * a + t * b)
        t, val = golden_section(edge, 0.0, 1.0)
        t = _polish_edge(Y, A, a, b, t)
        cands.append((edge(t), t, a, b, edge))
    best = min(c[0] for c in cands)
    thr = tol * max(1.0, best)
    flat_eps = 1e-12 * max(1.0, best)
    pts, segs = [], []
    full_edges = 0
    for val, t, a, b, edge in cands:
        if val > best + thr:
            continue
        t1 = t2 = t
        if Y.is_polyhedral:
            level = val + flat_eps
            t1 = _sublevel_end(edge, level, t, 0.0)
            t2 = _sublevel_end(edge, level, t, 1.0)
        if t2 - t1 > 1e-9:
            segs.append(((1 - t1) * a + t1 * b, (1 - t2) * a + t2 * b))
            full_edges += t1 == 0.0 and t2 == 1.0
        else:
            t = 0.0 if t < 1e-12 else 1.0 if t > 1 - 1e-12 else t
            pts.append((1 - t) * a + t * b)
    info = {"method": "edge-golden-section"}
    if full_edges == h:
        return AttainmentSet(WHOLE_SPHERE, best, MIN, 2, info=info)
    uniq = []
    for p in pts:
        p = canonical_sign(p)
        if any(min(np.linalg.norm(p - q), np.linalg.norm(p + q)) <= 1e-9 for q in uniq):
            continue
        if any(_on_segment(s * p, c, d, 1e-9) for c, d in segs for s in (1.0, -1.0)):
            continue
        uniq.append(p)
    form = SEGMENTS if segs else FINITE_PAIRS
    return AttainmentSet(form, best, MIN, 2, points=uniq, segments=segs, info=info)


def _edge_derivative(Y, A, a, b, t):
    w = A @ ((1.0 - t) * a + t * b)
    nw = nc.norm_eval(Y, w)
    if nw == 0.0:
        return None
    gs = nc.support_functionals(Y, w / nw, tol=1e-12)
    if not gs.is_unique:
        return None
    return float(gs.extremes[0] @ (A @ (b - a)))


def _polish_edge(Y, A, a, b, t, width=1e-5):
    """Refine an interior edge minimum by a root search on the derivative,
    which golden-section search only locates to about sqrt(eps)."""
    lo, hi = max(0.0, t - width), min(1.0, t + width)
    if lo >= hi:
        return t
    d_lo, d_hi = _edge_derivative(Y, A, a, b, lo), _edge_derivative(Y, A, a, b, hi)
    if d_lo is None or d_hi is None or d_lo * d_hi > 0:
        return t
    try:
        r = brentq(lambda s: _edge_derivative(Y, A, a, b, s), lo, hi,
                   xtol=1e-300, rtol=1e-15, maxiter=200)
    except (ValueError, TypeError, RuntimeError):
        return t
    g = lambda s: nc.norm_eval(Y, A @ ((1.0 - s) * a + s * b))
    return r if g(r) <= g(t) + 1e-15 * max(1.0, g(t)) else t


def _sublevel_end(f, level, inside, outside, iterations=100):
    """Boundary of the interval {f <= level} between ``inside`` and ``outside``."""
    if f(outside) <= level:
        return outside
    for _ in range(iterations):
        mid = 0.5 * (inside + outside)
        if f(mid) <= level:
            inside = mid
        else:
            outside = mid
    return inside


# --- smooth domains (lp) ----------------------------------------------------

GRID = 4096


def attain_lp(T: Operator, mode: str, restarts: int = 32, seed: int = 0,
              tol: float = TOL) -> AttainmentSet:
    """Multi-start search for the extrema of ||T x|| on a smooth unit sphere.

    In the plane the sphere is parametrized by angle: the starts (random
    angles plus every local extremum of a 4096-point profile) are climbed on
    the grid, refined by golden-section search, and polished by a root
    search on the angular derivative where the codomain is smooth. In higher
    dimension each random start is run through BFGS on the ratio
    ||T z|| / ||z||. Converged points within tol of the best value are
    clustered up to sign.
    """
    _check_mode(mode)
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    X = T.domain
    if not nc.space_properties(X).smooth:
        raise TypeError(f"attain_lp needs a smooth domain, got {X}")
    rng = np.random.default_rng(seed)
    probes = nc.random_unit_vectors(X, 100, rng)
    pv = T.image_norms(probes)
    if np.ptp(pv) <= tol * max(1.0, pv.max()):
        return AttainmentSet(WHOLE_SPHERE, float(pv.mean()), mode, X.dim, approximate=True,
                             info={"method": "probe-spread", "probes": 100})
    if X.dim == 2:
        found, starts = _planar_search(T, mode, restarts, rng)
    else:
        found, starts = _bfgs_search(T, mode, restarts, rng)
    if not found:
        raise SolverError("every start of the sphere search failed")
    sgn = 1.0 if mode == MAX else -1.0
    best = max(sgn * v for v, _ in found) * sgn
    thr = tol * max(1.0, abs(best))
    keep = sorted((c for c in found if abs(c[0] - best) <= thr), key=lambda c: -sgn * c[0])
    centers, values = [], []
    for v, x in keep:
        if any(min(np.linalg.norm(x - c), np.linalg.norm(x + c)) <= CLUSTER_RADIUS for c in centers):
            continue
        centers.append(canonical_sign(x))
        values.append(v)
    value = float(values[0])
    info = {"method": "multi-start", "starts": starts, "converged": len(found),
            "cluster_radius": CLUSTER_RADIUS}
    return AttainmentSet(FINITE_PAIRS, value, mode, X.dim, points=centers,
                         approximate=True, info=info)


def _ratio(T, u):
    return T.image_norm(u) / nc.norm_eval(T.domain, u)


def _planar_search(T, mode, restarts, rng):
    sgn = 1.0 if mode == MAX else -1.0
    step = math.pi / GRID
    theta = np.arange(GRID) * step
    U = np.column_stack([np.cos(theta), np.sin(theta)])
    S = sgn * T.image_norms(U) / nc.norms(T.domain, U)
    nxt, prv = np.roll(S, -1), np.roll(S, 1)
    seeds = set(np.flatnonzero((S >= prv) & (S > nxt)).tolist())
    for _ in range(restarts):
        k = int(round(rng.uniform(0.0, math.pi) / step)) % GRID
        while True:
            up, down = S[(k + 1) % GRID], S[(k - 1) % GRID]
            if up > S[k] and up >= down:
                k = (k + 1) % GRID
            elif down > S[k]:
                k = (k - 1) % GRID
            else:
                break
        seeds.add(k)

    F = lambda t: _ratio(T, np.array([math.cos(t), math.sin(t)]))
    found = []
    for k in sorted(seeds):
        lo, hi = (k - 1) * step, (k + 1) * step
        t, _ = golden_section(lambda t: -sgn * F(t), lo, hi)
        t = _polish_angle(T, t, lo, hi)
        u = np.array([math.cos(t), math.sin(t)])
        x = nc.normalize(T.domain, u)
        found.append((T.image_norm(x), x))
    return found, len(seeds)


def _angle_derivative(T, t):
    u = np.array([math.cos(t), math.sin(t)])
    du = np.array([-math.sin(t), math.cos(t)])
    nu = nc.norm_eval(T.domain, u)
    w = T(u)
    nw = nc.norm_eval(T.codomain, w)
    if nw == 0.0:
        return None
    gs = nc.support_functionals(T.codomain, w / nw, tol=1e-12)
    if not gs.is_unique:
        return None
    f = nc.support_functionals(T.domain, u / nu, tol=1e-12).extremes[0]
    return (gs.extremes[0] @ (T.matrix @ du) * nu - nw * (f @ du)) / (nu * nu)


def _polish_angle(T, t, lo, hi, width=1e-5):
    a, b = max(lo, t - width), min(hi, t + width)
    try:
        da, db = _angle_derivative(T, a), _angle_derivative(T, b)
        if da is None or db is None or _angle_derivative(T, t) is None or da * db > 0:
            return t
        r = brentq(lambda s: _angle_derivative(T, s), a, b, xtol=1e-300, rtol=1e-15, maxiter=200)
    except (ValueError, RuntimeError):
        return t
    # keep the polished root only if it is at least as good
    F = lambda s: _ratio(T, np.array([math.cos(s), math.sin(s)]))
    return r if abs(F(r) - F(t)) <= 1e-12 * max(1.0, F(t)) else t


def _bfgs_search(T, mode, restarts, rng):
    sgn = 1.0 if mode == MAX else -1.0
    X, Y, A = T.domain, T.codomain, T.matrix

    def objective(z):
        nz = nc.norm_eval(X, z)
        w = A @ z
        nw = nc.norm_eval(Y, w)
        f = nc.support_functionals(X, z / nz, tol=1e-6).extremes[0]
        if nw == 0.0:
            grad = -0.0 * f
        else:
            g = nc.support_functionals(Y, w / nw, tol=1e-12).midpoint
            grad = (A.T @ g * nz - nw * f) / (nz * nz)
        return -sgn * nw / nz, -sgn * grad

    found = []
    starts = nc.random_unit_vectors(X, restarts, rng)
    for z0 in starts:
        try:
            res = minimize(objective, z0, jac=True, method="BFGS",
                           options={"gtol": 1e-12, "maxiter": 2000})
        except (ValueError, FloatingPointError, np.linalg.LinAlgError):
            continue
        if not np.all(np.isfinite(res.x)) or not res.x.any():
            continue
        x = _polish_stationary(T, objective, nc.normalize(X, res.x))
        found.append((T.image_norm(x), x))
    return found, restarts


def _polish_stationary(T, objective, x):
    """Solve grad = 0, ||x|| = 1 by Levenberg-Marquardt from a BFGS point;
    BFGS alone stalls around 1e-9 in position."""
    X = T.domain

    def eqs(z):
        return np.append(objective(z)[1], nc.norm_eval(X, z) - 1.0)

    try:
        r = least_squares(eqs, x, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
    except (ValueError, FloatingPointError, np.linalg.LinAlgError):
        return x
    if not np.all(np.isfinite(r.x)) or not r.x.any():
        return x
    z = nc.normalize(X, r.x)
    if np.linalg.norm(eqs(z)) <= np.linalg.norm(eqs(x)):
        return z
    return x


# --- brute-force oracle -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class Profile:
    """Values of ||T x|| on a grid of the domain's unit sphere."""

    points: np.ndarray
    values: np.ndarray
    angles: np.ndarray

    def rows(self):
        return list(zip(self.points, self.values))

    @property
    def max(self) -> float:
        return float(self.values.max())

    @property
    def min(self) -> float:
        return float(self.values.min())

    def argmax(self):
        return self.points[int(np.argmax(self.values))]

    def argmin(self):
        return self.points[int(np.argmin(self.values))]


def oracle_profile(T: Operator, samples: int) -> Profile:
    """Evaluate ||T x|| on a uniform angular grid (dim 2) or a Fibonacci
    sphere grid (dim 3), each direction rescaled onto the unit sphere."""
    if samples < 100:
        raise ValueError("samples must be >= 100")
    n = T.domain.dim
    if n == 2:
        ang = 2.0 * math.pi * np.arange(samples) / samples
        U = np.column_stack([np.cos(ang), np.sin(ang)])
        angles = ang[:, None]
    elif n == 3:
        i = np.arange(samples) + 0.5
        z = 1.0 - 2.0 * i / samples
        r = np.sqrt(1.0 - z * z)
        phi = math.pi * (3.0 - math.sqrt(5.0)) * i
        U = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
        angles = np.column_stack([np.arccos(z), np.mod(phi, 2.0 * math.pi)])
    else:
        raise UnsupportedError("oracle_profile supports domain dimension 2 or 3")
    P = U / nc.norms(T.domain, U)[:, None]
    return Profile(P, T.image_norms(P), angles)


# --- isometry test ----------------------------------------------------------

def is_scalar_isometry_multiple(T: Operator, probes: int = 200, seed: int = 0,
                                tol: float = TOL) -> bool:
    """Whether ||T x|| is the same for every unit x.

    Exact (T*T = c I) for inner-product spaces; otherwise decided on
    ``probes`` seeded random unit vectors.
    """
    if T.domain.is_hilbert and T.codomain.is_hilbert:
        M, _ = whitened_matrix(T)
        A = M.T @ M
        c = np.trace(A) / len(A)
        return bool(np.abs(A - c * np.eye(len(A))).max() <= tol * max(1.0, abs(c)))
    rng = np.random.default_rng(seed)
    vals = T.image_norms(nc.random_unit_vectors(T.domain, probes, rng))
    return bool(np.ptp(vals) <= tol * max(1.0, vals.max()))


def operator_norm(T: Operator, **kw) -> float:
    return solve(T, MAX, **kw).value


def min_norm(T: Operator, **kw) -> float:
    return solve(T, MIN, **kw).value
