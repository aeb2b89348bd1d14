"""Birkhoff-James orthogonality via one-sided norm derivatives.

For a unit vector x the right and left derivatives of t -> ||x + t y|| at 0
are the max and min of f(y) over the support functionals f at x. Since the
map is convex, x is BJ-orthogonal to y exactly when that interval contains
zero, and y lies in the cone x+ (resp. x-) exactly when its upper (resp.
lower) end is >= 0 (resp. <= 0).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.linalg import null_space

from . import norm_core as nc
from .exceptions import InconsistencyError, NotSupportingError
from .linesearch import golden_section
from .norm_core import TOL, NormSpace

PLUS = "plus"
MINUS = "minus"

# gap allowed between ||x|| and min_t ||x + t y|| when the interval test accepts
MIN_GAP_TOL = 1e-7


@dataclass(frozen=True)
class DerivativePair:
    rho_minus: float
    rho_plus: float

    def __post_init__(self):
        if self.rho_minus > self.rho_plus:
            raise ValueError("rho_minus must not exceed rho_plus")


@dataclass(frozen=True)
class OrthogonalityCertificate:
    orthogonal: bool
    rho_minus: float
    rho_plus: float
    lambda_star: float
    min_value: float

    def __bool__(self):
        return self.orthogonal

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(bool(d["orthogonal"]), float(d["rho_minus"]), float(d["rho_plus"]),
                   float(d["lambda_star"]), float(d["min_value"]))


def directional_derivatives(space: NormSpace, x, y, tol: float = TOL) -> DerivativePair:
    y = nc._as_vector(space, y, "y")
    support = nc.support_functionals(space, x, tol)
    lo, hi = support.range_on(y)
    return DerivativePair(lo, hi)


def _scaled_tol(space, y, tol):
    return tol * nc.norm_eval(space, y)


def cone_membership(space: NormSpace, x, y, sign: str, tol: float = TOL) -> bool:
    """Whether y lies in x+ (``sign="plus"``) or x- (``sign="minus"``)."""
    if sign not in (PLUS, MINUS):
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    d = directional_derivatives(space, x, y, tol)
    eps = _scaled_tol(space, y, tol)
    if sign == PLUS:
        return d.rho_plus >= -eps
    return d.rho_minus <= eps


def is_bj_orthogonal(space: NormSpace, x, y, tol: float = TOL) -> OrthogonalityCertificate:
    """Decide x ⊥_B y and cross-check by minimizing t -> ||x + t y||.

    The returned certificate is truthy iff x is orthogonal to y. Raises
    ``InconsistencyError`` if the interval test and the line minimization
    contradict each other.
    """
    x = nc._as_vector(space, x)
    y = nc._as_vector(space, y, "y")
    d = directional_derivatives(space, x, y, tol)
    nx = nc.norm_eval(space, x)
    ny = nc.norm_eval(space, y)
    if ny == 0.0:
        return OrthogonalityCertificate(True, 0.0, 0.0, 0.0, nx)
    eps = tol * ny
    orthogonal = d.rho_minus <= eps and d.rho_plus >= -eps

    half = 2.0 * nx / ny + 1.0
    phi = lambda t: nc.norm_eval(space, x + t * y)
    lam, val = golden_section(phi, -half, half)
    at_zero = phi(0.0)
    if at_zero <= val + 1e-12 * max(1.0, at_zero):
        lam, val = 0.0, at_zero

    gap = nx - val
    violation = max(d.rho_minus, -d.rho_plus) / ny
    if orthogonal and gap > MIN_GAP_TOL:
        raise InconsistencyError(
            f"interval test says orthogonal but ||x + t y|| drops by {gap:.3e} at t={lam:.6g}")
    if not orthogonal and violation > 1e-4 and not val < nx:
        raise InconsistencyError(
            f"interval test says not orthogonal (violation {violation:.3e}) "
            "but no decrease of ||x + t y|| was found")
    return OrthogonalityCertificate(bool(orthogonal), d.rho_minus, d.rho_plus, float(lam), float(val))


# --- hyperspaces ------------------------------------------------------------

@dataclass(frozen=True)
class Hyperspace:
    """Kernel of a nonzero covector, with an orthonormal (Euclidean) basis."""

    normal: np.ndarray
    basis: np.ndarray

    @classmethod
    def from_normal(cls, f) -> "Hyperspace":
        f = np.asarray(f, dtype=float)
        if not f.any():
            raise ValueError("hyperspace normal must be nonzero")
        return cls(f, null_space(f[None, :]).T)

    @classmethod
    def from_basis(cls, basis) -> "Hyperspace":
        B = np.atleast_2d(np.asarray(basis, dtype=float))
        N = null_space(B)
        if N.shape[1] != 1:
            raise ValueError("basis must span a subspace of codimension one")
        return cls.from_normal(N[:, 0])

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v, tol: float = TOL) -> bool:
        v = np.asarray(v, dtype=float)
        scale = np.linalg.norm(self.normal) * max(np.linalg.norm(v), 1.0)
        return abs(self.normal @ v) <= tol * scale


def is_support_functional(space: NormSpace, x, f, tol: float = TOL) -> bool:
    f = nc._as_vector(space, f, "f")
    return (abs(nc.dual_norm_eval(space, f) - 1.0) <= tol
            and abs(f @ np.asarray(x, dtype=float) - 1.0) <= tol)


def orthogonal_hyperspace(space: NormSpace, x, selector=None, tol: float = TOL) -> Hyperspace:
    """A hyperspace H with x ⊥_B H: the kernel of a support functional at x.

    ``selector`` picks the functional; by default the midpoint of the support
    set is used.
    """
    x = nc.check_unit(space, x, tol)
    if selector is None:
        f = nc.support_functionals(space, x, tol).midpoint
    else:
        f = nc._as_vector(space, selector, "selector")
        if not is_support_functional(space, x, f, tol):
            raise NotSupportingError("selector is not a support functional at x")
    return Hyperspace.from_normal(f)


def norming_point(space: NormSpace, f, tol: float = TOL) -> np.ndarray:
    """A unit vector x with f(x) = ||f||*.

    Ties (possible only in non-strictly-convex spaces) are broken by taking
    the lexicographically largest vertex of the norming face.
    """
    f = nc._as_vector(space, f, "f")
    if not f.any():
        raise ValueError("f must be nonzero")
    if space.kind == nc.INNER_PRODUCT:
        return nc.normalize(space, space._Ginv @ f)
    if space.kind == nc.POLYGON:
        return _best_vertex(space._V, f, tol)
    p = space.p
    if p == nc.INF:
        # coordinates with f_i = 0 are free; +1 is the lexicographic choice
        return np.where(f >= -tol * np.abs(f).max(), 1.0, -1.0)
    if p == 1.0:
        eye = np.eye(space.dim)
        cands = np.vstack([eye, -eye])
        return _best_vertex(cands, f, tol)
    q = p / (p - 1.0)
    x = np.sign(f) * np.abs(f) ** (q - 1.0)
    return nc.normalize(space, x)


def _best_vertex(V, f, tol):
    vals = V @ f
    top = vals.max()
    ties = V[vals >= top - tol * max(1.0, abs(top))]
    return np.array(max(map(tuple, ties)), dtype=float)
