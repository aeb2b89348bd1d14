"""Semi-inner-products built from support-functional selectors.

A selector assigns to every unit u a support functional f_u, extended
homogeneously by f_{tu} = sign(t) f_u. Then [y, x] = ||x|| f_{x/||x||}(y) is a
semi-inner-product compatible with the norm. Selectors here are sparse: a
few pinned points, and the midpoint of the support set everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from . import attain as at
from . import norm_core as nc
from .bj_ortho import Hyperspace, is_support_functional
from .exceptions import NotAttainedError, NotSupportingError, SelectorConflictError
from .norm_core import TOL, NormSpace


class Selector:
    """Choice of support functional at each point of the unit sphere."""

    fallback = "canonical-midpoint"

    def __init__(self, space: NormSpace, pins=(), tol: float = TOL):
        self.space = space
        self.tol = tol
        self._pins = ()
        for u, f in pins:
            self._add(u, f)

    def _add(self, u, f):
        u = nc.check_unit(self.space, u, self.tol)
        f = nc._as_vector(self.space, f, "f")
        if not is_support_functional(self.space, u, f, self.tol):
            raise NotSupportingError(f"functional {f} does not support {u}")
        for v, g in self._pins:
            for s in (1.0, -1.0):
                if np.abs(u - s * v).max() <= self.tol and np.abs(f - s * g).max() > self.tol:
                    raise SelectorConflictError(f"point {u} is already pinned to {s * g}")
        self._pins += ((u.copy(), f.copy()),)

    def pin(self, u, f) -> "Selector":
        """A new selector with the extra pin u -> f."""
        return Selector(self.space, self._pins + ((u, f),), self.tol)

    @property
    def pins(self):
        return self._pins

    def functional_at(self, x) -> np.ndarray:
        """f_u for u = x / ||x||."""
        u = nc.normalize(self.space, x)
        for v, g in self._pins:
            if np.abs(u - v).max() <= self.tol:
                return g
            if np.abs(u + v).max() <= self.tol:
                return -g
        return nc.support_functionals(self.space, u, self.tol).midpoint


@dataclass(frozen=True, eq=False)
class SIP:
    space: NormSpace
    selector: Selector = None

    def __post_init__(self):
        if self.selector is None:
            object.__setattr__(self, "selector", Selector(self.space))

    def __call__(self, y, x) -> float:
        return sip_eval(self, y, x)


def sip_eval(sip: SIP, y, x) -> float:
    """[y, x] = ||x|| f_{x/||x||}(y); [y, 0] = 0."""
    y = nc._as_vector(sip.space, y, "y")
    x = nc._as_vector(sip.space, x)
    nx = nc.norm_eval(sip.space, x)
    if nx == 0.0:
        return 0.0
    return float(nx * (sip.selector.functional_at(x) @ y))


@dataclass
class AxiomReport:
    trials: int
    violations: dict = field(default_factory=dict)

    @property
    def max_violation(self) -> float:
        return max(self.violations.values())

    def ok(self, tol: float = TOL) -> bool:
        return self.max_violation <= tol


def verify_sip_axioms(sip: SIP, trials: int = 1000, seed: int = 0) -> AxiomReport:
    """Sample the real semi-inner-product axioms and report the worst violation
    of each. Pinned points of the selector are always among the samples."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    n = sip.space.dim
    xs = list(rng.standard_normal((trials, n)))
    for i, (u, _) in enumerate(sip.selector.pins):
        xs[i % trials] = u * rng.uniform(0.5, 2.0)
    worst = dict.fromkeys(
        ["additivity", "homogeneity", "positivity", "norm_compatibility",
         "cauchy_schwarz", "second_slot_homogeneity"], 0.0)
    for x in xs:
        y, z = rng.standard_normal((2, n))
        lam = rng.uniform(-3.0, 3.0)
        yx, zx = sip(y, x), sip(z, x)
        xx, yy = sip(x, x), sip(y, y)
        nx = nc.norm_eval(sip.space, x)
        worst["additivity"] = max(worst["additivity"], abs(sip(y + z, x) - yx - zx))
        worst["homogeneity"] = max(worst["homogeneity"], abs(sip(lam * y, x) - lam * yx))
        worst["positivity"] = max(worst["positivity"], 0.0 if xx > 0 else abs(xx) + 1.0)
        worst["norm_compatibility"] = max(worst["norm_compatibility"], abs(xx - nx * nx))
        worst["cauchy_schwarz"] = max(worst["cauchy_schwarz"], yx * yx - xx * yy)
        worst["second_slot_homogeneity"] = max(
            worst["second_slot_homogeneity"], abs(sip(y, lam * x) - lam * yx))
    return AxiomReport(trials, worst)


# --- attainment certificates --------------------------------------------------

@dataclass
class SipCertificate:
    mode: str
    residual_max: float
    z_basis_checked: bool
    passed: bool
    identity_at_x: float
    construction_ok: bool
    value: float
    image_norm: float
    samples: int
    notes: str = ""

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {"mode": self.mode, "residual_max": self.residual_max,
                "z_basis_checked": self.z_basis_checked, "pass": self.passed,
                "identity_at_x": self.identity_at_x,
                "construction_ok": self.construction_ok, "value": self.value,
                "image_norm": self.image_norm, "samples": self.samples,
                "notes": self.notes}

    @classmethod
    def from_dict(cls, d):
        return cls(d["mode"], float(d["residual_max"]), bool(d["z_basis_checked"]),
                   bool(d["pass"]), float(d["identity_at_x"]), bool(d["construction_ok"]),
                   float(d["value"]), float(d["image_norm"]), int(d["samples"]),
                   d.get("notes", ""))


def _annihilating_support(space, u, vectors, tol):
    """A support functional at u vanishing on ``vectors``, as close as the
    support set allows. Returns (g, worst |g(v)|)."""
    ext = nc.support_functionals(space, u, tol).extremes
    V = np.atleast_2d(vectors)
    if len(V) == 0:
        return ext.mean(axis=0), 0.0
    E = ext @ V.T  # (k, r): value of extreme i on vector j
    k = len(ext)
    if k == 1:
        g = ext[0]
    else:
        # min s subject to |E^T w| <= s, w in the simplex
        c = np.zeros(k + 1)
        c[-1] = 1.0
        ones = np.ones((E.shape[1], 1))
        A_ub = np.vstack([np.hstack([E.T, -ones]), np.hstack([-E.T, -ones])])
        b_ub = np.zeros(2 * E.shape[1])
        A_eq = np.hstack([np.ones((1, k)), [[0.0]]])
        res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0],
                      bounds=[(0, None)] * k + [(None, None)], method="highs")
        w = res.x[:k] if res.success else np.full(k, 1.0 / k)
        g = w @ ext
    return g, float(np.abs(V @ g).max())


def certify_attainment_via_sip(T: at.Operator, x, mode: str, samples: int = 200, seed: int = 0,
                               tol: float = TOL, value: float | None = None) -> SipCertificate:
    """Certify x in M_T (max) or m_T (min) by building the two semi-inner-products
    for which [Tz, Tx]_Y = c^2 [z, x]_X holds for every z, c = ||T|| or m(T).

    For the maximum, g supports Tx/||Tx|| and the domain is pinned at x to
    (g o T)/||Tx||, which supports x exactly when x is in M_T. For the
    minimum, the domain is pinned at x to its canonical support functional
    psi, and g is chosen in the support set at Tx/||Tx|| to vanish on
    T(ker psi). The identity is then checked on the standard basis and on
    ``samples`` seeded random unit vectors.
    """
    at._check_mode(mode)
    X, Y = T.domain, T.codomain
    x = nc.check_unit(X, x, tol)
    c = at.solve(T, mode, tol=tol).value if value is None else float(value)
    Tx = T(x)
    nTx = nc.norm_eval(Y, Tx)
    scale = max(1.0, c * c)
    n = X.dim

    def cert(residual, ok, ident, note):
        passed = bool(ok and residual <= tol * scale and ident <= 2 * tol * scale)
        return SipCertificate(mode, float(residual), True, passed, float(ident), bool(ok),
                              c, nTx, samples, note)

    if T.is_zero:
        return cert(0.0, True, 0.0, "zero operator")
    if nTx <= tol:
        if mode == at.MAX:
            raise NotAttainedError(f"Tx = 0 but ||T|| = {c!r}")
        return cert(nTx, True, abs(nTx * nTx - c * c), "Tx = 0: degenerate certificate")
    if mode == at.MIN and c <= tol:
        return cert(nTx, False, abs(nTx * nTx - c * c), "m(T) = 0 but Tx != 0")

    y_hat = Tx / nTx
    if mode == at.MAX:
        g = nc.support_functionals(Y, y_hat, tol).midpoint
        psi = T.matrix.T @ g / nTx
        excess = nc.dual_norm_eval(X, psi) - 1.0
        ok = excess <= tol
        note = "" if ok else f"(g o T)/||Tx|| has dual norm 1 + {excess:.3e}: not a support functional"
    else:
        psi = nc.support_functionals(X, x, tol).midpoint
        H = Hyperspace.from_normal(psi)
        g, miss = _annihilating_support(Y, y_hat, H.basis @ T.matrix.T, tol)
        ok = miss <= tol
        note = "" if ok else f"no support functional at Tx vanishes on T(ker psi) (miss {miss:.3e})"

    rng = np.random.default_rng(seed)
    Z = np.vstack([np.eye(n), nc.random_unit_vectors(X, samples, rng)]) if samples else np.eye(n)
    if ok:
        sx = SIP(X, Selector(X, [(x, psi)], tol))
        sy = SIP(Y, Selector(Y, [(y_hat, g)], tol))
        lhs = np.array([sip_eval(sy, T(z), Tx) for z in Z])
        rhs = c * c * np.array([sip_eval(sx, z, x) for z in Z])
        ident = abs(sip_eval(sy, Tx, Tx) - c * c * sip_eval(sx, x, x))
    else:
        # the would-be values, with the offending functional taken as is
        lhs = nTx * (Z @ T.matrix.T @ g)
        rhs = c * c * (Z @ psi)
        ident = abs(nTx * (g @ Tx) - c * c * (psi @ x))
    return cert(np.abs(lhs - rhs).max(), ok, ident, note)
