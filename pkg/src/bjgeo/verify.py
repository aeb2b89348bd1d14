"""Executable checks of the structural results on M_T, m_T and BJ orthogonality.

Every check takes concrete spaces and operators, runs the constructions the
result talks about, and returns a ``TheoremReport`` whose verdict is a finite
conjunction of tolerance comparisons. ``run_theorem`` runs a check over a
default corpus, keyed by a stable theorem id.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import attain as at
from . import corpus
from . import norm_core as nc
from .bj_ortho import Hyperspace, directional_derivatives, is_bj_orthogonal, norming_point
from .exceptions import NotAttainedError
from .norm_core import TOL, NormSpace
from .sip import certify_attainment_via_sip

THEOREM_IDS = (
    "lemma-hyperspace", "thm-sip-max", "thm-preserve", "thm-cardinality",
    "thm-hilbert-min", "thm-dimension", "thm-sip-min", "thm-mutual-orth",
    "thm-rank-one", "thm-reflexive-construct", "thm-euclidean-2d",
    "thm-euclidean-nd", "remark-nonsmooth", "remark-linf-asym",
)


@dataclass
class TheoremReport:
    theorem_id: str
    passed: bool
    max_residual: float = 0.0
    witnesses: list = field(default_factory=list)
    notes: str = ""
    applicable: bool = True

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {"theorem_id": self.theorem_id, "pass": self.passed,
                "applicable": self.applicable, "max_residual": self.max_residual,
                "witnesses": self.witnesses, "notes": self.notes}

    @classmethod
    def from_dict(cls, d):
        return cls(d["theorem_id"], bool(d["pass"]), float(d["max_residual"]),
                   list(d.get("witnesses", [])), d.get("notes", ""),
                   bool(d.get("applicable", True)))


def _w(label, value):
    if isinstance(value, np.ndarray):
        value = value.tolist()
    return {"label": label, "value": value}


def _scale(c):
    return max(1.0, abs(c))


# --- set-level orthogonality ------------------------------------------------

def bj_violation(space: NormSpace, x, y, tol: float = TOL) -> float:
    """How far x is from x ⊥_B y: the distance of 0 from the derivative
    interval, per unit of ||y||. Zero means orthogonal."""
    ny = nc.norm_eval(space, y)
    if ny == 0.0:
        return 0.0
    d = directional_derivatives(space, x, y, tol)
    return max(d.rho_minus, -d.rho_plus, 0.0) / ny


def set_orthogonal(space: NormSpace, A, B, tol: float = TOL):
    """A ⊥_B B tested member by member. Returns (holds, worst violation, worst pair)."""
    worst, pair = 0.0, None
    for a in A:
        for b in B:
            v = bj_violation(space, a, b, tol)
            if v > worst:
                worst, pair = v, (a, b)
    return worst <= tol, worst, pair


def _require_member(T, x, mode, tol, S=None):
    S = at.solve(T, mode, tol=tol) if S is None else S
    val = T.image_norm(x)
    if abs(val - S.value) > max(tol, 1e-8) * _scale(S.value):
        raise NotAttainedError(
            f"||Tx|| = {val!r} but the {'norm' if mode == at.MAX else 'minimum norm'} is {S.value!r}")
    return S


# --- hyperspace lemma -------------------------------------------------------

def check_hyperspace_lemma(T: at.Operator, x, tol: float = TOL) -> TheoremReport:
    """For x in M_T, build H_y = ker g with g supporting Tx/||Tx|| and
    H_x = ker(g o T); check x ⊥_B H_x, Tx ⊥_B H_y and T(H_x) ⊆ H_y."""
    X, Y = T.domain, T.codomain
    x = nc.check_unit(X, x, tol)
    S = _require_member(T, x, at.MAX, tol)
    if T.is_zero:
        return TheoremReport("lemma-hyperspace", True, 0.0, [_w("x", x)], "zero operator: vacuous")
    Tx = T(x)
    u = Tx / nc.norm_eval(Y, Tx)
    g = nc.support_functionals(Y, u, tol).midpoint
    Hy = Hyperspace.from_normal(g)
    Hx = Hyperspace.from_normal(T.matrix.T @ g)
    r_x = max(bj_violation(X, x, h, tol) for h in Hx.basis)
    r_y = max(bj_violation(Y, u, h, tol) for h in Hy.basis)
    r_in = max(abs(g @ T(h)) / _scale(nc.norm_eval(Y, T(h))) for h in Hx.basis)
    res = max(r_x, r_y, r_in)
    return TheoremReport(
        "lemma-hyperspace", res <= tol, float(res),
        [_w("x", x), _w("g", g), _w("H_x", Hx.basis), _w("H_y", Hy.basis)],
        f"norm {S.value:.12g}; residuals x⊥H_x {r_x:.2e}, Tx⊥H_y {r_y:.2e}, T(H_x)⊆H_y {r_in:.2e}")


def check_nonsmooth_counterexample(space: NormSpace | None = None, tol: float = TOL) -> TheoremReport:
    """T(1,1) = (0,1), T(-1,1) = (-1,0): in the max-norm plane (1,1) lies in
    M_T and is BJ-orthogonal to H = span{(0,1)}, yet T(1,1) is not orthogonal
    to T(H). Other planar spaces can be passed to see whether the failure
    persists there."""
    X = nc.sup_norm(2) if space is None else space
    if X.dim != 2:
        raise ValueError("the counterexample lives in a plane")
    T = at.Operator(np.array([[0.5, -0.5], [0.5, 0.5]]), X, X)
    x = nc.normalize(X, np.array([1.0, 1.0]))
    S = at.solve(T, at.MAX, tol=tol)
    in_M = abs(T.image_norm(x) - S.value) <= tol * _scale(S.value)
    candidates = []
    for f in nc.support_functionals(X, x, tol).extremes:
        candidates.extend(Hyperspace.from_normal(f).basis)
    u = nc.normalize(X, T(x))
    best = None
    for h in candidates:
        left = is_bj_orthogonal(X, x, h, tol)
        right = is_bj_orthogonal(X, u, T(h), tol)
        if left and not right:
            best = (h, left, right)
            break
    if best is None:
        h = candidates[0]
        left, right = is_bj_orthogonal(X, x, h, tol), is_bj_orthogonal(X, u, T(h), tol)
        return TheoremReport(
            "remark-nonsmooth", False, 0.0, [_w("x", x), _w("H", h)],
            f"not a counterexample here: x in M_T {in_M}, x ⊥_B H {bool(left)}, "
            f"Tx ⊥_B T(H) {bool(right)} for every hyperspace H with x ⊥_B H")
    h, left, right = best
    gap = max(right.rho_minus, -right.rho_plus) / nc.norm_eval(X, T(h))
    return TheoremReport(
        "remark-nonsmooth", bool(in_M), float(0.0 if in_M else abs(T.image_norm(x) - S.value)),
        [_w("x", x), _w("H", h), _w("Tx", T(x)), _w("T(H)", T(h)),
         _w("derivatives at Tx on T(H)", [right.rho_minus, right.rho_plus])],
        f"x in M_T {in_M}; x ⊥_B H; Tx not ⊥_B T(H) (interval misses 0 by {gap:.3g})")


# --- preservation at minimum points -----------------------------------------

def check_preservation(T: at.Operator, x, trials: int = 10_000, seed: int = 0,
                       tol: float = TOL) -> TheoremReport:
    """For x in m_T sample y and check that T maps x+, x- and x^⊥ into
    (Tx)+, (Tx)- and (Tx)^⊥.

    A third of the samples are Gaussian, a third lie in the kernel of a random
    support functional at x (so in x^⊥), and a third are those kernel
    vectors pushed slightly along ±x (so in exactly one cone).
    """
    if T.is_zero:
        raise ValueError("T must be nonzero")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    X, Y = T.domain, T.codomain
    x = nc.check_unit(X, x, tol)
    S = _require_member(T, x, at.MIN, tol)
    Tx = T(x)
    nTx = nc.norm_eval(Y, Tx)
    if nTx <= tol:
        return TheoremReport("thm-preserve", True, 0.0, [_w("x", x)],
                             "Tx = 0: every target cone is the whole codomain")
    ex = nc.support_functionals(X, x, tol).extremes
    ey = nc.support_functionals(Y, Tx / nTx, tol).extremes

    rng = np.random.default_rng(seed)
    n = X.dim
    k = trials // 3
    Z = rng.standard_normal((trials, n))
    W = rng.dirichlet(np.ones(len(ex)), size=trials - k)
    F = W @ ex
    G = Z[k:]
    G = G - (np.sum(G * F, axis=1) / np.sum(F * F, axis=1))[:, None] * F
    m = (trials - k) // 2
    G[m:] += rng.uniform(-1e-3, 1e-3, size=(len(G) - m, 1)) * x
    Ys = np.vstack([Z[:k], G])

    ny = nc.norms(X, Ys)
    dx = Ys @ ex.T
    lo_x, hi_x = dx.min(axis=1), dx.max(axis=1)
    in_plus = hi_x >= -tol * ny
    in_minus = lo_x <= tol * ny
    TY = Ys @ T.matrix.T
    nty = nc.norms(Y, TY)
    dy = TY @ ey.T
    lo_y, hi_y = dy.min(axis=1), dy.max(axis=1)
    safe = np.where(nty > 0, nty, 1.0)
    v_plus = np.where(in_plus & (nty > 0), np.maximum(-hi_y, 0.0) / safe, 0.0)
    v_minus = np.where(in_minus & (nty > 0), np.maximum(lo_y, 0.0) / safe, 0.0)
    viol = np.maximum(v_plus, v_minus)
    worst = int(np.argmax(viol))
    res = float(viol[worst])
    counts = (int(in_plus.sum()), int(in_minus.sum()), int((in_plus & in_minus).sum()))
    witnesses = [_w("x", x), _w("m(T)", S.value)]
    if res > tol:
        witnesses.append(_w("y", Ys[worst]))
    return TheoremReport(
        "thm-preserve", res <= tol, res, witnesses,
        f"{trials} directions: {counts[0]} in x+, {counts[1]} in x-, {counts[2]} in x^⊥; "
        f"{int((viol > tol).sum())} failures")


# --- inner-product spaces ---------------------------------------------------

def _gram_inner(space, a, b):
    return float(a @ space.gram_matrix @ b)


def _require_hilbert(T):
    if not (T.domain.is_hilbert and T.codomain.is_hilbert):
        raise TypeError("this check needs inner-product domain and codomain")


def check_hilbert_min_characterization(T: at.Operator, tol: float = TOL, seed: int = 0,
                                       outside: int = 20) -> TheoremReport:
    """x in m_T iff <Tx, Ty> = m(T)^2 <x, y> for every y, checked on a basis
    of the computed m_T and, conversely, on random unit x away from it."""
    _require_hilbert(T)
    X, Y = T.domain, T.codomain
    S = at.attain_hilbert(T, at.MIN)
    m2 = S.value ** 2
    scale = _scale(at.attain_hilbert(T, at.MAX).value ** 2)
    n = X.dim
    E = np.eye(n)

    def residual(x):
        Tx = T(x)
        return max(abs(_gram_inner(Y, Tx, T(e)) - m2 * _gram_inner(X, x, e)) for e in E) / scale

    reps = S.members(X)
    res = max(residual(x) for x in reps)
    rng = np.random.default_rng(seed)
    tried, converse_fail = 0, []
    if S.form != at.WHOLE_SPHERE:
        B = S.basis.T
        attempts = 0
        while tried < outside and attempts < 100 * outside:
            attempts += 1
            x = nc.random_unit_vectors(X, 1, rng)[0]
            coef, *_ = np.linalg.lstsq(B, x, rcond=None)
            if np.linalg.norm(B @ coef - x) < 1e-3:
                continue
            tried += 1
            if residual(x) <= tol:
                converse_fail.append(x)
    passed = res <= tol and not converse_fail
    wit = [_w("m_T basis", reps), _w("m(T)", S.value)]
    if converse_fail:
        wit.append(_w("identity holds off m_T", converse_fail[0]))
    return TheoremReport("thm-hilbert-min", passed, float(res), wit,
                         f"identity residual {res:.2e} on {len(reps)} representatives; "
                         f"converse rejected {tried - len(converse_fail)}/{tried} outside points")


def check_dimension_multiplicity(T: at.Operator, reltol: float = at.EIG_RELTOL) -> TheoremReport:
    """dim span(m_T) equals the geometric multiplicity of the least eigenvalue of T*T."""
    _require_hilbert(T)
    X, Y = T.domain, T.codomain
    S = at.attain_hilbert(T, at.MIN, reltol)
    dim_m = S.subspace_dim()
    K = np.linalg.solve(X.gram_matrix, T.matrix.T @ Y.gram_matrix @ T.matrix)
    ev = np.linalg.eigvals(K).real
    lam = float(ev.min())
    top = max(float(np.abs(ev).max()), np.finfo(float).tiny)
    n = X.dim
    mult = n - np.linalg.matrix_rank(K - lam * np.eye(n), tol=reltol * top)
    value_gap = abs(S.value ** 2 - lam) / _scale(top)
    passed = dim_m == mult and value_gap <= reltol
    return TheoremReport("thm-dimension", bool(passed), float(value_gap),
                         [_w("dim m_T", dim_m), _w("multiplicity", int(mult)), _w("eigenvalues", sorted(ev.tolist()))],
                         f"dim {dim_m} vs multiplicity {mult} of least eigenvalue {lam:.12g}")


def check_mutual_orthogonality(T: at.Operator, tol: float = TOL) -> TheoremReport:
    """span(M_T) and span(m_T) are orthogonal in the domain inner product."""
    _require_hilbert(T)
    X = T.domain
    if at.is_scalar_isometry_multiple(T, tol=tol):
        return TheoremReport("thm-mutual-orth", True, 0.0, [], "not applicable: T is a scalar multiple of an isometry",
                             applicable=False)
    SM, Sm = at.attain_hilbert(T, at.MAX), at.attain_hilbert(T, at.MIN)
    A, B = SM.members(X), Sm.members(X)
    res = max(abs(_gram_inner(X, a, b)) for a in A for b in B)
    return TheoremReport("thm-mutual-orth", res <= tol, float(res),
                         [_w("M_T basis", A), _w("m_T basis", B)],
                         f"max |<x, y>| = {res:.2e} over {len(A)}x{len(B)} basis pairs")


# --- cardinality bound ------------------------------------------------------

def check_cardinality_bound(T: at.Operator, restarts: int = 32, seed: int = 0,
                            tol: float = TOL) -> TheoremReport:
    """|M_T| <= 4(4p - 3) for T on the plane with an integer p-norm, p >= 2."""
    X = T.domain
    if X.kind != nc.LP or T.codomain != X or X.dim != 2:
        raise ValueError("domain and codomain must be the same planar lp space")
    p = X.p
    if not (p != nc.INF and float(p).is_integer() and p >= 2):
        raise ValueError(f"p must be an integer >= 2, got {p}")
    if at.is_scalar_isometry_multiple(T, seed=seed, tol=tol):
        return TheoremReport("thm-cardinality", True, 0.0, [],
                             "not applicable: T is a scalar multiple of an isometry", applicable=False)
    S = at.solve(T, at.MAX, tol=tol, restarts=restarts, seed=seed)
    count = S.count()
    bound = 4 * (4 * int(p) - 3)
    finite = math.isfinite(count)
    passed = finite and int(count) % 2 == 0 and count <= bound
    return TheoremReport("thm-cardinality", bool(passed), 0.0,
                         [_w("M_T representatives", S.members(X)), _w("norm", S.value),
                          _w("count", count if finite else "inf"), _w("bound", bound)],
                         f"|M_T| = {count} vs bound {bound} (p = {int(p)})")


# --- rank-one operators -----------------------------------------------------

def _kernel_sphere(space, f):
    """ker f ∩ S_X as an attainment set."""
    B = np.array([at.canonical_sign(nc.normalize(space, h)) for h in Hyperspace.from_normal(f).basis])
    if len(B) == 1:
        return at.AttainmentSet(at.FINITE_PAIRS, 0.0, at.MIN, space.dim, points=B)
    return at.AttainmentSet(at.SUBSPACE_SPHERE, 0.0, at.MIN, space.dim, basis=B)


def _rank_one_report(theorem_id, T, x, f, tol, extra_notes=""):
    X = T.domain
    strict = nc.space_properties(X).strictly_convex
    SM, Sm = at.solve(T, at.MAX, tol=tol), at.solve(T, at.MIN, tol=tol)
    expected_M = at.AttainmentSet(at.FINITE_PAIRS, SM.value, at.MAX, X.dim, points=[x])
    expected_m = _kernel_sphere(X, f)
    x_in_M = abs(T.image_norm(x) - SM.value) <= tol * _scale(SM.value) and SM.contains(x)
    m_ok = at.same_set(Sm, expected_m) and Sm.value <= tol
    M_ok = at.same_set(SM, expected_M)
    res = abs(T.image_norm(x) - SM.value)
    wit = [_w("x", x), _w("M_T", SM.to_dict()), _w("m_T", Sm.to_dict())]
    notes = (f"x in M_T {x_in_M}; m_T = ker f ∩ S {m_ok}; M_T = {{±x}} {M_ok}"
             f" (M_T form {SM.form})" + extra_notes)
    if not strict:
        return TheoremReport(theorem_id, bool(x_in_M and m_ok), float(res), wit,
                             "hypothesis violated: space is not strictly convex; " + notes,
                             applicable=False)
    return TheoremReport(theorem_id, bool(x_in_M and m_ok and M_ok), float(res), wit, notes)


def check_rank_one(space: NormSpace, f, y, codomain: NormSpace | None = None,
                   tol: float = TOL) -> TheoremReport:
    """T(z) = f(z) y with ||y|| = 1: M_T = {±x} for x the norming point of f
    (strictly convex spaces) and m_T = ker f ∩ S_X."""
    Y = space if codomain is None else codomain
    f = nc._as_vector(space, f, "f")
    if not f.any():
        raise ValueError("f must be nonzero")
    y = nc.normalize(Y, nc._as_vector(Y, y, "y"))
    T = at.Operator(np.outer(y, f), space, Y)
    x = norming_point(space, f, tol)
    return _rank_one_report("thm-rank-one", T, x, f, tol)


def construct_rank_one_for_hyperspace(space: NormSpace, H, y=None,
                                      codomain: NormSpace | None = None) -> at.Operator:
    """T(a x + h) = a y for h in H, where x is a norming point of the normal of H."""
    f = H.normal if isinstance(H, Hyperspace) else np.asarray(H, dtype=float)
    if not np.any(f):
        raise ValueError("hyperspace normal must be nonzero")
    Y = space if codomain is None else codomain
    y = np.eye(Y.dim)[0] if y is None else np.asarray(y, dtype=float)
    y = nc.normalize(Y, y)
    x = norming_point(space, f)
    return at.Operator(np.outer(y, f) / (f @ x), space, Y)


def check_reflexive_construction(space: NormSpace, H, y=None, tol: float = TOL) -> TheoremReport:
    f = H.normal if isinstance(H, Hyperspace) else np.asarray(H, dtype=float)
    T = construct_rank_one_for_hyperspace(space, H, y)
    x = norming_point(space, f, tol)
    return _rank_one_report("thm-reflexive-construct", T, x, f, tol)


# --- M_T versus m_T ---------------------------------------------------------

def mutual_bj(space: NormSpace, SM: at.AttainmentSet, Sm: at.AttainmentSet, tol: float = TOL):
    """(M_T ⊥_B m_T, m_T ⊥_B M_T, residuals), tested on representatives."""
    A, B = SM.members(space), Sm.members(space)
    fwd, rf, _ = set_orthogonal(space, A, B, tol)
    bwd, rb, _ = set_orthogonal(space, B, A, tol)
    return fwd, bwd, rf, rb


def euclidean_dichotomy(space: NormSpace, trials: int = 200, seed: int = 0, pinned=(),
                        tol: float = TOL, restarts: int = 16) -> TheoremReport:
    """Test "(a) M_T = m_T = S_X or (b) M_T ⊥_B m_T and m_T ⊥_B M_T" on the
    pinned operators and then on ``trials`` seeded random ones.

    In an inner-product space every trial must satisfy (a) or (b). In any
    other space this is a search: the report passes once an operator
    violating both is found, and records whether the failure is one-sided
    or two-sided.
    """
    if space.dim < 2:
        raise ValueError("dimension must be >= 2")
    if trials < 0:
        raise ValueError("trials must be >= 0")
    tid = "thm-euclidean-2d" if space.dim == 2 else "thm-euclidean-nd"
    hilbert = space.is_hilbert
    rng = np.random.default_rng(seed)
    ops = [T if isinstance(T, at.Operator) else at.Operator(T, space, space) for T in pinned]
    ops += [corpus.random_operator(rng, space) for _ in range(trials)]
    violations, worst, done = [], 0.0, 0
    for i, T in enumerate(ops):
        SM = at.solve(T, at.MAX, tol=tol, restarts=restarts, seed=seed + i)
        Sm = at.solve(T, at.MIN, tol=tol, restarts=restarts, seed=seed + i)
        done += 1
        if SM.form == at.WHOLE_SPHERE and Sm.form == at.WHOLE_SPHERE:
            continue
        fwd, bwd, rf, rb = mutual_bj(space, SM, Sm, tol)
        if fwd and bwd:
            continue
        worst = max(worst, rf, rb)
        failed = [s for s, ok in (("M_T not ⊥_B m_T", fwd), ("m_T not ⊥_B M_T", bwd)) if not ok]
        violations.append({"trial": i, "matrix": T.matrix.tolist(),
                           "kind": "two-sided" if len(failed) == 2 else "one-sided",
                           "failed": failed, "M_T": SM.to_dict(), "m_T": Sm.to_dict()})
        if not hilbert:
            break
    if hilbert:
        return TheoremReport(tid, not violations, float(worst), violations,
                             f"{done - len(violations)}/{done} operators satisfy (a) or (b)")
    if violations:
        v = violations[0]
        return TheoremReport(tid, True, float(worst), violations,
                             f"violation at trial {v['trial']} ({v['kind']}): " + "; ".join(v["failed"]),
                             applicable=False)
    return TheoremReport(tid, False, 0.0, [], f"no operator violating (a) and (b) in {done} trials",
                         applicable=False)


def check_linf_asymmetry(tol: float = TOL) -> TheoremReport:
    """T = diag(1,0) on the max-norm plane: M_T ⊥_B m_T holds but m_T ⊥_B M_T fails."""
    T = corpus.linf_projection()
    X = T.domain
    SM, Sm = at.solve(T, at.MAX, tol=tol), at.solve(T, at.MIN, tol=tol)
    fwd, bwd, rf, rb = mutual_bj(X, SM, Sm, tol)
    a, b = Sm.members(X)[0], SM.members(X)[0]
    cert = is_bj_orthogonal(X, a, b, tol)
    return TheoremReport(
        "remark-linf-asym", bool(fwd and not bwd), float(rf),
        [_w("M_T", SM.to_dict()), _w("m_T", Sm.to_dict()), _w("m", a), _w("M", b),
         _w("certificate m ⊥_B M", cert.to_dict())],
        f"M_T ⊥_B m_T {fwd} (residual {rf:.2e}); m_T ⊥_B M_T {bwd} (violation {rb:.3g})")


def asymmetry_search(space: NormSpace, samples: int = 1000, seed: int = 0, tol: float = TOL):
    """Look for x ⊥_B y with y not ⊥_B x. Each sample draws a random unit x
    and a y in the kernel of a random support functional at x, so that
    x ⊥_B y holds by construction. Returns (x, y, samples used) or None."""
    rng = np.random.default_rng(seed)
    n = space.dim
    for i in range(samples):
        x = nc.random_unit_vectors(space, 1, rng)[0]
        ext = nc.support_functionals(space, x, tol).extremes
        f = rng.dirichlet(np.ones(len(ext))) @ ext
        B = Hyperspace.from_normal(f).basis
        y = rng.standard_normal(len(B)) @ B if n > 2 else B[0]
        y = nc.normalize(space, y)
        if bj_violation(space, x, y, tol) <= tol and bj_violation(space, y, x, tol) > tol:
            return x, y, i + 1
    return None


# --- s.i.p. characterization ------------------------------------------------

def check_sip_characterization(T: at.Operator, mode: str, rejects: int = 50, seed: int = 0,
                               samples: int = 50, tol: float = TOL) -> TheoremReport:
    """Every member of M_T (m_T) admits the certifying pair of semi-inner-products,
    and random non-members do not."""
    tid = "thm-sip-max" if mode == at.MAX else "thm-sip-min"
    X = T.domain
    S = at.solve(T, mode, tol=tol, seed=seed)
    members = S.members(X)
    res, failed = 0.0, []
    for x in members:
        c = certify_attainment_via_sip(T, x, mode, samples=samples, seed=seed, tol=tol, value=S.value)
        res = max(res, c.residual_max)
        if not c.passed:
            failed.append({"x": x.tolist(), "certificate": c.to_dict()})
    rng = np.random.default_rng(seed)
    accepted, tried = [], 0
    if S.form != at.WHOLE_SPHERE:
        for z in nc.random_unit_vectors(X, 20 * rejects, rng):
            if tried == rejects:
                break
            if abs(T.image_norm(z) - S.value) <= 1e-6 * _scale(S.value):
                continue
            tried += 1
            if certify_attainment_via_sip(T, z, mode, samples=samples, seed=seed, tol=tol,
                                          value=S.value).passed:
                accepted.append(z.tolist())
    passed = not failed and not accepted
    wit = failed + [{"accepted non-member": z} for z in accepted]
    return TheoremReport(tid, passed, float(res), wit,
                         f"{len(members) - len(failed)}/{len(members)} members certified; "
                         f"{tried - len(accepted)}/{tried} non-members rejected")


# --- registry ---------------------------------------------------------------

def combine(theorem_id: str, reports, label=None) -> TheoremReport:
    """Merge per-case reports: pass iff every applicable case passed."""
    reports = list(reports)
    labels = label or [str(i) for i in range(len(reports))]
    bad = [lab for lab, r in zip(labels, reports) if r.applicable and not r.passed]
    na = sum(not r.applicable for r in reports)
    res = max((r.max_residual for r in reports), default=0.0)
    wit = [{"case": lab, "pass": r.passed, "applicable": r.applicable, "notes": r.notes}
           for lab, r in zip(labels, reports)]
    notes = f"{len(reports) - len(bad) - na}/{len(reports)} cases pass"
    if na:
        notes += f", {na} not applicable"
    if bad:
        notes += "; failing: " + ", ".join(bad)
    return TheoremReport(theorem_id, not bad, float(res), wit, notes)


def _ops(operator):
    if operator is not None:
        return {"operator": operator}
    return corpus.example_corpus()


def _members(T, mode, tol):
    if T.is_zero:
        return []
    S = at.solve(T, mode, tol=tol)
    return list(S.members(T.domain))


def _random_hilbert_ops(space, trials, rng, kind):
    out = []
    for i in range(trials):
        X = space if space is not None else corpus.random_inner_product_space(rng, 2 + i % 4)
        if kind == "clustered":
            n = X.dim
            lo = rng.uniform(0.5, 1.5)
            k = 1 + int(rng.integers(0, n))
            spectrum = np.concatenate([np.full(k, lo), lo + 0.5 + rng.uniform(0, 2, size=n - k)])
            out.append(corpus.clustered_operator(rng, X, spectrum))
        else:
            out.append(corpus.random_operator(rng, X))
    return out


def run_theorem(theorem_id: str, space: NormSpace | None = None, operator: at.Operator | None = None,
                trials: int | None = None, seed: int = 42, tol: float = TOL) -> TheoremReport:
    """Run one check over the given space/operator or over its default corpus."""
    if theorem_id not in THEOREM_IDS:
        raise ValueError(f"unknown theorem id {theorem_id!r}")
    rng = np.random.default_rng(seed)
    tid = theorem_id

    if tid == "remark-nonsmooth":
        return check_nonsmooth_counterexample(space, tol)
    if tid == "remark-linf-asym":
        return check_linf_asymmetry(tol)

    if tid == "lemma-hyperspace":
        reps, labels = [], []
        for name, T in _ops(operator).items():
            for j, x in enumerate(_members(T, at.MAX, tol)):
                reps.append(check_hyperspace_lemma(T, x, tol))
                labels.append(f"{name}#{j}")
        return combine(tid, reps, labels)

    if tid in ("thm-sip-max", "thm-sip-min"):
        mode = at.MAX if tid == "thm-sip-max" else at.MIN
        ops = _ops(operator)
        reps = [check_sip_characterization(T, mode, rejects=trials or 50, seed=seed, tol=tol)
                for T in ops.values()]
        return combine(tid, reps, list(ops))

    if tid == "thm-preserve":
        reps, labels = [], []
        for name, T in _ops(operator).items():
            for j, x in enumerate(_members(T, at.MIN, tol)):
                reps.append(check_preservation(T, x, trials or 10_000, seed, tol))
                labels.append(f"{name}#{j}")
        return combine(tid, reps, labels)

    if tid == "thm-cardinality":
        if operator is not None:
            return check_cardinality_bound(operator, seed=seed, tol=tol)
        spaces = [space] if space is not None else [nc.lp(3, 2), nc.lp(4, 2)]
        reps, labels = [], []
        for X in spaces:
            for i in range(trials or 25):
                reps.append(check_cardinality_bound(corpus.random_operator(rng, X), seed=seed + i, tol=tol))
                labels.append(f"{X}#{i}")
        return combine(tid, reps, labels)

    if tid in ("thm-hilbert-min", "thm-dimension", "thm-mutual-orth"):
        if operator is not None:
            ops = [operator]
        else:
            kind = "clustered" if tid == "thm-dimension" else "generic"
            ops = _random_hilbert_ops(space, trials or 100, rng, kind)
        if tid == "thm-hilbert-min":
            reps = [check_hilbert_min_characterization(T, tol, seed + i) for i, T in enumerate(ops)]
        elif tid == "thm-dimension":
            reps = [check_dimension_multiplicity(T) for T in ops]
        else:
            reps = [check_mutual_orthogonality(T, tol) for T in ops]
        return combine(tid, reps)

    if tid in ("thm-rank-one", "thm-reflexive-construct"):
        spaces = [space] if space is not None else [nc.euclidean(2), nc.euclidean(3), nc.lp(3, 2)]
        reps, labels = [], []
        for X in spaces:
            for i in range(trials or 20):
                f = rng.standard_normal(X.dim)
                if tid == "thm-rank-one":
                    reps.append(check_rank_one(X, f, rng.standard_normal(X.dim), tol=tol))
                else:
                    reps.append(check_reflexive_construction(X, Hyperspace.from_normal(f), tol=tol))
                labels.append(f"{X}#{i}")
        return combine(tid, reps, labels)

    # thm-euclidean-2d / thm-euclidean-nd
    dim = 2 if tid == "thm-euclidean-2d" else 3
    if space is not None:
        pinned = [operator] if operator is not None else []
        return euclidean_dichotomy(space, trials if trials is not None else 200, seed, pinned, tol)
    n_trials = trials if trials is not None else 50
    hilbert = euclidean_dichotomy(nc.euclidean(dim), n_trials, seed, tol=tol)
    search = euclidean_dichotomy(nc.lp(3, dim), n_trials, seed, tol=tol)
    search.applicable = True
    reps = [hilbert, search]
    return combine(tid, reps, [f"euclidean^{dim}", f"l3^{dim} search"])


def run_all(space=None, operator=None, trials=None, seed: int = 42, tol: float = TOL):
    """Every theorem id, in sorted order, with its default corpus."""
    return [run_theorem(t, space, operator, trials, seed, tol) for t in sorted(THEOREM_IDS)]
