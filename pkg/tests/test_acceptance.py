"""Acceptance suite: one test per criterion, each with its runtime budget.

Every test records a single PASS/FAIL line in ``RESULTS``; the lines are
printed as the test finishes and again in the terminal summary (see
conftest.py), so ``pytest tests/test_acceptance.py`` shows all nine.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest
from scipy.linalg import eigh

from bjgeo import attain as at
from bjgeo import corpus
from bjgeo import norm_core as nc
from bjgeo import verify as v
from bjgeo.bj_ortho import Hyperspace, is_bj_orthogonal, norming_point
from bjgeo.sip import certify_attainment_via_sip

SQRT3 = math.sqrt(3.0)
RESULTS: dict[int, str] = {}


@contextmanager
def criterion(n, title, budget):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - t0
        assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f}s / {budget}s)"
        RESULTS[n] = line
        print(line)


def test_criterion_1_hexagon_projection():
    with criterion(1, "hexagon diag(1,0)", 1.0):
        T = corpus.hexagon_projection()
        M, m = at.solve(T, "max"), at.solve(T, "min")
        assert M.value == pytest.approx(1.0, abs=1e-9)
        assert m.value == pytest.approx(0.0, abs=1e-9)
        assert at.same_set(M, at.AttainmentSet("finite_pairs", 1.0, "max", 2, points=[[1, 0]]))
        assert at.same_set(m, at.AttainmentSet("finite_pairs", 0.0, "min", 2, points=[[0, SQRT3 / 2]]))


def test_criterion_2_hexagon_rotation():
    with criterion(2, "hexagon rotation", 1.0):
        T = corpus.hexagon_rotation()
        M, m = at.solve(T, "max"), at.solve(T, "min")
        assert M.value == pytest.approx(1.0, abs=1e-9)
        for vert in corpus.hexagon().vertex_array:
            assert M.contains(vert) and M.contains(-vert)
        assert m.value == pytest.approx(0.75, abs=1e-9)
        for p in [(0.75, SQRT3 / 4), (0, SQRT3 / 2), (-0.75, SQRT3 / 4)]:
            assert m.contains(p) and m.contains(np.negative(p))
        r = v.euclidean_dichotomy(corpus.hexagon(), trials=0, pinned=[T])
        assert "M_T not ⊥_B m_T" in r.notes


def test_criterion_3_linf_remarks():
    with criterion(3, "max-norm remarks", 1.0):
        r = v.check_nonsmooth_counterexample()
        assert r.passed, r.notes
        X = nc.sup_norm(2)
        T = corpus.linf_rotation()
        x = np.array([1.0, 1.0])
        assert at.solve(T, "max").contains(x)
        assert is_bj_orthogonal(X, x, [0.0, 1.0]).orthogonal
        assert not is_bj_orthogonal(X, nc.normalize(X, T(x)), T([0.0, 1.0])).orthogonal
        r = v.check_linf_asymmetry()
        assert r.passed, r.notes


def generalized_singular_values(T):
    """sqrt of the eigenvalues of T^T G_Y T relative to G_X: no whitening, no SVD."""
    w = eigh(T.matrix.T @ T.codomain.gram_matrix @ T.matrix, T.domain.gram_matrix, eigvals_only=True)
    return np.sqrt(np.clip(w, 0.0, None))


def test_criterion_4_hilbert_suite():
    with criterion(4, "Hilbert suite", 30.0):
        rng = np.random.default_rng(2024)
        for i in range(100):
            n = 2 + i % 4
            X = corpus.random_inner_product_space(rng, n)
            Y = corpus.random_inner_product_space(rng, n)
            T = corpus.random_operator(rng, X, Y)
            M, m = at.attain_hilbert(T, "max"), at.attain_hilbert(T, "min")
            s = generalized_singular_values(T)
            assert M.value == pytest.approx(s[-1], rel=1e-10, abs=1e-10)
            assert m.value == pytest.approx(s[0], abs=1e-10 * max(1.0, s[-1]))
            if n <= 3:
                prof = at.oracle_profile(T, 100_000 if n == 2 else 400_000)
                assert M.value == pytest.approx(prof.max, abs=1e-3)
                assert m.value == pytest.approx(prof.min, abs=1e-3)
            assert v.check_mutual_orthogonality(T).passed
            assert v.check_hilbert_min_characterization(T).passed
            assert v.check_dimension_multiplicity(T).passed


def test_criterion_5_sip_certification():
    with criterion(5, "s.i.p. certification", 10.0):
        for name, T in corpus.example_corpus().items():
            for mode in ("max", "min"):
                S = at.solve(T, mode)
                for x in S.members(T.domain):
                    c = certify_attainment_via_sip(T, x, mode, samples=50, value=S.value)
                    assert c.passed and c.z_basis_checked, (name, mode, x)
                    assert c.residual_max <= 1e-8, (name, mode, c.residual_max)
                r = v.check_sip_characterization(T, mode, rejects=50, seed=1, samples=20)
                assert r.passed, (name, mode, r.notes)
                if S.form != at.WHOLE_SPHERE:
                    assert "50/50 non-members rejected" in r.notes, (name, mode, r.notes)


def test_criterion_6_preservation():
    with criterion(6, "preservation", 30.0):
        for name, T in corpus.example_corpus().items():
            for x in at.solve(T, "min").members(T.domain):
                r = v.check_preservation(T, x, trials=10_000)
                assert r.passed, (name, x, r.notes)
                assert r.max_residual <= nc.TOL


def angular_scan(T, samples=100_000):
    ang = 2.0 * math.pi * np.arange(samples) / samples
    U = np.column_stack([np.cos(ang), np.sin(ang)])
    p = T.domain.p
    U = U / (np.sum(np.abs(U) ** p, axis=1) ** (1.0 / p))[:, None]
    TU = U @ T.matrix.T
    return np.sum(np.abs(TU) ** p, axis=1) ** (1.0 / p)


def test_criterion_7_cardinality():
    with criterion(7, "cardinality bound", 60.0):
        for p in (3, 4):
            L = nc.lp(p, 2)
            rng = np.random.default_rng(p)
            done = 0
            while done < 25:
                T = corpus.random_operator(rng, L)
                if at.is_scalar_isometry_multiple(T):
                    continue
                done += 1
                r = v.check_cardinality_bound(T)
                assert r.passed and r.applicable, r.notes
                wit = {w["label"]: w["value"] for w in r.witnesses}
                count = wit["count"]
                assert count != "inf" and count % 2 == 0 and count <= 4 * (4 * p - 3)
                scan = angular_scan(T).max()
                assert wit["norm"] == pytest.approx(scan, abs=1e-5)
                for x in wit["M_T representatives"]:
                    assert T.image_norm(x) == pytest.approx(scan, abs=1e-5)


def test_criterion_8_rank_one_construction():
    with criterion(8, "rank-one construction", 10.0):
        rng = np.random.default_rng(8)
        for X in (nc.euclidean(2), nc.euclidean(3), nc.lp(3, 2)):
            strict = nc.space_properties(X).strictly_convex
            for _ in range(20):
                H = Hyperspace.from_normal(rng.standard_normal(X.dim))
                T = v.construct_rank_one_for_hyperspace(X, H)
                x = norming_point(X, H.normal)
                M, m = at.solve(T, "max"), at.solve(T, "min")
                assert M.contains(x) and T.image_norm(x) == pytest.approx(M.value, abs=1e-12)
                assert m.value == pytest.approx(0.0, abs=1e-12)
                for z in m.members(X):
                    assert H.contains(z)
                for h in H.basis:
                    assert m.contains(nc.normalize(X, h))
                assert m.subspace_dim() in (None, X.dim - 1) or m.count() == 2
                if strict:
                    assert at.same_set(M, at.AttainmentSet("finite_pairs", M.value, "max", X.dim, points=[x]))


def test_criterion_9_hexagon_asymmetry_witness():
    with criterion(9, "hexagon asymmetry witness", 5.0):
        found = v.asymmetry_search(corpus.hexagon(), samples=1000, seed=0)
        assert found is not None, "no x ⊥_B y with y not ⊥_B x in 1000 samples"
