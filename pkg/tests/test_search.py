import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flattori.linalg import LinearStructure, Matrix, StructureKind, Vector
from flattori.search import (
    Reject,
    SearchConfig,
    complex_rank_one_family,
    random_search,
    rationalize,
    refine_and_exactify,
)
from flattori.torus import classify, complex_rank_one, shear, validate_spec


def _floats(spec, noise=0.0, rng=None):
    rng = rng or np.random.default_rng(0)
    out = []
    for g in spec.generators:
        L = np.array(g.linear.tolist(), dtype=float)
        t = np.array([float(x) for x in g.translation])
        out.append((L + noise * rng.standard_normal(L.shape), t + noise * rng.standard_normal(t.shape)))
    return out


class TestComplexRankOne:
    def test_zero_psi_is_standard(self):
        spec = complex_rank_one_family([0, 0], 0)
        assert validate_spec(spec).ok
        assert classify(spec).standard

    def test_matches_gallery(self):
        assert complex_rank_one_family([1, 0], 1) == complex_rank_one()

    def test_three_complex_dimensions(self):
        spec = complex_rank_one_family([(1, 2), (-1, 0), 0], 2)
        assert spec.dim == 6
        assert validate_spec(spec).ok
        assert not classify(spec).standard
        for A in spec.nilpotent_parts:
            assert A @ A == Matrix.zeros(6)

    def test_psi_must_kill_w(self):
        with pytest.raises(ValueError):
            complex_rank_one_family([1, 0], 0)

    def test_psi_must_be_complex_linear(self):
        with pytest.raises(ValueError):
            complex_rank_one_family(Matrix([[1, 0, 0, 0], [0, 0, 0, 0]]), 1)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 3))
    def test_always_valid_and_complex(self, seed, m):
        rng = random.Random(seed)
        b = rng.randrange(m)
        coeffs = [(0, 0) if k == b else (rng.randint(-3, 3), rng.randint(-3, 3)) for k in range(m)]
        spec = complex_rank_one_family(coeffs, b)
        assert validate_spec(spec).ok
        assert spec.structure.kind is StructureKind.COMPLEX


class TestExactify:
    def test_rationalize(self):
        assert rationalize(0.3333333333) == Vector(["1/3"])[0]
        assert rationalize(-2.0000000001) == -2
        with pytest.raises(ValueError):
            rationalize(float("nan"))

    def test_noisy_shear_recovers_exact(self):
        got = refine_and_exactify(_floats(shear(), noise=1e-12))
        assert got == shear()

    def test_incompatible_rejected(self):
        cand = _floats(shear())
        L, t = cand[0]
        cand[0] = (L, t + np.array([0.0, 0.3]))
        got = refine_and_exactify(cand)
        assert isinstance(got, Reject)
        assert got.reason == "compatibility"

    def test_non_nilpotent_rejected(self):
        cand = _floats(shear())
        L, t = cand[1]
        cand[1] = (L + np.array([[0.0, 0.0], [0.5, 0.0]]), t)
        got = refine_and_exactify(cand)
        assert isinstance(got, Reject) and got.reason == "unipotency"

    def test_structure_is_checked(self):
        got = refine_and_exactify(_floats(shear()), structure=LinearStructure.complex_standard(2))
        assert isinstance(got, Reject) and got.reason == "structure_linearity"

    def test_complex_example_survives(self):
        spec = complex_rank_one()
        assert refine_and_exactify(_floats(spec, 1e-10), structure=spec.structure) == spec


class TestConfig:
    def test_rejects_bad_dimension(self):
        with pytest.raises(ValueError):
            SearchConfig(StructureKind.QUATERNIONIC, 6)
        with pytest.raises(ValueError):
            SearchConfig(StructureKind.COMPLEX, 3)
        with pytest.raises(ValueError):
            SearchConfig(StructureKind.REAL, 2, iterations=-1)


class TestSearch:
    def test_real_finds_nonstandard(self):
        res = random_search(SearchConfig(StructureKind.REAL, 2, seed=1, iterations=200))
        assert res.nonstandard
        assert res.trials == 200

    def test_complex_finds_nonstandard(self):
        res = random_search(SearchConfig(StructureKind.COMPLEX, 4, seed=0, iterations=300))
        assert res.nonstandard
        for spec in res.nonstandard:
            assert spec.structure.kind is StructureKind.COMPLEX

    def test_deterministic(self):
        cfg = SearchConfig(StructureKind.COMPLEX, 4, seed=5, iterations=150)
        a, b = random_search(cfg), random_search(cfg)
        assert a.to_dict() == b.to_dict()

    def test_thread_count_does_not_change_result(self):
        one = random_search(SearchConfig(StructureKind.REAL, 3, seed=2, iterations=200, workers=1))
        two = random_search(SearchConfig(StructureKind.REAL, 3, seed=2, iterations=200, workers=3))
        assert one.to_dict() == two.to_dict()

    def test_accounting(self):
        res = random_search(SearchConfig(StructureKind.REAL, 3, seed=4, iterations=120))
        assert res.accepted + sum(res.rejects.values()) == res.trials

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_everything_found_is_valid(self, seed):
        res = random_search(SearchConfig(StructureKind.COMPLEX, 4, seed=seed, iterations=100))
        for spec in res.found:
            assert validate_spec(spec).ok

    @pytest.mark.parametrize("seed", [0, 11, 42])
    def test_quaternionic_four_only_standard(self, seed):
        res = random_search(SearchConfig(StructureKind.QUATERNIONIC, 4, seed=seed, iterations=400))
        assert res.accepted > 0
        assert not res.nonstandard

    def test_quaternionic_eight_only_standard(self):
        res = random_search(SearchConfig(StructureKind.QUATERNIONIC, 8, seed=3, iterations=60))
        assert res.accepted > 0
        assert not res.nonstandard


def test_lattice_failures_are_counted():
    from flattori.torus import check_lattice

    res = random_search(SearchConfig(StructureKind.REAL, 2, seed=7, iterations=1000))
    bad = [s for s in res.nonstandard if not check_lattice(s).ok]
    assert res.to_dict()["nonstandard_not_lattice"] == len(bad)
    for s in bad:
        assert validate_spec(s).ok
