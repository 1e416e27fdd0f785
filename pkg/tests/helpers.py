"""Seeded generators of random exact test instances."""

from __future__ import annotations

import random
from fractions import Fraction

from flattori.affine import AffineMap
from flattori.linalg import Matrix, Vector
from flattori.search import complex_rank_one_family
from flattori.torus import FlatAffineTorusSpec, validate_spec


def unimodular(rng: random.Random, n: int, steps: int = 6) -> Matrix:
    """Random integer matrix with determinant +-1 (product of elementary moves)."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    rng.shuffle(rows)
    return Matrix(rows)


def strictly_upper(rng: random.Random, n: int, mag: int = 3) -> Matrix:
    return Matrix([[rng.randint(-mag, mag) if j > i else 0 for j in range(n)] for i in range(n)])


def random_nilpotent(rng: random.Random, n: int) -> Matrix:
    P = unimodular(rng, n)
    return P @ strictly_upper(rng, n) @ P.inverse()


def random_unipotent(rng: random.Random, n: int) -> Matrix:
    return Matrix.identity(n) + random_nilpotent(rng, n)


def random_vector(rng: random.Random, n: int, mag: int = 4) -> Vector:
    return Vector(Fraction(rng.randint(-mag, mag), rng.choice([1, 1, 2, 3])) for _ in range(n))


def random_matrix(rng: random.Random, n: int, m: int | None = None, mag: int = 3) -> Matrix:
    m = n if m is None else m
    return Matrix([[rng.randint(-mag, mag) for _ in range(m)] for _ in range(n)])


def two_step_spec(rng: random.Random, n: int) -> FlatAffineTorusSpec:
    """Valid spec with Psi(u, v) = sum_a beta_a(u, v) w_a, all w_a in the radical of every beta_a.

    Then A_i A_j = 0, so the holonomy is commuting and unipotent, and Psi is
    symmetric by construction.
    """
    q = rng.randint(1, max(1, n - 1))
    p = n - q
    forms = []
    for _ in range(q):
        S = [[0] * p for _ in range(p)]
        for i in range(p):
            for j in range(i, p):
                S[i][j] = S[j][i] = rng.randint(-2, 2)
        forms.append(S)
    P = unimodular(rng, n)
    Pinv = P.inverse()

    def psi0(y, z):
        out = [Fraction(0)] * n
        for a, S in enumerate(forms):
            out[p + a] = sum((y[i] * S[i][j] * z[j] for i in range(p) for j in range(p)), Fraction(0))
        return Vector(out)

    def psi(u, v):
        return P @ psi0(Pinv @ u, Pinv @ v)

    T = unimodular(rng, n) if rng.random() < 0.5 else P @ unimodular(rng, n)
    ts = T.columns()
    gens = []
    for t in ts:
        A = Matrix.from_columns([psi(t, Vector.basis(n, j)) for j in range(n)])
        gens.append(AffineMap(Matrix.identity(n) + A, t))
    return FlatAffineTorusSpec(n, tuple(gens))


def complex_spec(rng: random.Random, m: int) -> FlatAffineTorusSpec:
    """Rank-one complex family with random coefficients and psi(w) = 0."""
    b = rng.randrange(m)
    coeffs = [(0, 0) if k == b else (rng.randint(-2, 2), rng.randint(-2, 2)) for k in range(m)]
    return complex_rank_one_family(coeffs, b)


def random_valid_spec(rng: random.Random, max_dim: int = 4) -> FlatAffineTorusSpec:
    while True:
        spec = _random_spec(rng, max_dim)
        if validate_spec(spec).ok:
            return spec


def _random_spec(rng, max_dim):
    kind = rng.random()
    if kind < 0.6:
        return two_step_spec(rng, rng.randint(2, max_dim))
    if kind < 0.8 and max_dim >= 2:
        return complex_spec(rng, rng.randint(1, max_dim // 2))
    from flattori.torus import shear, standard

    base = shear() if rng.random() < 0.5 else standard(rng.randint(1, max_dim))
    return base.remarked(unimodular(rng, base.dim))


def perturb_translations(rng: random.Random, spec: FlatAffineTorusSpec) -> FlatAffineTorusSpec:
    """Move one translation, keeping the linear parts (and so their commutation)."""
    n = spec.dim
    gens = list(spec.generators)
    j = rng.randrange(n)
    delta = random_vector(rng, n, mag=2)
    if delta.is_zero():
        delta = Vector.basis(n, rng.randrange(n))
    gens[j] = AffineMap(gens[j].linear, gens[j].translation + delta)
    return FlatAffineTorusSpec(n, tuple(gens), spec.structure)
