"""Constructing non-standard flat affine tori, exactly and by randomized search.

Floating point is used only to propose candidates.  A candidate is rounded
to small-denominator rationals and then accepted or rejected by the exact
validator, so nothing returned here rests on a tolerance.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .affine import AffineMap
from .linalg import (
    LinearStructure,
    Matrix,
    StructureKind,
    Vector,
    quaternion_left_mult,
    quaternion_right_mult,
)
from .torus import FlatAffineTorusSpec, InvalidSpecError, check_lattice, validate_spec

_I2 = Matrix([[0, -1], [1, 0]])


def _outer(u: Vector, v: Vector) -> Matrix:
    return Matrix([[a * b for b in v] for a in u])


def complex_rank_one_family(psi, w) -> FlatAffineTorusSpec:
    """Torus on C^m = R^(2m) whose holonomy is built from one complex functional.

    ``psi`` is either a list of m complex coefficients (ints, Fractions or
    ``(re, im)`` pairs) giving ``psi(z) = sum a_k z_k``, or a real 2 x 2m
    matrix whose rows are the real and imaginary parts of ``psi``.  ``w`` is a
    real vector or the index of a complex basis vector.  With ``t_i`` the
    standard basis, ``A_i = psi(t_i) * (w (x) psi)``, so that
    ``Psi(u, v) = psi(u) psi(v) w``.
    """
    if isinstance(psi, Matrix):
        P = psi
        if P.nrows != 2 or P.ncols % 2:
            raise ValueError("psi matrix must be 2 x 2m")
    else:
        rows = ([], [])
        for a in psi:
            re, im = (a if isinstance(a, (tuple, list)) else (a, 0))
            re, im = Fraction(re), Fraction(im)
            rows[0].extend([re, -im])
            rows[1].extend([im, re])
        P = Matrix(rows)
    n = P.ncols
    if n == 0:
        raise ValueError("empty functional")
    S = LinearStructure.complex_standard(n)
    if P @ S.I != _I2 @ P:
        raise ValueError("psi is not complex-linear")
    if isinstance(w, int):
        w = Vector.basis(n, 2 * w)
    w = Vector(w)
    if len(w) != n:
        raise ValueError(f"w has length {len(w)}, expected {n}")
    if not (P @ w).is_zero():
        raise ValueError("psi(w) must vanish, otherwise the holonomy is not nilpotent")
    B = _outer(w, P.row_vector(0)) + _outer(S.I @ w, P.row_vector(1))
    IB = S.I @ B
    eye = Matrix.identity(n)
    gens = []
    for i in range(n):
        a, b = P[0, i], P[1, i]
        gens.append(AffineMap(eye + B * a + IB * b, Vector.basis(n, i)))
    spec = FlatAffineTorusSpec(n, tuple(gens), S)
    report = validate_spec(spec)
    if not report.ok:
        raise InvalidSpecError("rank-one family failed exact validation", report)
    return spec


# ---------------------------------------------------------------------------
# exactification

@dataclass(frozen=True)
class Reject:
    reason: str
    detail: str = ""


def rationalize(x: float, denominator_bound: int = 64) -> Fraction:
    """Continued-fraction rounding to the nearest rational with bounded denominator."""
    if not math.isfinite(x):
        raise ValueError(f"non-finite entry {x!r}")
    return Fraction(x).limit_denominator(denominator_bound)


def _exact_family(candidate, denominator_bound):
    lin, trans = [], []
    for L, t in candidate:
        L = np.asarray(L, dtype=float)
        t = np.asarray(t, dtype=float)
        lin.append(tuple(tuple(rationalize(x, denominator_bound) for x in row) for row in L))
        trans.append(tuple(rationalize(x, denominator_bound) for x in t))
    return tuple(lin), tuple(trans)


def refine_and_exactify(candidate: Sequence, *, structure: LinearStructure | None = None,
                        denominator_bound: int = 64) -> FlatAffineTorusSpec | Reject:
    """Round a float generator family ``[(L_i, t_i), ...]`` and validate it exactly.

    Rejects carry the name of the first failing exact check.
    """
    lin, trans = _exact_family(candidate, denominator_bound)
    return _accept(lin, trans, structure)


def _accept(lin, trans, structure) -> FlatAffineTorusSpec | Reject:
    n = len(lin)
    try:
        gens = tuple(AffineMap(Matrix(L), Vector(t)) for L, t in zip(lin, trans))
        spec = FlatAffineTorusSpec(n, gens, structure)
    except ValueError as exc:
        return Reject("shape", str(exc))
    report = validate_spec(spec)
    bad = report.first_failure()
    if bad is not None:
        return Reject(bad.name, bad.detail)
    return spec


# ---------------------------------------------------------------------------
# randomized search

@dataclass(frozen=True)
class SearchConfig:
    mode: StructureKind
    dim: int
    seed: int = 0
    iterations: int = 1000
    magnitude: int = 3
    denominator_bound: int = 64
    workers: int = 1

    def __post_init__(self):
        mode = StructureKind(self.mode)
        object.__setattr__(self, "mode", mode)
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if mode is StructureKind.COMPLEX and self.dim % 2:
            raise ValueError("complex search needs even dimension")
        if mode is StructureKind.QUATERNIONIC and self.dim % 4:
            raise ValueError("quaternionic search needs dimension divisible by 4")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.iterations < 0 or self.magnitude < 1 or self.denominator_bound < 1:
            raise ValueError("iterations, magnitude and denominator bound must be positive")


@dataclass(frozen=True)
class SearchResult:
    config: SearchConfig
    found: tuple[FlatAffineTorusSpec, ...]
    trials: int
    accepted: int
    rejects: dict = field(default_factory=dict)

    @property
    def nonstandard(self) -> tuple[FlatAffineTorusSpec, ...]:
        return tuple(s for s in self.found if not all(L.is_identity() for L in s.linear_parts))

    def to_dict(self):
        from .specfile import spec_to_dict

        return {
            "mode": self.config.mode.value,
            "dim": self.config.dim,
            "seed": self.config.seed,
            "iterations": self.config.iterations,
            "trials": self.trials,
            "accepted": self.accepted,
            "distinct": len(self.found),
            "nonstandard": len(self.nonstandard),
            # passes every defining check but Z^n does not act as a lattice
            "nonstandard_not_lattice": sum(not check_lattice(s).ok for s in self.nonstandard),
            "rejects": dict(sorted(self.rejects.items())),
            "found": [spec_to_dict(s) for s in self.found],
        }


def _random_unimodular(rng: np.random.Generator, n: int) -> np.ndarray:
    """Integer matrix of determinant +-1: permuted product of unit triangular factors."""
    lower = np.eye(n, dtype=np.int64) + np.tril(rng.integers(-1, 2, size=(n, n)), -1)
    upper = np.eye(n, dtype=np.int64) + np.triu(rng.integers(-1, 2, size=(n, n)), 1)
    perm = np.eye(n, dtype=np.int64)[rng.permutation(n)]
    return perm @ lower @ upper


def _int_inverse(P: np.ndarray) -> np.ndarray:
    inv = Matrix(P.tolist()).inverse()
    return np.array([[int(x) for x in r] for r in inv.rows], dtype=np.int64)


class _Ansatz:
    """A linear parametrization ``x -> (A_1(x), ..., A_n(x))`` of structure-linear matrices."""

    def __init__(self, basis: list[np.ndarray], n: int):
        # basis[p] has shape (n, n, n): the A_i contributed by unknown p
        self.n = n
        self.basis = np.stack(basis) if basis else np.zeros((0, n, n, n))

    @property
    def size(self) -> int:
        return self.basis.shape[0]

    def matrices(self, x: np.ndarray) -> np.ndarray:
        return np.tensordot(x, self.basis, axes=1) if self.size else np.zeros((self.n, self.n, self.n))

    def compatibility_operator(self) -> np.ndarray:
        """Rows: the entries of ``A_i e_j - A_j e_i`` for i < j, as linear forms in x."""
        n = self.n
        iu, ju = np.triu_indices(n, 1)
        # A[p, i, :, j] is A_i e_j for unknown p
        res = self.basis[:, iu, :, ju] - self.basis[:, ju, :, iu]  # (pairs, p, n)
        return res.transpose(0, 2, 1).reshape(-1, self.size)


def _real_ansatz(rng, n, magnitude) -> _Ansatz:
    # strictly upper triangular in the basis given by the columns of P
    P = _random_unimodular(rng, n)
    Pinv = _int_inverse(P)
    basis = []
    for i in range(n):
        for r in range(n):
            for s in range(r + 1, n):
                B = np.zeros((n, n, n))
                B[i] = np.outer(P[:, r], Pinv[s, :])
                basis.append(B)
    return _Ansatz(basis, n)


def _complex_ansatz(rng, n, magnitude) -> _Ansatz:
    # A_i = w (x)_C phi_i with w = e_{z_b} and phi_i(w) = 0
    m = n // 2
    b = int(rng.integers(m))
    I = np.kron(np.eye(m), np.array([[0.0, -1.0], [1.0, 0.0]]))
    w = np.zeros(n)
    w[2 * b] = 1.0
    Iw = I @ w
    basis = []
    for i in range(n):
        for k in range(m):
            if k == b:
                continue
            for re, im in ((1.0, 0.0), (0.0, 1.0)):
                R = np.zeros(n)
                S = np.zeros(n)
                R[2 * k], R[2 * k + 1] = re, -im
                S[2 * k], S[2 * k + 1] = im, re
                B = np.zeros((n, n, n))
                B[i] = np.outer(w, R) + np.outer(Iw, S)
                basis.append(B)
    return _Ansatz(basis, n)


_RIGHT = [np.array([[float(x) for x in r] for r in quaternion_right_mult(u).rows]) for u in range(4)]


def _quaternionic_ansatz(rng, n, magnitude) -> _Ansatz:
    # A_i is right multiplication by an arbitrary m x m quaternionic matrix,
    # i.e. an arbitrary map commuting with left multiplication by i and j.
    m = n // 4
    basis = []
    for i in range(n):
        for r in range(m):
            for s in range(m):
                for u in range(4):
                    B = np.zeros((n, n, n))
                    B[i, 4 * r:4 * r + 4, 4 * s:4 * s + 4] = _RIGHT[u]
                    basis.append(B)
    return _Ansatz(basis, n)


_ANSATZE = {
    StructureKind.REAL: _real_ansatz,
    StructureKind.COMPLEX: _complex_ansatz,
    StructureKind.QUATERNIONIC: _quaternionic_ansatz,
}


def _structure_for(config: SearchConfig) -> LinearStructure | None:
    if config.mode is StructureKind.COMPLEX:
        return LinearStructure.complex_standard(config.dim)
    if config.mode is StructureKind.QUATERNIONIC:
        return LinearStructure.quaternionic_standard(config.dim)
    return None


def _candidate(config: SearchConfig, index: int):
    """One restart: sample an ansatz point and project it onto the compatibility locus."""
    rng = np.random.default_rng(np.random.SeedSequence([config.seed, index]))
    n = config.dim
    ansatz = _ANSATZE[config.mode](rng, n, config.magnitude)
    x0 = rng.integers(-config.magnitude, config.magnitude + 1, size=ansatz.size).astype(float)
    if ansatz.size:
        C = ansatz.compatibility_operator()
        correction, *_ = np.linalg.lstsq(C, C @ x0, rcond=None)
        x = x0 - correction
    else:
        x = x0
    As = ansatz.matrices(x)
    eye = np.eye(n)
    return [(eye + As[i], eye[:, i]) for i in range(n)]


def _run_range(config: SearchConfig, indices, structure, cache):
    found, rejects = {}, Counter()
    accepted = 0
    for idx in indices:
        cand = _candidate(config, idx)
        lin, trans = _exact_family(cand, config.denominator_bound)
        key = (lin, trans)
        outcome = cache.get(key)
        if outcome is None:
            outcome = _accept(lin, trans, structure)
            cache[key] = outcome
        if isinstance(outcome, Reject):
            rejects[outcome.reason] += 1
        else:
            accepted += 1
            found[key] = outcome
    return found, rejects, accepted


def random_search(config: SearchConfig) -> SearchResult:
    """Seeded randomized search; every returned spec passed exact validation.

    Restart ``k`` draws from a generator seeded by ``(config.seed, k)``, and
    the merged result is sorted canonically, so the outcome does not depend
    on ``config.workers``.
    """
    structure = _structure_for(config)
    indices = list(range(config.iterations))
    workers = max(1, config.workers)
    chunks = [indices[k::workers] for k in range(workers)]
    if workers == 1:
        parts = [_run_range(config, chunks[0], structure, {})]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _run_range(config, c, structure, {}), chunks))
    found, rejects = {}, Counter()
    accepted = 0
    for f, r, a in parts:
        found.update(f)
        rejects.update(r)
        accepted += a
    ordered = tuple(found[k] for k in sorted(found, key=_canonical_key))
    return SearchResult(config, ordered, config.iterations, accepted, dict(sorted(rejects.items())))


def _canonical_key(key):
    lin, trans = key
    return (tuple(x for L in lin for r in L for x in r), tuple(x for t in trans for x in t))
