"""Affine maps of R^n, in the semidirect product GL(n) x R^n.

An :class:`AffineMap` acts by ``x -> linear @ x + translation`` and is
represented homogeneously by the (n+1) x (n+1) matrix
``[[linear, translation], [0, 1]]``; composition is matrix product there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

from .linalg import (
    DimensionError,
    Matrix,
    NotNilpotentError,
    NotUnipotentError,
    Vector,
    as_matrix,
    as_vector,
    commute,
    is_nilpotent,
    is_unipotent,
    left_nullspace,
    nilpotent_exp,
    nilpotent_log,
    nullspace,
)


@dataclass(frozen=True)
class AffineMap:
    linear: Matrix
    translation: Vector

    def __post_init__(self):
        L = as_matrix(self.linear)
        t = as_vector(self.translation)
        if not L.is_square:
            raise DimensionError(f"linear part must be square, got {L.shape}")
        if len(t) != L.nrows:
            raise DimensionError(f"translation has length {len(t)}, expected {L.nrows}")
        object.__setattr__(self, "linear", L)
        object.__setattr__(self, "translation", t)

    @property
    def dim(self) -> int:
        return self.linear.nrows

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(Matrix.identity(n), Vector.zeros(n))

    @classmethod
    def translation_by(cls, t) -> "AffineMap":
        t = as_vector(t)
        return cls(Matrix.identity(len(t)), t)

    @classmethod
    def from_homogeneous(cls, H: Matrix) -> "AffineMap":
        n = H.nrows - 1
        last = H.rows[n]
        if any(last[:n]) or last[n] != 1:
            raise ValueError("bottom row of a homogeneous affine matrix must be (0, ..., 0, 1)")
        return cls(Matrix(r[:n] for r in H.rows[:n]) if n else Matrix.zeros(0), Vector(r[n] for r in H.rows[:n]))

    def homogeneous(self) -> Matrix:
        n = self.dim
        rows = [tuple(r) + (t,) for r, t in zip(self.linear.rows, self.translation)]
        rows.append((Fraction(0),) * n + (Fraction(1),))
        return Matrix(rows)

    def __call__(self, x) -> Vector:
        return self.linear @ as_vector(x) + self.translation

    def is_identity(self) -> bool:
        return self.linear.is_identity() and self.translation.is_zero()

    def inverse(self) -> "AffineMap":
        try:
            Linv = self.linear.inverse()
        except ZeroDivisionError:
            raise ValueError("affine map with singular linear part is not invertible") from None
        return AffineMap(Linv, -(Linv @ self.translation))


def compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """``f o g``: apply ``g`` first."""
    if f.dim != g.dim:
        raise DimensionError(f"cannot compose maps of dimension {f.dim} and {g.dim}")
    return AffineMap(f.linear @ g.linear, f.linear @ g.translation + f.translation)


def linearize(f: AffineMap) -> Matrix:
    return f.linear


class Commutator(NamedTuple):
    map: AffineMap
    diagnostic: Vector


def group_commutator(f: AffineMap, g: AffineMap) -> Commutator:
    """Return ``f g f^-1 g^-1`` and the vector ``(Lf - Id) tg - (Lg - Id) tf``.

    When the linear parts commute the commutator is exactly the translation
    by the diagnostic vector.
    """
    c = compose(compose(f, g), compose(f.inverse(), g.inverse()))
    n = f.dim
    eye = Matrix.identity(n)
    diag = (f.linear - eye) @ g.translation - (g.linear - eye) @ f.translation
    return Commutator(c, diag)


def affine_commute(f: AffineMap, g: AffineMap) -> bool:
    return compose(f, g) == compose(g, f)


def power(f: AffineMap, k: int) -> AffineMap:
    if k < 0:
        f, k = f.inverse(), -k
    result = AffineMap.identity(f.dim)
    base = f
    while k:
        if k & 1:
            result = compose(result, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return result


def first_noncommuting_pair(gens: Sequence[AffineMap]) -> tuple[int, int] | None:
    for i, j in combinations(range(len(gens)), 2):
        if not affine_commute(gens[i], gens[j]):
            return (i, j)
    return None


def power_word(gens: Sequence[AffineMap], m: Sequence[int], *, check: bool = True) -> AffineMap:
    """``gens[0]**m[0] o ... o gens[-1]**m[-1]`` for a commuting family.

    Commutativity makes the order irrelevant; it is verified unless
    ``check=False``.
    """
    if len(m) != len(gens):
        raise DimensionError(f"exponent vector has length {len(m)}, expected {len(gens)}")
    if not gens:
        raise ValueError("empty generator family")
    if check:
        bad = first_noncommuting_pair(gens)
        if bad is not None:
            raise ValueError(f"generators {bad[0]} and {bad[1]} do not commute")
    result = AffineMap.identity(gens[0].dim)
    for g, k in zip(gens, m):
        if k:
            result = compose(result, power(g, k))
    return result


@dataclass(frozen=True)
class FixedPoint:
    """A solution of ``f(x) = x``; ``unique`` is False when a whole affine subspace is fixed."""

    point: Vector
    unique: bool

    def to_dict(self):
        from .reporting import to_jsonable
        return {"fixed": True, "point": to_jsonable(self.point), "unique": self.unique}


@dataclass(frozen=True)
class NoFixedPoint:
    """Certificate: ``functional`` kills the image of ``L - Id`` but not ``t``."""

    functional: Vector

    def to_dict(self):
        from .reporting import to_jsonable
        return {"fixed": False, "functional": to_jsonable(self.functional)}

    def verify(self, f: AffineMap) -> bool:
        D = f.linear - Matrix.identity(f.dim)
        y = self.functional
        return (D.transpose() @ y).is_zero() and y.dot(f.translation) != 0


def fixed_point(f: AffineMap) -> FixedPoint | NoFixedPoint:
    """Solve ``(L - Id) x = -t`` exactly, or certify that ``t`` is not in im(L - Id)."""
    D = f.linear - Matrix.identity(f.dim)
    x = D.solve(-f.translation)
    if x is not None:
        return FixedPoint(x, unique=not nullspace(D))
    for y in left_nullspace(D):
        if y.dot(f.translation) != 0:
            return NoFixedPoint(y)
    raise AssertionError("inconsistent system without a separating functional")


@dataclass(frozen=True)
class AffineVectorField:
    """Element ``x -> linear @ x + translation`` of the affine Lie algebra, linear part nilpotent."""

    linear: Matrix
    translation: Vector

    def __post_init__(self):
        object.__setattr__(self, "linear", as_matrix(self.linear))
        object.__setattr__(self, "translation", as_vector(self.translation))

    def homogeneous(self) -> Matrix:
        n = self.linear.nrows
        rows = [tuple(r) + (t,) for r, t in zip(self.linear.rows, self.translation)]
        rows.append((Fraction(0),) * (n + 1))
        return Matrix(rows)


def affine_log(f: AffineMap) -> AffineVectorField:
    if not is_unipotent(f.linear):
        raise NotUnipotentError("affine log needs a unipotent linear part")
    X = nilpotent_log(f.homogeneous())
    n = f.dim
    return AffineVectorField(Matrix(r[:n] for r in X.rows[:n]) if n else Matrix.zeros(0),
                             Vector(r[n] for r in X.rows[:n]))


def affine_exp(X: AffineVectorField) -> AffineMap:
    if not is_nilpotent(X.linear):
        raise NotNilpotentError("affine exp needs a nilpotent linear part")
    return AffineMap.from_homogeneous(nilpotent_exp(X.homogeneous()))


def linear_parts_commute(gens: Sequence[AffineMap]) -> bool:
    return all(commute(a.linear, b.linear) for a, b in combinations(gens, 2))
