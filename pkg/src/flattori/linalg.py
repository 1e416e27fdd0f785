"""Exact rational linear algebra.

Every predicate used by the rest of the package (unipotency, commutation,
the compatibility equation, tensor kernels) is decided exactly over the
rationals.  Scalars are :class:`fractions.Fraction`; matrices and vectors are
immutable tuples of them.

    >>> N = Matrix([[0, 1], [0, 0]])
    >>> nilpotent_exp(N)
    Matrix([[1, 1], [0, 1]])
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .reporting import Check, ValidationReport

ExactScalar = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class NotNilpotentError(ValueError):
    pass


class NotUnipotentError(ValueError):
    pass


def to_scalar(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Accepts ints, Fractions and strings like ``"-3/4"``.  Floats are refused:
    they would smuggle binary rounding into exact checks.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact scalar")


def format_scalar(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Vector:
    """Immutable column vector of rationals."""

    __slots__ = ("_e",)

    def __init__(self, entries: Iterable):
        self._e = tuple(to_scalar(x) for x in entries)

    @classmethod
    def _wrap(cls, entries: tuple) -> "Vector":
        v = object.__new__(cls)
        v._e = entries
        return v

    @classmethod
    def zeros(cls, n: int) -> "Vector":
        return cls._wrap((_ZERO,) * n)

    @classmethod
    def basis(cls, n: int, i: int) -> "Vector":
        e = [_ZERO] * n
        e[i] = _ONE
        return cls._wrap(tuple(e))

    @property
    def entries(self) -> tuple:
        return self._e

    def __len__(self):
        return len(self._e)

    def __iter__(self):
        return iter(self._e)

    def __getitem__(self, i):
        return self._e[i]

    def _check(self, other: "Vector"):
        if len(other) != len(self):
            raise DimensionError(f"vector lengths {len(self)} and {len(other)} differ")

    def __add__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        self._check(other)
        return Vector._wrap(tuple(a + b for a, b in zip(self._e, other._e)))

    def __sub__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        self._check(other)
        return Vector._wrap(tuple(a - b for a, b in zip(self._e, other._e)))

    def __neg__(self):
        return Vector._wrap(tuple(-a for a in self._e))

    def __mul__(self, c):
        if isinstance(c, (Vector, Matrix)):
            return NotImplemented
        c = to_scalar(c)
        return Vector._wrap(tuple(c * a for a in self._e))

    __rmul__ = __mul__

    def dot(self, other: "Vector") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self._e, other._e) if a and b), _ZERO)

    def is_zero(self) -> bool:
        return not any(self._e)

    def __eq__(self, other):
        if isinstance(other, Vector):
            return self._e == other._e
        if isinstance(other, (tuple, list)):
            return len(other) == len(self._e) and all(a == b for a, b in zip(self._e, other))
        return NotImplemented

    def __hash__(self):
        return hash(("Vector", self._e))

    def __repr__(self):
        return "Vector([" + ", ".join(format_scalar(x) for x in self._e) + "])"


class Matrix:
    """Immutable rectangular matrix of rationals, row-major."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_scalar(x) for x in r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged matrix rows")
            if ncols is not None and ncols != width:
                raise DimensionError(f"expected {ncols} columns, got {width}")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def _wrap(cls, rows: tuple, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._wrap(
            tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls._wrap(tuple((_ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector | Sequence]) -> "Matrix":
        cols = [tuple(to_scalar(x) for x in c) for c in columns]
        if not cols:
            return cls.zeros(0, 0)
        n = len(cols[0])
        if any(len(c) != n for c in cols):
            raise DimensionError("columns of unequal length")
        return cls._wrap(tuple(tuple(c[i] for c in cols) for i in range(n)), len(cols))

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        rows = []
        off = 0
        for b in blocks:
            for r in b._rows:
                rows.append((_ZERO,) * off + r + (_ZERO,) * (m - off - b.ncols))
            off += b.ncols
        return cls._wrap(tuple(rows), m) if n else cls.zeros(0, m)

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._rows[i][j]
        return self._rows[idx]

    def column(self, j: int) -> Vector:
        return Vector._wrap(tuple(r[j] for r in self._rows))

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def row_vector(self, i: int) -> Vector:
        return Vector._wrap(self._rows[i])

    def transpose(self) -> "Matrix":
        if not self.nrows:
            return Matrix.zeros(self.ncols, 0)
        return Matrix._wrap(tuple(zip(*self._rows)), self.nrows)

    T = property(transpose)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def _same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionError(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other)
        return Matrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other)
        return Matrix._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __neg__(self):
        return Matrix._wrap(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def __mul__(self, c):
        if isinstance(c, (Matrix, Vector)):
            return NotImplemented
        c = to_scalar(c)
        return Matrix._wrap(tuple(tuple(c * a for a in r) for r in self._rows), self.ncols)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = to_scalar(c)
        return self * (1 / c)

    def __matmul__(self, other):
        if isinstance(other, Vector):
            if len(other) != self.ncols:
                raise DimensionError(f"cannot apply {self.shape} matrix to length-{len(other)} vector")
            v = other.entries
            return Vector._wrap(
                tuple(sum((a * b for a, b in zip(r, v) if a and b), _ZERO) for r in self._rows)
            )
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            return Matrix._wrap(_matmul(self._rows, other._rows, other.ncols), other.ncols)
        return NotImplemented

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def is_identity(self) -> bool:
        return self.is_square and all(
            (a == 1 if i == j else not a) for i, r in enumerate(self._rows) for j, a in enumerate(r)
        )

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash(("Matrix", self.ncols, self._rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self._rows)
        return f"Matrix([{body}])"

    # Dense Gauss-Jordan is fine at the sizes used here (n <= 16).
    def _gauss_jordan(self, rhs: "Matrix | None" = None):
        n = self.ncols
        aug = [list(r) + (list(rhs._rows[i]) if rhs is not None else []) for i, r in enumerate(self._rows)]
        pivots = []
        row = 0
        for col in range(n):
            piv = next((i for i in range(row, len(aug)) if aug[i][col]), None)
            if piv is None:
                continue
            aug[row], aug[piv] = aug[piv], aug[row]
            p = aug[row][col]
            if p != 1:
                aug[row] = [x / p for x in aug[row]]
            for i in range(len(aug)):
                if i != row and aug[i][col]:
                    f = aug[i][col]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
            pivots.append(col)
            row += 1
            if row == len(aug):
                break
        return aug, pivots

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise DimensionError("inverse of a non-square matrix")
        n = self.nrows
        aug, pivots = self._gauss_jordan(Matrix.identity(n))
        if len(pivots) != n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._wrap(tuple(tuple(r[n:]) for r in aug), n)

    def det(self) -> Fraction:
        if not self.is_square:
            raise DimensionError("determinant of a non-square matrix")
        a = [list(r) for r in self._rows]
        n = self.nrows
        d = _ONE
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col]), None)
            if piv is None:
                return _ZERO
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                d = -d
            p = a[col][col]
            d *= p
            for i in range(col + 1, n):
                if a[i][col]:
                    f = a[i][col] / p
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        return d

    def rank(self) -> int:
        return len(_echelon(_to_int_rows(self._rows)))

    def solve(self, b: Vector) -> Vector | None:
        """One exact solution of ``self @ x == b``, or None if inconsistent."""
        if len(b) != self.nrows:
            raise DimensionError("right-hand side has wrong length")
        rhs = Matrix._wrap(tuple((x,) for x in b.entries), 1)
        aug, pivots = self._gauss_jordan(rhs)
        n = self.ncols
        for r in aug[len(pivots):]:
            if r[n]:
                return None
        x = [_ZERO] * n
        for r, c in enumerate(pivots):
            x[c] = aug[r][n]
        return Vector._wrap(tuple(x))


def _matmul(a_rows, b_rows, bcols) -> tuple:
    out = []
    for row in a_rows:
        acc = [_ZERO] * bcols
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(b_rows[k]):
                    if b:
                        acc[j] += a * b
        out.append(tuple(acc))
    return tuple(out)


def as_matrix(m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(m)


def as_vector(v) -> Vector:
    return v if isinstance(v, Vector) else Vector(v)


def _require_square(M: Matrix):
    if not M.is_square:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")


# ---------------------------------------------------------------------------
# nilpotent / unipotent predicates and terminating series

def is_nilpotent(M: Matrix) -> bool:
    """True iff ``M**n == 0`` for the n x n matrix ``M``.

    Squares until the exponent reaches n, so at most ceil(log2 n) + 1
    products are formed.
    """
    M = as_matrix(M)
    _require_square(M)
    n = M.nrows
    if n == 0:
        return True
    power, exponent = M, 1
    while exponent < n:
        if power.is_zero():
            return True
        power = power @ power
        exponent *= 2
    return power.is_zero()


def is_unipotent(M: Matrix) -> bool:
    M = as_matrix(M)
    _require_square(M)
    return is_nilpotent(M - Matrix.identity(M.nrows))


def commute(M: Matrix, N: Matrix) -> bool:
    M, N = as_matrix(M), as_matrix(N)
    _require_square(M)
    _require_square(N)
    if M.shape != N.shape:
        raise DimensionError(f"shapes {M.shape} and {N.shape} differ")
    return M @ N == N @ M


def nilpotent_exp(N: Matrix) -> Matrix:
    """Exact exponential of a nilpotent matrix: sum of N^k/k! for k < n."""
    N = as_matrix(N)
    _require_square(N)
    if not is_nilpotent(N):
        raise NotNilpotentError("exp series only terminates for nilpotent input")
    n = N.nrows
    result = Matrix.identity(n)
    term = Matrix.identity(n)
    for k in range(1, n):
        term = (term @ N) / k
        if term.is_zero():
            break
        result = result + term
    return result


def nilpotent_log(M: Matrix) -> Matrix:
    """Exact logarithm of a unipotent matrix via the terminating Mercator series."""
    M = as_matrix(M)
    _require_square(M)
    if not is_unipotent(M):
        raise NotUnipotentError("log series only terminates for unipotent input")
    n = M.nrows
    X = M - Matrix.identity(n)
    result = Matrix.zeros(n)
    power = Matrix.identity(n)
    for k in range(1, n):
        power = power @ X
        if power.is_zero():
            break
        term = power / k
        result = result + term if k % 2 else result - term
    return result


# ---------------------------------------------------------------------------
# fraction-free elimination and nullspaces
#
# Rows are sparse dicts {column: int}.  Each new row is reduced against the
# pivot rows found so far with integer cross-multiplication and divided by
# its content, so no rationals appear until back substitution.

def _to_int_rows(rows: Iterable[Sequence[Fraction]]) -> list[dict[int, int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            if x:
                den = den * x.denominator // gcd(den, x.denominator)
        out.append({j: int(x * den) for j, x in enumerate(r) if x})
    return out


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _echelon(rows: Iterable[dict[int, int]]) -> dict[int, dict[int, int]]:
    """Fraction-free row echelon form keyed by pivot column."""
    pivots: dict[int, dict[int, int]] = {}
    for r in rows:
        r = {k: v for k, v in r.items() if v}
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _primitive(r)
                break
            a, b = p[c], r[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in r.items()}
            for k, v in p.items():
                x = new.get(k, 0) - b * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            r = _primitive(new) if new else new
    return pivots


def _reduced_echelon(pivots: dict[int, dict[int, int]]) -> dict[int, dict[int, int]]:
    """Clear every pivot column from all other pivot rows (still integer)."""
    red = dict(pivots)
    order = sorted(red)
    for c in reversed(order):
        pc = red[c]
        for c2 in order:
            if c2 >= c:
                break
            r = red[c2]
            if c in r:
                a, b = pc[c], r[c]
                g = gcd(a, b)
                a, b = a // g, b // g
                new = {k: a * v for k, v in r.items()}
                for k, v in pc.items():
                    x = new.get(k, 0) - b * v
                    if x:
                        new[k] = x
                    else:
                        new.pop(k, None)
                red[c2] = _primitive(new)
    return red


def nullspace_sparse(rows: Iterable[dict[int, int | Fraction]], ncols: int) -> list[Vector]:
    """Exact kernel basis of a sparse system given as ``{column: coefficient}`` rows.

    One basis vector per free column, in increasing column order; each has
    a 1 in its free column and zeros in the other free columns.
    """
    int_rows = []
    for r in rows:
        if any(isinstance(v, Fraction) and v.denominator != 1 for v in r.values()):
            den = 1
            for v in r.values():
                d = Fraction(v).denominator
                den = den * d // gcd(den, d)
            int_rows.append({k: int(Fraction(v) * den) for k, v in r.items()})
        else:
            int_rows.append({k: int(v) for k, v in r.items()})
    red = _reduced_echelon(_echelon(int_rows))
    for c in red:
        if c >= ncols:
            raise DimensionError("row entry beyond declared column count")
    free = [j for j in range(ncols) if j not in red]
    basis = []
    for f in free:
        x = [_ZERO] * ncols
        x[f] = _ONE
        for c, r in red.items():
            v = r.get(f)
            if v:
                x[c] = Fraction(-v, r[c])
        basis.append(Vector._wrap(tuple(x)))
    return basis


def nullspace(M: Matrix) -> list[Vector]:
    """Exact basis of ``{x : M x = 0}``; empty iff ``M`` is injective."""
    M = as_matrix(M)
    return nullspace_sparse(_to_int_rows(M.rows), M.ncols)


def left_nullspace(M: Matrix) -> list[Vector]:
    return nullspace(as_matrix(M).transpose())


def rank(M: Matrix) -> int:
    return as_matrix(M).rank()


def span_contains(basis: Sequence[Vector], v: Vector) -> bool:
    if not basis:
        return v.is_zero()
    B = Matrix.from_columns(basis)
    return B.rank() == Matrix.from_columns(list(basis) + [v]).rank()


# ---------------------------------------------------------------------------
# complex and quaternionic structures

class StructureKind(str, enum.Enum):
    REAL = "real"
    COMPLEX = "complex"
    QUATERNIONIC = "quaternionic"


# Quaternion basis order (1, i, j, k).
_QUAT_TABLE = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion_left_mult(unit: int) -> Matrix:
    """Real 4x4 matrix of x -> u*x for the basis quaternion u (0=1, 1=i, 2=j, 3=k)."""
    cols = []
    for c in range(4):
        sign, idx = _QUAT_TABLE[(unit, c)]
        col = [0] * 4
        col[idx] = sign
        cols.append(col)
    return Matrix.from_columns(cols)


def quaternion_right_mult(unit: int) -> Matrix:
    """Real 4x4 matrix of x -> x*u."""
    cols = []
    for c in range(4):
        sign, idx = _QUAT_TABLE[(c, unit)]
        col = [0] * 4
        col[idx] = sign
        cols.append(col)
    return Matrix.from_columns(cols)


_I2 = Matrix([[0, -1], [1, 0]])


@dataclass(frozen=True)
class LinearStructure:
    """Real, complex (I) or quaternionic (I, J) operator data on R^n.

    ``K`` is never stored; it is always the product ``I @ J``.
    """

    kind: StructureKind
    dim: int
    I: Matrix | None = None
    J: Matrix | None = None

    def __post_init__(self):
        kind = StructureKind(self.kind)
        object.__setattr__(self, "kind", kind)
        need_i = kind is not StructureKind.REAL
        need_j = kind is StructureKind.QUATERNIONIC
        if need_i != (self.I is not None) or need_j != (self.J is not None):
            raise ValueError(f"{kind.value} structure takes operators "
                             f"{'I, J' if need_j else 'I' if need_i else 'none'}")
        for name in ("I", "J"):
            op = getattr(self, name)
            if op is not None:
                op = as_matrix(op)
                object.__setattr__(self, name, op)
                if op.shape != (self.dim, self.dim):
                    raise DimensionError(f"operator {name} has shape {op.shape}, expected {self.dim}x{self.dim}")

    @property
    def K(self) -> Matrix | None:
        if self.kind is not StructureKind.QUATERNIONIC:
            return None
        return self.I @ self.J

    @property
    def operators(self) -> tuple[Matrix, ...]:
        """The independent operators: () for real, (I,) complex, (I, J) quaternionic."""
        if self.kind is StructureKind.REAL:
            return ()
        if self.kind is StructureKind.COMPLEX:
            return (self.I,)
        return (self.I, self.J)

    @classmethod
    def real(cls, n: int) -> "LinearStructure":
        return cls(StructureKind.REAL, n)

    @classmethod
    def complex_standard(cls, n: int) -> "LinearStructure":
        """Multiplication by i on C^(n/2), real coordinates (x1, y1, x2, y2, ...)."""
        if n % 2:
            raise ValueError("complex structure needs even dimension")
        return cls(StructureKind.COMPLEX, n, I=Matrix.block_diag(*[_I2] * (n // 2)))

    @classmethod
    def quaternionic_standard(cls, n: int) -> "LinearStructure":
        """Left multiplication by i and j on H^(n/4), basis (1, i, j, k) per block."""
        if n % 4:
            raise ValueError("quaternionic structure needs dimension divisible by 4")
        m = n // 4
        return cls(
            StructureKind.QUATERNIONIC,
            n,
            I=Matrix.block_diag(*[quaternion_left_mult(1)] * m),
            J=Matrix.block_diag(*[quaternion_left_mult(2)] * m),
        )

    def as_complex(self) -> "LinearStructure":
        """Forget J, keeping the complex structure I."""
        if self.kind is StructureKind.REAL:
            raise ValueError("a real structure has no complex part")
        return LinearStructure(StructureKind.COMPLEX, self.dim, I=self.I)


def is_structure_linear(M: Matrix, S: LinearStructure) -> bool:
    """Does ``M`` commute with every structure operator of ``S``?"""
    M = as_matrix(M)
    if M.shape != (S.dim, S.dim):
        raise DimensionError(f"matrix shape {M.shape} does not match structure dimension {S.dim}")
    ok = all(commute(M, op) for op in S.operators)
    if ok and S.kind is StructureKind.QUATERNIONIC:
        assert commute(M, S.K), "commuting with I and J must imply commuting with K = IJ"
    return ok


def validate_structure(S: LinearStructure) -> ValidationReport:
    n = S.dim
    minus_id = -Matrix.identity(n)
    checks = []
    if S.kind is StructureKind.REAL:
        checks.append(Check("dimension", n >= 0, "real structure: any dimension"))
        return ValidationReport(tuple(checks))
    if S.kind is StructureKind.COMPLEX:
        checks.append(Check("dimension", n % 2 == 0, f"n = {n} must be even"))
        checks.append(Check("I_squared", S.I @ S.I == minus_id, "I^2 = -Id"))
        return ValidationReport(tuple(checks))
    I, J, K = S.I, S.J, S.K
    checks.append(Check("dimension", n % 4 == 0, f"n = {n} must be divisible by 4"))
    checks.append(Check("I_squared", I @ I == minus_id, "I^2 = -Id"))
    checks.append(Check("J_squared", J @ J == minus_id, "J^2 = -Id"))
    checks.append(Check("anticommute", I @ J == -(J @ I), "IJ = -JI"))
    checks.append(Check("K_squared", K @ K == minus_id, "K^2 = -Id with K = IJ"))
    checks.append(Check("IJK", I @ J @ K == minus_id, "IJK = -Id"))
    return ValidationReport(tuple(checks))
