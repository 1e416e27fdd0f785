"""Complete flat affine tori as generator data.

A complete flat affine torus of dimension n is ``R^n / Gamma`` where
``Gamma = Z^n`` is generated by commuting affine maps ``tau_i(x) = L_i x + t_i``
with

* every ``L_i`` unipotent and the ``L_i`` pairwise commuting,
* ``(L_i - Id) t_j == (L_j - Id) t_i`` for all i, j (compatibility),
* ``t_1, ..., t_n`` a basis of R^n.

Group elements are addressed by exponent vectors ``m`` in Z^n.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .affine import (
    AffineMap,
    NoFixedPoint,
    affine_commute,
    affine_exp,
    affine_log,
    compose,
    fixed_point,
    power,
)
from .linalg import (
    LinearStructure,
    Matrix,
    StructureKind,
    Vector,
    commute,
    is_structure_linear,
    is_unipotent,
    left_nullspace,
    nullspace,
    rank,
    validate_structure,
)
from .reporting import Check, ValidationReport, to_jsonable


class InvalidSpecError(ValueError):
    def __init__(self, message: str, report: ValidationReport | None = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class FlatAffineTorusSpec:
    dim: int
    generators: tuple[AffineMap, ...]
    structure: LinearStructure | None = None

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.dim != self.dim:
                raise ValueError(f"generator of dimension {g.dim} in a dimension-{self.dim} spec")
        if self.structure is not None and self.structure.dim != self.dim:
            raise ValueError("structure dimension does not match spec dimension")

    @property
    def linear_parts(self) -> list[Matrix]:
        return [g.linear for g in self.generators]

    @property
    def translations(self) -> list[Vector]:
        return [g.translation for g in self.generators]

    @property
    def nilpotent_parts(self) -> list[Matrix]:
        """``A_i = L_i - Id``."""
        eye = Matrix.identity(self.dim)
        return [L - eye for L in self.linear_parts]

    def translation_basis(self) -> Matrix:
        """Matrix ``T`` whose columns are ``t_1, ..., t_n``."""
        return Matrix.from_columns(self.translations)

    def with_structure(self, structure: LinearStructure | None) -> "FlatAffineTorusSpec":
        return FlatAffineTorusSpec(self.dim, self.generators, structure)

    def remarked(self, P: Matrix) -> "FlatAffineTorusSpec":
        """Re-mark the lattice: new generators ``tau'_j = prod_i tau_i^{P[i][j]}``.

        ``P`` should be unimodular; the new translations are the columns of
        ``T @ P`` when all ``L_i = Id``.
        """
        gens = []
        for j in range(self.dim):
            m = [int(P[i, j]) for i in range(self.dim)]
            gens.append(_word(self.generators, m))
        return FlatAffineTorusSpec(self.dim, tuple(gens), self.structure)


@dataclass(frozen=True)
class GalleryNegative:
    """Holonomy data of an incomplete example; not a torus spec."""

    dim: int
    generators: tuple[AffineMap, ...]
    note: str = ""


def _word(gens: Sequence[AffineMap], m: Sequence[int]) -> AffineMap:
    result = AffineMap.identity(gens[0].dim)
    for g, k in zip(gens, m):
        if k:
            result = compose(result, power(g, k))
    return result


# ---------------------------------------------------------------------------
# validation

def validate_spec(spec: FlatAffineTorusSpec) -> ValidationReport:
    """Run every defining condition exactly and report each with a witness."""
    n = spec.dim
    if len(spec.generators) != n:
        raise InvalidSpecError(f"expected {n} generators, got {len(spec.generators)}")
    Ls = spec.linear_parts
    As = spec.nilpotent_parts
    ts = spec.translations
    checks = []

    bad = [i for i, L in enumerate(Ls) if not is_unipotent(L)]
    checks.append(Check("unipotency", not bad, "each L_i unipotent: (L_i - Id)^n = 0",
                        {"generators": bad} if bad else None))

    bad_pair = next(((i, j) for i, j in combinations(range(n), 2) if not commute(Ls[i], Ls[j])), None)
    checks.append(Check("commutation", bad_pair is None, "L_i L_j = L_j L_i",
                        {"pair": list(bad_pair)} if bad_pair else None))

    witness = None
    for i, j in combinations(range(n), 2):
        lhs, rhs = As[i] @ ts[j], As[j] @ ts[i]
        if lhs != rhs:
            witness = {"pair": [i, j], "difference": lhs - rhs}
            break
    checks.append(Check("compatibility", witness is None, "(L_i - Id) t_j = (L_j - Id) t_i", witness))

    dep = nullspace(spec.translation_basis())
    checks.append(Check("independence", not dep, "t_1, ..., t_n linearly independent",
                        {"relation": dep[0]} if dep else None))

    if spec.structure is not None:
        srep = validate_structure(spec.structure)
        sbad = srep.first_failure()
        checks.append(Check("structure", srep.ok, f"{spec.structure.kind.value} structure relations",
                            {"failed": sbad.name} if sbad else None))
        if srep.ok:
            bad = [i for i, L in enumerate(Ls) if not is_structure_linear(L, spec.structure)]
            checks.append(Check("structure_linearity", not bad,
                                f"each L_i commutes with the {spec.structure.kind.value} operators",
                                {"generators": bad} if bad else None))

    # Given commuting linear parts, tau_i tau_j = tau_j tau_i is the same as
    # compatibility; kept as an independent cross-check.
    bad_pair = next(((i, j) for i, j in combinations(range(n), 2)
                     if not affine_commute(spec.generators[i], spec.generators[j])), None)
    checks.append(Check("affine_commutation", bad_pair is None,
                        "tau_i tau_j = tau_j tau_i (equivalent to compatibility when L_i commute)",
                        {"pair": list(bad_pair)} if bad_pair else None))
    return ValidationReport(tuple(checks))


def require_valid(spec: FlatAffineTorusSpec) -> ValidationReport:
    report = validate_spec(spec)
    if not report.ok:
        raise InvalidSpecError(f"invalid spec: {report.first_failure().name} failed", report)
    return report


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class Classification:
    standard: bool
    complete: bool
    volume_preserving: bool
    exotic_candidate: bool


def classify(spec: FlatAffineTorusSpec | GalleryNegative) -> Classification:
    """Standard / complete / volume-preserving verdicts from the linear holonomy.

    Completeness is read off through the unipotency criterion, valid here
    because the holonomy is abelian.  Gallery negatives are classified from
    their holonomy data alone; any other invalid spec is refused.
    """
    if isinstance(spec, FlatAffineTorusSpec):
        require_valid(spec)
        structure = spec.structure
    else:
        structure = None
    Ls = [g.linear for g in spec.generators]
    standard = all(L.is_identity() for L in Ls)
    complete = all(is_unipotent(L) for L in Ls)
    volume = all(L.det() == 1 for L in Ls)
    exotic = structure is not None and structure.kind is StructureKind.QUATERNIONIC and not standard
    return Classification(standard, complete, volume, exotic)


# ---------------------------------------------------------------------------
# flag

@dataclass(frozen=True)
class Flag:
    """Nested subspaces ``0 = V_0 < V_1 < ... < V_k = R^n``, each as an exact basis.

    ``subspaces[j]`` is the basis of ``V_{j+1}``; ``V_0`` is implicit.
    """

    dim: int
    subspaces: tuple[tuple[Vector, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.subspaces)

    @property
    def dimensions(self) -> list[int]:
        return [len(b) for b in self.subspaces]

    def basis(self, j: int) -> tuple[Vector, ...]:
        return () if j == 0 else self.subspaces[j - 1]

    def annihilator(self, j: int) -> Matrix:
        """Rows spanning the functionals that vanish on ``V_j``."""
        B = self.basis(j)
        if not B:
            return Matrix.identity(self.dim)
        ann = left_nullspace(Matrix.from_columns(B))
        return Matrix([list(v) for v in ann], ncols=self.dim)

    def is_adapted(self, mats: Sequence[Matrix]) -> bool:
        """Does every matrix map ``V_j`` into ``V_{j-1}``?"""
        for j in range(1, self.depth + 1):
            Q = self.annihilator(j - 1)
            for A in mats:
                for b in self.basis(j):
                    if not (Q @ (A @ b)).is_zero():
                        return False
        return True

    def to_dict(self):
        return {"dim": self.dim, "depth": self.depth,
                "subspaces": [[to_jsonable(v) for v in b] for b in self.subspaces]}


class FlagError(AssertionError):
    pass


def build_flag(spec: FlatAffineTorusSpec) -> Flag:
    """Filtration on which every ``A_i = L_i - Id`` acts by strictly lowering degree.

    ``V_1`` is the common kernel of the ``A_i``; each next step is the
    preimage of the previous one.
    """
    require_valid(spec)
    return flag_for(spec.nilpotent_parts, spec.dim)


def flag_for(mats: Sequence[Matrix], n: int) -> Flag:
    subspaces = []
    current: list[Vector] = []
    Q = Matrix.identity(n)
    while len(current) < n:
        stacked = Matrix([row for A in mats for row in (Q @ A).rows], ncols=n) if mats else Matrix.zeros(0, n)
        nxt = nullspace(stacked)
        if len(nxt) <= len(current):
            raise FlagError("filtration stalled: the matrices are not commuting nilpotents")
        current = nxt
        subspaces.append(tuple(nxt))
        ann = left_nullspace(Matrix.from_columns(nxt))
        Q = Matrix([list(v) for v in ann], ncols=n)
    return Flag(n, tuple(subspaces))


# ---------------------------------------------------------------------------
# freeness and orbits on a box of exponent vectors

def _box_words(gens: Sequence[AffineMap], bound: int):
    """Yield ``(m, tau^m)`` for all ``m`` in ``[-bound, bound]^n`` in lexicographic order."""
    n = len(gens)
    rng = range(-bound, bound + 1)
    powers = [{k: power(g, k) for k in rng} for g in gens]

    def rec(i, prefix, acc):
        if i == n:
            yield tuple(prefix), acc
            return
        for k in rng:
            prefix.append(k)
            yield from rec(i + 1, prefix, compose(acc, powers[i][k]) if k else acc)
            prefix.pop()

    yield from rec(0, [], AffineMap.identity(gens[0].dim))


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    bound: int
    checked: int
    violations: tuple  # ((m, fixed point), ...) sorted by m
    certificates: tuple = field(repr=False, default=())  # ((m, functional), ...)

    @property
    def first_violation(self):
        return self.violations[0] if self.violations else None

    def to_dict(self):
        return {
            "free": self.free,
            "bound": self.bound,
            "checked": self.checked,
            "first_violation": to_jsonable(self.first_violation),
            "violations": to_jsonable(self.violations),
            "certificates": [{"m": list(m), "functional": to_jsonable(y)} for m, y in self.certificates],
        }


def check_free(spec: FlatAffineTorusSpec, bound: int) -> FreenessReport:
    """Check that no ``tau^m`` with ``0 < |m|_inf <= bound`` has a fixed point."""
    if bound < 1:
        raise ValueError("bound must be positive")
    violations, certs = [], []
    checked = 0
    for m, f in _box_words(spec.generators, bound):
        if not any(m):
            continue
        checked += 1
        res = fixed_point(f)
        if isinstance(res, NoFixedPoint):
            certs.append((m, res.functional))
        else:
            violations.append((m, res.point))
    return FreenessReport(not violations, bound, checked, tuple(violations), tuple(certs))


@dataclass(frozen=True)
class OrbitReport:
    bound: int
    points: tuple  # ((m, tau^m(0)), ...)
    duplicates: tuple  # ((m, m'), ...) with equal images
    graded_rank: int
    graded_dim: int

    @property
    def distinct(self) -> bool:
        return not self.duplicates

    @property
    def spans_top_graded(self) -> bool:
        return self.graded_rank == self.graded_dim

    @property
    def ok(self) -> bool:
        return self.distinct and self.spans_top_graded

    def to_dict(self):
        return {
            "bound": self.bound,
            "count": len(self.points),
            "distinct": self.distinct,
            "duplicates": [[list(a), list(b)] for a, b in self.duplicates],
            "graded_rank": self.graded_rank,
            "graded_dim": self.graded_dim,
            "spans_top_graded": self.spans_top_graded,
            "ok": self.ok,
        }


def orbit_sample(spec: FlatAffineTorusSpec, bound: int) -> OrbitReport:
    """Orbit of the origin over the box; injectivity plus a graded-lattice proxy.

    The differences of orbit points, projected to the top graded piece
    ``V / V_{k-1}`` of the flag, must span it.
    """
    seen: dict[Vector, tuple] = {}
    points, dups = [], []
    for m, f in _box_words(spec.generators, bound):
        p = f.translation
        points.append((m, p))
        if p in seen:
            dups.append((seen[p], m))
        else:
            seen[p] = m
    try:
        flag = flag_for(spec.nilpotent_parts, spec.dim)
        Q = flag.annihilator(flag.depth - 1)
    except FlagError:
        Q = Matrix.identity(spec.dim)
    origin = points[len(points) // 2][1]  # m = 0 sits in the middle of the box
    diffs = [p - origin for _, p in points]
    projected = [Q @ d for d in diffs]
    graded_dim = Q.nrows
    graded_rank = Matrix.from_columns(projected).rank() if projected and graded_dim else 0
    return OrbitReport(bound, tuple(points), tuple(dups), graded_rank, graded_dim)


def maltsev_families(spec: FlatAffineTorusSpec) -> tuple[list[Vector], list[Vector]]:
    """Two candidate identifications of generators with vectors.

    Returns ``exp(X_i) . 0`` (which is ``t_i``) and the translation part of
    ``X_i = log(tau_i)`` (the velocity of ``exp(s X_i) . 0`` at s = 0).
    For non-trivial holonomy the two families differ.
    """
    logs = [affine_log(g) for g in spec.generators]
    orbit = [affine_exp(X).translation for X in logs]
    tangent = [X.translation for X in logs]
    return orbit, tangent


def independent(vectors: Sequence[Vector]) -> bool:
    return bool(vectors) and rank(Matrix.from_columns(vectors)) == len(vectors)


def check_lattice(spec: FlatAffineTorusSpec) -> ValidationReport:
    """Does ``m -> tau^m`` embed Z^n as a lattice acting simply transitively?

    The generators commute and are unipotent, so ``tau^m = exp(sum m_i X_i)``
    with ``X_i = log tau_i``.  Two checks:

    * ``faithful``: the ``X_i`` are independent, i.e. no ``m != 0`` has
      ``tau^m = id``.  A failure carries an integer relation ``m``.
    * ``simply_transitive``: the translation parts of the ``X_i`` are
      independent, i.e. the orbit map of ``exp(span X_i)`` is a
      diffeomorphism onto R^n.

    Independence of ``t_1, ..., t_n`` alone implies neither: ``(tau, tau^-1)``
    has independent translations whenever ``L t`` is not parallel to ``t``.
    """
    logs = [affine_log(g) for g in spec.generators]
    flat = [Vector([x for r in X.homogeneous().rows for x in r]) for X in logs]
    rel = nullspace(Matrix.from_columns(flat))
    witness = None
    if rel:
        v = rel[0]
        den = 1
        for x in v:
            den = den * x.denominator // math.gcd(den, x.denominator)
        witness = {"relation": [int(x * den) for x in v]}
    tangent = [X.translation for X in logs]
    checks = (
        Check("faithful", not rel, "tau^m = id only for m = 0 (log tau_i independent)", witness),
        Check("simply_transitive", independent(tangent),
              "translation parts of log tau_i independent"),
    )
    return ValidationReport(checks)


# ---------------------------------------------------------------------------
# gallery

def standard(n: int, structure: LinearStructure | None = None) -> FlatAffineTorusSpec:
    gens = tuple(AffineMap.translation_by(Vector.basis(n, i)) for i in range(n))
    return FlatAffineTorusSpec(n, gens, structure)


def shear() -> FlatAffineTorusSpec:
    """Z^2 generated by (x, y) -> (x + 1, y) and (x, y) -> (x + y, y + 1)."""
    return FlatAffineTorusSpec(2, (
        AffineMap(Matrix.identity(2), Vector([1, 0])),
        AffineMap(Matrix([[1, 1], [0, 1]]), Vector([0, 1])),
    ))


def homothety() -> GalleryNegative:
    """(R^2 minus 0) / Z with Z acting by x -> 2x: incomplete, holonomy not unipotent."""
    return GalleryNegative(2, (AffineMap(Matrix([[2, 0], [0, 2]]), Vector.zeros(2)),),
                           note="developing image is R^2 minus the origin; not a complete torus")


def complex_rank_one() -> FlatAffineTorusSpec:
    """C^2 with psi = dz1 and w = e_{z2}: A_1 = w (x) psi, A_2 = I A_1, A_3 = A_4 = 0."""
    from .search import complex_rank_one_family

    return complex_rank_one_family([1, 0], 1)


def quaternionic_standard(n: int = 4) -> FlatAffineTorusSpec:
    return standard(n, LinearStructure.quaternionic_standard(n))


GALLERY_NAMES = ("standard", "shear", "homothety", "complex_rank_one", "quaternionic_standard")

_NAME_RE = re.compile(r"^([a-z_]+?)(?:\((\d+)\)|:(\d+))?$")


def gallery(name: str, n: int | None = None) -> FlatAffineTorusSpec | GalleryNegative:
    """Named examples.  ``standard(3)`` / ``standard:3`` pass the dimension inline."""
    match = _NAME_RE.match(name.strip().lower().replace("-", "_"))
    if not match or match.group(1) not in GALLERY_NAMES:
        raise KeyError(f"unknown gallery entry {name!r}; choose from {', '.join(GALLERY_NAMES)}")
    base = match.group(1)
    inline = match.group(2) or match.group(3)
    if inline is not None:
        n = int(inline)
    if base == "standard":
        return standard(2 if n is None else n)
    if base == "quaternionic_standard":
        return quaternionic_standard(4 if n is None else n)
    if n is not None:
        raise ValueError(f"gallery entry {base!r} has a fixed dimension")
    return {"shear": shear, "homothety": homothety, "complex_rank_one": complex_rank_one}[base]()
