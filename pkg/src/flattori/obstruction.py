"""The (2,1)-tensor of a flat affine torus and why it vanishes in the quaternionic case.

For a torus with generators ``tau_i = (L_i, t_i)`` put ``A_i = L_i - Id`` and
define the bilinear map ``Psi`` on the translation basis by
``Psi(t_i, t_j) = A_i t_j``.  Compatibility of the generators is exactly the
symmetry of ``Psi``; structure-linearity of the ``A_i`` makes ``Psi`` linear
in its second slot.  For a quaternionic structure the two together leave
only ``Psi = 0``:

    K Psi(x, y) = Psi(IJx, y) = Psi(Jx, Iy) = Psi(x, JIy) = -K Psi(x, y)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .linalg import (
    DimensionError,
    LinearStructure,
    Matrix,
    StructureKind,
    Vector,
    commute,
    nullspace_sparse,
)
from .reporting import Check, to_jsonable
from .torus import FlatAffineTorusSpec, InvalidSpecError, classify, validate_spec

_ZERO = Fraction(0)


@dataclass(frozen=True)
class PsiTensor:
    """Components ``c[i][j][k]`` with ``Psi(t_i, t_j) = sum_k c[i][j][k] t_k``.

    ``basis`` holds ``t_1 .. t_n`` as columns; evaluation on ambient vectors
    goes through coordinates in that basis.
    """

    dim: int
    components: tuple
    basis: Matrix
    _basis_inv: Matrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        comps = tuple(tuple(tuple(Fraction(x) for x in ck) for ck in cj) for cj in self.components)
        n = self.dim
        if len(comps) != n or any(len(cj) != n or any(len(ck) != n for ck in cj) for cj in comps):
            raise DimensionError(f"components must be {n} x {n} x {n}")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "_basis_inv", self.basis.inverse())

    @classmethod
    def zero(cls, n: int, basis: Matrix | None = None) -> "PsiTensor":
        z = tuple(tuple((_ZERO,) * n for _ in range(n)) for _ in range(n))
        return cls(n, z, Matrix.identity(n) if basis is None else basis)

    def c(self, i: int, j: int, k: int) -> Fraction:
        return self.components[i][j][k]

    def is_zero(self) -> bool:
        return not any(x for cj in self.components for ck in cj for x in ck)

    def coordinates(self, u: Vector) -> Vector:
        return self._basis_inv @ u

    def on_basis(self, i: int, j: int) -> Vector:
        return self.basis @ Vector(self.components[i][j])

    def __call__(self, u: Vector, v: Vector) -> Vector:
        a = self.coordinates(u)
        b = self.coordinates(v)
        n = self.dim
        out = [_ZERO] * n
        for i in range(n):
            if not a[i]:
                continue
            for j in range(n):
                if not b[j]:
                    continue
                s = a[i] * b[j]
                for k, x in enumerate(self.components[i][j]):
                    if x:
                        out[k] += s * x
        return self.basis @ Vector(out)

    def slice_matrix(self, i: int) -> Matrix:
        """Ambient matrix of ``v -> Psi(t_i, v)``."""
        C = Matrix([[self.components[i][j][k] for j in range(self.dim)] for k in range(self.dim)])
        return self.basis @ C @ self._basis_inv

    def to_dict(self):
        nz = [{"i": i, "j": j, "k": k, "value": to_jsonable(x)}
              for i, j, k in product(range(self.dim), repeat=3)
              if (x := self.components[i][j][k])]
        return {"dim": self.dim, "basis": to_jsonable(self.basis), "nonzero_components": nz,
                "zero": self.is_zero()}


def build_psi(spec: FlatAffineTorusSpec) -> PsiTensor:
    """``c[i][j][k]`` = k-th coordinate of ``A_i t_j`` in the basis ``t``."""
    T = spec.translation_basis()
    try:
        Tinv = T.inverse()
    except ZeroDivisionError:
        raise InvalidSpecError("translations t_i are linearly dependent") from None
    ts = spec.translations
    comps = [[list(Tinv @ (A @ t)) for t in ts] for A in spec.nilpotent_parts]
    return PsiTensor(spec.dim, comps, T)


def psi_symmetric(psi: PsiTensor) -> bool:
    n = psi.dim
    return all(psi.components[i][j] == psi.components[j][i] for i in range(n) for j in range(i + 1, n))


def psi_structure_linear(psi: PsiTensor, S: LinearStructure) -> bool:
    """Is ``v -> Psi(u, v)`` structure-linear for every ``u``?  Checked on the slices ``u = t_i``."""
    if S.dim != psi.dim:
        raise DimensionError(f"structure dimension {S.dim} does not match tensor dimension {psi.dim}")
    return all(commute(psi.slice_matrix(i), op) for i in range(psi.dim) for op in S.operators)


# ---------------------------------------------------------------------------
# the constrained tensor space

@dataclass(frozen=True)
class TensorSpace:
    dim: int
    kind: StructureKind
    dimension: int
    basis: tuple = field(repr=False)  # PsiTensor instances over the standard basis

    def to_dict(self):
        return {"n": self.dim, "mode": self.kind.value, "dimension": self.dimension}


def _sym_index(n: int):
    """Unknown index of the symmetric component (i, j, k), i <= j."""
    idx = {}
    p = 0
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                idx[(i, j, k)] = idx[(j, i, k)] = p
                p += 1
    return idx, p


def constrained_tensor_space(n: int, S: LinearStructure) -> TensorSpace:
    """Exact kernel of: Psi symmetric and each slice commuting with the operators of ``S``.

    Symmetry is built into the unknowns (one per component with i <= j);
    the remaining equations are the entries of ``C_i O - O C_i`` with
    ``(C_i)_{kj} = c[i][j][k]``, for every slice i and operator O.  K = IJ is
    left out because commuting with I and J already implies it.
    """
    if S.dim != n:
        raise DimensionError(f"structure dimension {S.dim} does not match n = {n}")
    idx, nvars = _sym_index(n)
    ops = [[{c: x for c, x in enumerate(r) if x} for r in O.rows] for O in S.operators]
    rows = []
    for O in ops:
        for i in range(n):
            # (C_i O)_{k,l} = sum_j c[i][j][k] O[j][l];  (O C_i)_{k,l} = sum_j O[k][j] c[i][l][j]
            for k in range(n):
                for l in range(n):
                    eq: dict[int, Fraction] = {}
                    for j in range(n):
                        x = O[j].get(l)
                        if x:
                            p = idx[(i, j, k)]
                            eq[p] = eq.get(p, 0) + x
                    for j, x in O[k].items():
                        p = idx[(i, l, j)]
                        eq[p] = eq.get(p, 0) - x
                    eq = {p: v for p, v in eq.items() if v}
                    if eq:
                        rows.append(eq)
    kernel = nullspace_sparse(rows, nvars)
    basis = []
    for vec in kernel:
        comps = [[[vec[idx[(i, j, k)]] for k in range(n)] for j in range(n)] for i in range(n)]
        basis.append(PsiTensor(n, comps, Matrix.identity(n)))
    return TensorSpace(n, S.kind, len(kernel), tuple(basis))


def constrained_tensor_space_dim(n: int, S: LinearStructure) -> int:
    return constrained_tensor_space(n, S).dimension


def obata_uniqueness_dim(S: LinearStructure, n: int | None = None) -> int:
    """Dimension of the space where differences of torsion-free structure-preserving connections live."""
    n = S.dim if n is None else n
    if S.kind is StructureKind.QUATERNIONIC and n % 4:
        raise ValueError("quaternionic dimension must be divisible by 4")
    return constrained_tensor_space_dim(n, S)


def structure_for(kind: StructureKind | str, n: int) -> LinearStructure:
    kind = StructureKind(kind)
    if kind is StructureKind.REAL:
        return LinearStructure.real(n)
    if kind is StructureKind.COMPLEX:
        return LinearStructure.complex_standard(n)
    return LinearStructure.quaternionic_standard(n)


# ---------------------------------------------------------------------------
# triviality certificate

class TheoremViolation(AssertionError):
    """A link of the vanishing argument failed on input that passed validation."""


@dataclass(frozen=True)
class TrivialityCertificate:
    spec: FlatAffineTorusSpec = field(repr=False)
    psi: PsiTensor = field(repr=False)
    links: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.links)

    def recheck(self) -> bool:
        """Re-derive every link from the stored spec."""
        again = prove_trivial(self.spec)
        return again.links == self.links and again.psi == self.psi

    def to_dict(self):
        return {"ok": self.ok, "links": [to_jsonable(c) for c in self.links]}

    def render(self) -> str:
        lines = [f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}" for c in self.links]
        lines.append("hence the spec is standard" if self.ok else "CERTIFICATE BROKEN")
        return "\n".join(lines)


def _anticommutation_chain(psi: PsiTensor, S: LinearStructure):
    """Check the K chain on every pair of basis vectors; return the first broken pair."""
    I, J, K = S.I, S.J, S.K
    IJ, JI = I @ J, J @ I
    for a in range(psi.dim):
        x = psi.basis.column(a)
        for b in range(psi.dim):
            y = psi.basis.column(b)
            v = psi(x, y)
            chain = [K @ v, psi(IJ @ x, y), psi(J @ x, I @ y), psi(x, JI @ y)]
            if any(c != chain[0] for c in chain[1:]) or chain[0] != -(K @ v):
                return (a, b)
    return None


def prove_trivial(spec: FlatAffineTorusSpec) -> TrivialityCertificate:
    """Run the vanishing argument on a quaternionic torus and record each step.

    Refuses (``InvalidSpecError``) anything that is not a valid spec with a
    quaternionic structure preserved by every ``L_i``.
    """
    S = spec.structure
    if S is None or S.kind is not StructureKind.QUATERNIONIC:
        raise InvalidSpecError("prove_trivial needs a quaternionic structure")
    report = validate_spec(spec)
    if not report.ok:
        raise InvalidSpecError(f"invalid spec: {report.first_failure().name} failed", report)

    psi = build_psi(spec)
    links = []

    def link(name, passed, detail):
        links.append(Check(name, passed, detail))
        if not passed:
            raise TheoremViolation(f"link {name!r} failed on a validated spec")

    link("symmetry", psi_symmetric(psi), "Psi(t_i, t_j) = Psi(t_j, t_i), from (L_i - Id) t_j = (L_j - Id) t_i")
    link("quaternionic_linearity", psi_structure_linear(psi, S),
         "v -> Psi(u, v) commutes with I, J (hence K = IJ)")
    link("first_slot_linearity",
         all(psi(O @ psi.basis.column(a), psi.basis.column(b)) == O @ psi(psi.basis.column(a), psi.basis.column(b))
             for O in (S.I, S.J) for a in range(psi.dim) for b in range(psi.dim)),
         "Psi(Lu, v) = L Psi(u, v) for L = I, J, by symmetry")
    broken = _anticommutation_chain(psi, S)
    link("anticommutation", broken is None,
         "K Psi(x,y) = Psi(IJx,y) = Psi(Jx,Iy) = Psi(x,JIy) = -K Psi(x,y) on all basis pairs")
    link("psi_zero", psi.is_zero(), "2 K Psi = 0 with K invertible, so every component vanishes")
    link("holonomy_trivial", all(A.is_zero() for A in spec.nilpotent_parts),
         "A_i t_j = Psi(t_i, t_j) = 0 and the t_j span, so A_i = 0")
    link("standard", classify(spec).standard, "all L_i = Id: the torus is standard")
    return TrivialityCertificate(spec, psi, tuple(links))
