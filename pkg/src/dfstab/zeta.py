"""The C^{4N} coefficient-vector encoding of tensor-product operators.

A single tensor product of per-qubit Pauli combinations maps to a length-4N
vector laid out block-wise: (a01..a0N, a11..a1N, a21..a2N, a31..a3N).
Composition of operators becomes a per-qubit quadratic group law on vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .lindblad import LindbladModel, h_ev
from .pauli import (
    NotProductError,
    PauliFactor,
    PauliProduct,
    pauli_product_from_matrix,
)
from .stabilizer import DFS, build_stabilizers, verify_theorem_7


class NotZetaRepresentable(ValueError):
    """Operator is a proper sum of products or carries a non-unit scale."""


@dataclass(frozen=True)
class ZetaVector:
    n_qubits: int
    coords: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coords) != 4 * self.n_qubits:
            raise ValueError(
                f"expected {4 * self.n_qubits} coordinates, got {len(self.coords)}"
            )

    def block(self, b: int) -> tuple[complex, ...]:
        n = self.n_qubits
        return self.coords[b * n : (b + 1) * n]

    def coord(self, b: int, j: int) -> complex:
        """Coefficient of Pauli axis b (0..3) on qubit j (1-based)."""
        return self.coords[b * self.n_qubits + (j - 1)]

    def as_array(self) -> NDArray[np.complex128]:
        return np.array(self.coords, dtype=complex)

    def to_text(self) -> str:
        def lit(z: complex) -> str:
            return f"{z.real:+g}{z.imag:+g}i"
        return ",".join(lit(complex(z)) for z in self.coords)

    @classmethod
    def identity(cls, n_qubits: int) -> "ZetaVector":
        coords = (1.0,) * n_qubits + (0.0,) * (3 * n_qubits)
        return cls(n_qubits=n_qubits, coords=coords)

    @classmethod
    def zero(cls, n_qubits: int) -> "ZetaVector":
        return cls(n_qubits=n_qubits, coords=(0.0,) * (4 * n_qubits))


def zeta(p: PauliProduct) -> ZetaVector:
    """Map a unit-scale product to its block-layout coefficient vector."""
    if abs(p.global_scale - 1.0) > 1e-12:
        raise NotZetaRepresentable(
            f"global scale {p.global_scale} has no home in the 4N layout; "
            "fold it into a factor first"
        )
    n = p.n_qubits
    coords: list[complex] = []
    for b in range(4):
        coords.extend(p.factors[j].coeffs()[b] for j in range(n))
    return ZetaVector(n_qubits=n, coords=tuple(coords))


def zeta_inverse(v: ZetaVector) -> PauliProduct:
    n = v.n_qubits
    facs = tuple(
        PauliFactor(v.coord(0, j), v.coord(1, j), v.coord(2, j), v.coord(3, j))
        for j in range(1, n + 1)
    )
    return PauliProduct(factors=facs, global_scale=1.0)


def zeta_sum(v1: ZetaVector, v2: ZetaVector) -> ZetaVector:
    """The group law mirroring per-qubit operator composition."""
    if v1.n_qubits != v2.n_qubits:
        raise ValueError(f"qubit count mismatch: {v1.n_qubits} vs {v2.n_qubits}")
    n = v1.n_qubits
    blocks: list[list[complex]] = [[], [], [], []]
    for j in range(1, n + 1):
        a0, a1, a2, a3 = (v1.coord(b, j) for b in range(4))
        b0, b1, b2, b3 = (v2.coord(b, j) for b in range(4))
        blocks[0].append(a0 * b0 + a1 * b1 + a2 * b2 + a3 * b3)
        blocks[1].append((a1 * b0 + a0 * b1) + 1j * (a2 * b3 - a3 * b2))
        blocks[2].append((a2 * b0 + a0 * b2) + 1j * (a3 * b1 - a1 * b3))
        blocks[3].append((a3 * b0 + a0 * b3) + 1j * (a1 * b2 - a2 * b1))
    return ZetaVector(n_qubits=n, coords=tuple(itertools.chain(*blocks)))


def symplectic_form(v1: ZetaVector, v2: ZetaVector, l: int, j: int) -> complex:
    """Per-axis, per-qubit cross term; vanishing for all (l, j) encodes commutation."""
    if v1.n_qubits != v2.n_qubits:
        raise ValueError("qubit count mismatch")
    if not 1 <= j <= v1.n_qubits:
        raise ValueError(f"qubit index {j} out of range 1..{v1.n_qubits}")
    a = [v1.coord(b, j) for b in range(4)]
    b = [v2.coord(bb, j) for bb in range(4)]
    if l == 1:
        return a[2] * b[3] - a[3] * b[2]
    if l == 2:
        return a[3] * b[1] - a[1] * b[3]
    if l == 3:
        return a[1] * b[2] - a[2] * b[1]
    raise ValueError(f"axis index {l} out of range 1..3")


@dataclass
class ZetaCode:
    """Additive code given by generators; contains the identity vector."""

    generators: list[ZetaVector]
    n_qubits: int

    @property
    def identity(self) -> ZetaVector:
        return ZetaVector.identity(self.n_qubits)

    def elements(self, depth: int = 2) -> list[ZetaVector]:
        """Close the generator list under the group law up to the given depth."""
        seen: dict[tuple[complex, ...], ZetaVector] = {}
        def add(v: ZetaVector):
            key = tuple(np.round(np.asarray(v.coords, dtype=complex), 10))
            seen.setdefault(key, v)
        add(self.identity)
        frontier = list(self.generators)
        for v in frontier:
            add(v)
        for _ in range(depth - 1):
            new = []
            for v in list(seen.values()):
                for g in self.generators:
                    w = zeta_sum(v, g)
                    key = tuple(np.round(np.asarray(w.coords, dtype=complex), 10))
                    if key not in seen:
                        seen[key] = w
                        new.append(w)
            if not new:
                break
        return list(seen.values())


@dataclass
class ConstraintReport:
    condition_one_ok: bool
    condition_two_ok: bool
    violations: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [
            f"condition_one_ok = {self.condition_one_ok}",
            f"condition_two_ok = {self.condition_two_ok}",
        ]
        lines.extend(f"violation = {v}" for v in self.violations)
        return "\n".join(lines)


def _condition_two_shape(p1: complex, p2: complex, p3: complex, tol: float = 1e-12) -> bool:
    """Per-qubit shape test: one axis zero with the other two i-proportional,
    or a degenerate (at most one nonzero axis) solution."""
    p = [p1, p2, p3]
    nz = [k for k in range(3) if abs(p[k]) > tol]
    if len(nz) <= 1:
        return True
    if len(nz) == 3:
        return False
    i, k = nz
    return abs(p[i] - 1j * p[k]) < tol or abs(p[i] + 1j * p[k]) < tol


def check_code_constraints(code: ZetaCode, tol: float = 1e-12) -> ConstraintReport:
    """Pairwise cross-product constraints plus the per-vector shape constraint."""
    one_ok = True
    two_ok = True
    violations: list[str] = []
    gens = code.generators
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            for j in range(1, code.n_qubits + 1):
                for l in (1, 2, 3):
                    val = symplectic_form(gens[a], gens[b], l, j)
                    if abs(val) > tol:
                        if one_ok:
                            violations.append(
                                f"condition_one violated between generators "
                                f"{a} and {b} at (l={l}, j={j})"
                            )
                        one_ok = False
    for idx, g in enumerate(gens):
        for j in range(1, code.n_qubits + 1):
            if not _condition_two_shape(g.coord(1, j), g.coord(2, j), g.coord(3, j), tol):
                if two_ok:
                    violations.append(
                        f"condition_two violated by generator {idx} at qubit {j}"
                    )
                two_ok = False
    return ConstraintReport(one_ok, two_ok, violations)


def in_zeta_dual(v: ZetaVector, code: ZetaCode, tol: float = 1e-12) -> bool:
    """Membership in the symplectic dual, checked against generators (the forms
    are additive in the second slot over the group law)."""
    for d in code.generators:
        for j in range(1, code.n_qubits + 1):
            for l in (1, 2, 3):
                if abs(symplectic_form(v, d, l, j)) > tol:
                    return False
    return True


@dataclass
class Theorem16Report:
    success: bool
    code: ZetaCode | None
    self_orthogonal: bool
    hamiltonian_in_dual: bool
    claim_used: int
    cross_validated: bool | None = None
    notes: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [
            f"success = {self.success}",
            f"self_orthogonal = {self.self_orthogonal}",
            f"hamiltonian_in_dual = {self.hamiltonian_in_dual}",
            f"claim_used = {self.claim_used}",
        ]
        if self.cross_validated is not None:
            lines.append(f"cross_validated = {self.cross_validated}")
        if self.code is not None:
            for i, g in enumerate(self.code.generators):
                lines.append(f"generator[{i}] = {g.to_text()}")
        lines.extend(f"note = {n}" for n in self.notes)
        return "\n".join(lines)


def _zeta_of_matrix(m: NDArray[np.complex128], n_qubits: int) -> ZetaVector:
    if np.max(np.abs(m)) < 1e-12:
        # the zero operator is represented by the all-zero vector
        return ZetaVector.zero(n_qubits)
    try:
        return zeta(pauli_product_from_matrix(m))
    except NotProductError as exc:
        raise NotZetaRepresentable(str(exc)) from exc


def verify_theorem_16(
    model: LindbladModel,
    kind: str = DFS,
    eigvals: list[complex] | None = None,
    closure_depth: int = 2,
) -> Theorem16Report:
    """Existence check through the additive-code route: C <= C^{perp} and the
    relevant Hamiltonian image in the dual, cross-validated dynamically."""
    claim = 1 if kind == DFS else 2
    sset = build_stabilizers(model, kind, eigvals)
    gens = [_zeta_of_matrix(g, model.n_qubits) for g in sset.generators]
    code = ZetaCode(generators=gens, n_qubits=model.n_qubits)

    self_orth = all(in_zeta_dual(el, code) for el in code.elements(closure_depth))

    if kind == DFS:
        ham = h_ev(model, sset.eigvals[: len(model.jump_ops)])
    else:
        ham = model.h_matrix()
    vham = _zeta_of_matrix(ham, model.n_qubits)
    ham_ok = in_zeta_dual(vham, code)

    report = Theorem16Report(
        success=self_orth and ham_ok,
        code=code,
        self_orthogonal=self_orth,
        hamiltonian_in_dual=ham_ok,
        claim_used=claim,
    )
    if report.success:
        t7 = verify_theorem_7(model, kind, eigvals)
        report.cross_validated = bool(t7.is_stabilizer_code and t7.is_dfs)
        if not report.cross_validated:
            report.notes.append("dynamical pipeline disagrees with the algebraic check")
    return report
