"""Build stabilizer sets from Lindblad models and verify the DFS code pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .lindblad import LindbladModel, check_dfs, gamma_op, h_ev, DfsReport

Matrix = NDArray[np.complex128]

DFS = "dfs"
SDFS = "sdfs"


class NonInvertibleNormalization(ValueError):
    """Every candidate eigenvalue c_l is zero, so c_l^{-1} is undefined."""


class NonAbelianError(ValueError):
    """Only abelian stabilizer sets may feed code construction."""


@dataclass
class StabilizerSet:
    generators: list[Matrix]
    eigvals: list[complex]
    kind: str

    def __len__(self) -> int:
        return len(self.generators)


@dataclass
class CodeSpace:
    """Orthonormal basis of the joint +1 eigenspace."""

    basis: Matrix  # shape (2^N, K), columns orthonormal
    n_qubits: int

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def vectors(self) -> list[NDArray[np.complex128]]:
        return [self.basis[:, k] for k in range(self.dim)]

    def projector(self) -> Matrix:
        return self.basis @ self.basis.conj().T


def _choose_eigenvalue(jm: Matrix, tol: float = 1e-8) -> complex:
    """Default branch choice for c_l: among nonzero eigenvalues, the one of
    largest multiplicity; ties broken by largest |c|, then by smallest
    (real, imag) lexicographic order."""
    vals = np.linalg.eigvals(jm)
    scale = max(np.max(np.abs(vals)), 1.0)
    nonzero = [v for v in vals if abs(v) > tol * scale]
    if not nonzero:
        raise NonInvertibleNormalization(
            "all candidate eigenvalues are zero; c^{-1} is undefined"
        )
    # cluster numerically equal eigenvalues
    clusters: list[list[complex]] = []
    for v in nonzero:
        for cl in clusters:
            if abs(v - cl[0]) < tol * scale:
                cl.append(v)
                break
        else:
            clusters.append([v])
    def key(cl):
        m = np.mean(cl)
        return (-len(cl), -abs(m), round(m.real, 9), round(m.imag, 9))
    best = min(clusters, key=key)
    return complex(np.mean(best))


def build_stabilizers(
    model: LindbladModel,
    kind: str = DFS,
    eigvals: list[complex] | None = None,
) -> StabilizerSet:
    """S_l = c_l^{-1} J_l for each jump operator; for sDFS append g^{-1} Gamma."""
    if kind not in (DFS, SDFS):
        raise ValueError(f"kind must be {DFS!r} or {SDFS!r}")
    jumps = model.jump_matrices()
    if eigvals is not None and len(eigvals) != len(jumps):
        raise ValueError("one eigenvalue per jump operator required")
    gens: list[Matrix] = []
    cs: list[complex] = []
    for idx, (_, jm) in enumerate(jumps):
        c = eigvals[idx] if eigvals is not None else _choose_eigenvalue(jm)
        if c == 0:
            raise NonInvertibleNormalization("explicit eigenvalue 0 is not invertible")
        gens.append(jm / c)
        cs.append(complex(c))
    if kind == SDFS:
        g = sum(lam * abs(c) ** 2 for (lam, _), c in zip(model.jump_ops, cs))
        if abs(g) < 1e-14:
            raise NonInvertibleNormalization("Gamma eigenvalue g is zero")
        gens.append(gamma_op(model) / g)
        cs.append(complex(g))
    return StabilizerSet(generators=gens, eigvals=cs, kind=kind)


def is_abelian(s: StabilizerSet, tol: float = 1e-10) -> bool:
    for i in range(len(s.generators)):
        for j in range(i + 1, len(s.generators)):
            a, b = s.generators[i], s.generators[j]
            if np.linalg.norm(a @ b - b @ a) > tol:
                return False
    return True


def joint_plus_one_eigenspace(s: StabilizerSet, n_qubits: int | None = None) -> CodeSpace:
    """Intersect the null spaces of (S_l - I) via SVD of the stacked matrix."""
    if not is_abelian(s):
        raise NonAbelianError("stabilizer set is not abelian")
    if not s.generators:
        if n_qubits is None:
            raise ValueError("empty set needs an explicit qubit count")
        d = 2**n_qubits
        return CodeSpace(basis=np.eye(d, dtype=complex), n_qubits=n_qubits)
    d = s.generators[0].shape[0]
    n = d.bit_length() - 1
    stacked = np.vstack([g - np.eye(d) for g in s.generators])
    _, sv, vh = np.linalg.svd(stacked)
    smax = sv.max() if sv.size else 0.0
    rank = int(np.sum(sv > 1e-10 * max(smax, 1.0)))
    basis = vh.conj().T[:, rank:]
    return CodeSpace(basis=basis, n_qubits=n)


def centralizer_membership(op: Matrix, s: StabilizerSet, tol: float = 1e-10) -> bool:
    op = np.asarray(op, dtype=complex)
    for g in s.generators:
        if op.shape != g.shape:
            raise ValueError(f"dimension mismatch: {op.shape} vs {g.shape}")
        if np.linalg.norm(op @ g - g @ op) > tol:
            return False
    return True


@dataclass
class Theorem7Report:
    code: CodeSpace | None
    is_stabilizer_code: bool
    is_dfs: bool
    claim_used: int
    stabilizers: StabilizerSet | None = None
    dfs_report: DfsReport | None = None
    stabilization_residual: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [
            f"is_stabilizer_code = {self.is_stabilizer_code}",
            f"is_dfs = {self.is_dfs}",
            f"claim_used = {self.claim_used}",
            f"K = {self.code.dim if self.code is not None else 0}",
            f"stabilization_residual = {self.stabilization_residual:.3e}",
        ]
        if self.stabilizers is not None:
            for i, c in enumerate(self.stabilizers.eigvals):
                lines.append(f"c[{i}] = {c}")
        if self.dfs_report is not None:
            lines.append(f"dynamical_verdict = {self.dfs_report.verdict}")
        lines.extend(f"note = {n}" for n in self.notes)
        return "\n".join(lines)


def verify_theorem_7(
    model: LindbladModel,
    kind: str = DFS,
    eigvals: list[complex] | None = None,
    tol: float = 1e-10,
) -> Theorem7Report:
    """Full pipeline: stabilizers -> abelian -> +1 eigenspace -> centralizer
    conditions -> independent dynamical cross-check."""
    claim = 1 if kind == DFS else 2
    sset = build_stabilizers(model, kind, eigvals)
    if not is_abelian(sset, tol):
        return Theorem7Report(
            code=None, is_stabilizer_code=False, is_dfs=False, claim_used=claim,
            stabilizers=sset, notes=["stabilizer set is not abelian"],
        )
    code = joint_plus_one_eigenspace(sset, model.n_qubits)
    report = Theorem7Report(
        code=code, is_stabilizer_code=code.dim > 0, is_dfs=False,
        claim_used=claim, stabilizers=sset,
    )
    res = 0.0
    for g in sset.generators:
        res = max(res, float(np.linalg.norm(g @ code.basis - code.basis)))
    report.stabilization_residual = res
    if code.dim == 0:
        report.notes.append("empty joint +1 eigenspace")
        return report

    n_jumps = len(model.jump_ops)
    if kind == DFS:
        hev = h_ev(model, sset.eigvals[:n_jumps])
        central_ok = centralizer_membership(hev, sset, tol)
        if not central_ok:
            report.notes.append("H_ev not in the centralizer of S_DFS")
    else:
        central_ok = centralizer_membership(model.h_matrix(), sset, tol)
        if not central_ok:
            report.notes.append("H_S not in the centralizer of S_sDFS")
        gamma_gen = sset.generators[-1]
        if np.linalg.norm(gamma_gen @ code.basis - code.basis) > 1e-8:
            central_ok = False
            report.notes.append("S_{M+1} does not stabilize Q")

    dfs_report = check_dfs(model, code.vectors(), tol)
    report.dfs_report = dfs_report
    wanted = ("DFS", "sDFS") if kind == DFS else ("sDFS",)
    report.is_dfs = bool(central_ok and dfs_report.verdict in wanted)
    return report
