"""Heisenberg-limit probing protocol: extreme-eigenvector probes, code
membership across copy counts, quantum Fisher information, and the
achievability pipeline."""

from __future__ import annotations

import csv
import functools
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .lindblad import LindbladModel
from .pauli import PauliSum, from_matrix
from .stabilizer import DFS, CodeSpace, verify_theorem_7

Matrix = NDArray[np.complex128]
Vector = NDArray[np.complex128]

INDEPENDENT = "independent"
COLLECTIVE = "collective"


def extreme_eigvecs(
    h_s: Matrix, code: CodeSpace | None = None, tol: float = 1e-10
) -> tuple[Vector, float, Vector, float]:
    """Unit eigenvectors for the extreme eigenvalues of a Hermitian operator.

    Degenerate extremes resolve to the eigenspace vector of largest overlap
    with the code space (when given), tie-broken by eigensolver order.
    """
    h_s = np.asarray(h_s, dtype=complex)
    if np.linalg.norm(h_s - h_s.conj().T) > tol * max(1.0, np.linalg.norm(h_s)):
        raise ValueError("Hamiltonian must be Hermitian")
    vals, vecs = np.linalg.eigh(h_s)
    scale = max(np.max(np.abs(vals)), 1.0)

    def pick(target: float) -> Vector:
        idx = np.where(np.abs(vals - target) < 1e-9 * scale)[0]
        sub = vecs[:, idx]
        if code is not None and len(idx) > 1:
            overlap = code.projector() @ sub
            _, sv, vh = np.linalg.svd(overlap)
            best = sub @ vh.conj().T[:, 0]
            return best / np.linalg.norm(best)
        return sub[:, 0]

    lam_min, lam_max = float(vals[0]), float(vals[-1])
    return pick(lam_max), lam_max, pick(lam_min), lam_min


@dataclass
class ProbeState:
    n_copies: int
    amplitudes: Vector
    lambda_max: float
    lambda_min: float


def probe_state(
    psi_max: Vector, lambda_max: float, psi_min: Vector, lambda_min: float, n_copies: int
) -> ProbeState:
    """Normalized (psi_max^{x n} + psi_min^{x n}); the norm accounts for the
    overlap <psi_max|psi_min>^n when the inputs are not orthogonal."""
    if n_copies < 1:
        raise ValueError("n_copies must be >= 1")
    pmax = functools.reduce(np.kron, [psi_max] * n_copies)
    pmin = functools.reduce(np.kron, [psi_min] * n_copies)
    amp = pmax + pmin
    norm = np.sqrt(2.0 + 2.0 * np.real(np.vdot(psi_max, psi_min) ** n_copies))
    if norm < 1e-12:
        raise ValueError("probe superposition vanishes")
    return ProbeState(
        n_copies=n_copies,
        amplitudes=amp / norm,
        lambda_max=lambda_max,
        lambda_min=lambda_min,
    )


def tensor_power_code(code: CodeSpace, n_copies: int) -> CodeSpace:
    basis = code.basis
    out = basis
    for _ in range(n_copies - 1):
        out = np.kron(out, basis)
    return CodeSpace(basis=out, n_qubits=code.n_qubits * n_copies)


def code_membership(state: Vector, code: CodeSpace, n_copies: int = 1, tol: float = 1e-8) -> bool:
    """Project onto the n-copy tensor-power code space; member iff the
    residual norm is below tolerance."""
    big = tensor_power_code(code, n_copies) if n_copies > 1 else code
    state = np.asarray(state, dtype=complex).ravel()
    if state.shape[0] != big.basis.shape[0]:
        raise ValueError(
            f"dimension mismatch: state {state.shape[0]}, code {big.basis.shape[0]}"
        )
    proj = big.basis @ (big.basis.conj().T @ state)
    return float(np.linalg.norm(state - proj)) < tol


def qfi(state: Vector, h: Matrix, tol: float = 1e-10) -> float:
    """Quantum Fisher information 4(<h^2> - <h>^2) of a pure probe."""
    h = np.asarray(h, dtype=complex)
    if np.linalg.norm(h - h.conj().T) > tol * max(1.0, np.linalg.norm(h)):
        raise ValueError("generator must be Hermitian")
    state = np.asarray(state, dtype=complex).ravel()
    hv = h @ state
    mean = np.real(np.vdot(state, hv))
    second = np.real(np.vdot(hv, hv))
    return float(4.0 * (second - mean**2))


def _embed(op: Matrix, slot: int, n_copies: int) -> Matrix:
    d = op.shape[0]
    mats = [np.eye(d, dtype=complex)] * n_copies
    mats[slot] = op
    return functools.reduce(np.kron, mats)


def n_copy_generator(h_s: Matrix, n_copies: int) -> Matrix:
    """h = sum_i I x ... x H_S x ... x I over the probe copies."""
    return sum(_embed(h_s, i, n_copies) for i in range(n_copies))


def n_copy_model(model: LindbladModel, n_copies: int, coupling: str = INDEPENDENT) -> LindbladModel:
    """Extend a single-block model to n probe copies.

    independent: each copy carries its own set of jump operators.
    collective: one jump operator sum_i I x ... J ... x I per original jump.
    """
    if coupling not in (INDEPENDENT, COLLECTIVE):
        raise ValueError(f"unknown coupling mode {coupling!r}")
    n_tot = model.n_qubits * n_copies
    h_big = from_matrix(n_copy_generator(model.h_matrix(), n_copies))
    jumps: list[tuple[float, PauliSum]] = []
    for lam, jm in model.jump_matrices():
        if coupling == INDEPENDENT:
            for i in range(n_copies):
                jumps.append((lam, from_matrix(_embed(jm, i, n_copies))))
        else:
            collective = sum(_embed(jm, i, n_copies) for i in range(n_copies))
            jumps.append((lam, from_matrix(collective)))
    return LindbladModel(n_qubits=n_tot, h_s=h_big, jump_ops=tuple(jumps))


@dataclass
class HlReport:
    member_of_code: bool
    qfi_by_n: dict[int, float]
    bound_delta_eta: dict[int, float]
    hl_achievable: bool
    n_star: int | None
    lambda_max: float
    lambda_min: float
    dissipator_residual: float | None = None
    reason: str | None = None
    notes: list[str] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [
            f"member_of_code = {self.member_of_code}",
            f"hl_achievable = {self.hl_achievable}",
            f"n_star = {self.n_star if self.n_star is not None else 'absent'}",
            f"lambda_max = {self.lambda_max:.12g}",
            f"lambda_min = {self.lambda_min:.12g}",
        ]
        if self.dissipator_residual is not None:
            lines.append(f"dissipator_residual = {self.dissipator_residual:.3e}")
        if self.reason:
            lines.append(f"reason = {self.reason}")
        for n in sorted(self.qfi_by_n):
            lines.append(
                f"qfi[{n}] = {self.qfi_by_n[n]:.12g} bound_delta_eta[{n}] = "
                f"{self.bound_delta_eta[n]:.12g}"
            )
        lines.extend(f"note = {x}" for x in self.notes)
        return "\n".join(lines)

    def to_csv(self, path: str) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "qfi", "bound_delta_eta"])
            for n in sorted(self.qfi_by_n):
                w.writerow([n, f"{self.qfi_by_n[n]:.12g}", f"{self.bound_delta_eta[n]:.12g}"])


def run_protocol(
    model: LindbladModel,
    n_max: int = 4,
    kind: str = DFS,
    eigvals: list[complex] | None = None,
    coupling: str = INDEPENDENT,
) -> HlReport:
    """Decision pipeline: code construction, extreme-eigenvector probe,
    membership per copy count, QFI scaling, dissipator annihilation."""
    t7 = verify_theorem_7(model, kind, eigvals)
    if not (t7.is_stabilizer_code and t7.is_dfs):
        return HlReport(
            member_of_code=False, qfi_by_n={}, bound_delta_eta={},
            hl_achievable=False, n_star=None, lambda_max=0.0, lambda_min=0.0,
            reason="no decoherence-free stabilizer code for this model",
        )
    code = t7.code
    hs = model.h_matrix()
    psi_max, lam_max, psi_min, lam_min = extreme_eigvecs(hs, code)
    gap = lam_max - lam_min
    if gap <= 1e-12:
        return HlReport(
            member_of_code=False, qfi_by_n={}, bound_delta_eta={},
            hl_achievable=False, n_star=None, lambda_max=lam_max, lambda_min=lam_min,
            reason="zero generator gap",
        )

    qfi_by_n: dict[int, float] = {}
    bound: dict[int, float] = {}
    n_star: int | None = None
    member_all = True
    for n in range(1, n_max + 1):
        probe = probe_state(psi_max, lam_max, psi_min, lam_min, n)
        member = code_membership(probe.amplitudes, code, n)
        if member and n_star is None:
            n_star = n
        if n_star is not None and not member:
            member_all = False
        h_n = n_copy_generator(hs, n)
        qfi_by_n[n] = qfi(probe.amplitudes, h_n)
        bound[n] = 1.0 / (n * gap)

    member = n_star is not None and member_all
    report = HlReport(
        member_of_code=member,
        qfi_by_n=qfi_by_n,
        bound_delta_eta=bound,
        hl_achievable=member,
        n_star=n_star,
        lambda_max=lam_max,
        lambda_min=lam_min,
    )
    if member:
        # confirm the dissipator annihilates the probe density matrix
        from .lindblad import dissipator

        n_check = min(2, n_max)
        probe = probe_state(psi_max, lam_max, psi_min, lam_min, n_check)
        rho = np.outer(probe.amplitudes, probe.amplitudes.conj())
        big = n_copy_model(model, n_check, coupling)
        report.dissipator_residual = float(np.linalg.norm(dissipator(big, rho)))
        if report.dissipator_residual > 1e-8:
            report.hl_achievable = False
            report.reason = "dissipator does not annihilate the probe state"
    else:
        report.reason = "probe state not contained in the stabilizer code"
    return report
