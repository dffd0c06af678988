"""Markovian master equation: dissipator, RK4 integration, DFS/sDFS checks."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .pauli import PauliSum

Matrix = NDArray[np.complex128]


class TraceDriftError(RuntimeError):
    """Integration left the trace = 1 manifold beyond the allowed drift."""


@dataclass(frozen=True)
class LindbladModel:
    """System Hamiltonian plus weighted jump operators (hbar = 1)."""

    n_qubits: int
    h_s: PauliSum
    jump_ops: tuple[tuple[float, PauliSum], ...] = ()

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        for lam, _ in self.jump_ops:
            if lam < 0:
                raise ValueError(f"negative rate {lam}")

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def h_matrix(self) -> Matrix:
        return self.h_s.to_matrix(self.n_qubits)

    def jump_matrices(self) -> list[tuple[float, Matrix]]:
        return [(lam, j.to_matrix(self.n_qubits)) for lam, j in self.jump_ops]

    def rate_scale(self) -> float:
        """Largest rate scale: max of ||H_S|| and lambda_l * ||J_l||^2."""
        scales = [np.linalg.norm(self.h_matrix(), 2)]
        for lam, jm in self.jump_matrices():
            scales.append(lam * np.linalg.norm(jm, 2) ** 2)
        return max(max(scales), 1e-30)


def assert_density_matrix(rho: Matrix, tol: float = 1e-10) -> None:
    rho = np.asarray(rho)
    if np.linalg.norm(rho - rho.conj().T) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"trace is {np.trace(rho)}, expected 1")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() < -tol:
        raise ValueError("density matrix is not positive semidefinite")


def dissipator(model: LindbladModel, rho: Matrix) -> Matrix:
    """L_D(rho) = 1/2 sum_l lambda_l (2 J rho J^dag - J^dag J rho - rho J^dag J)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (model.dim, model.dim):
        raise ValueError(f"dimension mismatch: rho {rho.shape}, model dim {model.dim}")
    out = np.zeros_like(rho)
    for lam, jm in model.jump_matrices():
        jd = jm.conj().T
        jdj = jd @ jm
        out += 0.5 * lam * (2.0 * jm @ rho @ jd - jdj @ rho - rho @ jdj)
    return out


def gamma_op(model: LindbladModel) -> Matrix:
    """Gamma = sum_l lambda_l J_l^dag J_l."""
    out = np.zeros((model.dim, model.dim), dtype=complex)
    for lam, jm in model.jump_matrices():
        out += lam * jm.conj().T @ jm
    return out


def h_ev(model: LindbladModel, eigvals: list[complex]) -> Matrix:
    """H_ev = H_S + (i/2) sum_l lambda_l (c_l^* J_l - c_l J_l^dag)."""
    if len(eigvals) != len(model.jump_ops):
        raise ValueError(
            f"got {len(eigvals)} eigenvalues for {len(model.jump_ops)} jump operators"
        )
    out = model.h_matrix()
    for (lam, jm), c in zip(model.jump_matrices(), eigvals):
        out = out + 0.5j * lam * (np.conj(c) * jm - c * jm.conj().T)
    return out


def _rhs(h: Matrix, jumps: list[tuple[float, Matrix]], rho: Matrix) -> Matrix:
    out = -1j * (h @ rho - rho @ h)
    for lam, jm in jumps:
        jd = jm.conj().T
        jdj = jd @ jm
        out += 0.5 * lam * (2.0 * jm @ rho @ jd - jdj @ rho - rho @ jdj)
    return out


@dataclass
class Trajectory:
    times: NDArray[np.float64]
    states: list[Matrix]
    purities: NDArray[np.float64]

    def to_csv(self, path: str, include_rho: bool = False) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            header = ["t", "purity", "trace_re", "trace_im"]
            if include_rho:
                d = self.states[0].shape[0]
                header += [f"rho_{i}_{j}_{p}" for i in range(d) for j in range(d) for p in ("re", "im")]
            writer.writerow(header)
            for t, rho, pur in zip(self.times, self.states, self.purities):
                tr = np.trace(rho)
                row = [f"{t:.12g}", f"{pur:.12g}", f"{tr.real:.12g}", f"{tr.imag:.12g}"]
                if include_rho:
                    for v in rho.ravel():
                        row += [f"{v.real:.12g}", f"{v.imag:.12g}"]
                writer.writerow(row)


def evolve(
    model: LindbladModel,
    rho0: Matrix,
    t_final: float,
    dt: float | None = None,
    sample_every: int = 1,
) -> Trajectory:
    """Fixed-step classical RK4 integration of the master equation.

    Every retained sample is re-validated: trace within 1e-6 of 1; a drift
    beyond 1e-4 aborts with a step-size diagnostic.
    """
    if dt is None:
        dt = 1e-3 / model.rate_scale()
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_final < 0:
        raise ValueError("t_final must be nonnegative")
    assert_density_matrix(rho0)
    h = model.h_matrix()
    jumps = model.jump_matrices()
    rho = np.asarray(rho0, dtype=complex).copy()
    n_steps = int(round(t_final / dt))
    times = [0.0]
    states = [rho.copy()]
    purities = [float(np.real(np.trace(rho @ rho)))]
    for step in range(n_steps):
        k1 = _rhs(h, jumps, rho)
        k2 = _rhs(h, jumps, rho + 0.5 * dt * k1)
        k3 = _rhs(h, jumps, rho + 0.5 * dt * k2)
        k4 = _rhs(h, jumps, rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if (step + 1) % sample_every == 0 or step == n_steps - 1:
            drift = abs(np.trace(rho) - 1.0)
            if drift > 1e-4:
                raise TraceDriftError(
                    f"trace drifted by {drift:.3e} at t={(step + 1) * dt:.6g}; "
                    f"reduce dt (currently {dt:.3e})"
                )
            times.append((step + 1) * dt)
            states.append(rho.copy())
            purities.append(float(np.real(np.trace(rho @ rho))))
    return Trajectory(np.array(times), states, np.array(purities))


def purity_derivative(model: LindbladModel, rho: Matrix) -> float:
    """d Tr{rho^2}/dt = 2 Re Tr{rho L_D(rho)}; the Hamiltonian part is 0."""
    rho = np.asarray(rho, dtype=complex)
    return float(2.0 * np.real(np.trace(rho @ dissipator(model, rho))))


@dataclass
class DfsReport:
    eigenvalue_table: dict[tuple[int, int], complex] = field(default_factory=dict)
    eigen_condition_ok: bool = False
    commutator_condition_ok: bool = False
    sdfs_gamma_eigenvalue: complex | None = None
    verdict: str = "neither"  # DFS | sDFS | neither
    eigvals: list[complex] = field(default_factory=list)
    max_residual: float = 0.0

    def to_text(self) -> str:
        lines = [
            f"verdict = {self.verdict}",
            f"eigen_condition_ok = {self.eigen_condition_ok}",
            f"commutator_condition_ok = {self.commutator_condition_ok}",
            f"max_residual = {self.max_residual:.3e}",
        ]
        if self.sdfs_gamma_eigenvalue is not None:
            lines.append(f"sdfs_gamma_eigenvalue = {self.sdfs_gamma_eigenvalue}")
        for (l, k), c in sorted(self.eigenvalue_table.items()):
            lines.append(f"c[{l},{k}] = {c}")
        return "\n".join(lines)


def check_dfs(model: LindbladModel, basis: list[NDArray[np.complex128]], tol: float = 1e-10) -> DfsReport:
    """Test the DFS and sDFS conditions on an orthonormal-enough basis.

    DFS: every J_l acts as one scalar c_l on the whole basis and
    [H_ev, J_l] annihilates every basis vector.  sDFS additionally needs
    [H_S, J_l] and [H_S, Gamma] to annihilate the basis and
    Gamma |psi> = g |psi> with g = sum_l lambda_l |c_l|^2.
    """
    basis = [np.asarray(v, dtype=complex).ravel() for v in basis]
    for v in basis:
        if abs(np.linalg.norm(v) - 1.0) > 1e-8:
            raise ValueError("basis vectors must be normalized")
    report = DfsReport()
    if not basis:
        raise ValueError("empty basis")
    jumps = model.jump_matrices()

    # scalar action of each jump operator
    eigvals: list[complex] = []
    eigen_ok = True
    max_res = 0.0
    for l, (_, jm) in enumerate(jumps):
        c = complex(np.vdot(basis[0], jm @ basis[0]))
        eigvals.append(c)
        for k, v in enumerate(basis):
            res = float(np.linalg.norm(jm @ v - c * v))
            max_res = max(max_res, res)
            report.eigenvalue_table[(l, k)] = complex(np.vdot(v, jm @ v))
            if res > tol:
                eigen_ok = False
    report.eigvals = eigvals
    report.max_residual = max_res
    report.eigen_condition_ok = eigen_ok

    hev = h_ev(model, eigvals)
    comm_ok = True
    for _, jm in jumps:
        cm = hev @ jm - jm @ hev
        for v in basis:
            if np.linalg.norm(cm @ v) > tol:
                comm_ok = False
    report.commutator_condition_ok = comm_ok

    is_dfs = eigen_ok and comm_ok
    if not is_dfs:
        report.verdict = "neither"
        return report

    # strong conditions
    hs = model.h_matrix()
    gam = gamma_op(model)
    g = sum(lam * abs(c) ** 2 for (lam, _), c in zip(model.jump_ops, eigvals))
    sdfs_ok = True
    for _, jm in jumps:
        cm = hs @ jm - jm @ hs
        for v in basis:
            if np.linalg.norm(cm @ v) > tol:
                sdfs_ok = False
    cm = hs @ gam - gam @ hs
    for v in basis:
        if np.linalg.norm(cm @ v) > tol:
            sdfs_ok = False
        if np.linalg.norm(gam @ v - g * v) > tol:
            sdfs_ok = False
    if sdfs_ok:
        report.sdfs_gamma_eigenvalue = complex(g)
        report.verdict = "sDFS"
    else:
        report.verdict = "DFS"
    return report
