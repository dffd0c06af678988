"""Complex operator arithmetic on N-qubit systems.

Operators are represented either densely (numpy arrays) or structurally as
tensor products / sums of per-qubit combinations of {I, sigma_x, sigma_y,
sigma_z} with complex coefficients.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

MAX_QUBITS = 6

_PAULI_MATS: dict[str, NDArray[np.complex128]] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(index: str) -> NDArray[np.complex128]:
    """Return the standard 2x2 matrix for one of I, X, Y, Z."""
    try:
        return _PAULI_MATS[index].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli index {index!r}; expected one of I, X, Y, Z")


@dataclass(frozen=True)
class PauliFactor:
    """One qubit's coefficients over the basis (I, sigma_x, sigma_y, sigma_z)."""

    a0: complex = 0.0
    a1: complex = 0.0
    a2: complex = 0.0
    a3: complex = 0.0

    def coeffs(self) -> tuple[complex, complex, complex, complex]:
        return (complex(self.a0), complex(self.a1), complex(self.a2), complex(self.a3))

    def to_matrix(self) -> NDArray[np.complex128]:
        return (
            self.a0 * _PAULI_MATS["I"]
            + self.a1 * _PAULI_MATS["X"]
            + self.a2 * _PAULI_MATS["Y"]
            + self.a3 * _PAULI_MATS["Z"]
        )

    def to_entries(self) -> tuple[complex, complex, complex, complex]:
        """Matrix-entry quadruple (e00, e01, e10, e11) of the 2x2 form."""
        a0, a1, a2, a3 = self.coeffs()
        return (a0 + a3, a1 - 1j * a2, a1 + 1j * a2, a0 - a3)

    @classmethod
    def from_entries(cls, e00: complex, e01: complex, e10: complex, e11: complex) -> "PauliFactor":
        return cls(
            a0=(e00 + e11) / 2,
            a1=(e01 + e10) / 2,
            a2=(e10 - e01) / 2j,
            a3=(e00 - e11) / 2,
        )

    def scaled(self, s: complex) -> "PauliFactor":
        return PauliFactor(self.a0 * s, self.a1 * s, self.a2 * s, self.a3 * s)


def single_qubit_commutator_coeffs(a: PauliFactor, b: PauliFactor) -> PauliFactor:
    """Coefficients of [A, B] for single-qubit operators A, B.

    [A, B] = 2i[(a2 b3 - b2 a3) sx + (a3 b1 - b3 a1) sy + (a1 b2 - b1 a2) sz].
    """
    return PauliFactor(
        a0=0.0,
        a1=2j * (a.a2 * b.a3 - b.a2 * a.a3),
        a2=2j * (a.a3 * b.a1 - b.a3 * a.a1),
        a3=2j * (a.a1 * b.a2 - b.a1 * a.a2),
    )


def _compose_factors(a: PauliFactor, b: PauliFactor) -> PauliFactor:
    """Per-qubit composition: coefficients of the 2x2 product A*B."""
    a0, a1, a2, a3 = a.coeffs()
    b0, b1, b2, b3 = b.coeffs()
    return PauliFactor(
        a0=a0 * b0 + a1 * b1 + a2 * b2 + a3 * b3,
        a1=(a1 * b0 + a0 * b1) + 1j * (a2 * b3 - a3 * b2),
        a2=(a2 * b0 + a0 * b2) + 1j * (a3 * b1 - a1 * b3),
        a3=(a3 * b0 + a0 * b3) + 1j * (a1 * b2 - a2 * b1),
    )


_LETTER_FACTOR = {
    "I": PauliFactor(a0=1.0),
    "X": PauliFactor(a1=1.0),
    "Y": PauliFactor(a2=1.0),
    "Z": PauliFactor(a3=1.0),
}


@dataclass(frozen=True)
class PauliProduct:
    """Tensor product of per-qubit factors times a global complex scale.

    Qubit 1 is the leftmost Kronecker factor (most significant index bits).
    """

    factors: tuple[PauliFactor, ...]
    global_scale: complex = 1.0

    @property
    def n_qubits(self) -> int:
        return len(self.factors)

    @classmethod
    def from_letters(cls, letters: str, scale: complex = 1.0) -> "PauliProduct":
        """Build from a string like "XYIZ" (unit coefficient Pauli letters)."""
        try:
            facs = tuple(_LETTER_FACTOR[ch] for ch in letters)
        except KeyError:
            raise ValueError(f"invalid Pauli letter in {letters!r}")
        return cls(factors=facs, global_scale=scale)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliProduct":
        return cls(factors=tuple(PauliFactor(a0=1.0) for _ in range(n_qubits)))

    def to_matrix(self) -> NDArray[np.complex128]:
        mats = [f.to_matrix() for f in self.factors]
        return self.global_scale * functools.reduce(np.kron, mats)

    def fold_scale(self) -> "PauliProduct":
        """Fold the global scale into the first factor, leaving unit scale."""
        if not self.factors:
            raise ValueError("empty product has no factor to absorb the scale")
        first = self.factors[0].scaled(self.global_scale)
        return PauliProduct(factors=(first,) + self.factors[1:], global_scale=1.0)

    def scaled(self, s: complex) -> "PauliProduct":
        return PauliProduct(self.factors, self.global_scale * s)


def compose(p: PauliProduct, q: PauliProduct) -> PauliProduct:
    """Operator composition P*Q, factor by factor."""
    if p.n_qubits != q.n_qubits:
        raise ValueError(f"qubit count mismatch: {p.n_qubits} vs {q.n_qubits}")
    facs = tuple(_compose_factors(a, b) for a, b in zip(p.factors, q.factors))
    return PauliProduct(factors=facs, global_scale=p.global_scale * q.global_scale)


@dataclass(frozen=True)
class PauliSum:
    """Sum of PauliProduct terms; the representation is intentionally non-unique."""

    terms: tuple[PauliProduct, ...] = field(default_factory=tuple)

    @property
    def n_qubits(self) -> int:
        if not self.terms:
            raise ValueError("empty sum has no qubit count")
        return self.terms[0].n_qubits

    def to_matrix(self, n_qubits: int | None = None) -> NDArray[np.complex128]:
        if not self.terms:
            if n_qubits is None:
                raise ValueError("empty sum needs an explicit qubit count")
            d = 2**n_qubits
            return np.zeros((d, d), dtype=complex)
        for t in self.terms[1:]:
            if t.n_qubits != self.terms[0].n_qubits:
                raise ValueError("terms disagree on qubit count")
        return sum(t.to_matrix() for t in self.terms)

    def scaled(self, s: complex) -> "PauliSum":
        return PauliSum(tuple(t.scaled(s) for t in self.terms))

    def dagger(self) -> "PauliSum":
        out = []
        for t in self.terms:
            facs = tuple(
                PauliFactor(np.conj(f.a0), np.conj(f.a1), np.conj(f.a2), np.conj(f.a3))
                for f in t.factors
            )
            out.append(PauliProduct(facs, np.conj(t.global_scale)))
        return PauliSum(tuple(out))


def to_matrix(op: PauliProduct | PauliSum) -> NDArray[np.complex128]:
    return op.to_matrix()


def _check_square_power_of_two(m: NDArray[np.complex128]) -> int:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    d = m.shape[0]
    n = d.bit_length() - 1
    if d <= 0 or 2**n != d:
        raise ValueError(f"dimension {d} is not a power of 2")
    return n


def pauli_coefficient_tensor(m: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Coefficients of m over the N-fold Pauli product basis.

    Returns a (4,)*N tensor c with m = sum_s c[s] P_{s1} x ... x P_{sN},
    computed qubit by qubit from the matrix-entry form (equivalent to the
    trace projection Tr{P^dag m}/2^N by basis orthogonality).
    """
    m = np.asarray(m, dtype=complex)
    n = _check_square_power_of_two(m)
    # entry -> coefficient map per qubit, entry index e = 2*i + j
    T = 0.5 * np.array(
        [
            [1, 0, 0, 1],
            [0, 1, 1, 0],
            [0, 1j, -1j, 0],
            [1, 0, 0, -1],
        ],
        dtype=complex,
    )
    t = m.reshape((2,) * (2 * n))
    # interleave row/col index of each qubit: (i1, j1, i2, j2, ...)
    order = [k for pair in zip(range(n), range(n, 2 * n)) for k in pair]
    t = np.transpose(t, order).reshape((4,) * n)
    for axis in range(n):
        t = np.moveaxis(np.tensordot(T, t, axes=([1], [axis])), 0, axis)
    return t


def from_matrix(m: NDArray[np.complex128]) -> PauliSum:
    """Expand a dense matrix in the Pauli product basis."""
    c = pauli_coefficient_tensor(m)
    n = c.ndim
    basis = [
        PauliFactor(a0=1.0),
        PauliFactor(a1=1.0),
        PauliFactor(a2=1.0),
        PauliFactor(a3=1.0),
    ]
    terms = []
    for idx in np.argwhere(np.abs(c) > 1e-12):
        coeff = c[tuple(idx)]
        facs = [basis[s] for s in idx]
        facs[0] = facs[0].scaled(coeff)
        terms.append(PauliProduct(factors=tuple(facs), global_scale=1.0))
    return PauliSum(tuple(terms))


class NotProductError(ValueError):
    """The matrix is not a single tensor product of per-qubit combinations."""


def pauli_product_from_matrix(
    m: NDArray[np.complex128], tol: float = 1e-10
) -> PauliProduct:
    """Factor a dense matrix into a single PauliProduct (unit global scale).

    Raises NotProductError when the coefficient tensor has tensor rank > 1,
    i.e. the operator is a proper sum of products.
    """
    c = pauli_coefficient_tensor(m)
    n = c.ndim
    scale = np.max(np.abs(c))
    if scale == 0:
        raise NotProductError("zero operator has no product form")
    anchor = np.unravel_index(np.argmax(np.abs(c)), c.shape)
    pivot = c[anchor]
    factors = []
    for q in range(n):
        sl = list(anchor)
        coeffs = []
        for s in range(4):
            sl[q] = s
            coeffs.append(c[tuple(sl)])
        factors.append(np.array(coeffs))
    # normalize so the outer product of factors reproduces c
    recon = factors[0]
    for f in factors[1:]:
        recon = np.multiply.outer(recon, f)
    recon = recon / (pivot ** (n - 1))
    if not np.allclose(recon, c, atol=tol * scale):
        raise NotProductError("operator is a proper sum of tensor products")
    facs = [PauliFactor(*f) for f in factors]
    facs[0] = facs[0].scaled(pivot ** -(n - 1))
    return PauliProduct(factors=tuple(facs), global_scale=1.0)


def commutator(a: NDArray[np.complex128], b: NDArray[np.complex128]) -> NDArray[np.complex128]:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def coeff_roundtrip(p: PauliFactor) -> tuple[complex, complex, complex, complex]:
    """Matrix-entry quadruple (e00, e01, e10, e11) of a single-qubit factor."""
    return p.to_entries()


def coeff_roundtrip_inverse(e00: complex, e01: complex, e10: complex, e11: complex) -> PauliFactor:
    return PauliFactor.from_entries(e00, e01, e10, e11)
