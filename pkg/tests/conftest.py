"""Shared helpers: sampling of commuting operator families.

A commuting family here is built from one isotropic direction d per qubit
(d . d = 0, so one axis is an +-i multiple of another); every element is the
tensor product of (I + t_j d_j . sigma). Composition within the family only
rescales t_j, which keeps the identity block equal to (1, ..., 1) and makes
all elements commute.
"""

import numpy as np

from dfstab import PauliFactor, PauliProduct


def isotropic_direction(rng: np.random.Generator) -> np.ndarray:
    u = rng.normal(size=3)
    v = rng.normal(size=3)
    v = v - (u @ v) / (u @ u) * u
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)
    return u + 1j * v


def family_directions(rng: np.random.Generator, n_qubits: int) -> list[np.ndarray]:
    return [isotropic_direction(rng) for _ in range(n_qubits)]


def family_element(dirs: list[np.ndarray], ts: list[complex]) -> PauliProduct:
    facs = tuple(
        PauliFactor(1.0, t * d[0], t * d[1], t * d[2]) for d, t in zip(dirs, ts)
    )
    return PauliProduct(factors=facs)


def random_ts(rng: np.random.Generator, n_qubits: int) -> list[complex]:
    re = rng.uniform(-1, 1, size=n_qubits)
    im = rng.uniform(-1, 1, size=n_qubits)
    return list(re + 1j * im)
