import numpy as np
import pytest

from dfstab import (
    NotProductError,
    PauliFactor,
    PauliProduct,
    PauliSum,
    compose,
    from_matrix,
    pauli_matrix,
    pauli_product_from_matrix,
)

RNG = np.random.default_rng(7)


def random_factor() -> PauliFactor:
    c = RNG.uniform(-1, 1, size=8)
    return PauliFactor(
        complex(c[0], c[1]), complex(c[2], c[3]), complex(c[4], c[5]), complex(c[6], c[7])
    )


def test_pauli_matrices():
    # [TRIVIAL] the four constants
    assert np.array_equal(pauli_matrix("I"), np.eye(2))
    assert np.array_equal(pauli_matrix("X"), np.array([[0, 1], [1, 0]]))
    assert np.array_equal(pauli_matrix("Y"), np.array([[0, -1j], [1j, 0]]))
    assert np.array_equal(pauli_matrix("Z"), np.array([[1, 0], [0, -1]]))


def test_factor_entry_roundtrip():
    # [DERIVED] entries <-> coefficients is a bijection
    for _ in range(50):
        f = random_factor()
        g = PauliFactor.from_entries(*f.to_entries())
        assert np.allclose(f.coeffs(), g.coeffs(), atol=1e-12)


def test_compose_matches_matrix_product():
    # [DERIVED] oracle: dense matrix multiplication
    for n in (1, 2, 3):
        for _ in range(20):
            p = PauliProduct(factors=tuple(random_factor() for _ in range(n)))
            q = PauliProduct(factors=tuple(random_factor() for _ in range(n)))
            assert np.allclose(
                compose(p, q).to_matrix(), p.to_matrix() @ q.to_matrix(), atol=1e-12
            )


def test_from_letters():
    m = PauliProduct.from_letters("XZ").to_matrix()
    assert np.array_equal(m, np.kron(pauli_matrix("X"), pauli_matrix("Z")))


def test_qubit_one_is_leftmost_kron_factor():
    # [TRIVIAL] ordering convention
    m = PauliProduct.from_letters("XI").to_matrix()
    assert np.array_equal(m, np.kron(pauli_matrix("X"), np.eye(2)))


def test_from_matrix_roundtrip():
    # [DERIVED] decomposition reproduces the operator
    for n in (1, 2, 3):
        d = 2**n
        m = RNG.normal(size=(d, d)) + 1j * RNG.normal(size=(d, d))
        assert np.allclose(from_matrix(m).to_matrix(n), m, atol=1e-10)


def test_product_recovery():
    # [DERIVED] rank-one factorization recovers tensor products
    p = PauliProduct(factors=tuple(random_factor() for _ in range(3)))
    m = p.to_matrix()
    q = pauli_product_from_matrix(m)
    assert np.allclose(q.to_matrix(), m, atol=1e-10)


def test_product_recovery_rejects_sums():
    s = PauliSum(
        terms=(PauliProduct.from_letters("XX"), PauliProduct.from_letters("ZZ"))
    )
    with pytest.raises(NotProductError):
        pauli_product_from_matrix(s.to_matrix())


def test_dagger():
    p = PauliProduct(factors=tuple(random_factor() for _ in range(2)), global_scale=1 - 2j)
    s = PauliSum(terms=(p,))
    assert np.allclose(s.dagger().to_matrix(2), s.to_matrix(2).conj().T, atol=1e-12)


# property-based checks

from hypothesis import given, settings
from hypothesis import strategies as st

finite = st.floats(-2, 2, allow_nan=False, allow_infinity=False)


@st.composite
def factors(draw):
    vals = [complex(draw(finite), draw(finite)) for _ in range(4)]
    return PauliFactor(*vals)


@given(factors(), factors(), factors())
@settings(max_examples=50, deadline=None)
def test_compose_associative(f1, f2, f3):
    p, q, r = (PauliProduct(factors=(f,)) for f in (f1, f2, f3))
    lhs = compose(compose(p, q), r).to_matrix()
    rhs = compose(p, compose(q, r)).to_matrix()
    assert np.allclose(lhs, rhs, atol=1e-9)


@given(factors())
@settings(max_examples=50, deadline=None)
def test_entry_coefficient_inverse(f):
    g = PauliFactor.from_entries(*f.to_entries())
    assert np.allclose(f.coeffs(), g.coeffs(), atol=1e-9)
