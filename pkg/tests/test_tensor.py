import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from wmteleport.operators import ChannelSpec, ProtocolI, flip, kraus_set, wm
from wmteleport.tensor import (
    MixedState,
    PureState,
    apply,
    ket_index,
    kron,
    lift,
    partial_trace,
    project,
)

from brute import lift_naive, partial_trace_naive

SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)

GHZ_LIKE = ("0000", "0101", "1010", "1111")


def basis(num_qubits, bits):
    vec = np.zeros(2**num_qubits, dtype=complex)
    vec[ket_index(bits)] = 1.0
    return PureState(num_qubits, vec)


def resource_vector():
    psi = np.zeros(16, dtype=complex)
    for bits in GHZ_LIKE:
        psi[ket_index(bits)] = 0.5
    return psi


def complex_matrices(n):
    return arrays(
        np.complex128,
        (n, n),
        elements=st.complex_numbers(
            min_magnitude=0.0, max_magnitude=2.0, allow_nan=False, allow_infinity=False
        ),
    )


def test_ket_index_reads_leftmost_as_most_significant():
    assert ket_index("0101") == 5
    assert ket_index("1000") == 8
    with pytest.raises(ValueError):
        ket_index("01a1")


def test_kron_identity():
    out = kron(np.eye(2), np.eye(2))
    np.testing.assert_array_equal(out, np.eye(4))


def test_kron_sigma_x_block():
    out = kron(SX, np.eye(2))
    expected = np.zeros((4, 4))
    expected[0, 2] = expected[1, 3] = expected[2, 0] = expected[3, 1] = 1.0
    np.testing.assert_array_equal(out, expected)


def test_kron_diagonals():
    out = kron(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
    np.testing.assert_array_equal(np.diag(out), [3.0, 4.0, 6.0, 8.0])


def test_lift_single_qubit_flip():
    out = lift(SX, 1, 0)
    np.testing.assert_array_equal(out.matrix, SX)


def test_lift_flip_last_of_four():
    op = lift(flip(1), 4, 3)
    moved = apply(op, basis(4, "0000"))
    np.testing.assert_allclose(moved.amplitudes, basis(4, "0001").amplitudes)


def test_lift_trivial_kraus_is_identity():
    e0 = kraus_set(ChannelSpec("adc", 0.0))[0]
    out = lift(e0, 4, 3)
    np.testing.assert_array_equal(out.matrix, np.eye(16))


def test_apply_weak_measurement_balanced():
    psi = resource_vector()
    out = apply(lift(wm(ProtocolI(np.pi / 2, 0.5), 0), 4, 3), PureState(4, psi))
    np.testing.assert_allclose(out.amplitudes, psi / np.sqrt(2.0))


def test_apply_damping_jump():
    e1 = kraus_set(ChannelSpec("adc", 1.0))[1]
    out = apply(lift(e1, 4, 3), basis(4, "0001"))
    np.testing.assert_allclose(out.amplitudes, basis(4, "0000").amplitudes)


def test_partial_trace_product_state():
    a = np.array([1.0, 0.0], dtype=complex)
    b = np.array([0.6, 0.8], dtype=complex)
    state = PureState(2, np.kron(a, b))
    reduced = partial_trace(state.density(), keep=(0,))
    np.testing.assert_allclose(reduced.matrix, np.outer(a, a.conj()), atol=1e-15)


def test_partial_trace_bell_pair():
    bell = PureState(2, np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0))
    reduced = partial_trace(bell.density(), keep=(0,))
    np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2.0, atol=1e-15)


def test_partial_trace_resource_to_last_qubit():
    extended = PureState(
        5, np.kron(np.array([0.6, 0.8], dtype=complex), resource_vector())
    )
    reduced = partial_trace(extended.density(), keep=(4,))
    np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2.0, atol=1e-15)


def test_project_basis_state():
    out = project(basis(2, "01"), basis(1, "0"), on_qubits=(0,))
    np.testing.assert_almost_equal(out.norm(), 1.0)
    np.testing.assert_allclose(out.amplitudes, basis(1, "1").amplitudes)


def test_project_bell_component():
    bell = PureState(2, np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0))
    out = project(bell, basis(1, "0"), on_qubits=(0,))
    np.testing.assert_almost_equal(out.norm() ** 2, 0.5)
    np.testing.assert_allclose(out.amplitudes, basis(1, "0").amplitudes / np.sqrt(2.0))


def test_project_entangled_measurement_splits_input():
    alpha, beta = 0.6, 0.8
    joint = PureState(
        5, np.kron(np.array([alpha, beta], dtype=complex), resource_vector())
    )
    eta1 = PureState(4, resource_vector())
    residual = project(joint, eta1, on_qubits=(0, 1, 2, 3))
    np.testing.assert_allclose(residual.amplitudes, np.array([alpha, beta]) / 2.0)


@given(complex_matrices(2), complex_matrices(2), complex_matrices(2))
def test_kron_associative(a, b, c):
    left = kron(kron(a, b), c)
    right = kron(a, kron(b, c))
    np.testing.assert_allclose(left, right, atol=1e-12)


@given(complex_matrices(2), complex_matrices(2))
def test_kron_bilinear(a, b):
    np.testing.assert_allclose(kron(2.0 * a, b), 2.0 * kron(a, b), atol=1e-12)
    np.testing.assert_allclose(kron(a + a, b), kron(a, b) + kron(a, b), atol=1e-12)


@given(
    complex_matrices(2),
    complex_matrices(2),
    st.integers(min_value=2, max_value=4),
    st.data(),
)
def test_lift_respects_products(a, b, n, data):
    target = data.draw(st.integers(min_value=0, max_value=n - 1))
    lifted = lift(a @ b, n, target)
    composed = lift(a, n, target).matrix @ lift(b, n, target).matrix
    np.testing.assert_allclose(lifted.matrix, composed, atol=1e-12)


@given(st.integers(min_value=2, max_value=4), st.data())
def test_lift_matches_naive_kron_chain(n, data):
    target = data.draw(st.integers(min_value=0, max_value=n - 1))
    a = data.draw(complex_matrices(2))
    np.testing.assert_allclose(
        lift(a, n, target).matrix, lift_naive(a, n, target), atol=1e-12
    )


@settings(max_examples=25)
@given(
    arrays(
        np.complex128,
        (8,),
        elements=st.complex_numbers(
            min_magnitude=0.0, max_magnitude=1.0, allow_nan=False, allow_infinity=False
        ),
    ).filter(lambda v: np.linalg.norm(v) > 1e-3),
    st.sampled_from([(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)]),
)
def test_partial_trace_preserves_trace_and_hermiticity(vec, keep):
    state = PureState(3, vec / np.linalg.norm(vec))
    reduced = partial_trace(state.density(), keep=keep)
    np.testing.assert_almost_equal(reduced.trace(), 1.0)
    np.testing.assert_allclose(reduced.matrix, reduced.matrix.conj().T, atol=1e-12)


def test_partial_trace_of_everything_is_identity_map():
    rng = np.random.default_rng(11)
    vec = rng.normal(size=8) + 1j * rng.normal(size=8)
    state = PureState(3, vec / np.linalg.norm(vec))
    rho = state.density()
    kept = partial_trace(rho, keep=(0, 1, 2))
    np.testing.assert_allclose(kept.matrix, rho.matrix, atol=1e-15)


@settings(max_examples=20)
@given(
    arrays(
        np.complex128,
        (8,),
        elements=st.complex_numbers(
            min_magnitude=0.0, max_magnitude=1.0, allow_nan=False, allow_infinity=False
        ),
    ).filter(lambda v: np.linalg.norm(v) > 1e-3),
    st.sampled_from([(0,), (2,), (0, 2), (1,)]),
)
def test_partial_trace_matches_naive(vec, keep):
    state = PureState(3, vec / np.linalg.norm(vec))
    rho = state.density()
    fast = partial_trace(rho, keep=keep).matrix
    slow = partial_trace_naive(rho.matrix, list(keep), 3)
    np.testing.assert_allclose(fast, slow, atol=1e-12)


def test_projective_probabilities_sum_to_one():
    rng = np.random.default_rng(3)
    vec = rng.normal(size=8) + 1j * rng.normal(size=8)
    state = PureState(3, vec / np.linalg.norm(vec))
    total = sum(
        project(state, basis(2, f"{k:02b}"), on_qubits=(0, 2)).norm() ** 2
        for k in range(4)
    )
    np.testing.assert_almost_equal(total, 1.0)


def test_pure_state_validates_dimension():
    with pytest.raises(ValueError):
        PureState(2, np.zeros(3, dtype=complex))


def test_mixed_state_rejects_non_hermitian():
    with pytest.raises(ValueError):
        MixedState(1, np.array([[1.0, 1.0], [0.0, 0.0]], dtype=complex))


def test_mixed_state_rejects_negative_operator():
    with pytest.raises(ValueError):
        MixedState(1, np.diag([1.0, -0.5]).astype(complex))


def test_lift_rejects_bad_target():
    with pytest.raises(ValueError):
        lift(SX, 2, 2)
    with pytest.raises(ValueError):
        lift(SX, 2, -1)


def test_project_rejects_unnormalized_basis():
    bell = PureState(2, np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0))
    with pytest.raises(ValueError):
        project(bell, PureState(1, np.array([2.0, 0.0], dtype=complex)), (0,))


def test_project_must_leave_a_qubit():
    bell = PureState(2, np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0))
    with pytest.raises(ValueError):
        project(bell, bell, on_qubits=(0, 1))
