import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wmteleport.operators import (
    CHANNEL_KINDS,
    PAULI_I,
    PAULI_X,
    PAULI_Z,
    ChannelSpec,
    ProtocolI,
    ProtocolII,
    correction_unitary,
    flip,
    kraus_set,
    wm,
    wmr,
)
from wmteleport.tensor import is_diagonal, is_unitary

from brute import brute_kraus, brute_wm, brute_wmr

KET0 = np.array([1.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0], dtype=complex)


def test_flip_displays():
    np.testing.assert_array_equal(flip(0) @ KET1, KET1)
    np.testing.assert_array_equal(flip(1) @ KET0, KET1)
    np.testing.assert_array_equal(flip(1) @ flip(1), PAULI_I)


def test_flip_rejects_non_bit():
    with pytest.raises(ValueError):
        flip(2)


def test_wm_protocol_one_action_on_zero():
    omega = 0.7
    out = wm(ProtocolI(omega, 0.5), 0) @ KET0
    np.testing.assert_allclose(out, np.cos(omega / 2.0) * KET0)


def test_wm_protocol_one_balanced_point():
    params = ProtocolI(np.pi / 2, 0.5)
    for i in (0, 1):
        np.testing.assert_allclose(wm(params, i), PAULI_I / np.sqrt(2.0))


def test_wm_protocol_two_balanced_point():
    params = ProtocolII(0.0, 0.5)
    for i in (0, 1):
        np.testing.assert_allclose(wm(params, i), PAULI_I / np.sqrt(2.0))


def test_wmr_protocol_one_filters_zero():
    q = 0.3
    out = wmr(ProtocolI(1.0, q), 0) @ KET0
    np.testing.assert_allclose(out, q * KET0)


def test_wmr_protocol_one_transparent_at_unit_strength():
    params = ProtocolI(1.0, 1.0)
    np.testing.assert_allclose(wmr(params, 0), PAULI_I)
    np.testing.assert_allclose(wmr(params, 1), PAULI_I)


def test_wmr_protocol_two_projective_limit():
    np.testing.assert_allclose(
        wmr(ProtocolII(0.5, 1.0), 0), np.diag([1.0, 0.0]).astype(complex)
    )


def test_kraus_damping_limits():
    e0, e1 = kraus_set(ChannelSpec("adc", 0.0))
    np.testing.assert_array_equal(e0, PAULI_I)
    np.testing.assert_array_equal(e1, np.zeros((2, 2)))


def test_kraus_flip_saturated():
    e0, e1 = kraus_set(ChannelSpec("bfc", 1.0))
    np.testing.assert_allclose(e0, np.zeros((2, 2)))
    np.testing.assert_allclose(e1, PAULI_X)


def test_kraus_damping_midpoint():
    e0, e1 = kraus_set(ChannelSpec("adc", 0.5))
    np.testing.assert_allclose(e0, np.diag([1.0, 1.0 / np.sqrt(2.0)]))
    expected = np.zeros((2, 2), dtype=complex)
    expected[0, 1] = 1.0 / np.sqrt(2.0)
    np.testing.assert_allclose(e1, expected)


def test_correction_table():
    np.testing.assert_array_equal(correction_unitary(1), PAULI_I)
    np.testing.assert_array_equal(correction_unitary(2), PAULI_Z)
    np.testing.assert_array_equal(correction_unitary(3), PAULI_X)
    np.testing.assert_array_equal(correction_unitary(4), PAULI_Z @ PAULI_X)


def test_correction_outcome_three_swaps_components():
    alpha, beta = 0.6, 0.8j
    swapped = alpha * KET1 + beta * KET0
    out = correction_unitary(3) @ swapped
    np.testing.assert_allclose(out, alpha * KET0 + beta * KET1)


def test_correction_outcome_four_is_unitary():
    assert is_unitary(correction_unitary(4), tol=1e-12)


def test_correction_rejects_bad_outcome():
    for bad in (0, 5):
        with pytest.raises(ValueError):
            correction_unitary(bad)


@given(st.floats(min_value=0.0, max_value=np.pi), st.floats(min_value=0.0, max_value=1.0))
def test_povm_completeness_protocol_one(omega, q):
    params = ProtocolI(omega, q)
    total = sum(wm(params, i).conj().T @ wm(params, i) for i in (0, 1))
    np.testing.assert_allclose(total, PAULI_I, atol=1e-12)


@given(
    st.floats(min_value=-1.0, max_value=1.0),
    st.floats(min_value=-1.0, max_value=1.0),
)
def test_povm_completeness_protocol_two(k1, k2):
    params = ProtocolII(k1, k2)
    for op in (wm, wmr):
        total = sum(op(params, i).conj().T @ op(params, i) for i in (0, 1))
        np.testing.assert_allclose(total, PAULI_I, atol=1e-12)


@given(st.floats(min_value=0.0, max_value=1.0))
def test_protocol_one_reversal_is_a_filter(q):
    # deliberately incomplete: the sum is (1 + q^2) I, not I
    params = ProtocolI(0.8, q)
    total = sum(wmr(params, i).conj().T @ wmr(params, i) for i in (0, 1))
    np.testing.assert_allclose(total, (1.0 + q**2) * PAULI_I, atol=1e-12)


@pytest.mark.parametrize("kind", CHANNEL_KINDS)
@pytest.mark.parametrize("r", np.linspace(0.0, 1.0, 11))
def test_kraus_completeness(kind, r):
    total = sum(e.conj().T @ e for e in kraus_set(ChannelSpec(kind, float(r))))
    np.testing.assert_allclose(total, PAULI_I, atol=1e-12)


@pytest.mark.parametrize("kind", CHANNEL_KINDS)
def test_kraus_matches_independent_table(kind):
    for r in (0.0, 0.25, 0.8, 1.0):
        ours = kraus_set(ChannelSpec(kind, r))
        theirs = brute_kraus(kind, r)
        for a, b in zip(ours, theirs):
            np.testing.assert_allclose(a, b, atol=1e-15)


def test_wm_wmr_match_independent_table():
    for i in (0, 1):
        np.testing.assert_allclose(
            wm(ProtocolI(0.9, 0.4), i), brute_wm("I", 0.9, 0.4, i), atol=1e-15
        )
        np.testing.assert_allclose(
            wmr(ProtocolI(0.9, 0.4), i), brute_wmr("I", 0.9, 0.4, i), atol=1e-15
        )
        np.testing.assert_allclose(
            wm(ProtocolII(0.6, 0.2), i), brute_wm("II", 0.6, 0.2, i), atol=1e-15
        )
        np.testing.assert_allclose(
            wmr(ProtocolII(0.6, 0.2), i), brute_wmr("II", 0.6, 0.2, i), atol=1e-15
        )


def test_protocol_two_split_amplitudes():
    params = ProtocolII(0.28, -0.64)
    np.testing.assert_almost_equal(params.k1_plus, np.sqrt((1 + 0.28) / 2))
    np.testing.assert_almost_equal(params.k1_minus, np.sqrt((1 - 0.28) / 2))
    np.testing.assert_almost_equal(params.k2_plus, np.sqrt((1 - 0.64) / 2))
    np.testing.assert_almost_equal(params.k2_minus, np.sqrt((1 + 0.64) / 2))


def test_measurement_operators_are_exactly_diagonal():
    # structural zeros, not just small numbers
    for i in (0, 1):
        assert is_diagonal(wm(ProtocolI(0.77, 0.31), i), tol=0.0)
        assert is_diagonal(wmr(ProtocolI(0.77, 0.31), i), tol=0.0)
        assert is_diagonal(wm(ProtocolII(0.5, 0.5), i), tol=0.0)
        assert is_diagonal(wmr(ProtocolII(0.5, 0.5), i), tol=0.0)
    e0, e1 = kraus_set(ChannelSpec("adc", 0.37))
    assert is_diagonal(e0, tol=0.0)
    assert e1[0, 0] == 0.0 and e1[1, 0] == 0.0 and e1[1, 1] == 0.0


def test_parameter_domains():
    with pytest.raises(ValueError):
        ProtocolI(-0.1, 0.5)
    with pytest.raises(ValueError):
        ProtocolI(np.pi + 0.1, 0.5)
    with pytest.raises(ValueError):
        ProtocolI(0.5, 1.2)
    with pytest.raises(ValueError):
        ProtocolII(1.0001, 0.0)
    with pytest.raises(ValueError):
        ProtocolII(0.0, -1.0001)
    with pytest.raises(ValueError):
        ChannelSpec("adc", -0.01)
    with pytest.raises(ValueError):
        ChannelSpec("adc", 1.01)
    with pytest.raises(ValueError):
        ChannelSpec("xyz", 0.5)


def test_protocol_kinds():
    assert ProtocolI(0.5, 0.5).kind == "I"
    assert ProtocolII(0.5, 0.5).kind == "II"
