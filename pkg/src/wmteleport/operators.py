"""Single-qubit operator catalog.

Constructors for the conditional flips, the two weak-measurement
protocols with their reversals, the three noise channels' Kraus sets,
and the four outcome-correction unitaries. Every operator is returned
as a fresh 2x2 complex numpy array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

CHANNEL_KINDS = ("adc", "bfc", "pfc")

__all__ = [
    "PAULI_I",
    "PAULI_X",
    "PAULI_Z",
    "CHANNEL_KINDS",
    "ProtocolI",
    "ProtocolII",
    "ProtocolParams",
    "ChannelSpec",
    "flip",
    "wm",
    "wmr",
    "kraus_set",
    "correction_unitary",
]


@dataclass(frozen=True)
class ProtocolI:
    """Weak-measurement protocol with strength angle omega and reversal
    strength q.

    The measurement pair is diag(cos w/2, sin w/2) and its mirror; the
    reversal pair diag(q, 1) / diag(1, q) is a filter, not a completed
    POVM: the two elements sum to (1 + q**2) I.
    """

    omega: float
    q: float

    kind = "I"

    def __post_init__(self):
        if not (np.isfinite(self.omega) and 0.0 <= self.omega <= math.pi):
            raise ValueError(f"omega must be in [0, pi], got {self.omega}")
        if not (np.isfinite(self.q) and 0.0 <= self.q <= 1.0):
            raise ValueError(f"q must be in [0, 1], got {self.q}")


@dataclass(frozen=True)
class ProtocolII:
    """Weak-measurement protocol parameterized by two strengths K1, K2.

    Both the measurement pair and the reversal pair are built from
    K+- = sqrt((1 +- K)/2), so each pair is a completed POVM.
    """

    k1: float
    k2: float

    kind = "II"

    def __post_init__(self):
        for name, value in (("k1", self.k1), ("k2", self.k2)):
            if not (np.isfinite(value) and -1.0 <= value <= 1.0):
                raise ValueError(f"{name} must be in [-1, 1], got {value}")

    @property
    def k1_plus(self) -> float:
        return math.sqrt((1.0 + self.k1) / 2.0)

    @property
    def k1_minus(self) -> float:
        return math.sqrt((1.0 - self.k1) / 2.0)

    @property
    def k2_plus(self) -> float:
        return math.sqrt((1.0 + self.k2) / 2.0)

    @property
    def k2_minus(self) -> float:
        return math.sqrt((1.0 - self.k2) / 2.0)


ProtocolParams = Union[ProtocolI, ProtocolII]


@dataclass(frozen=True)
class ChannelSpec:
    """One of the three noise channels acting on the resource's last qubit.

    kind is "adc" (amplitude damping), "bfc" (bit flip) or "pfc"
    (phase flip); r in [0, 1] is the decoherence strength.
    """

    kind: str
    r: float

    def __post_init__(self):
        kind = str(self.kind).lower()
        if kind not in CHANNEL_KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}, expected one of {CHANNEL_KINDS}")
        object.__setattr__(self, "kind", kind)
        if not (np.isfinite(self.r) and 0.0 <= self.r <= 1.0):
            raise ValueError(f"r must be in [0, 1], got {self.r}")


def _check_bit(i) -> int:
    if i not in (0, 1):
        raise ValueError(f"outcome bit must be 0 or 1, got {i!r}")
    return int(i)


def flip(i) -> np.ndarray:
    """Conditional flip: identity for outcome 0, sigma_x for outcome 1."""
    return PAULI_I.copy() if _check_bit(i) == 0 else PAULI_X.copy()


def wm(params: ProtocolParams, i) -> np.ndarray:
    """Weak-measurement POVM element for outcome i."""
    i = _check_bit(i)
    if isinstance(params, ProtocolI):
        c = math.cos(params.omega / 2.0)
        s = math.sin(params.omega / 2.0)
        d = (c, s) if i == 0 else (s, c)
    elif isinstance(params, ProtocolII):
        p, m = params.k1_plus, params.k1_minus
        d = (p, m) if i == 0 else (m, p)
    else:
        raise ValueError(f"unsupported protocol parameters: {params!r}")
    return np.diag(np.asarray(d, dtype=complex))


def wmr(params: ProtocolParams, i) -> np.ndarray:
    """Weak-measurement reversal element for outcome i.

    For ProtocolI this is the filter diag(q, 1) / diag(1, q); for
    ProtocolII it is a completed POVM element like `wm`.
    """
    i = _check_bit(i)
    if isinstance(params, ProtocolI):
        d = (params.q, 1.0) if i == 0 else (1.0, params.q)
    elif isinstance(params, ProtocolII):
        p, m = params.k2_plus, params.k2_minus
        d = (p, m) if i == 0 else (m, p)
    else:
        raise ValueError(f"unsupported protocol parameters: {params!r}")
    return np.diag(np.asarray(d, dtype=complex))


def kraus_set(spec: ChannelSpec) -> list[np.ndarray]:
    """Kraus operators {e0, e1} of the channel; sum(e^dag e) = I."""
    if not isinstance(spec, ChannelSpec):
        spec = ChannelSpec(*spec)
    r = spec.r
    if spec.kind == "adc":
        e0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - r)]], dtype=complex)
        e1 = np.array([[0.0, math.sqrt(r)], [0.0, 0.0]], dtype=complex)
    elif spec.kind == "bfc":
        e0 = math.sqrt(1.0 - r) * PAULI_I
        e1 = math.sqrt(r) * PAULI_X
    else:
        e0 = math.sqrt(1.0 - r) * PAULI_I
        e1 = math.sqrt(r) * PAULI_Z
    return [e0, e1]


_CORRECTIONS = {
    1: PAULI_I,
    2: PAULI_Z,
    3: PAULI_X,
    4: PAULI_Z @ PAULI_X,
}


def correction_unitary(outcome: int) -> np.ndarray:
    """Receiver's correction for measurement outcome 1..4.

    Outcomes map to I, sigma_z, sigma_x and sigma_z sigma_x in order.
    """
    if outcome not in _CORRECTIONS:
        raise ValueError(f"outcome must be in 1..4, got {outcome!r}")
    return _CORRECTIONS[outcome].copy()
