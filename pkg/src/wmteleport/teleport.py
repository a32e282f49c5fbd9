"""Teleportation over a protected shared state.

The sender holds the input qubit and the first three resource qubits,
measures them in the four-element entangled basis below, announces the
outcome, and the receiver applies the matching correction. Fidelity is
the overlap of the corrected output with the input, weighted by outcome
probability. Input averages are exact finite-point designs, not
sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .operators import ChannelSpec, correction_unitary
from .pipeline import PipelineMode, SharedState, channel_only_shared
from .tensor import MixedState

SPAN_TOL = 1e-8
OUTCOME_FLOOR = 1e-14

MEASURES = ("haar", "polar")

__all__ = [
    "MEASURES",
    "InputQubit",
    "MeasurementBasis",
    "TeleportOutcome",
    "eta_basis",
    "teleport",
    "input_fidelity",
    "input_fidelities",
    "design_inputs",
    "average_fidelity",
    "unprotected_baseline",
]


@dataclass(frozen=True)
class InputQubit:
    """Normalized single-qubit input alpha|0> + beta|1>."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if not (np.isfinite([a, b]).all()):
            raise ValueError("input amplitudes must be finite")
        if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > 1e-12:
            raise ValueError("input state must be normalized")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)


@dataclass(frozen=True)
class MeasurementBasis:
    """Four orthonormal entangled states on (input, A1, A2, A3),
    rows of `states` in outcome order 1..4."""

    states: np.ndarray


_ETA_SUPPORT = (
    ((0b0000, 1.0), (0b0101, 1.0), (0b1010, 1.0), (0b1111, 1.0)),
    ((0b0000, 1.0), (0b0101, 1.0), (0b1010, -1.0), (0b1111, -1.0)),
    ((0b0010, 1.0), (0b0111, 1.0), (0b1000, 1.0), (0b1101, 1.0)),
    ((0b0010, 1.0), (0b0111, 1.0), (0b1000, -1.0), (0b1101, -1.0)),
)


@lru_cache(maxsize=1)
def _eta_states() -> np.ndarray:
    states = np.zeros((4, 16), dtype=complex)
    for row, support in enumerate(_ETA_SUPPORT):
        for idx, sign in support:
            states[row, idx] = 0.5 * sign
    states.setflags(write=False)
    return states


@lru_cache(maxsize=1)
def _corrections() -> np.ndarray:
    return np.stack([correction_unitary(k) for k in (1, 2, 3, 4)])


def eta_basis() -> MeasurementBasis:
    """The measurement basis, outcome order matching `correction_unitary`."""
    return MeasurementBasis(_eta_states().copy())


@dataclass(frozen=True)
class TeleportOutcome:
    """One measurement branch: its probability, the receiver's raw
    (trace = probability) and corrected (normalized) states, and the
    fidelity of the corrected state with the input."""

    outcome: int
    probability: float
    bob_state_raw: MixedState
    bob_state_corrected: MixedState
    per_outcome_fidelity: float


def _span_check(total: float) -> None:
    if abs(total - 1.0) > SPAN_TOL:
        raise ValueError(
            "joint state has support outside the measurement span "
            f"(outcome probabilities sum to {total!r})"
        )


def teleport(shared: SharedState, input_qubit: InputQubit) -> list[TeleportOutcome]:
    """Run one teleportation; returns the four outcome branches.

    Outcomes with probability below 1e-14 get fidelity 0 and a zero
    corrected state; they carry no weight in any average.
    """
    inp = input_qubit.vector
    etas = _eta_states().reshape(4, 2, 8)
    corr = _corrections()
    outcomes: list[TeleportOutcome] = []

    if shared.mode is PipelineMode.PAPER_LITERAL:
        joint = np.kron(inp, shared.pure.amplitudes).reshape(2, 8, 2)
        coeffs = np.einsum("isa,sab->ib", etas.conj(), joint)
        probs = (np.abs(coeffs) ** 2).sum(axis=1)
        _span_check(float(probs.sum()))
        for k in range(4):
            vec = coeffs[k]
            p = float(probs[k])
            raw = MixedState(1, np.outer(vec, vec.conj()))
            if p < OUTCOME_FLOOR:
                corrected = MixedState(1, np.zeros((2, 2), dtype=complex))
                fid = 0.0
            else:
                w = corr[k] @ vec
                corrected = MixedState(1, np.outer(w, w.conj()) / p)
                fid = float(abs(np.vdot(inp, w)) ** 2 / p)
            outcomes.append(
                TeleportOutcome(k + 1, p, raw, corrected, min(max(fid, 0.0), 1.0))
            )
        return outcomes

    rho_joint = np.kron(np.outer(inp, inp.conj()), shared.rho.matrix)
    eta_flat = _eta_states()
    total = 0.0
    staged = []
    for k in range(4):
        e = np.kron(eta_flat[k].reshape(16, 1), np.eye(2, dtype=complex))
        rho_b = e.conj().T @ rho_joint @ e
        p = float(np.trace(rho_b).real)
        staged.append((rho_b, p))
        total += p
    _span_check(total)
    for k, (rho_b, p) in enumerate(staged):
        rho_b = 0.5 * (rho_b + rho_b.conj().T)
        raw = MixedState(1, rho_b)
        if p < OUTCOME_FLOOR:
            corrected = MixedState(1, np.zeros((2, 2), dtype=complex))
            fid = 0.0
        else:
            u = corr[k]
            mat = u @ rho_b @ u.conj().T / p
            mat = 0.5 * (mat + mat.conj().T)
            corrected = MixedState(1, mat)
            fid = float((inp.conj() @ mat @ inp).real)
        outcomes.append(
            TeleportOutcome(k + 1, p, raw, corrected, min(max(fid, 0.0), 1.0))
        )
    return outcomes


def input_fidelity(shared: SharedState, input_qubit: InputQubit) -> float:
    """Outcome-probability-weighted fidelity for one input state."""
    outs = teleport(shared, input_qubit)
    return float(sum(o.probability * o.per_outcome_fidelity for o in outs))


def input_fidelities(shared: SharedState, inputs: np.ndarray) -> np.ndarray:
    """Vectorized `input_fidelity` over a batch of normalized input
    vectors, shape (n, 2). Used by quadrature and sampling checks."""
    inputs = np.asarray(inputs, dtype=complex)
    if inputs.ndim != 2 or inputs.shape[1] != 2:
        raise ValueError("inputs must have shape (n, 2)")
    etas = _eta_states().reshape(4, 2, 8)
    corr = _corrections()
    if shared.mode is PipelineMode.PAPER_LITERAL:
        b = shared.pure.amplitudes.reshape(8, 2)
        amps = np.einsum("isa,ns,ab->nib", etas.conj(), inputs, b)
        wv = np.einsum("nb,ibc->nic", inputs.conj(), corr)
        ov = np.einsum("nib,nib->ni", wv, amps)
        f = (np.abs(ov) ** 2).sum(axis=1)
        return np.clip(f.real, 0.0, 1.0)
    t = shared.rho.matrix.reshape(8, 2, 8, 2)
    rho_b = np.einsum(
        "isa,ns,abcd,itc,nt->nibd",
        etas.conj(),
        inputs,
        t,
        etas,
        inputs.conj(),
        optimize=True,
    )
    u = np.einsum("nb,ibc->nic", inputs.conj(), corr)
    f = np.einsum("nib,nibd,nid->n", u, rho_b, u.conj())
    return np.clip(f.real, 0.0, 1.0)


_HAAR_DESIGN = None
_POLAR_DESIGN = None


def design_inputs(measure: str = "haar") -> tuple[InputQubit, ...]:
    """Finite input sets whose average equals the measure's integral.

    "haar": the six Pauli eigenstates, a spherical 2-design, giving the
    exact uniform average for any outcome-weighted fidelity (which is
    quadratic in the input density matrix).

    "polar": the average over the real arc cos(t)|0> + sin(t)|1>,
    t in [0, pi], weighted by sin(t)/2. Four states matched to the
    arc's second moments reproduce that integral exactly, for the same
    quadratic-functional reason.
    """
    global _HAAR_DESIGN, _POLAR_DESIGN
    if measure == "haar":
        if _HAAR_DESIGN is None:
            s = 1.0 / math.sqrt(2.0)
            _HAAR_DESIGN = tuple(
                InputQubit(a, b)
                for a, b in (
                    (1.0, 0.0),
                    (0.0, 1.0),
                    (s, s),
                    (s, -s),
                    (s, 1j * s),
                    (s, -1j * s),
                )
            )
        return _HAAR_DESIGN
    if measure == "polar":
        if _POLAR_DESIGN is None:
            theta = math.asin(math.sqrt(8.0 / 15.0))
            angles = (theta, -theta, math.pi - theta, math.pi + theta)
            _POLAR_DESIGN = tuple(
                InputQubit(math.cos(a / 2.0), math.sin(a / 2.0)) for a in angles
            )
        return _POLAR_DESIGN
    raise ValueError(f"unknown measure {measure!r}, expected one of {MEASURES}")


def average_fidelity(shared: SharedState, measure: str = "haar") -> float:
    """Exact input-averaged fidelity under the chosen measure."""
    states = design_inputs(measure)
    total = sum(input_fidelity(shared, s) for s in states)
    return min(max(total / len(states), 0.0), 1.0)


def unprotected_baseline(channel: ChannelSpec, mode, measure: str = "haar") -> float:
    """Average fidelity with every protection stage replaced by the
    identity: the channel acts alone under the selected mode's
    summation semantics."""
    shared = channel_only_shared(channel, mode)
    return average_fidelity(shared, measure)
