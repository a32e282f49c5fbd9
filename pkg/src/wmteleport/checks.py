"""Self-contained invariant suite behind the `check` CLI command.

Each check is named; a failure names itself in the report so the exit
status can be traced to one invariant. All randomness is drawn from a
single seeded generator, so reports are byte-identical for a fixed
seed. `inject_fault` deliberately corrupts one named check (used to
test the failure path end to end).
"""

from __future__ import annotations

import numpy as np

from .operators import ChannelSpec, ProtocolI, ProtocolII, kraus_set, wm, wmr
from .pipeline import PipelineMode, protect
from .teleport import (
    InputQubit,
    average_fidelity,
    eta_basis,
    input_fidelities,
    teleport,
)

FAULT_NAMES = ("kraus_completeness",)

_I2 = np.eye(2)

__all__ = ["FAULT_NAMES", "run_checks"]


def _check_povm_completeness():
    worst = 0.0
    for omega in np.linspace(0.0, np.pi, 5):
        params = ProtocolI(float(omega), 0.5)
        total = sum(wm(params, i).conj().T @ wm(params, i) for i in (0, 1))
        worst = max(worst, float(np.abs(total - _I2).max()))
    for k1 in np.linspace(-1.0, 1.0, 5):
        for k2 in np.linspace(-1.0, 1.0, 5):
            params = ProtocolII(float(k1), float(k2))
            for stage in (wm, wmr):
                total = sum(
                    stage(params, i).conj().T @ stage(params, i) for i in (0, 1)
                )
                worst = max(worst, float(np.abs(total - _I2).max()))
    return worst <= 1e-12, f"max deviation from identity {worst:.3e}"


def _check_reversal_completeness():
    worst = 0.0
    for omega in np.linspace(0.0, np.pi, 5):
        for q in np.linspace(0.0, 1.0, 5):
            params = ProtocolI(float(omega), float(q))
            total = sum(wmr(params, i).conj().T @ wmr(params, i) for i in (0, 1))
            expected = (1.0 + float(q) ** 2) * _I2
            worst = max(worst, float(np.abs(total - expected).max()))
    return worst <= 1e-12, f"max deviation from (1+q^2)I {worst:.3e}"


def _check_kraus_completeness(inject_fault):
    worst = 0.0
    for kind in ("adc", "bfc", "pfc"):
        for r in np.linspace(0.0, 1.0, 11):
            e0, e1 = kraus_set(ChannelSpec(kind, float(r)))
            if inject_fault == "kraus_completeness":
                e1 = 1.01 * e1
            total = e0.conj().T @ e0 + e1.conj().T @ e1
            worst = max(worst, float(np.abs(total - _I2).max()))
    return worst <= 1e-12, f"max deviation from identity {worst:.3e}"


def _check_eta_orthonormality():
    states = eta_basis().states
    gram = states @ states.conj().T
    worst = float(np.abs(gram - np.eye(4)).max())
    return worst <= 1e-12, f"max Gram deviation {worst:.3e}"


_PROB_GRIDS = {
    "I": [
        ProtocolI(omega, q)
        for omega in (0.3, 0.8, 1.2, 1.5)
        for q in (0.2, 0.5, 0.8, 1.0)
    ],
    "II": [
        ProtocolII(k1, k2)
        for k1 in (0.0, 0.3, 0.6, 0.9)
        for k2 in (0.0, 0.3, 0.6, 0.9)
    ],
}
_PROB_R = (0.0, 0.3, 0.6, 0.9)


def _check_probability_sums():
    inp = InputQubit(0.6, 0.8)
    worst = 0.0
    for params_list in _PROB_GRIDS.values():
        for params in params_list:
            for kind in ("adc", "bfc", "pfc"):
                for r in _PROB_R:
                    for mode in PipelineMode:
                        shared = protect(params, ChannelSpec(kind, r), mode)
                        total = sum(
                            o.probability for o in teleport(shared, inp)
                        )
                        worst = max(worst, abs(total - 1.0))
    return worst <= 1e-10, f"max |sum(p) - 1| {worst:.3e}"


def _random_params(rng, protocol: str):
    if protocol == "I":
        return ProtocolI(float(rng.uniform(0.1, 1.5)), float(rng.uniform(0.1, 1.0)))
    return ProtocolII(float(rng.uniform(0.0, 0.95)), float(rng.uniform(0.0, 0.95)))


def _check_r0_limits(rng):
    """Noiseless limit: the coherent summation mode returns the input
    perfectly for random parameters; the mixed mode does so when both
    stages are trivial (omega = pi/2 with q = 1, or K1 = K2 = 0)."""
    worst = 0.0
    for protocol in ("I", "II"):
        for kind in ("adc", "bfc", "pfc"):
            channel = ChannelSpec(kind, 0.0)
            for _ in range(5):
                params = _random_params(rng, protocol)
                shared = protect(params, channel, PipelineMode.PAPER_LITERAL)
                worst = max(worst, abs(average_fidelity(shared) - 1.0))
            locus = ProtocolI(np.pi / 2, 1.0) if protocol == "I" else ProtocolII(0.0, 0.0)
            shared = protect(locus, channel, PipelineMode.PHYSICAL_MIXED)
            worst = max(worst, abs(average_fidelity(shared) - 1.0))
    return worst <= 1e-10, f"max |F - 1| at r=0 {worst:.3e}"


def _mode_fidelity(params, channel):
    pure = protect(params, channel, PipelineMode.PAPER_LITERAL).pure
    rho = protect(params, channel, PipelineMode.PHYSICAL_MIXED).rho
    vec = pure.amplitudes
    return float((vec.conj() @ rho.matrix @ vec).real)


def _check_mode_coincidence():
    """The two summation modes give the same shared state wherever the
    branch operators are all proportional: identity channel, and the
    fully bit-flipped channel, with both protection stages trivial."""
    worst = 0.0
    for locus in (ProtocolI(np.pi / 2, 1.0), ProtocolII(0.0, 0.0)):
        for kind in ("adc", "bfc", "pfc"):
            worst = max(worst, 1.0 - _mode_fidelity(locus, ChannelSpec(kind, 0.0)))
        worst = max(worst, 1.0 - _mode_fidelity(locus, ChannelSpec("bfc", 1.0)))
    return worst <= 1e-10, f"max state infidelity {worst:.3e}"


def _random_shared(rng):
    protocol = "I" if rng.integers(2) == 0 else "II"
    params = _random_params(rng, protocol)
    kind = ("adc", "bfc", "pfc")[int(rng.integers(3))]
    r = float(rng.uniform(0.0, 0.5))
    mode = (
        PipelineMode.PAPER_LITERAL
        if rng.integers(2) == 0
        else PipelineMode.PHYSICAL_MIXED
    )
    return protect(params, ChannelSpec(kind, r), mode)


def _check_global_phase(rng):
    worst = 0.0
    for _ in range(5):
        shared = _random_shared(rng)
        theta, phi, gamma = rng.uniform(0.0, 2.0 * np.pi, size=3)
        alpha = np.cos(theta / 2.0)
        beta = np.exp(1j * phi) * np.sin(theta / 2.0)
        phase = np.exp(1j * gamma)
        outs_a = teleport(shared, InputQubit(alpha, beta))
        outs_b = teleport(shared, InputQubit(phase * alpha, phase * beta))
        for a, b in zip(outs_a, outs_b):
            worst = max(worst, abs(a.probability - b.probability))
            worst = max(worst, abs(a.per_outcome_fidelity - b.per_outcome_fidelity))
    return worst <= 1e-12, f"max phase-dependent shift {worst:.3e}"


def _quadrature_average(shared) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(64)
    phis = np.linspace(0.0, 2.0 * np.pi, 128, endpoint=False)
    theta = np.arccos(nodes)
    amps0 = np.cos(theta / 2.0)
    amps1 = np.sin(theta / 2.0)
    inputs = np.empty((64 * 128, 2), dtype=complex)
    inputs[:, 0] = np.repeat(amps0, 128)
    inputs[:, 1] = np.repeat(amps1, 128) * np.tile(np.exp(1j * phis), 64)
    f = input_fidelities(shared, inputs).reshape(64, 128).mean(axis=1)
    return float((weights * f).sum() / 2.0)


def _check_design_vs_quadrature(rng):
    worst = 0.0
    for _ in range(5):
        shared = _random_shared(rng)
        exact = average_fidelity(shared, measure="haar")
        quad = _quadrature_average(shared)
        worst = max(worst, abs(exact - quad))
    return worst <= 1e-9, f"max design-quadrature gap {worst:.3e}"


def run_checks(seed: int = 0, inject_fault: str | None = None):
    """Run the whole suite; returns (report lines, all passed)."""
    if inject_fault is not None and inject_fault not in FAULT_NAMES:
        raise ValueError(
            f"unknown fault {inject_fault!r}, expected one of {FAULT_NAMES}"
        )
    rng = np.random.default_rng(seed)
    results = [
        ("povm_completeness", *_check_povm_completeness()),
        ("reversal_completeness", *_check_reversal_completeness()),
        ("kraus_completeness", *_check_kraus_completeness(inject_fault)),
        ("eta_orthonormality", *_check_eta_orthonormality()),
        ("probability_sums", *_check_probability_sums()),
        ("r0_limits", *_check_r0_limits(rng)),
        ("mode_coincidence", *_check_mode_coincidence()),
        ("global_phase_invariance", *_check_global_phase(rng)),
        ("design_vs_quadrature", *_check_design_vs_quadrature(rng)),
    ]
    lines = []
    failed = []
    for name, ok, detail in results:
        if ok:
            lines.append(f"ok {name}")
        else:
            lines.append(f"FAIL {name}: {detail}")
            failed.append(name)
    if failed:
        lines.append(f"{len(failed)} check(s) failed: {', '.join(failed)}")
    else:
        lines.append(f"all {len(results)} checks passed")
    return lines, not failed
