"""One-shot evaluation of the bundled reference table.

The table lists nine quoted maximum-fidelity values (three channels,
two protocols, decoherence 0.5 and 0.9). Each is re-derived by a full
sweep under both summation modes; a target passes if at least one mode
lands within its tolerance. Both achieved values are always recorded,
so a discrepancy is documented rather than hidden. A few supplementary
checks from the same table (a floor, a baseline match, and the two
phase-flip protocol II values) ride along without counting toward the
nine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from .pipeline import PipelineMode
from .sweep import DEFAULT_RESOLUTION, fmax_curve

TOLERANCE = 0.02

_CHANNEL_LONG = {
    "adc": "amplitude damping",
    "bfc": "bit flip",
    "pfc": "phase flip",
}

__all__ = [
    "TOLERANCE",
    "ReferenceTarget",
    "SupplementaryCheck",
    "REFERENCE_TARGETS",
    "SUPPLEMENTARY_CHECKS",
    "build_manifest",
    "manifest_json",
    "manifest_lines",
]


@dataclass(frozen=True)
class ReferenceTarget:
    """One quoted maximum-fidelity value to reproduce."""

    name: str
    protocol: str
    channel: str
    r: float
    expected: float
    tolerance: float = TOLERANCE

    @property
    def source(self) -> str:
        return (
            f"reference maximum-fidelity table, protocol {self.protocol}, "
            f"{_CHANNEL_LONG[self.channel]} channel, r={self.r:g}"
        )


@dataclass(frozen=True)
class SupplementaryCheck:
    """A reference-table statement that is not one of the nine point
    values: kind "floor" (achieved >= expected), "matches_baseline"
    (|achieved - baseline| <= tolerance), or "value" (same rule as a
    target)."""

    name: str
    protocol: str
    channel: str
    r: float
    kind: str
    expected: float | None = None
    tolerance: float = TOLERANCE


REFERENCE_TARGETS: tuple[ReferenceTarget, ...] = (
    ReferenceTarget("adc_I_r0.5", "I", "adc", 0.5, 0.999),
    ReferenceTarget("bfc_I_r0.5", "I", "bfc", 0.5, 0.7667),
    ReferenceTarget("bfc_I_r0.9", "I", "bfc", 0.9, 0.58),
    ReferenceTarget("pfc_I_r0.5", "I", "pfc", 0.5, 0.733),
    ReferenceTarget("pfc_I_r0.9", "I", "pfc", 0.9, 0.734),
    ReferenceTarget("adc_II_r0.5", "II", "adc", 0.5, 0.81),
    ReferenceTarget("adc_II_r0.9", "II", "adc", 0.9, 0.754),
    ReferenceTarget("bfc_II_r0.5", "II", "bfc", 0.5, 0.767),
    ReferenceTarget("bfc_II_r0.9", "II", "bfc", 0.9, 0.733),
)

SUPPLEMENTARY_CHECKS: tuple[SupplementaryCheck, ...] = (
    SupplementaryCheck("adc_I_r0.9_floor", "I", "adc", 0.9, "floor", 0.97),
    SupplementaryCheck(
        "bfc_I_r0.9_matches_baseline", "I", "bfc", 0.9, "matches_baseline"
    ),
    SupplementaryCheck("pfc_II_r0.5", "II", "pfc", 0.5, "value", 0.733),
    SupplementaryCheck("pfc_II_r0.9", "II", "pfc", 0.9, "value", 0.733),
)

_MODES = (PipelineMode.PAPER_LITERAL, PipelineMode.PHYSICAL_MIXED)


def _axis_names(protocol: str) -> tuple[str, str]:
    return ("omega", "q") if protocol == "I" else ("k1", "k2")


class _FmaxCache:
    def __init__(self, resolution: int, measure: str):
        self.resolution = resolution
        self.measure = measure
        self._store: dict[tuple, tuple] = {}

    def get(self, protocol: str, channel: str, r: float, mode: PipelineMode):
        key = (protocol, channel, r, mode)
        if key not in self._store:
            point = fmax_curve(
                protocol,
                channel,
                r_values=np.array([r]),
                resolution=self.resolution,
                mode=mode,
                measure=self.measure,
            )[0]
            self._store[key] = (point.fmax, point.param1, point.param2, point.baseline)
        return self._store[key]


def _achieved_block(cache: _FmaxCache, protocol: str, channel: str, r: float):
    n1, n2 = _axis_names(protocol)
    achieved = {}
    baseline = None
    for mode in _MODES:
        fmax, p1, p2, base = cache.get(protocol, channel, r, mode)
        achieved[mode.value] = {"fmax": fmax, "params": {n1: p1, n2: p2}}
        baseline = base
    return achieved, baseline


def build_manifest(
    resolution: int = DEFAULT_RESOLUTION,
    measure: str = "polar",
    timestamp: bool = True,
) -> dict:
    """Evaluate every target and supplementary check under both modes
    and return the manifest as a plain dict, ready for JSON."""
    cache = _FmaxCache(resolution, measure)
    targets = []
    failures = []
    for tgt in REFERENCE_TARGETS:
        achieved, baseline = _achieved_block(cache, tgt.protocol, tgt.channel, tgt.r)
        passed_by = [
            mode
            for mode, block in achieved.items()
            if abs(block["fmax"] - tgt.expected) <= tgt.tolerance
        ]
        if not passed_by:
            failures.append(tgt.name)
        targets.append(
            {
                "name": tgt.name,
                "protocol": tgt.protocol,
                "channel": tgt.channel,
                "r": tgt.r,
                "expected": tgt.expected,
                "tolerance": tgt.tolerance,
                "source": tgt.source,
                "achieved": achieved,
                "baseline": baseline,
                "passed": bool(passed_by),
                "passed_by": passed_by,
            }
        )
    supplementary = []
    for chk in SUPPLEMENTARY_CHECKS:
        achieved, baseline = _achieved_block(cache, chk.protocol, chk.channel, chk.r)
        passed_by = []
        for mode, block in achieved.items():
            fmax = block["fmax"]
            if chk.kind == "floor":
                ok = fmax >= chk.expected
            elif chk.kind == "matches_baseline":
                ok = abs(fmax - baseline) <= chk.tolerance
            elif chk.kind == "value":
                ok = abs(fmax - chk.expected) <= chk.tolerance
            else:
                raise ValueError(f"unknown supplementary kind {chk.kind!r}")
            if ok:
                passed_by.append(mode)
        supplementary.append(
            {
                "name": chk.name,
                "protocol": chk.protocol,
                "channel": chk.channel,
                "r": chk.r,
                "kind": chk.kind,
                "expected": chk.expected,
                "tolerance": chk.tolerance,
                "achieved": achieved,
                "baseline": baseline,
                "passed": bool(passed_by),
                "passed_by": passed_by,
            }
        )
    manifest = {
        "schema": 1,
        "input_measure": measure,
        "mode_policy": "pass if either summation mode lands within tolerance",
        "grids": {
            "resolution": resolution,
            "protocol_I": {"omega": [0.0, float(np.pi / 2)], "q": [0.0, 1.0]},
            "protocol_II": {"k1": [0.0, 1.0], "k2": [0.0, 1.0]},
            "refinement": "one 10x local pass around each coarse argmax",
        },
        "targets": targets,
        "supplementary": supplementary,
        "all_passed": not failures,
        "supplementary_all_passed": all(s["passed"] for s in supplementary),
        "failures": failures,
        "notes": [
            "achieved values are recorded for both summation modes; a "
            "target passes if either mode is within tolerance",
            "averages use the real-arc input measure (see README)",
        ],
    }
    for tgt in targets:
        if not tgt["passed"]:
            manifest["notes"].append(
                f"{tgt['name']}: neither mode reaches the quoted value "
                f"{tgt['expected']:g}; the quoted value sits close to the "
                f"unprotected baseline {tgt['baseline']:.4f}, while the "
                "sweep maxima are recorded above"
            )
    if timestamp:
        manifest["generated_at"] = datetime.now(timezone.utc).isoformat(
            timespec="seconds"
        )
    return manifest


def manifest_json(manifest: dict) -> str:
    return json.dumps(manifest, sort_keys=True, indent=2) + "\n"


def manifest_lines(manifest: dict) -> list[str]:
    """Human-readable one-line-per-target report for the CLI."""
    lines = []
    for tgt in manifest["targets"]:
        ach = tgt["achieved"]
        status = "PASS" if tgt["passed"] else "FAIL"
        via = f" ({', '.join(tgt['passed_by'])})" if tgt["passed_by"] else ""
        lines.append(
            f"{status} {tgt['name']}: expected {tgt['expected']:g} "
            f"+/- {tgt['tolerance']:g}, paper {ach['paper']['fmax']:.4f}, "
            f"physical {ach['physical']['fmax']:.4f}{via}"
        )
    for chk in manifest["supplementary"]:
        ach = chk["achieved"]
        status = "PASS" if chk["passed"] else "FAIL"
        lines.append(
            f"{status} {chk['name']} [{chk['kind']}]: "
            f"paper {ach['paper']['fmax']:.4f}, "
            f"physical {ach['physical']['fmax']:.4f}"
        )
    n_pass = sum(1 for t in manifest["targets"] if t["passed"])
    lines.append(f"{n_pass}/9 targets reproduced")
    if manifest["failures"]:
        lines.append("failing targets: " + ", ".join(manifest["failures"]))
    return lines
