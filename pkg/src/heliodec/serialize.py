"""Report, sweep and trace serialization (JSON, CSV, plain text)."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, TextIO

from .analysis import FeasibilityResult, SweepRow, X3Inference
from .channels import Channel, ChannelReport
from .config import AXIS_COLUMNS, config_to_mapping
from .dynamics import VisibilityTrace
from .experiment import ExperimentBudget, ExperimentConfig
from .quantities import K, Quantity, amu, m_per_s, nm

__all__ = [
    "fmt",
    "budget_to_dict",
    "feasibility_to_dict",
    "inference_to_dict",
    "dumps",
    "format_report",
    "SWEEP_COLUMNS",
    "write_sweep_csv",
    "write_trace_csv",
]


def fmt(x: float) -> str:
    """Full-precision scientific notation; round-trips through float()."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".16e")


def _jnum(x: float):
    # strict JSON has no infinity; spell it out
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def _channel_dict(c: ChannelReport) -> dict[str, Any]:
    return {
        "channel": c.channel.value,
        "tau_s": _jnum(c.tau.value),
        "rate_per_s": _jnum(c.rate.value),
        "wavelength_nm": c.wavelength.to(nm),
        "regime": {
            "kind": c.regime.kind.value,
            "wavelength_over_radius": c.regime.ratio_a,
            "wavelength_over_D": c.regime.ratio_D,
        },
        "valid": c.valid,
        "order_of_magnitude": c.order_of_magnitude,
        "notes": list(c.notes),
    }


def budget_to_dict(cfg: ExperimentConfig, b: ExperimentBudget) -> dict[str, Any]:
    ranking = b.dominance()
    return {
        "inputs": config_to_mapping(cfg),
        "channels": [_channel_dict(c) for c in b.channels],
        "dominance": [c.channel.value for c in ranking],
        "dominant_channel": ranking[0].channel.value if ranking else None,
        "comparison": _channel_dict(b.comparison),
        "tau_total_s": _jnum(b.tau_total.value),
        "rate_total_per_s": b.rate_total.value,
        "tau_talbot_s": b.tau_talbot.value,
        "coherence_margin": _jnum(b.coherence_margin),
        "margin_k": cfg.margin_k,
        "meets_margin": b.coherence_margin >= cfg.margin_k,
        "velocity": {
            "g_eff_m_s2": b.velocity.g_eff.value,
            "duration_s": b.tau_talbot.value,
            "v_final_m_s": b.velocity.v_final.to(m_per_s),
            "v_crit_m_s": cfg.v_crit.to(m_per_s),
            "ok": b.velocity.ok,
        },
        "freeze_out": {
            "vibrational_mode_K": b.freezeout.temperature.to(K),
            "vibrations_frozen": b.freezeout.frozen,
            "roton_gap_K": b.rotons.gap.to(K),
            "rotons_negligible": b.rotons.negligible,
        },
        "all_regimes_valid": b.all_regimes_valid,
        "notes": list(b.notes),
    }


_UNITS = {"mass": ("amu", amu), "separation": ("nm", nm)}


def feasibility_to_dict(r: FeasibilityResult) -> dict[str, Any]:
    label, unit = _UNITS[r.variable]
    return {
        "variable": r.variable,
        "unit": label,
        "optimum": r.optimum.to(unit),
        "optimum_si": r.optimum.value,
        "achieved_margin": r.achieved_margin,
        "target_margin": r.target_margin,
        "iterations": r.iterations,
        "bracket": [r.bracket[0].to(unit), r.bracket[1].to(unit)],
        "all_regimes_valid": r.all_regimes_valid,
        "notes": list(r.notes),
    }


def inference_to_dict(r: X3Inference) -> dict[str, Any]:
    return {
        "x3": r.x3,
        "tau_he3_s": r.tau_he3.value,
        "background_rate_per_s": r.background_rate.value,
        "warnings": list(r.warnings),
    }


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _tau_text(q: Quantity) -> str:
    return "infinite" if math.isinf(q.value) else f"{q.value:.4g} s"


def format_report(cfg: ExperimentConfig, b: ExperimentBudget) -> str:
    """Human-readable budget summary."""
    out = io.StringIO()
    p, med = cfg.particle, cfg.medium
    out.write(
        f"nanoparticle M = {p.M.to(amu):.4g} amu, rho = {p.rho.value / 1e3:.4g} g/cm3, "
        f"a = {p.radius.to(nm):.4g} nm, eps = {p.epsilon:g}\n"
        f"helium T = {med.T.value * 1e3:.4g} mK, X3 = {med.X3:.3g}, D = {cfg.D.to(nm):.4g} nm\n\n"
    )
    out.write(f"{'channel':<20}{'tau':>14}{'wavelength':>16}  regime\n")
    for c in b.dominance():
        flag = "" if c.valid else "  [outside regime]"
        om = " (~)" if c.order_of_magnitude else ""
        out.write(
            f"{c.channel.value:<20}{_tau_text(c.tau):>14}{c.wavelength.to(nm):>13.4g} nm"
            f"  {c.regime.kind.value}{om}{flag}\n"
        )
    ranking = b.dominance()
    if ranking and ranking[0].rate.value > 0:
        out.write(f"\ndominant channel: {ranking[0].channel.value}\n")
    else:
        out.write("\ndominant channel: none (no finite channel)\n")
    out.write(
        f"total decoherence time: {_tau_text(b.tau_total)}\n"
        f"Talbot time:            {b.tau_talbot.value:.4g} s\n"
        f"coherence margin:       {b.coherence_margin:.4g} (target {cfg.margin_k:g})\n"
    )
    v = b.velocity
    out.write(
        f"buoyancy-corrected g:   {v.g_eff.value:.4g} m/s^2; speed after Talbot time "
        f"{v.v_final.value:.3g} m/s vs v_crit {cfg.v_crit.value:g} m/s -> "
        f"{'ok' if v.ok else 'EXCEEDED'}\n"
        f"lowest vibrational mode: {b.freezeout.temperature.value:.3g} K "
        f"({'frozen' if b.freezeout.frozen else 'NOT frozen'})\n"
        f"rotons/vortex rings:    gap {b.rotons.gap.value:g} K "
        f"({'negligible' if b.rotons.negligible else 'NOT negligible'})\n"
        f"ideal Bose gas instead: {_tau_text(b.comparison.tau)}\n"
    )
    for n in b.notes:
        out.write(f"note: {n}\n")
    return out.getvalue()


SWEEP_COLUMNS = AXIS_COLUMNS + [
    "tau_he3_s",
    "tau_phonon_s",
    "tau_rot_s",
    "tau_total_s",
    "tau_talbot_s",
    "margin",
    "valid_he3",
    "valid_phonon",
    "valid_rot",
    "all_regimes_valid",
]


def _sweep_record(row: SweepRow) -> list[str]:
    inputs = config_to_mapping(row.config)
    b = row.budget
    he3 = b.channel(Channel.HE3_IMPURITY)
    ph = b.channel(Channel.THERMAL_PHONON)
    try:
        rot = b.channel(Channel.ROTATIONAL_PHONON)
        rot_tau, rot_valid = fmt(rot.tau.value), str(rot.valid).lower()
    except KeyError:
        rot_tau, rot_valid = "", ""
    return [fmt(inputs[k]) for k in AXIS_COLUMNS] + [
        fmt(he3.tau.value),
        fmt(ph.tau.value),
        rot_tau,
        fmt(b.tau_total.value),
        fmt(b.tau_talbot.value),
        fmt(b.coherence_margin),
        str(he3.valid).lower(),
        str(ph.valid).lower(),
        rot_valid,
        str(b.all_regimes_valid).lower(),
    ]


def write_sweep_csv(rows: Iterable[SweepRow], fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for row in rows:
        w.writerow(_sweep_record(row))


def write_trace_csv(
    trace: VisibilityTrace, fh: TextIO, mc: VisibilityTrace | None = None
) -> None:
    w = csv.writer(fh, lineterminator="\n")
    header = ["t_s", "visibility"]
    if mc is not None:
        header += ["visibility_mc", "stderr_mc"]
        se = mc.standard_errors()
    w.writerow(header)
    for i, t in enumerate(trace.times):
        rec = [fmt(float(t)), fmt(float(trace.visibility[i]))]
        if mc is not None:
            rec += [fmt(float(mc.visibility[i])), fmt(float(se[i]))]
        w.writerow(rec)
