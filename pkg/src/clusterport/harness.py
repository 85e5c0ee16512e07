"""Run configurations, report building, and report serialization.

A report is a deterministic function of its RunConfig: every random draw
flows from the 64-bit seed through a fixed substream key, so rerunning a
config reproduces the report byte for byte in any format.

Substream keys: random input k uses default_rng([seed, 0, k]), Monte Carlo
trial t uses default_rng([seed, 1, t]), probe sets use [seed, 2, scheme].
Trials therefore sample identically whether executed serially or not.

    cfg = RunConfig(scheme=Scheme.ARBITRARY, mode="sample", seed=7)
    report = run(cfg)
    sys.stdout.buffer.write(emit_report(report, "json"))
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .measurement import BELL_OUTCOMES, BellOutcome, sample_bell
from .protocol import (
    CorrectionOp,
    InputState,
    Scheme,
    apply_correction,
    assemble_total,
    default_probes,
    derive_corrections,
    random_input,
    run_branch,
    table_lookup,
    target_state,
    verify_tables,
)
from .statevec import fidelity, format_state

MODES = ("enumerate", "sample", "derive", "verify")
FORMATS = ("json", "csv", "text")

TOTAL_PROB_TOL = 1e-9
CSV_COLUMNS = ("outcome13", "outcome26", "probability", "fidelity", "correction")

_ALL_PAIRS = tuple((a, b) for a in BELL_OUTCOMES for b in BELL_OUTCOMES)


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs; reports depend on nothing else."""

    scheme: Scheme
    mode: str
    input_coeffs: tuple[complex, ...] | None = None
    random_inputs: int = 100
    trials: int = 16000
    seed: int = 0
    fidelity_tol: float = 1e-10
    output_format: str = "text"

    def __post_init__(self) -> None:
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.output_format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.output_format!r}")
        if self.input_coeffs is not None:
            coeffs = tuple(complex(c) for c in self.input_coeffs)
            InputState(self.scheme, coeffs)  # validates count and normalization
            object.__setattr__(self, "input_coeffs", coeffs)
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if not isinstance(self.random_inputs, int) or self.random_inputs < 1:
            raise ValueError(f"random_inputs must be a positive integer, got {self.random_inputs!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not 0.0 <= self.fidelity_tol < 1.0:
            raise ValueError(f"fidelity tolerance must lie in [0, 1), got {self.fidelity_tol!r}")


@dataclass(frozen=True)
class BranchRecord:
    """One branch of one input: outcomes, probability, post-correction
    fidelity, the correction applied, and a display form of the output.
    Sampling runs add how often the branch was drawn."""

    input_index: int
    outcome13: BellOutcome
    outcome26: BellOutcome
    probability: float
    fidelity: float
    correction: CorrectionOp
    state: str
    count: int | None = None
    frequency: float | None = None


@dataclass(frozen=True)
class InputSummary:
    coeffs: tuple[complex, ...]
    total_probability: float
    min_fidelity: float


@dataclass(frozen=True)
class Report:
    """Outcome of one run.  ``branches`` holds 16 records per enumerated
    input, or one record per observed outcome pair when sampling."""

    config: RunConfig
    branches: tuple[BranchRecord, ...]
    inputs: tuple[InputSummary, ...]
    aggregates: dict
    verdicts: tuple[dict, ...] | None = None
    schema: int = 1

    @property
    def passed(self) -> bool:
        return bool(self.aggregates.get("pass", False))


def _drawn_inputs(cfg: RunConfig, count: int) -> list[InputState]:
    return [
        random_input(cfg.scheme, np.random.default_rng([cfg.seed, 0, k]))
        for k in range(count)
    ]


def _configured_inputs(cfg: RunConfig) -> list[InputState]:
    if cfg.input_coeffs is not None:
        return [InputState(cfg.scheme, cfg.input_coeffs)]
    if cfg.mode == "sample":
        return _drawn_inputs(cfg, 1)
    return _drawn_inputs(cfg, cfg.random_inputs)


def run_enumeration(cfg: RunConfig) -> Report:
    """Deterministically execute all 16 branches for every input."""
    if cfg.mode != "enumerate":
        raise ValueError(f"run_enumeration needs mode 'enumerate', got {cfg.mode!r}")
    inputs = _configured_inputs(cfg)
    branches: list[BranchRecord] = []
    summaries: list[InputSummary] = []
    for k, state in enumerate(inputs):
        fids = []
        total = 0.0
        for o13, o26 in _ALL_PAIRS:
            r = run_branch(state, o13, o26)
            branches.append(
                BranchRecord(
                    k, o13, o26, r.probability, r.fidelity, r.correction,
                    format_state(r.corrected_state),
                )
            )
            fids.append(r.fidelity)
            total += r.probability
        summaries.append(InputSummary(state.coeffs, total, min(fids)))
    min_fid = min(s.min_fidelity for s in summaries)
    worst_total = max((s.total_probability for s in summaries), key=lambda t: abs(t - 1.0))
    probs = [b.probability for b in branches]
    aggregates = {
        "num_inputs": len(inputs),
        "min_fidelity": min_fid,
        "total_probability_worst": worst_total,
        "branch_probability_min": min(probs),
        "branch_probability_max": max(probs),
        "pass": (min_fid >= 1.0 - cfg.fidelity_tol)
        and (abs(worst_total - 1.0) <= TOTAL_PROB_TOL),
    }
    return Report(cfg, tuple(branches), tuple(summaries), aggregates)


def run_montecarlo(cfg: RunConfig) -> Report:
    """Sample the protocol end to end ``trials`` times."""
    if cfg.mode != "sample":
        raise ValueError(f"run_montecarlo needs mode 'sample', got {cfg.mode!r}")
    state = _configured_inputs(cfg)[0]
    total = assemble_total(state)
    target = target_state(state)
    op_of = {pair: table_lookup(cfg.scheme, *pair)[0] for pair in _ALL_PAIRS}
    counts: dict = {pair: 0 for pair in _ALL_PAIRS}
    prob_of: dict = {}
    min_fid_of: dict = {}
    state_of: dict = {}
    min_fid = math.inf
    for t in range(cfg.trials):
        rng = np.random.default_rng([cfg.seed, 1, t])
        o13, first = sample_bell(total, 1, 3, rng)
        o26, second = sample_bell(first.remainder, 2, 6, rng)
        op = op_of[(o13, o26)]
        corrected = apply_correction(second.remainder, op)
        fid = fidelity(target, corrected)
        pair = (o13, o26)
        counts[pair] += 1
        if pair not in prob_of:
            prob_of[pair] = first.probability * second.probability
            state_of[pair] = format_state(corrected)
            min_fid_of[pair] = fid
        elif fid < min_fid_of[pair]:
            min_fid_of[pair] = fid
        if fid < min_fid:
            min_fid = fid
    branches = tuple(
        BranchRecord(
            0, o13, o26, prob_of[(o13, o26)], min_fid_of[(o13, o26)],
            op_of[(o13, o26)], state_of[(o13, o26)],
            count=counts[(o13, o26)], frequency=counts[(o13, o26)] / cfg.trials,
        )
        for (o13, o26) in _ALL_PAIRS
        if counts[(o13, o26)] > 0
    )
    p = 1.0 / 16.0
    sigma = math.sqrt(p * (1.0 - p) / cfg.trials)
    max_dev = max(abs(counts[pair] / cfg.trials - p) for pair in _ALL_PAIRS)
    summary = InputSummary(state.coeffs, sum(prob_of.values()), min_fid)
    aggregates = {
        "trials": cfg.trials,
        "min_fidelity": min_fid,
        "distinct_outcomes": len(branches),
        "expected_frequency": p,
        "frequency_sigma": sigma,
        "three_sigma": 3.0 * sigma,
        "max_frequency_deviation": max_dev,
        "within_three_sigma": max_dev <= 3.0 * sigma,
        "pass": min_fid >= 1.0 - cfg.fidelity_tol,
    }
    return Report(cfg, branches, (summary,), aggregates)


def run_derivation(cfg: RunConfig) -> Report:
    """Brute-force the correction table for the configured scheme."""
    if cfg.mode != "derive":
        raise ValueError(f"run_derivation needs mode 'derive', got {cfg.mode!r}")
    probes = default_probes(cfg.scheme, seed=cfg.seed)
    rows = []
    sizes = []
    for o13, o26 in _ALL_PAIRS:
        derived = derive_corrections(cfg.scheme, o13, o26, probes)
        listed = table_lookup(cfg.scheme, o13, o26)
        rows.append(
            {
                "outcome13": o13.value,
                "outcome26": o26.value,
                "derived": [str(op) for op in derived],
                "listed": [str(op) for op in listed],
            }
        )
        sizes.append(len(derived))
    aggregates = {
        "cells": len(rows),
        "unique_per_cell": all(n == 1 for n in sizes),
        "max_set_size": max(sizes),
        "pass": all(n >= 1 for n in sizes),
    }
    return Report(cfg, (), (), aggregates, verdicts=tuple(rows))


def run_verification(cfg: RunConfig) -> Report:
    """Compare the built-in correction table against the derived one."""
    if cfg.mode != "verify":
        raise ValueError(f"run_verification needs mode 'verify', got {cfg.mode!r}")
    table = verify_tables(cfg.scheme, probes=default_probes(cfg.scheme, seed=cfg.seed))
    rows = []
    tally = {"exact-up-to-global-phase": 0, "subspace-only": 0, "mismatch": 0}
    for e in table.entries:
        tally[e.verdict] += 1
        rows.append(
            {
                "outcome13": e.outcome13.value,
                "outcome26": e.outcome26.value,
                "verdict": e.verdict,
                "derived": [str(op) for op in e.derived],
                "listed": [str(op) for op in e.listed],
                "subspace_only": [str(op) for op in e.subspace_only],
            }
        )
    aggregates = {
        "cells": len(rows),
        "exact": tally["exact-up-to-global-phase"],
        "subspace_only": tally["subspace-only"],
        "mismatch": tally["mismatch"],
        "pass": tally["mismatch"] == 0,
    }
    return Report(cfg, (), (), aggregates, verdicts=tuple(rows))


_RUNNERS = {
    "enumerate": run_enumeration,
    "sample": run_montecarlo,
    "derive": run_derivation,
    "verify": run_verification,
}


def run(cfg: RunConfig) -> Report:
    return _RUNNERS[cfg.mode](cfg)


def format_complex(c: complex) -> str:
    """Round-trip complex format, same syntax the CLI accepts."""
    return f"{c.real:.17g}{c.imag:+.17g}j"


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value in report: {x!r}")
    s = format(float(x), ".17g")
    if not any(ch in s for ch in ".eE"):
        s += ".0"
    return s


def _json_fragment(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        items = (f"{json.dumps(str(k))}:{_json_fragment(v)}" for k, v in value.items())
        return "{" + ",".join(items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_json_fragment(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__} in a report")


def _config_dict(cfg: RunConfig) -> dict:
    return {
        "scheme": int(cfg.scheme),
        "mode": cfg.mode,
        "coeffs": None
        if cfg.input_coeffs is None
        else [format_complex(c) for c in cfg.input_coeffs],
        "random_inputs": cfg.random_inputs,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "fidelity_tol": cfg.fidelity_tol,
        "output_format": cfg.output_format,
    }


def _branch_dict(r: BranchRecord) -> dict:
    d = {
        "input": r.input_index,
        "outcome13": r.outcome13.value,
        "outcome26": r.outcome26.value,
        "probability": r.probability,
        "fidelity": r.fidelity,
        "correction": str(r.correction),
        "state": r.state,
    }
    if r.count is not None:
        d["count"] = r.count
        d["frequency"] = r.frequency
    return d


def _report_dict(report: Report) -> dict:
    aggregates = dict(report.aggregates)
    aggregates["inputs"] = [
        {
            "coeffs": [format_complex(c) for c in s.coeffs],
            "total_probability": s.total_probability,
            "min_fidelity": s.min_fidelity,
        }
        for s in report.inputs
    ]
    return {
        "schema": report.schema,
        "config": _config_dict(report.config),
        "branches": [_branch_dict(b) for b in report.branches],
        "aggregates": aggregates,
        "verdicts": None if report.verdicts is None else list(report.verdicts),
    }


def _emit_json(report: Report) -> str:
    return _json_fragment(_report_dict(report)) + "\n"


def _emit_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if report.verdicts is not None:
        header = ["outcome13", "outcome26", "derived", "listed"]
        has_verdict = any("verdict" in row for row in report.verdicts)
        if has_verdict:
            header.insert(2, "verdict")
        w.writerow(header)
        for row in report.verdicts:
            cells = [row["outcome13"], row["outcome26"]]
            if has_verdict:
                cells.append(row["verdict"])
            cells.append("|".join(row["derived"]))
            cells.append("|".join(row["listed"]))
            w.writerow(cells)
    else:
        w.writerow(CSV_COLUMNS)
        for r in report.branches:
            w.writerow(
                (
                    r.outcome13.value,
                    r.outcome26.value,
                    format(r.probability, ".17g"),
                    format(r.fidelity, ".17g"),
                    str(r.correction),
                )
            )
    return buf.getvalue()


def _emit_text(report: Report) -> str:
    cfg = report.config
    lines = [
        f"scheme={int(cfg.scheme)} mode={cfg.mode} seed={cfg.seed} "
        f"tol={cfg.fidelity_tol:g}"
    ]
    for k, s in enumerate(report.inputs):
        coeffs = ", ".join(format_complex(c) for c in s.coeffs)
        lines.append(f"input {k}: {coeffs}")
    if report.branches:
        head = f"{'outcome13':<10}{'outcome26':<10}{'probability':<22}{'fidelity':<22}correction"
        if any(b.count is not None for b in report.branches):
            head += "  count  frequency"
        lines.append(head)
        for b in report.branches:
            row = (
                f"{b.outcome13.value:<10}{b.outcome26.value:<10}"
                f"{b.probability:<22.12g}{b.fidelity:<22.12g}{b.correction!s}"
            )
            if b.count is not None:
                row += f"  {b.count}  {b.frequency:.6g}"
            lines.append(row)
    if report.verdicts is not None:
        for row in report.verdicts:
            parts = [f"({row['outcome13']}, {row['outcome26']})"]
            if "verdict" in row:
                parts.append(row["verdict"])
            parts.append("derived=" + "|".join(row["derived"]))
            parts.append("listed=" + "|".join(row["listed"]))
            if row.get("subspace_only"):
                parts.append("subspace_only=" + "|".join(row["subspace_only"]))
            lines.append("  ".join(parts))
    skip = {"pass", "inputs"}
    summary = " ".join(
        f"{key}={value:.12g}" if isinstance(value, float) else f"{key}={value}"
        for key, value in report.aggregates.items()
        if key not in skip
    )
    lines.append(summary)
    lines.append("result: " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines) + "\n"


def emit_report(report: Report, output_format: str | None = None) -> bytes:
    """Serialize a report; same report and format, same bytes."""
    fmt = output_format if output_format is not None else report.config.output_format
    if fmt == "json":
        text = _emit_json(report)
    elif fmt == "csv":
        text = _emit_csv(report)
    elif fmt == "text":
        text = _emit_text(report)
    else:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    return text.encode("utf-8")
