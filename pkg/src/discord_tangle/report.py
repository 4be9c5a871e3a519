"""Point analysis and sweeps, with deterministic JSON/CSV rendering."""
from dataclasses import dataclass
import io
import csv
import json

import numpy as np

from .discord import geometric_discord_closed, geometric_discord_oracle
from .family import FamilyParams, build_sigma, overlap
from .purify import purify, verify_purification
from .tangle import DEFAULT_TOL, TangleReport, tangle_report

CSV_HEADER = ("p", "alpha", "n", "rx", "ry", "rz", "sx", "sy", "sz",
              "overlap", "discord", "tau3", "paper_label", "slocc_label")
SWEEP_AXES = ("p", "alpha")
SWEEP_OUTPUTS = ("discord", "tau3", "paper_label", "slocc_label")


def round12(x):
    """Round to 12 significant digits; normalizes -0.0 to 0.0."""
    v = float(f"{float(x):.12g}")
    return 0.0 if v == 0 else v


def fmt(x):
    return repr(round12(x))


@dataclass(frozen=True)
class PointReport:
    params: FamilyParams
    overlap: float
    discord: float
    discord_oracle: float | None
    tangle: TangleReport | None
    purification_residual: float | None

    def to_dict(self):
        pr = self.params
        t = self.tangle
        opt = lambda v: None if v is None else round12(v)
        return {
            "params": {
                "p": round12(pr.p),
                "alpha": round12(pr.alpha),
                "n": pr.n,
                "r": [round12(v) for v in pr.r],
                "s": [round12(v) for v in pr.s],
            },
            "overlap": round12(self.overlap),
            "discord": round12(self.discord),
            "discord_oracle": opt(self.discord_oracle),
            "tau3_general": None if t is None else round12(t.tau3_general),
            "tau3_closed": None if t is None else opt(t.tau3_closed),
            "delta": None if t is None else opt(t.delta),
            "paper_label": None if t is None else t.paper_label.value,
            "slocc_label": None if t is None else t.slocc_label.value,
            "slocc_ambiguous": None if t is None else t.slocc_ambiguous,
            "purification_residual": opt(self.purification_residual),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"


def analyze_point(params, oracle=False, oracle_grid=128, do_purify=True, tol=DEFAULT_TOL):
    """Discord, purification and tangle analysis of one family point.

    Raises ``PurificationError`` for mixed branch states when ``do_purify``.
    """
    disc = geometric_discord_closed(params).discord
    orc = geometric_discord_oracle(build_sigma(params), oracle_grid) if oracle else None
    tangle = residual = None
    if do_purify:
        residual = verify_purification(purify(params))
        tangle = tangle_report(params, tol)
    return PointReport(params, overlap(params), disc, orc, tangle, residual)


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    steps: int

    @classmethod
    def parse(cls, text):
        """Parse ``name:min:max:steps``."""
        parts = [t.strip() for t in str(text).split(":")]
        if len(parts) != 4:
            raise ValueError(f"axis {text!r} must look like name:min:max:steps")
        name, lo, hi, steps = parts
        try:
            steps_val = int(steps)
            lo_val, hi_val = float(lo), float(hi)
        except ValueError:
            raise ValueError(f"axis {text!r} has non-numeric bounds") from None
        return cls(name, lo_val, hi_val, steps_val)

    def values(self):
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    axis1: Axis
    axis2: Axis
    fixed: dict
    outputs: tuple = SWEEP_OUTPUTS

    def __post_init__(self):
        for ax in (self.axis1, self.axis2):
            if ax.name not in SWEEP_AXES:
                raise ValueError(f"sweep axis must be one of {SWEEP_AXES}, got {ax.name!r}")
            if ax.steps < 2:
                raise ValueError(f"axis {ax.name} needs steps >= 2")
            if not ax.lo < ax.hi:
                raise ValueError(f"axis {ax.name} needs min < max")
            if ax.lo < 0 or ax.hi > 1:
                raise ValueError(f"axis {ax.name} range must lie in [0, 1]")
        if self.axis1.name == self.axis2.name:
            raise ValueError("sweep axes must be distinct")
        bad = set(self.outputs) - set(SWEEP_OUTPUTS)
        if bad:
            raise ValueError(f"unknown sweep outputs {sorted(bad)}")

    def points(self):
        for v1 in self.axis1.values():
            for v2 in self.axis2.values():
                kw = dict(self.fixed)
                kw[self.axis1.name] = float(v1)
                kw[self.axis2.name] = float(v2)
                yield FamilyParams(**kw)


def sweep_row(params, outputs=SWEEP_OUTPUTS, tol=DEFAULT_TOL):
    want_tangle = bool({"tau3", "paper_label", "slocc_label"} & set(outputs))
    rep = analyze_point(params, do_purify=want_tangle, tol=tol)
    t = rep.tangle
    row = [fmt(params.p), fmt(params.alpha), str(params.n)]
    row += [fmt(v) for v in params.r] + [fmt(v) for v in params.s]
    row.append(fmt(rep.overlap))
    row.append(fmt(rep.discord) if "discord" in outputs else "")
    row.append(fmt(t.tau3_general) if "tau3" in outputs else "")
    row.append(t.paper_label.value if "paper_label" in outputs else "")
    row.append(t.slocc_label.value if "slocc_label" in outputs else "")
    return row


def sweep_csv(spec, tol=DEFAULT_TOL):
    """Render the whole sweep as CSV text (rows in axis1-major order)."""
    rows = [sweep_row(pr, spec.outputs, tol) for pr in spec.points()]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    return buf.getvalue()
