"""Strength scans: classify profiles over a grid of shocks.

One scan fixes an EOS, a dissipation model, and a list of momentum
fluxes, then walks a strength grid for each flux.  Points are
independent, so the scan parallelizes over processes; records are
emitted in deterministic lexicographic (q1, strength) order regardless
of worker count, and the CSV contains no timing so repeated runs are
byte-identical.
"""

import csv
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .fluid_core import make_eos
from .rankine_hugoniot import NoShock, shock_from_strength
from .dissipation import make_model, CausalityError
from .profile_dynamics import scalar_profile_ft, shoot_heteroclinic

ENV_WORKERS = "SHOCKSCAN_WORKERS"

NAN = float("nan")


def _eig_summary(report):
    if report is None:
        return ""
    return ";".join("%.9g%+.9gi" % (l.real, l.imag)
                    for l in report.eigenvalues)


@dataclass
class ScanRecord:
    q1: float
    strength: float
    q0: float = NAN
    rho_minus: float = NAN
    rho_plus: float = NAN
    classification: str = ""
    width: float = None
    n_steps: int = 0
    arclength: float = 0.0
    endpoint_left: float = None
    endpoint_right: float = None
    eig_minus: str = ""
    eig_plus: str = ""
    reason: str = ""
    wall_time: float = field(default=0.0, compare=False)

    # wall_time stays out of the CSV so repeated scans are byte-identical
    CSV_FIELDS = ("q1", "strength", "q0", "rho_minus", "rho_plus",
                  "classification", "width", "n_steps", "arclength",
                  "endpoint_left", "endpoint_right", "eig_minus",
                  "eig_plus", "reason")

    def csv_row(self):
        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, float):
                return "%.17g" % v
            return str(v)
        return [fmt(getattr(self, f)) for f in self.CSV_FIELDS]


def _scan_point(args):
    """Classify one (q1, strength) point; top level so it pickles."""
    eos_spec, model_tag, co, q1, strength, overrides = args
    t0 = time.perf_counter()
    eos = make_eos(eos_spec)
    try:
        shock = shock_from_strength(eos, q1, strength)
    except NoShock as exc:
        return ScanRecord(q1, strength, classification="no_end_states",
                          reason=str(exc),
                          wall_time=time.perf_counter() - t0)
    model = make_model(model_tag, eos, **co)
    rec = ScanRecord(q1, strength, shock.q0, shock.rho_minus,
                     shock.rho_plus, "")
    try:
        if model_tag == "ft-viscous":
            res = scalar_profile_ft(shock, model.co, eos, **overrides)
        else:
            res = shoot_heteroclinic(shock, model, **overrides)
    except CausalityError as exc:
        rec.classification = "causality_error"
        rec.reason = str(exc)
        rec.wall_time = time.perf_counter() - t0
        return rec
    rec.classification = res.classification
    rec.width = res.width
    rec.n_steps = res.n_steps
    rec.arclength = res.arclength
    rec.endpoint_left = res.endpoint_errors.get("left")
    rec.endpoint_right = res.endpoint_errors.get("right")
    by_label = {rp.label: rp for rp in res.rest_points}
    rec.eig_minus = _eig_summary(by_label.get("minus"))
    rec.eig_plus = _eig_summary(by_label.get("plus"))
    rec.reason = res.reason
    rec.wall_time = time.perf_counter() - t0
    return rec


def resolve_workers(requested=None):
    """Explicit count wins, then the SHOCKSCAN_WORKERS variable, then 1."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get(ENV_WORKERS)
    if env:
        return max(1, int(env))
    return 1


class ScanResult:
    def __init__(self, eos_spec, model_tag, co, q1_values, strengths,
                 records, wall_time):
        self.eos_spec = eos_spec
        self.model_tag = model_tag
        self.co = co
        self.q1_values = list(q1_values)
        self.strengths = list(strengths)
        self.records = records
        self.wall_time = wall_time

    def counts(self):
        out = {}
        for r in self.records:
            out[r.classification] = out.get(r.classification, 0) + 1
        return out

    def failures(self):
        return [r for r in self.records if not
                r.classification.startswith("connected")]

    def first_oscillatory(self):
        """Smallest strength classified oscillatory, or None."""
        osc = [r.strength for r in self.records
               if r.classification == "connected_oscillatory"]
        return min(osc) if osc else None

    def upper_range_threshold(self):
        """Onset of non-monotone behavior along the strength axis.

        Returns (s_star, contiguous): s_star is the smallest strength
        whose record is not connected_monotone (None if all are), and
        contiguous says whether every strength above s_star also fails
        to be connected_monotone, i.e. whether the non-monotone set is
        an upper range of the grid.  Meaningful for single-q1 scans.
        """
        recs = sorted(self.records, key=lambda r: (r.q1, r.strength))
        flags = [r.classification != "connected_monotone" for r in recs]
        if not any(flags):
            return None, True
        i = flags.index(True)
        return recs[i].strength, all(flags[i:])

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(ScanRecord.CSV_FIELDS)
            for r in self.records:
                wr.writerow(r.csv_row())

    def summary_dict(self):
        s_star, contiguous = self.upper_range_threshold()
        return {
            "eos": self.eos_spec,
            "model": self.model_tag,
            "coefficients": self.co,
            "q1_values": self.q1_values,
            "strengths": self.strengths,
            "records": len(self.records),
            "counts": self.counts(),
            "threshold_strength": s_star,
            "upper_range_contiguous": contiguous,
            "failures": [
                {"q1": r.q1, "strength": r.strength,
                 "classification": r.classification, "reason": r.reason}
                for r in self.failures()],
            "wall_time_s": self.wall_time,
            "note": ("grid classification is numerical evidence "
                     "consistent with the observed behavior, not a proof"),
        }

    def write_summary(self, path):
        with open(path, "w") as fh:
            json.dump(self.summary_dict(), fh, indent=2)
            fh.write("\n")


def run_scan(eos_spec, model_tag, co, q1_values, strengths,
             workers=None, **overrides):
    """Classify every (q1, strength) grid point.

    eos_spec and the coefficient dict stay primitive so points can be
    shipped to worker processes; the grid is traversed in lexicographic
    order and results keep that order whatever the worker count.  A
    point that fails is recorded, never fatal.
    """
    jobs = [(eos_spec, model_tag, dict(co), float(q1), float(s),
             dict(overrides))
            for q1 in q1_values for s in strengths]
    if not jobs:
        raise ValueError("empty scan grid")
    n = resolve_workers(workers)
    t0 = time.perf_counter()
    if n == 1 or len(jobs) <= 1:
        records = [_scan_point(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n) as ex:
            records = list(ex.map(_scan_point, jobs, chunksize=1))
    wall = time.perf_counter() - t0
    return ScanResult(eos_spec, model_tag, dict(co), q1_values, strengths,
                      records, wall)
