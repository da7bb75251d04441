"""Batch experiments: ensembles of runs, summary statistics, CSV/SVG/JSON output.

Every command writes its curves to CSV first and draws SVG charts from
those files, so a chart can always be regenerated from the data alone.
"""
import csv
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import make_rng, simulate
from .fincat import load_category
from .metrics import (
    EnsembleCurves, cycles_to_fraction, ensemble_mean, moving_average, upward_jumps,
)
from .mobility import (
    build_mobility, classify_rigidity, export_mobility, find_critical_states, gripper_projection,
    is_effective, static_target_category, target_projection,
)
from .statespace import read_table_csv, write_table_csv
from .svg import plot_csv

OUT_ENV = "SOFTGRIP_OUT"
FIG4D_SMIN = (2, 3, 4, 5)
# reference crossover cycles for adjacent S_min pairs (larger, smaller)
FIG4D_REFERENCE = {(5, 4): 375, (4, 3): 888, (3, 2): 1398}


def output_dir(path=None):
    """``path``, else ``$SOFTGRIP_OUT``, else ``./softgrip-out``; created if missing."""
    out = Path(path or os.environ.get(OUT_ENV) or "softgrip-out")
    out.mkdir(parents=True, exist_ok=True)
    return out


@dataclass
class ExperimentReport:
    name: str
    config: dict
    seed: int
    csv: dict = field(default_factory=dict)
    svg: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)
    version: str = __version__
    wall_time: float = 0.0

    def to_json(self, path):
        Path(path).write_text(json.dumps(asdict(self), indent=2, default=_jsonable) + "\n", encoding="utf-8")
        return path

    @classmethod
    def from_json(cls, path):
        return cls(**json.loads(Path(path).read_text(encoding="utf-8")))

    def verify(self):
        """Check that every referenced CSV exists and parses; returns row counts."""
        counts = {}
        for key, p in self.csv.items():
            with open(p, newline="", encoding="utf-8") as fh:
                rows = list(csv.reader(fh))
            if not rows or any(len(r) != len(rows[0]) for r in rows):
                raise ValueError(f"{p}: malformed CSV")
            counts[key] = len(rows) - 1
        return counts


def _jsonable(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (set, frozenset, tuple)):
        return sorted(v) if isinstance(v, (set, frozenset)) else list(v)
    if isinstance(v, Path):
        return str(v)
    raise TypeError(f"cannot serialise {type(v).__name__}")


def _one(args):
    cfg, target, i = args
    return simulate(target, cfg, make_rng(cfg.seed, i), seed=cfg.seed)


def run_batch(cfg, n_jobs=1):
    """``cfg.runs`` independent trajectories, sub-stream ``i`` for run ``i``.

    Results are ordered by run index and do not depend on ``n_jobs``.
    """
    cfg.validate()
    target = cfg.target_profile()
    jobs = [(cfg, target, i) for i in range(cfg.runs)]
    if n_jobs == 1 or cfg.runs == 1:
        return [_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(_one, jobs, chunksize=max(1, cfg.runs // (4 * n_jobs))))


def crossover_cycle(upper, lower):
    """Last cycle at which ``upper`` is still below ``lower``.

    ``upper`` is the curve that ends above ``lower``. Returns None if it
    never dips below, or if the final ordering does not hold.
    """
    upper, lower = np.asarray(upper), np.asarray(lower)
    n = min(len(upper), len(lower))
    upper, lower = upper[:n], lower[:n]
    if upper[-1] <= lower[-1]:
        return None
    below = np.flatnonzero(upper < lower)
    return int(below[-1]) if len(below) else None


def relative_spread(curves, upto):
    """max_t (max - min) / min across curves for cycles ``0..upto``."""
    stack = np.vstack([np.asarray(c)[: upto + 1] for c in curves])
    return float(((stack.max(axis=0) - stack.min(axis=0)) / stack.min(axis=0)).max())


def fig4d_summary(curves, common_upto=150, before=400):
    """Statistics of ensemble Ra curves keyed by S_min."""
    keys = sorted(curves)
    finals = {k: float(curves[k].ra_mean[-1]) for k in keys}
    cross = {}
    for hi, lo in zip(keys[1:][::-1], keys[:-1][::-1]):
        cross[f"{hi}v{lo}"] = crossover_cycle(curves[hi].ra_mean, curves[lo].ra_mean)
    reference = {f"{a}v{b}": c for (a, b), c in FIG4D_REFERENCE.items()}
    first, last = keys[0], keys[-1]
    below = np.flatnonzero(curves[last].ra_mean[:before] < curves[first].ra_mean[:before])
    return {
        "final_ra": finals,
        "ordering_increasing": all(finals[a] < finals[b] for a, b in zip(keys, keys[1:])),
        "crossovers": cross,
        "reference_crossovers": reference,
        "crossovers_within_50pct": {
            k: (cross.get(k) is not None and abs(cross[k] - v) <= 0.5 * v) for k, v in reference.items()
        },
        "common_phase_spread": relative_spread([curves[k].ra_mean for k in keys], common_upto),
        "common_phase_upto": common_upto,
        f"smin{last}_below_smin{first}_first": int(below[0]) if len(below) else None,
        f"smin{last}_below_smin{first}_last": int(below[-1]) if len(below) else None,
    }


def _write_columns(path, columns, fmt="{:.6f}"):
    names = list(columns)
    length = len(next(iter(columns.values())))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["cycle"] + names)
        for t in range(length):
            w.writerow([t] + [fmt.format(columns[k][t]) for k in names])
    return str(path)


def ensembles_fig4d(cfg, s_min_list=FIG4D_SMIN, n_jobs=1):
    for s in s_min_list:
        cfg.replace(s_min=s).validate()
    return {s: ensemble_mean(run_batch(cfg.replace(s_min=s), n_jobs)) for s in s_min_list}


def cmd_fig4d(cfg, s_min_list=FIG4D_SMIN, out=None, n_jobs=1, curves=None):
    """S_min sweep on target B (the target field of ``cfg`` is overridden)."""
    t0 = time.perf_counter()
    cfg = cfg.replace(target="B")
    out = output_dir(out)
    if curves is None:
        curves = ensembles_fig4d(cfg, s_min_list, n_jobs)
    report = ExperimentReport("fig4d", cfg.as_dict(), cfg.seed)
    for s, c in curves.items():
        report.csv[f"smin{s}"] = str(out / f"fig4d_smin{s}.csv")
        c.to_csv(report.csv[f"smin{s}"])
    report.csv["combined"] = _write_columns(
        out / "fig4d.csv", {f"ra_smin{s}": curves[s].ra_mean for s in sorted(curves)}
    )
    report.svg["ra"] = str(plot_csv(
        report.csv["combined"], out / "fig4d.svg", "cycle",
        [f"ra_smin{s}" for s in sorted(curves)],
        title="Ra by minimum scale (target B)", xlabel="cycle", ylabel="Ra",
    ))
    report.summary = fig4d_summary(curves)
    report.summary["padded_runs"] = {s: c.padded for s, c in curves.items()}
    report.wall_time = time.perf_counter() - t0
    report.to_json(out / "fig4d.json")
    return report


def fig4fg_summary(trajs_a, trajs_b, plateau=(10, 80), after=100, window=10):
    ea, eb = ensemble_mean(trajs_a), ensemble_mean(trajs_b)
    ma, mb = moving_average(ea.moved_mean, window), moving_average(eb.moved_mean, window)
    lo, hi = plateau
    jumps_a = [upward_jumps(t.scale, after) for t in trajs_a]
    jumps_b = [upward_jumps(t.scale, after) for t in trajs_b]
    mean_a, mean_b = float(np.mean(jumps_a)), float(np.mean(jumps_b))
    return {
        "half_ra_cycle": {"A": cycles_to_fraction(ea.ra_mean), "B": cycles_to_fraction(eb.ra_mean)},
        "initial_ra": {"A": float(ea.ra_mean[0]), "B": float(eb.ra_mean[0])},
        "plateau_range": [lo, hi],
        "plateau_moved": {
            "A": [float(ma[lo:hi + 1].min()), float(ma[lo:hi + 1].max())],
            "B": [float(mb[lo:hi + 1].min()), float(mb[lo:hi + 1].max())],
        },
        "upward_jumps_after": after,
        "upward_jumps_mean": {"A": mean_a, "B": mean_b},
        "upward_jumps_total": {"A": int(sum(jumps_a)), "B": int(sum(jumps_b))},
        "upward_jumps_ratio": mean_b / mean_a if mean_a else None,
    }, (ea, eb, ma, mb)


def cmd_fig4fg(cfg, out=None, n_jobs=1, trajs=None):
    """Targets A and B at identical per-run seeds."""
    t0 = time.perf_counter()
    out = output_dir(out)
    if trajs is None:
        ca, cb = cfg.replace(target="A").validate(), cfg.replace(target="B").validate()
        trajs = (run_batch(ca, n_jobs), run_batch(cb, n_jobs))
    summary, (ea, eb, ma, mb) = fig4fg_summary(*trajs)
    report = ExperimentReport("fig4fg", cfg.as_dict(), cfg.seed, summary=summary)
    for label, e in (("A", ea), ("B", eb)):
        report.csv[f"ensemble_{label}"] = str(out / f"fig4fg_{label}.csv")
        e.to_csv(report.csv[f"ensemble_{label}"])
    report.csv["ra"] = _write_columns(out / "fig4f.csv", {
        "ra_norm_A": ea.ra_mean / ea.ra_mean[0], "ra_norm_B": eb.ra_mean / eb.ra_mean[0],
    })
    report.csv["moved"] = _write_columns(out / "fig4g.csv", {"moved_ma_A": ma, "moved_ma_B": mb})
    report.svg["ra"] = str(plot_csv(
        report.csv["ra"], out / "fig4f.svg", "cycle", ["ra_norm_A", "ra_norm_B"],
        title="Normalised Ra, targets A and B", xlabel="cycle", ylabel="Ra(t)/Ra(0)",
    ))
    report.svg["moved"] = str(plot_csv(
        report.csv["moved"], out / "fig4g.svg", "cycle", ["moved_ma_A", "moved_ma_B"],
        title="Transferred particles (10-cycle mean)", xlabel="cycle", ylabel="particles",
    ))
    report.wall_time = time.perf_counter() - t0
    report.to_json(out / "fig4fg.json")
    return report


def cmd_fig4e(n_exp=10, scales=range(2, 8), out=None):
    t0 = time.perf_counter()
    out = output_dir(out)
    path = out / "fig4e.csv"
    write_table_csv(n_exp, list(scales), path)
    rows = read_table_csv(path)
    report = ExperimentReport("fig4e", {"n_exp": n_exp, "scales": list(scales)}, 0)
    report.csv["table"] = str(path)
    report.svg["counts"] = str(plot_csv(
        path, out / "fig4e.svg", "S", ["log10_states", "log10_transitions"],
        title="States and transitions by scale", xlabel="S", ylabel="log10 count",
    ))
    report.summary = {"rows": rows}
    report.wall_time = time.perf_counter() - t0
    report.to_json(out / "fig4e.json")
    return report


def rigidity_verdict(classification, effectiveness):
    if classification == "hard":
        return "hard"
    if classification == "soft-not-hard":
        return "effectively soft" if effectiveness.effective else "soft but not effectively soft"
    return "not soft"


def halting_runs(cfg):
    """How many of ``cfg.runs`` simulated runs reach an absorbing state."""
    return sum(t.halted for t in run_batch(cfg))


def cmd_mobility(cfg, horizon=None, robot=None, out=None, monte_carlo=True):
    """Enumerate a toy's category of mobility and judge its softness.

    ``robot`` is a category file; by default the gripper's own image
    category (the projection of the composite onto the gripper surface).
    """
    t0 = time.perf_counter()
    out = output_dir(out)
    mob = build_mobility(cfg, horizon=horizon)
    target = cfg.target_profile()
    P = target_projection(mob, static_target_category(target))
    critical = find_critical_states(mob, P)
    eff = is_effective(mob, critical)
    robot_cat = load_category(robot) if robot else gripper_projection(mob, target)[0]
    classification = classify_rigidity(mob, robot_cat)
    cat_path, tsv = export_mobility(mob, out / "mobility")
    report = ExperimentReport("mobility", cfg.as_dict(), cfg.seed)
    report.csv["states"] = str(tsv)
    report.summary = {
        "states": len(mob),
        "arrows": len(mob.arrows),
        "horizon": horizon,
        "critical": sorted(critical),
        "absorbing": sorted(mob.absorbing()),
        "effective": eff.effective,
        "has_critical": eff.has_critical,
        "classification": classification,
        "verdict": rigidity_verdict(classification, eff),
        "robot": str(robot) if robot else "gripper projection",
        "graph": str(cat_path),
    }
    if monte_carlo:
        report.summary["halted_runs"] = halting_runs(cfg)
        report.summary["runs"] = cfg.runs
    report.wall_time = time.perf_counter() - t0
    report.to_json(out / "mobility.json")
    return report


def load_ensemble(path):
    return EnsembleCurves.from_csv(path)
