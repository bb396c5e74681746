"""Seeded Monte Carlo sweeps over graph families and edge-noise grids."""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .errors import ExperimentError, InvalidArgumentError, InvalidParametersError
from .graph import (
    CHEEGER_MAX_N,
    cheeger_exact,
    complete,
    cycle,
    erdos_renyi,
    grid,
    is_connected,
    max_degree,
    random_regular,
    smooth,
)
from .observe import NoiseParams, generate_observations, score_quadratic
from .rng import MASK64, SplitMix64, derive_seed
from .solve import BRUTE_FORCE_MAX_N, brute_force_max, recover
from .spectral import cheeger_bounds_spectral

log = logging.getLogger(__name__)

FAMILIES = ("complete", "cycle", "grid", "regular", "er", "smoothed")
GRAPH_ATTEMPTS = 100
CSV_HEADER = "p,q,trial,seed,recovered,sign_class_recovered,certified,hamming,objective,brute_match,wall_ms"

_GRAPH_KEY = 0x6A09E667
_TRIAL_KEY = 0xBB67AE85


@dataclass
class ExperimentConfig:
    family: str
    n: int
    p_grid: list
    q: float
    trials: int
    base_seed: int = 0
    family_params: dict = field(default_factory=dict)
    compare_brute_force: bool = False
    output_path: str = "sweep"
    fixed_truth: list | None = None
    record_wall_time: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParametersError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if not self.p_grid:
            raise InvalidParametersError("p_grid must be nonempty")
        for p in self.p_grid:
            NoiseParams(p, self.q)
        if self.trials < 1:
            raise InvalidParametersError("trials must be >= 1")
        self.base_seed = int(self.base_seed) & MASK64
        _check_family_params(self.family, self.n, self.family_params)
        if self.fixed_truth is not None and len(self.fixed_truth) != self.n:
            raise InvalidParametersError("fixed_truth length must equal n")
        if self.n > BRUTE_FORCE_MAX_N:
            self.compare_brute_force = False

    @classmethod
    def from_dict(cls, d):
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise InvalidParametersError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class TrialRecord:
    p: float
    q: float
    trial_index: int
    seed: int
    recovered: bool
    sign_class_recovered: bool
    certified: bool
    hamming: int
    objective: float
    brute_match: bool | None
    wall_ms: int


def _check_family_params(family, n, fp):
    need = {
        "complete": (),
        "cycle": (),
        "grid": ("rows", "cols"),
        "regular": ("d",),
        "er": ("prob",),
        "smoothed": ("base", "epsilon"),
    }[family]
    missing = [k for k in need if k not in fp]
    if missing:
        raise InvalidParametersError(f"family {family!r} needs family_params {missing}")
    if family == "grid" and fp["rows"] * fp["cols"] != n:
        raise InvalidParametersError("grid rows * cols must equal n")
    if family == "smoothed":
        if fp["base"] not in FAMILIES or fp["base"] == "smoothed":
            raise InvalidParametersError(f"invalid smoothed base family {fp['base']!r}")
        _check_family_params(fp["base"], n, fp.get("base_params", {}))


def _build(family, n, fp, seed):
    if family == "complete":
        return complete(n)
    if family == "cycle":
        return cycle(n)
    if family == "grid":
        return grid(fp["rows"], fp["cols"])
    if family == "regular":
        return random_regular(n, fp["d"], seed)
    if family == "er":
        return erdos_renyi(n, fp["prob"], seed)
    base = _build(fp["base"], n, fp.get("base_params", {}), derive_seed(seed, 1))
    return smooth(base, fp["epsilon"], derive_seed(seed, 2))


def build_graph(cfg):
    """The experiment's graph; random families are redrawn until connected."""
    for attempt in range(GRAPH_ATTEMPTS):
        g = _build(cfg.family, cfg.n, cfg.family_params, derive_seed(cfg.base_seed, _GRAPH_KEY, attempt))
        if is_connected(g):
            return g
        if cfg.family in ("complete", "cycle", "grid"):
            break
    raise ExperimentError(
        f"could not draw a connected {cfg.family} graph (n={cfg.n}, params={cfg.family_params}) "
        f"in {GRAPH_ATTEMPTS} attempts"
    )


def trial_seed(base_seed, p_index, trial_index):
    """Independent of the grid size, so extending p_grid leaves earlier trials untouched."""
    return (base_seed ^ derive_seed(_TRIAL_KEY, p_index, trial_index)) & MASK64


def run_trial(g, cfg, p_index, trial_index):
    p = cfg.p_grid[p_index]
    seed = trial_seed(cfg.base_seed, p_index, trial_index)
    start = time.perf_counter()
    if cfg.fixed_truth is not None:
        truth = np.array(cfg.fixed_truth, dtype=np.int64)
    else:
        truth = np.array(SplitMix64(derive_seed(seed, 1)).signs(g.n), dtype=np.int64)
    obs = generate_observations(g, truth, NoiseParams(p, cfg.q), derive_seed(seed, 2))
    res = recover(g, obs, truth=truth, seed=derive_seed(seed, 3))
    stage1 = res.stage1_labels
    sign_class = bool(np.array_equal(stage1, truth) or np.array_equal(stage1, -truth))
    brute_match = None
    if cfg.compare_brute_force:
        _, best = brute_force_max(obs)
        brute_match = score_quadratic(stage1, obs) == best
    wall_ms = int(round(1000 * (time.perf_counter() - start))) if cfg.record_wall_time else 0
    return TrialRecord(
        p=p,
        q=cfg.q,
        trial_index=trial_index,
        seed=seed,
        recovered=bool(res.hamming == 0),
        sign_class_recovered=sign_class,
        certified=bool(res.certified),
        hamming=int(res.hamming),
        objective=res.objective,
        brute_match=brute_match,
        wall_ms=wall_ms,
    )


def _run_trial_args(args):
    return run_trial(*args)


def run_experiment(cfg, workers=None):
    """One record per (p, trial), ordered by (p_index, trial_index) whatever ``workers`` is.

    ``workers`` defaults to the EXACTREC_WORKERS environment variable, else 1.
    """
    g = build_graph(cfg)
    jobs = [(g, cfg, pi, t) for pi in range(len(cfg.p_grid)) for t in range(cfg.trials)]
    if workers is None:
        workers = int(os.environ.get("EXACTREC_WORKERS", "1") or 1)
    if workers <= 1:
        return [run_trial(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_trial_args, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def format_csv(records):
    if not records:
        raise InvalidArgumentError("no records to write")
    lines = [CSV_HEADER]
    for r in records:
        bm = "" if r.brute_match is None else str(int(r.brute_match))
        lines.append(
            f"{r.p!r},{r.q!r},{r.trial_index},{r.seed},{int(r.recovered)},"
            f"{int(r.sign_class_recovered)},{int(r.certified)},{r.hamming},"
            f"{r.objective:.6f},{bm},{r.wall_ms}"
        )
    return "\n".join(lines) + "\n"


def write_csv(records, path):
    text = format_csv(records)
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def config_bounds(g, cfg):
    """Graph statistics and eps1/eps2 for every grid point.

    Uses the exact expansion when n <= 24, else the spectral lower bound
    lambda_2 / 2 (smaller phi only makes eps1 larger, so the bound stays valid).
    """
    if g.n <= CHEEGER_MAX_N:
        phi, source = float(cheeger_exact(g).expansion), "exact"
    else:
        phi, source = cheeger_bounds_spectral(g)[0], "spectral_lower"
    dmax = max_degree(g)
    e2 = bounds.eps2(g.n, cfg.q) if 0.0 < cfg.q < 0.5 else None
    per_p = {}
    for p in cfg.p_grid:
        if 0.0 < p < 0.5 and phi > 0:
            e1 = bounds.eps1(phi, dmax, p, g.n)
            comb = 1.0 - e1 - (e2 if e2 is not None else 0.0)
            per_p[p] = {"eps1": e1, "combined_success": comb, "vacuous": comb <= 0.0}
        else:
            per_p[p] = {"eps1": None, "combined_success": None, "vacuous": None}
    return {"n": g.n, "q": cfg.q, "phi": phi, "phi_source": source, "dmax": dmax, "eps2": e2,
            "per_p": per_p}


def summarize(records, bnds):
    groups = {}
    for r in records:
        groups.setdefault(r.p, []).append(r)
    rows = []
    for p, rs in groups.items():
        t = len(rs)
        b = bnds["per_p"].get(p, {})
        rows.append({
            "p": p,
            "trials": t,
            "recovery_rate": sum(r.recovered for r in rs) / t,
            "sign_class_rate": sum(r.sign_class_recovered for r in rs) / t,
            "certification_rate": sum(r.certified for r in rs) / t,
            "mean_hamming": sum(r.hamming for r in rs) / t,
            "brute_match_rate": (
                None if rs[0].brute_match is None else sum(bool(r.brute_match) for r in rs) / t
            ),
            "eps1": b.get("eps1"),
            "combined_success": b.get("combined_success"),
            "vacuous": b.get("vacuous"),
        })
    return {k: v for k, v in bnds.items() if k != "per_p"} | {"grid": rows}


def write_summary_json(records, bnds, path):
    summary = summarize(records, bnds)
    try:
        with open(path, "w") as fh:
            json.dump(summary, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write summary to {path}: {exc}") from exc
    return summary


_W, _H = 640, 400
_L, _R, _T, _B = 60, 150, 30, 50


def _polyline(points, color, dash=None):
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<polyline fill="none" stroke="{color}" stroke-width="2"{extra} points="{pts}"/>'


def render_svg(summary):
    """Recovery and certification rate against p, with 1 - eps1 - eps2 where it is non-vacuous."""
    rows = summary["grid"]
    if len(rows) < 2:
        raise InvalidArgumentError("plotting needs at least 2 grid points; add values to p_grid")
    ps = [r["p"] for r in rows]
    lo, hi = min(ps), max(ps)
    span = (hi - lo) or 1.0
    pw, ph = _W - _L - _R, _H - _T - _B

    def sx(p):
        return _L + pw * (p - lo) / span

    def sy(v):
        return _T + ph * (1.0 - v)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]
    for k in range(5):
        v = k / 4
        out.append(f'<line x1="{_L}" y1="{sy(v):.2f}" x2="{_L + pw}" y2="{sy(v):.2f}" stroke="#ddd"/>')
        out.append(f'<text x="{_L - 8}" y="{sy(v) + 4:.2f}" font-size="11" text-anchor="end">{v:.2f}</text>')
    for p in ps:
        out.append(f'<text x="{sx(p):.2f}" y="{_T + ph + 18}" font-size="11" text-anchor="middle">{p:g}</text>')
    out.append(f'<line x1="{_L}" y1="{_T + ph}" x2="{_L + pw}" y2="{_T + ph}" stroke="black"/>')
    out.append(f'<line x1="{_L}" y1="{_T}" x2="{_L}" y2="{_T + ph}" stroke="black"/>')
    out.append(f'<text x="{_L + pw / 2:.2f}" y="{_H - 12}" font-size="12" text-anchor="middle">edge noise p</text>')
    title = f"{summary.get('n', '?')} nodes, q = {summary.get('q', '?')}"
    out.append(f'<text x="{_L}" y="18" font-size="13">{title}</text>')

    series = [("recovery rate", "#1f77b4", "recovery_rate", None),
              ("certification rate", "#ff7f0e", "certification_rate", "6,3")]
    for _, color, key, dash in series:
        out.append(_polyline([(sx(r["p"]), sy(r[key])) for r in rows], color, dash))
    bound_pts = [(sx(r["p"]), sy(r["combined_success"])) for r in rows
                 if r.get("combined_success") is not None and r["combined_success"] > 0.0]
    legend = list(series)
    if len(bound_pts) >= 1:
        out.append(_polyline(bound_pts, "#2ca02c", "2,3"))
        legend.append(("1 - eps1 - eps2", "#2ca02c", None, "2,3"))
    else:
        out.append(f'<text x="{_L + pw / 2:.2f}" y="{_T + ph / 2:.2f}" font-size="12" '
                   f'text-anchor="middle" fill="#2ca02c">bound vacuous</text>')
    for k, (label, color, _, dash) in enumerate(legend):
        y = _T + 10 + 20 * k
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<line x1="{_L + pw + 12}" y1="{y}" x2="{_L + pw + 36}" y2="{y}" '
                   f'stroke="{color}" stroke-width="2"{extra}/>')
        out.append(f'<text x="{_L + pw + 40}" y="{y + 4}" font-size="11">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def plot_svg(summary, path):
    text = render_svg(summary)
    with open(path, "w") as fh:
        fh.write(text)


def run_sweep(cfg, prefix=None, workers=None):
    """Run ``cfg`` and write <prefix>.csv, <prefix>.summary.json and (for >= 2 grid points) <prefix>.svg."""
    prefix = prefix or cfg.output_path
    parent = os.path.dirname(prefix)
    if parent:
        os.makedirs(parent, exist_ok=True)
    records = run_experiment(cfg, workers=workers)
    g = build_graph(cfg)
    summary = write_summary_json(records, config_bounds(g, cfg), prefix + ".summary.json")
    write_csv(records, prefix + ".csv")
    paths = [prefix + ".csv", prefix + ".summary.json"]
    if len(summary["grid"]) >= 2:
        plot_svg(summary, prefix + ".svg")
        paths.append(prefix + ".svg")
    else:
        log.warning("single grid point: skipping SVG plot")
    return records, summary, paths
