"""Command-line entry point: ``exactrec <subcommand> ...``.

Exit status is 0 on success, 1 on usage errors and 2 on runtime errors.
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import bounds as B
from . import graph as G
from . import observe as O
from . import solve as S
from .errors import ExactRecError, UndefinedAlphaError
from .harness import ExperimentConfig, run_sweep
from .rng import SplitMix64, derive_seed
from .spectral import cheeger_bounds_spectral


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _labels_str(y):
    return " ".join(str(int(v)) for v in y)


def cmd_generate(args):
    f = args.family
    if f == "complete":
        g = G.complete(args.n)
    elif f == "cycle":
        g = G.cycle(args.n)
    elif f == "grid":
        g = G.grid(args.rows, args.cols)
    elif f == "regular":
        g = G.random_regular(args.n, args.d, args.seed)
    elif f == "er":
        g = G.erdos_renyi(args.n, args.prob, args.seed)
    else:
        base = G.read_graph(args.base)
        g = G.smooth(base, args.epsilon, args.seed)
    text = G.format_graph(g)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not G.is_connected(g):
        print("warning: generated graph is disconnected", file=sys.stderr)


def cmd_observe(args):
    g = G.read_graph(args.graph)
    if args.truth:
        truth = O.read_labels(args.truth)
    else:
        truth = np.array(SplitMix64(derive_seed(args.seed, 1)).signs(g.n))
    obs = O.generate_observations(g, truth, O.NoiseParams(args.p, args.q), args.seed)
    text = O.format_observations(obs)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.truth_out:
        O.write_labels(truth, args.truth_out)


def _scores(y, obs, p, q):
    out = f"score_quadratic={O.score_quadratic(y, obs):g}"
    if p is not None and q is not None:
        try:
            a = O.alpha(p, q)
            out += f" score_full={O.score_full(y, obs, a):.6g} alpha={a:.6g}"
        except UndefinedAlphaError:
            pass
    return out


def cmd_recover(args):
    g = G.read_graph(args.graph)
    obs = O.read_observations(args.observations)
    truth = O.read_labels(args.truth) if args.truth else None
    res = S.recover(g, obs, truth=truth, seed=args.seed)
    cert = res.certificate
    print(f"labels: {_labels_str(res.labels)}")
    print(f"certified: {'yes' if res.certified else 'no'} "
          f"(lambda1={cert.lambda1:.6g}, lambda2={cert.lambda2:.6g}, tol={cert.tolerance:.3g})")
    print(f"stage2_flipped: {'yes' if res.stage2_flipped else 'no'}")
    print(f"sdp_objective={res.objective:.6f} converged={'yes' if res.converged else 'no'}")
    print(_scores(res.labels, obs, args.p, args.q))
    if res.hamming is not None:
        print(f"hamming={res.hamming}")
    if args.output:
        O.write_labels(res.labels, args.output)


def cmd_certify(args):
    g = G.read_graph(args.graph)
    obs = O.read_observations(args.observations)
    O.check_support(obs, g)
    y = O.read_labels(args.labels)
    cert = S.build_certificate(obs, y)
    print(f"certified: {'yes' if cert.certified else 'no'}")
    print(f"lambda1={cert.lambda1:.9g}")
    print(f"lambda2={cert.lambda2:.9g}")
    print(f"tolerance={cert.tolerance:.3g}")
    print("v_diagonal: " + " ".join(f"{v:g}" for v in cert.v_diagonal))


def cmd_cheeger(args):
    g = G.read_graph(args.graph)
    if g.n <= G.CHEEGER_MAX_N and not args.spectral:
        print(G.cheeger_exact(g))
    else:
        lo, hi = cheeger_bounds_spectral(g)
        print(f"phi in [{lo:.6g}, {hi:.6g}] (spectral: lambda2/2 <= phi <= 2 sqrt(lambda2 dmax))")


def cmd_bounds(args):
    if args.graph:
        g = G.read_graph(args.graph)
        if g.n <= G.CHEEGER_MAX_N:
            phi = float(G.cheeger_exact(g).expansion)
        else:
            phi = cheeger_bounds_spectral(g)[0]
        stats = [(phi, G.max_degree(g), g.n)]
    elif args.family == "complete":
        stats = [B.complete_graph_stats(n) for n in args.n]
    elif args.family == "expander":
        stats = [B.expander_stats(n, args.d, args.c) for n in args.n]
    else:
        stats = [(args.phi, args.dmax, n) for n in args.n]
    print(f"{'n':>8} {'phi':>10} {'dmax':>6} {'p':>6} {'q':>6} {'eps1':>12} {'eps2':>12} "
          f"{'combined':>12} vacuous")
    for phi, dmax, n in stats:
        for p in args.p:
            for q in args.q:
                b = B.combined(phi, dmax, n, p, q)
                print(f"{n:>8} {phi:>10.4g} {dmax:>6} {p:>6g} {q:>6g} {b.eps1:>12.5g} "
                      f"{b.eps2:>12.5g} {b.combined_success:>12.5g} {'yes' if b.vacuous else 'no'}")


def cmd_sweep(args):
    cfg = ExperimentConfig.load(args.config)
    _, summary, paths = run_sweep(cfg, prefix=args.out, workers=args.workers)
    for row in summary["grid"]:
        print(f"p={row['p']:g} recovery={row['recovery_rate']:.3f} "
              f"certified={row['certification_rate']:.3f} mean_hamming={row['mean_hamming']:.3f}")
    for p in paths:
        print(f"wrote {p}")


def build_parser():
    ap = _Parser(prog="exactrec", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("generate", help="write a graph file for a family")
    g.add_argument("family", choices=["complete", "cycle", "grid", "regular", "er", "smoothed"])
    g.add_argument("--n", type=int)
    g.add_argument("--rows", type=int)
    g.add_argument("--cols", type=int)
    g.add_argument("--d", type=int)
    g.add_argument("--prob", type=float)
    g.add_argument("--base", help="graph file to perturb (smoothed)")
    g.add_argument("--epsilon", type=float)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate, required={
        "complete": ["n"], "cycle": ["n"], "grid": ["rows", "cols"], "regular": ["n", "d"],
        "er": ["n", "prob"], "smoothed": ["base", "epsilon"]})

    o = sub.add_parser("observe", help="sample noisy observations on a graph")
    o.add_argument("graph")
    o.add_argument("--p", type=float, required=True)
    o.add_argument("--q", type=float, required=True)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--truth", help="labels file; drawn from the seed when omitted")
    o.add_argument("--truth-out")
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_observe)

    r = sub.add_parser("recover", help="run the two-stage recovery")
    r.add_argument("graph")
    r.add_argument("observations")
    r.add_argument("--truth")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--p", type=float, help="edge noise, for the weighted score")
    r.add_argument("--q", type=float, help="node noise, for the weighted score")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_recover)

    c = sub.add_parser("certify", help="check the dual certificate for a labeling")
    c.add_argument("graph")
    c.add_argument("observations")
    c.add_argument("labels")
    c.set_defaults(func=cmd_certify)

    ch = sub.add_parser("cheeger", help="edge expansion (exact for n <= 24)")
    ch.add_argument("graph")
    ch.add_argument("--spectral", action="store_true")
    ch.set_defaults(func=cmd_cheeger)

    b = sub.add_parser("bounds", help="tabulate eps1, eps2 and the combined guarantee")
    b.add_argument("--graph", help="graph file; phi and dmax computed from it")
    b.add_argument("--family", choices=["complete", "expander", "custom"], default="complete")
    b.add_argument("--n", type=int, nargs="+", default=[100])
    b.add_argument("--d", type=int)
    b.add_argument("--c", type=float)
    b.add_argument("--phi", type=float)
    b.add_argument("--dmax", type=int)
    b.add_argument("--p", type=float, nargs="+", required=True)
    b.add_argument("--q", type=float, nargs="+", required=True)
    b.set_defaults(func=cmd_bounds, required_by_family={
        "expander": ["d", "c"], "custom": ["phi", "dmax"]})

    s = sub.add_parser("sweep", help="run a Monte Carlo sweep from a JSON config")
    s.add_argument("config")
    s.add_argument("--out", help="output prefix (default: config output_path)")
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_sweep)
    return ap


def _check_required(args, parser):
    req = getattr(args, "required", None)
    if req:
        missing = [k for k in req.get(args.family, []) if getattr(args, k) is None]
        if missing:
            parser.error(f"{args.family} needs --{' --'.join(missing)}")
    req = getattr(args, "required_by_family", None)
    if req and not args.graph:
        missing = [k for k in req.get(args.family, []) if getattr(args, k) is None]
        if missing:
            parser.error(f"{args.family} needs --{' --'.join(missing)}")


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return 1
        _check_required(args, parser)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    try:
        args.func(args)
    except (ExactRecError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
