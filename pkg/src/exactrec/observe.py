"""Generative model: noisy signed edge and node observations of a hidden labeling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GraphFormatError, InvalidArgumentError, InvalidParametersError, UndefinedAlphaError
from .rng import SplitMix64
from .spectral import check_labeling


@dataclass(frozen=True)
class NoiseParams:
    """Edge flip probability ``p`` and node flip probability ``q``, each in [0, 0.5)."""

    p: float
    q: float

    def __post_init__(self):
        for name, v in (("p", self.p), ("q", self.q)):
            if not 0.0 <= v < 0.5:
                raise InvalidParametersError(f"{name} must lie in [0, 0.5), got {v}")


@dataclass(frozen=True)
class Observations:
    """Signed edge measurements (sparse X) and signed node measurements c."""

    n: int
    x_edges: dict
    c: np.ndarray

    def __post_init__(self):
        c = check_labeling(self.c, self.n)
        for (i, j), s in self.x_edges.items():
            if not 0 <= i < j < self.n or s not in (1, -1):
                raise InvalidArgumentError(f"bad edge observation ({i}, {j}) -> {s}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "x_edges", dict(sorted(self.x_edges.items())))

    def dense(self):
        X = np.zeros((self.n, self.n))
        for (i, j), s in self.x_edges.items():
            X[i, j] = X[j, i] = s
        return X

    def csr(self):
        """(indptr, indices, data) of the symmetric X, neighbours in ascending order."""
        rows = [[] for _ in range(self.n)]
        for (i, j), s in self.x_edges.items():
            rows[i].append((j, s))
            rows[j].append((i, s))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indices, data = [], []
        for i, row in enumerate(rows):
            row.sort()
            indices.extend(j for j, _ in row)
            data.extend(float(s) for _, s in row)
            indptr[i + 1] = len(indices)
        return indptr, np.array(indices, dtype=np.int64), np.array(data, dtype=np.float64)

    def max_degree(self):
        deg = np.zeros(self.n, dtype=np.int64)
        for i, j in self.x_edges:
            deg[i] += 1
            deg[j] += 1
        return int(deg.max()) if self.n else 0


def sample_biased_rademacher(p, rng):
    """+1 with probability 1 - p, -1 with probability p."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParametersError(f"p must lie in [0, 1], got {p}")
    return -1 if rng.uniform() < p else 1


def generate_observations(g, truth, params, seed):
    """Draw X on the edges of ``g`` (sorted order), then c on vertices 0..n-1, from one seed."""
    truth = check_labeling(truth)
    if truth.shape[0] != g.n:
        raise InvalidArgumentError(f"truth has length {truth.shape[0]}, graph has {g.n} vertices")
    rng = SplitMix64(seed)
    x = {}
    for i, j in g.edges:
        x[(i, j)] = int(truth[i] * truth[j]) * sample_biased_rademacher(params.p, rng)
    c = np.array([int(truth[u]) * sample_biased_rademacher(params.q, rng) for u in range(g.n)])
    return Observations(g.n, x, c)


def alpha(p, q):
    """Node-term weight log((1-q)/q) / log((1-p)/p) of the likelihood score."""
    if not (0.0 < p < 0.5 and 0.0 < q < 0.5):
        raise UndefinedAlphaError(f"alpha needs p, q in (0, 0.5), got p={p}, q={q}")
    return math.log((1.0 - q) / q) / math.log((1.0 - p) / p)


def score_quadratic(y, obs):
    """Sum over observed edges of X_uv y_u y_v (that is, y'Xy / 2)."""
    y = check_labeling(y, obs.n)
    return float(sum(s * y[i] * y[j] for (i, j), s in obs.x_edges.items()))


def score_full(y, obs, a):
    y = check_labeling(y, obs.n)
    return score_quadratic(y, obs) + a * float(obs.c @ y)


def format_observations(obs):
    lines = [f"{obs.n} {len(obs.x_edges)}"]
    lines += [f"{i} {j} {s}" for (i, j), s in obs.x_edges.items()]
    lines.append(" ".join(str(int(v)) for v in obs.c))
    return "\n".join(lines) + "\n"


def write_observations(obs, path):
    with open(path, "w") as fh:
        fh.write(format_observations(obs))


def _pm1(tok, lineno, path):
    if tok not in ("1", "+1", "-1"):
        raise GraphFormatError(f"expected +1 or -1, got {tok!r}", lineno, path)
    return -1 if tok == "-1" else 1


def parse_observations(lines, path=None):
    rows = [(k + 1, ln.split()) for k, ln in enumerate(lines)]
    rows = [(k, t) for k, t in rows if t]
    if not rows:
        raise GraphFormatError("empty observations file", path=path)
    lineno, head = rows[0]
    try:
        n, m = (int(t) for t in head)
    except ValueError:
        raise GraphFormatError("header must be 'n m'", lineno, path)
    if len(rows) != m + 2:
        raise GraphFormatError(f"expected {m} edge lines and one node line, found {len(rows) - 1} lines", lineno, path)
    x = {}
    for lineno, toks in rows[1:-1]:
        if len(toks) != 3:
            raise GraphFormatError("edge line must be 'i j s'", lineno, path)
        try:
            i, j = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphFormatError("edge endpoints must be integers", lineno, path)
        if not 0 <= i < j < n:
            raise GraphFormatError(f"edge ({i}, {j}) violates 0 <= i < j < {n}", lineno, path)
        if (i, j) in x:
            raise GraphFormatError(f"duplicate edge ({i}, {j})", lineno, path)
        x[(i, j)] = _pm1(toks[2], lineno, path)
    lineno, toks = rows[-1]
    if len(toks) != n:
        raise GraphFormatError(f"node line needs {n} entries, got {len(toks)}", lineno, path)
    c = np.array([_pm1(t, lineno, path) for t in toks])
    return Observations(n, x, c)


def read_observations(path):
    with open(path) as fh:
        return parse_observations(fh.read().splitlines(), path=path)


def read_labels(path):
    """A labeling file holds whitespace-separated +-1 entries."""
    with open(path) as fh:
        toks = fh.read().split()
    if not toks:
        raise GraphFormatError("empty labels file", path=path)
    return np.array([_pm1(t, None, path) for t in toks])


def write_labels(y, path):
    with open(path, "w") as fh:
        fh.write(" ".join(str(int(v)) for v in y) + "\n")


def check_support(obs, g):
    """Raise unless the observed edges are exactly the graph's edges."""
    if obs.n != g.n or set(obs.x_edges) != set(g.edges):
        raise InvalidArgumentError("observations are not supported on the graph's edge set")
