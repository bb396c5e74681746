"""Simple undirected graphs, family generators, and exact edge expansion."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._backend import kernels
from .errors import (
    GenerationError,
    GraphFormatError,
    InvalidParametersError,
    InvalidSizeError,
    TooLargeError,
)
from .rng import SplitMix64

CHEEGER_MAX_N = 24
REGULAR_MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``edges`` may be given in any order and orientation; it is stored as a
    lexicographically sorted tuple of ``(i, j)`` pairs with ``i < j``.
    """

    n: int
    edges: tuple = ()
    adjacency: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidSizeError(f"vertex count must be a positive integer, got {self.n!r}")
        n = int(self.n)
        norm = []
        for e in self.edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise InvalidParametersError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidParametersError(f"edge ({i}, {j}) has an endpoint outside [0, {n})")
            norm.append((i, j) if i < j else (j, i))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise InvalidParametersError(f"duplicate edge {a}")
        adj = [[] for _ in range(n)]
        for i, j in norm:
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @property
    def m(self):
        return len(self.edges)

    def degree(self, i):
        return len(self.adjacency[i])

    def degrees(self):
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    def adjacency_matrix(self):
        A = np.zeros((self.n, self.n))
        for i, j in self.edges:
            A[i, j] = A[j, i] = 1.0
        return A

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class CutReport:
    best_set: tuple
    cut_edges: int
    expansion: Fraction

    @property
    def value(self):
        return float(self.expansion)

    def __str__(self):
        return f"phi={self.expansion} (|S|={len(self.best_set)}, cut={self.cut_edges})"


def complete(n):
    if n < 2:
        raise InvalidSizeError(f"complete graph needs n >= 2, got {n}")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n):
    if n < 3:
        raise InvalidSizeError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def grid(rows, cols):
    """rows x cols lattice, 4-neighbourhood, no wraparound. Vertex id = r * cols + c."""
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise InvalidSizeError(f"grid needs rows, cols >= 1 and rows*cols >= 2, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def random_regular(n, d, seed):
    """Connected simple d-regular graph from the configuration model with rejection."""
    if n < 1 or d < 0 or d >= n or (n * d) % 2:
        raise InvalidParametersError(f"no simple {d}-regular graph on {n} vertices")
    rng = SplitMix64(seed)
    stubs0 = [v for v in range(n) for _ in range(d)]
    for _ in range(REGULAR_MAX_ATTEMPTS):
        stubs = list(stubs0)
        rng.shuffle(stubs)
        seen = set()
        ok = True
        for k in range(0, len(stubs), 2):
            u, v = stubs[k], stubs[k + 1]
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in seen:
                ok = False
                break
            seen.add(e)
        if not ok:
            continue
        g = Graph(n, seen)
        if is_connected(g):
            return g
    raise GenerationError(
        f"random_regular(n={n}, d={d}) rejected {REGULAR_MAX_ATTEMPTS} consecutive samples"
    )


def _er_pairs(n, prob, rng):
    """Pairs (i < j) kept independently with probability ``prob``, by geometric skipping."""
    if prob <= 0.0 or n < 2:
        return []
    if prob >= 1.0:
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    log_q = math.log1p(-prob)
    out = []
    i, j = 0, 0  # j is the last examined partner of i; pairs start at (0, 1)
    while True:
        u = rng.uniform()
        j += 1 + int(math.log1p(-u) / log_q)
        while j >= n and i < n - 1:
            i += 1
            j = i + 1 + (j - n)
        if i >= n - 1:
            return out
        out.append((i, j))


def erdos_renyi(n, prob, seed):
    if not 0.0 <= prob <= 1.0:
        raise InvalidParametersError(f"edge probability must lie in [0, 1], got {prob}")
    if n < 1:
        raise InvalidSizeError(f"n must be >= 1, got {n}")
    return Graph(n, _er_pairs(n, prob, SplitMix64(seed)))


def smooth(base, epsilon, seed):
    """Union of ``base`` with an independent Erdos-Renyi(n, epsilon/n) edge set.

    An edge probability epsilon/n above 1 saturates to 1 (the complete graph).
    """
    if not (epsilon >= 0 and math.isfinite(epsilon)):
        raise InvalidParametersError(f"epsilon must be finite and >= 0, got {epsilon}")
    prob = min(1.0, epsilon / base.n)
    extra = _er_pairs(base.n, prob, SplitMix64(seed))
    return Graph(base.n, set(base.edges).union(extra))


def components(g):
    label = [-1] * g.n
    comps = []
    for s in range(g.n):
        if label[s] >= 0:
            continue
        label[s] = len(comps)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if label[v] < 0:
                    label[v] = label[s]
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g):
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    return count == g.n


def max_degree(g):
    return max(len(a) for a in g.adjacency)


def cut_size(g, subset):
    s = set(subset)
    return sum((i in s) != (j in s) for i, j in g.edges)


def cheeger_exact(g):
    """Exact edge expansion by exhaustive subset enumeration (n <= 24).

    Minimizes |E(S, S^C)| / |S| over nonempty S with |S| <= n/2; ties go to
    smaller |S|, then to the lexicographically smallest S. A disconnected
    graph yields expansion 0 witnessed by its smallest component.
    """
    if g.n > CHEEGER_MAX_N:
        raise TooLargeError(
            f"exact expansion is limited to n <= {CHEEGER_MAX_N} (got {g.n}); "
            "use spectral.cheeger_bounds_spectral for larger graphs"
        )
    if g.n < 2:
        raise InvalidSizeError("edge expansion needs at least 2 vertices")
    comps = components(g)
    if len(comps) > 1:
        witness = min(comps, key=lambda c: (len(c), c))
        return CutReport(tuple(witness), 0, Fraction(0))
    adjmask = np.zeros(g.n, dtype=np.uint64)
    for i, j in g.edges:
        adjmask[i] |= np.uint64(1 << j)
        adjmask[j] |= np.uint64(1 << i)
    mask, cut, size = kernels.cheeger_search(g.n, adjmask, g.degrees())
    best = tuple(v for v in range(g.n) if mask >> v & 1)
    assert len(best) == size
    return CutReport(best, cut, Fraction(cut, size))


def read_graph(path):
    with open(path) as fh:
        lines = fh.read().splitlines()
    return parse_graph(lines, path=path)


def parse_graph(lines, path=None):
    """Parse the ``n m`` / ``i j`` text format, rejecting violations by line number."""
    rows = [(k + 1, ln.split()) for k, ln in enumerate(lines)]
    rows = [(k, toks) for k, toks in rows if toks]
    if not rows:
        raise GraphFormatError("empty graph file", path=path)
    lineno, head = rows[0]
    try:
        n, m = (int(t) for t in head)
    except ValueError:
        raise GraphFormatError(f"header must be 'n m', got {' '.join(head)!r}", lineno, path)
    if n < 1 or m < 0:
        raise GraphFormatError(f"invalid header n={n} m={m}", lineno, path)
    body = rows[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body)}", lineno, path)
    edges = []
    prev = None
    for lineno, toks in body:
        try:
            i, j = (int(t) for t in toks)
        except ValueError:
            raise GraphFormatError(f"edge line must be 'i j', got {' '.join(toks)!r}", lineno, path)
        if not (0 <= i < j < n):
            raise GraphFormatError(f"edge ({i}, {j}) violates 0 <= i < j < {n}", lineno, path)
        if prev is not None and (i, j) <= prev:
            raise GraphFormatError(f"edge ({i}, {j}) is out of order or duplicated", lineno, path)
        prev = (i, j)
        edges.append((i, j))
    return Graph(n, edges)


def format_graph(g):
    return "".join([f"{g.n} {g.m}\n"] + [f"{i} {j}\n" for i, j in g.edges])


def write_graph(g, path):
    with open(path, "w") as fh:
        fh.write(format_graph(g))
