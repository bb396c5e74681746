import itertools
import math

import numpy as np
import pytest

from exactrec import graph as G
from exactrec import observe as O
from exactrec.errors import (
    GraphFormatError,
    InvalidArgumentError,
    InvalidParametersError,
    UndefinedAlphaError,
)
from exactrec.rng import SplitMix64

from .oracles import random_signs


def test_biased_rademacher_extremes():
    rng = SplitMix64(1)
    assert all(O.sample_biased_rademacher(0.0, rng) == 1 for _ in range(1000))
    assert all(O.sample_biased_rademacher(1.0, rng) == -1 for _ in range(1000))


def test_biased_rademacher_mean():
    rng = SplitMix64(2)
    draws = 100_000
    mean = sum(O.sample_biased_rademacher(0.3, rng) for _ in range(draws)) / draws
    sd = math.sqrt((1 - 0.4**2) / draws)
    assert abs(mean - 0.4) <= 4 * sd


def test_biased_rademacher_domain():
    with pytest.raises(InvalidParametersError):
        O.sample_biased_rademacher(1.5, SplitMix64(0))


def test_noise_params_domain():
    O.NoiseParams(0.0, 0.0)
    for p, q in ((0.5, 0.1), (0.1, 0.5), (-0.1, 0.1)):
        with pytest.raises(InvalidParametersError):
            O.NoiseParams(p, q)


class TestGenerate:
    def test_noiseless(self):
        g = G.grid(3, 3)
        y = random_signs(np.random.default_rng(0), 9)
        obs = O.generate_observations(g, y, O.NoiseParams(0, 0), 5)
        assert all(s == y[i] * y[j] for (i, j), s in obs.x_edges.items())
        assert np.array_equal(obs.c, y)
        assert set(obs.x_edges) == set(g.edges)

    def test_flip_rates(self):
        g = G.cycle(10_000)
        y = random_signs(np.random.default_rng(1), g.n)
        for p, q in ((0.499, 0.2), (0.1, 0.3)):
            obs = O.generate_observations(g, y, O.NoiseParams(p, q), 11)
            flipped = sum(s != y[i] * y[j] for (i, j), s in obs.x_edges.items()) / g.m
            node_flipped = float(np.mean(obs.c != y))
            assert abs(flipped - p) <= 4 * math.sqrt(p * (1 - p) / g.m)
            assert abs(node_flipped - q) <= 4 * math.sqrt(q * (1 - q) / g.n)

    def test_determinism(self):
        g = G.complete(8)
        y = np.ones(8)
        a = O.generate_observations(g, y, O.NoiseParams(0.2, 0.2), 42)
        b = O.generate_observations(g, y, O.NoiseParams(0.2, 0.2), 42)
        assert a.x_edges == b.x_edges and np.array_equal(a.c, b.c)

    def test_draw_order(self):
        # edges first (sorted), then nodes, one uniform each
        g = G.complete(3)
        y = np.array([1, 1, 1])
        obs = O.generate_observations(g, y, O.NoiseParams(0.3, 0.2), 77)
        rng = SplitMix64(77)
        u = [rng.uniform() for _ in range(6)]
        assert [obs.x_edges[e] for e in g.edges] == [-1 if x < 0.3 else 1 for x in u[:3]]
        assert obs.c.tolist() == [-1 if x < 0.2 else 1 for x in u[3:]]

    def test_size_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            O.generate_observations(G.complete(3), [1, 1], O.NoiseParams(0, 0), 0)


class TestAlpha:
    def test_values(self):
        assert O.alpha(0.2, 0.2) == 1.0
        assert O.alpha(0.1, 0.25) == pytest.approx(0.5, rel=1e-15)
        # log(1.5)/log(19), evaluated with 40-digit mpmath
        assert O.alpha(0.05, 0.4) == pytest.approx(0.13770538665499871243, rel=1e-14)

    @pytest.mark.parametrize("p,q", [(0, 0.2), (0.2, 0), (0.5, 0.2), (0.2, 0.5)])
    def test_undefined(self, p, q):
        with pytest.raises(UndefinedAlphaError):
            O.alpha(p, q)


def _k3(flip=None):
    y = np.array([1, -1, 1])
    x = {(i, j): int(y[i] * y[j]) for i, j in G.complete(3).edges}
    if flip:
        x[flip] *= -1
    return y, O.Observations(3, x, y.copy())


class TestScores:
    def test_examples(self):
        y, obs = _k3()
        assert O.score_quadratic(y, obs) == 3
        y, obs = _k3((1, 2))
        assert O.score_quadratic(y, obs) == 1

    def test_full(self):
        y, obs = _k3()
        assert O.score_full(y, obs, 0.5) == 3 + 0.5 * 3
        assert O.score_quadratic(y, obs) == float(y @ obs.dense() @ y) / 2

    def test_symmetries_exhaustive(self):
        rng = np.random.default_rng(3)
        for n in range(2, 9):
            g = G.erdos_renyi(n, 0.6, n)
            truth = random_signs(rng, n)
            obs = O.generate_observations(g, truth, O.NoiseParams(0.3, 0.3), n)
            a = float(rng.uniform(0.1, 3))
            for y in itertools.product((1, -1), repeat=n):
                y = np.array(y)
                assert O.score_quadratic(y, obs) == O.score_quadratic(-y, obs)
                diff = O.score_full(y, obs, a) - O.score_full(-y, obs, a)
                assert diff == pytest.approx(2 * a * float(obs.c @ y), abs=1e-12)


class TestFormats:
    def test_roundtrip(self, tmp_path):
        g = G.cycle(5)
        obs = O.generate_observations(g, [1, -1, 1, 1, -1], O.NoiseParams(0.2, 0.2), 3)
        path = tmp_path / "obs.txt"
        O.write_observations(obs, path)
        back = O.read_observations(path)
        assert back.x_edges == obs.x_edges and np.array_equal(back.c, obs.c)
        lines = path.read_text().splitlines()
        assert lines[0] == "5 5" and len(lines) == 7

    @pytest.mark.parametrize("text,line", [
        ("2 1\n0 1 2\n1 1\n", 2),
        ("2 1\n1 0 1\n1 1\n", 2),
        ("2 1\n0 1 1\n1\n", 3),
        ("2 1\n0 1 1\n1 0\n", 3),
    ])
    def test_rejects(self, text, line):
        with pytest.raises(GraphFormatError) as ei:
            O.parse_observations(text.splitlines())
        assert ei.value.line == line

    def test_support_check(self):
        obs = O.Observations(3, {(0, 1): 1}, np.ones(3))
        with pytest.raises(InvalidArgumentError):
            O.check_support(obs, G.complete(3))
