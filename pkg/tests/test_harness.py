import csv
import json
import os
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from exactrec import bounds as B
from exactrec import harness as H
from exactrec.errors import ExperimentError, InvalidArgumentError, InvalidParametersError

ROOT = Path(__file__).resolve().parents[1]


def cfg(**kw):
    base = dict(family="cycle", n=8, p_grid=[0.0], q=0.0, trials=10, base_seed=5)
    base.update(kw)
    return H.ExperimentConfig(**base)


class TestConfig:
    def test_validation(self):
        with pytest.raises(InvalidParametersError):
            cfg(family="torus")
        with pytest.raises(InvalidParametersError):
            cfg(p_grid=[0.5])
        with pytest.raises(InvalidParametersError):
            cfg(trials=0)
        with pytest.raises(InvalidParametersError):
            cfg(family="regular")
        with pytest.raises(InvalidParametersError):
            cfg(family="grid", family_params={"rows": 3, "cols": 4})
        with pytest.raises(InvalidParametersError):
            H.ExperimentConfig.from_dict({"family": "cycle", "n": 5, "p_grid": [0], "q": 0,
                                          "trials": 1, "colour": "red"})

    def test_brute_force_forced_off(self):
        assert not cfg(n=24, compare_brute_force=True).compare_brute_force


@pytest.mark.parametrize("family,params,n", [
    ("complete", {}, 8),
    ("cycle", {}, 9),
    ("grid", {"rows": 3, "cols": 4}, 12),
    ("regular", {"d": 3}, 10),
    ("er", {"prob": 0.5}, 10),
    ("smoothed", {"base": "cycle", "epsilon": 2.0}, 12),
])
def test_noiseless_all_recovered(family, params, n):
    recs = H.run_experiment(cfg(family=family, family_params=params, n=n, compare_brute_force=True))
    assert len(recs) == 10
    assert all(r.recovered and r.certified and r.brute_match for r in recs)


def test_record_invariants():
    recs = H.run_experiment(cfg(family="complete", n=10, p_grid=[0.1, 0.3], q=0.2, trials=30,
                                compare_brute_force=True))
    assert [(r.p, r.trial_index) for r in recs] == [(p, t) for p in (0.1, 0.3) for t in range(30)]
    for r in recs:
        if r.recovered:
            assert r.sign_class_recovered and r.hamming == 0
        if r.certified:
            assert r.brute_match
        assert 0 <= r.hamming <= 10


def test_trial_seeds_stable_under_grid_extension():
    a = H.run_experiment(cfg(p_grid=[0.1], q=0.1, trials=5))
    b = H.run_experiment(cfg(p_grid=[0.1, 0.2], q=0.1, trials=5))
    assert a == b[:5]


def test_parallel_matches_serial():
    c = cfg(family="complete", n=9, p_grid=[0.1, 0.2], q=0.2, trials=8)
    assert H.run_experiment(c, workers=1) == H.run_experiment(c, workers=3)


def test_connectivity_exhausted():
    with pytest.raises(ExperimentError, match="er"):
        H.build_graph(cfg(family="er", family_params={"prob": 0.0}))


def test_csv_format(tmp_path):
    recs = H.run_experiment(cfg(trials=1))
    path = tmp_path / "one.csv"
    H.write_csv(recs, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    assert lines[0] == "p,q,trial,seed,recovered,sign_class_recovered,certified,hamming,objective,brute_match,wall_ms"
    row = next(csv.DictReader(lines))
    assert row["recovered"] == "1" and row["brute_match"] == ""
    with pytest.raises(InvalidArgumentError):
        H.write_csv([], path)


def test_csv_io_error_has_path(tmp_path):
    recs = H.run_experiment(cfg(trials=1))
    bad = tmp_path / "missing" / "x.csv"
    with pytest.raises(OSError, match="missing"):
        H.write_csv(recs, bad)


def test_summary(tmp_path):
    c = cfg(family="complete", n=10, p_grid=[0.0, 0.1], q=0.2, trials=20)
    recs = H.run_experiment(c)
    bnds = H.config_bounds(H.build_graph(c), c)
    summary = H.write_summary_json(recs, bnds, tmp_path / "s.json")
    data = json.loads((tmp_path / "s.json").read_text())
    assert data == json.loads(json.dumps(summary))
    assert data["eps2"] == B.eps2(10, 0.2)
    assert data["phi"] == 5.0 and data["dmax"] == 9
    row0, row1 = data["grid"]
    assert row0["recovery_rate"] == 1.0
    rs = [r for r in recs if r.p == 0.1]
    assert row1["recovery_rate"] == sum(r.recovered for r in rs) / len(rs)
    assert row1["eps1"] == B.eps1(5.0, 9, 0.1, 10)
    assert row1["vacuous"] is True


def test_spectral_phi_for_large_graphs():
    c = cfg(n=30, p_grid=[0.1], q=0.1, trials=1)
    b = H.config_bounds(H.build_graph(c), c)
    assert b["phi_source"] == "spectral_lower" and b["phi"] > 0


def _summary(rates, combined=None):
    return {"n": 10, "q": 0.1, "grid": [
        {"p": p, "recovery_rate": r, "certification_rate": r,
         "combined_success": None if combined is None else combined[k]}
        for k, (p, r) in enumerate(rates)]}


class TestSvg:
    def test_two_points(self, tmp_path):
        path = tmp_path / "a.svg"
        H.plot_svg(_summary([(0.0, 1.0), (0.2, 0.5)], combined=[-3.0, -9.0]), path)
        root = ET.parse(path).getroot()
        polys = root.findall("{http://www.w3.org/2000/svg}polyline")
        assert len(polys) == 2
        assert all(len(p.get("points").split()) == 2 for p in polys)
        assert "bound vacuous" in path.read_text()

    def test_flat_top(self):
        svg = H.render_svg(_summary([(0.0, 1.0), (0.1, 1.0), (0.2, 1.0)]))
        root = ET.fromstring(svg)
        poly = root.findall("{http://www.w3.org/2000/svg}polyline")[0]
        ys = {float(p.split(",")[1]) for p in poly.get("points").split()}
        top = [ln for ln in root.findall("{http://www.w3.org/2000/svg}line") if ln.get("stroke") == "#ddd"]
        assert ys == {min(float(ln.get("y1")) for ln in top)}

    def test_bound_curve(self):
        svg = H.render_svg(_summary([(0.0, 1.0), (0.1, 0.9)], combined=[0.95, 0.5]))
        assert svg.count("<polyline") == 3 and "bound vacuous" not in svg

    def test_single_point_refused(self):
        with pytest.raises(InvalidArgumentError, match="p_grid"):
            H.render_svg(_summary([(0.1, 1.0)]))


def test_golden_sweep(tmp_path):
    c = H.ExperimentConfig.load(ROOT / "configs" / "k12.json")
    _, _, paths = H.run_sweep(c, prefix=str(tmp_path / "k12"))
    assert (tmp_path / "k12.csv").read_bytes() == (ROOT / "configs" / "k12.golden.csv").read_bytes()
    assert all(os.path.exists(p) for p in paths) and len(paths) == 3
