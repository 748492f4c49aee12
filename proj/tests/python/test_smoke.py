import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

import flexswim as fs

SHORT_RUN = json.dumps(
    {"schema_version": 1, "simulation": {"t_end": 0.2, "dt": 0.01, "snapshots": [0, 0.1, 0.2]}}
)


def test_defaults():
    p = fs.ModelParams()
    assert p.h == 0.01 and p.delta == 0.05 and p.order == 2
    assert p.c == pytest.approx(1.0 / math.log(0.01), rel=1e-15)
    with pytest.raises(ValueError):
        fs.ModelParams(h=1.5)


def test_drag_anisotropy():
    p = fs.ModelParams(order=1)
    t = np.array([math.cos(0.3), math.sin(0.3)])
    n = np.array([-t[1], t[0]])
    L = fs.drag_matrix(t, p)
    assert (n @ L @ n) / (t @ L @ t) == pytest.approx(2.0, rel=1e-12)


def test_head_resistance_is_symmetric():
    A = fs.head_resistance(np.array([0.6, 0.8]))
    assert A.shape == (3, 3)
    np.testing.assert_allclose(A, A.T, atol=1e-15)


def test_se2_round_trip():
    xi = np.array([0.3, -0.2, 1.1])
    g = fs.se2_exp(xi, 0.7)
    np.testing.assert_allclose(fs.se2_log(g), 0.7 * xi, rtol=1e-13)
    e = g * g.inverse()
    assert abs(e.x) < 1e-15 and abs(e.y) < 1e-15 and abs(e.theta) < 1e-15


def test_bracket_is_antisymmetric():
    a, b = np.array([1.0, 2.0, 0.5]), np.array([-0.3, 0.4, 2.0])
    np.testing.assert_allclose(fs.se2_bracket(a, b), -fs.se2_bracket(b, a))


def test_purcell_connection_and_ranks():
    A = fs.local_connection(0.5, -0.8)
    assert A.shape == (3, 2) and np.all(np.isfinite(A))
    assert fs.connection_curvature(0.5, -0.8).shape == (3,)
    ranks = fs.filtration_ranks(0.5, -0.8)
    assert ranks["strong"]["rank"] == 3 and ranks["weak"]["rank"] == 3


def test_zero_amplitude_bump_stays_put():
    traj = fs.simulate_bump(bump=fs.BumpParams(c1=0.0), t_end=0.5, dt=0.05)
    assert traj.shape == (11, len(fs.TRAJECTORY_COLUMNS))
    assert np.all(traj[:, 1:8] == 0.0)


def test_run_simulate_artifacts():
    run = fs.run_simulate(SHORT_RUN)
    assert run["trajectory"].shape[0] == 21
    files = run["files"]
    assert files["trajectory.csv"].startswith("t,v0x,v0y,omega0,x,y,theta,theta_unwrapped\n")
    assert {"shapes_0.csv", "shapes_0.1.csv", "shapes_0.2.csv", "run_meta.json"} <= files.keys()
    svg = ET.fromstring(files["plots.svg"])
    assert svg.tag.endswith("svg")
    again = fs.run_simulate(SHORT_RUN)
    assert again["files"] == files
    np.testing.assert_array_equal(again["trajectory"], run["trajectory"])


def test_scan_and_sweep():
    scan = fs.run_purcell_scan(
        json.dumps(
            {
                "schema_version": 1,
                "scan": {"alpha1": {"min": 0.5, "max": 0.5, "count": 1}, "alpha2": {"min": -1, "max": 1, "count": 3}},
            }
        )
    )
    assert scan["rank_map.csv"].count("\n") == 4
    assert "c3" in fs.sweep_parameters()
    sweep = fs.run_sweep(SHORT_RUN, "c3", [0.05, 0.08])
    assert sweep["sweep.csv"].count("\n") == 3


def test_errors_map_to_python_exceptions():
    with pytest.raises(fs.ConfigError, match="modle"):
        fs.resolved_config('{"schema_version": 1, "modle": {}}')
    assert issubclass(fs.ConfigError, ValueError)
    with pytest.raises(fs.ConfigError):
        fs.run_sweep(SHORT_RUN, "gravity", [1.0])
