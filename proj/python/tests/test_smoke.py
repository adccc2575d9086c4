import math
import os

import numpy as np
import pytest

import holonomy_lab as hl

CONFIG_DIR = os.environ.get("HOLONOMY_CONFIG_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "configs"))


def disk():
    return hl.Chart.ball([0.0, 0.0], 1.0)


def test_exp_log_round_trip():
    x = hl.AlgebraElement.su2(0.3, -0.2, 0.5)
    g = hl.exp_map(x)
    assert np.allclose(g.matrix.conj().T @ g.matrix, np.eye(2))
    assert np.allclose(hl.log_map(g).matrix, x.matrix)
    assert hl.distance_from_identity(g) == pytest.approx(hl.algebra_norm(x))


def test_cut_locus_raises_with_code():
    g = hl.exp_map(hl.AlgebraElement.su2(math.pi, 0.0, 0.0))
    with pytest.raises(hl.HolonomyError) as info:
        hl.log_map(g)
    assert info.value.code == "CutLocus"
    assert info.value.distance == pytest.approx(math.pi * math.sqrt(2))


def test_constant_field_amplitude_is_flux():
    conn = hl.constant_field_connection(1.0, disk())
    loop = hl.Path.circle([0.0, 0.0], 1.0)
    assert hl.amplitude(conn, loop) == pytest.approx(math.pi, abs=1e-9)
    report = hl.check_theorem(conn, hl.Surface.identity_disk())
    assert report.passed
    assert report.rhs == pytest.approx(math.pi, abs=1e-9)


def test_transport_stays_on_group():
    conn = hl.random_su2_polynomial_connection(5, disk())
    result = hl.parallel_transport(conn, hl.Path.circle([0.0, 0.0], 0.8), 1024)
    assert result.steps == 1024
    assert len(result.samples) == 1025
    assert result.drift < 1e-12


def test_gauge_invariance():
    conn = hl.random_su2_polynomial_connection(7, disk(), 0.5)
    gauge = hl.exp_product_gauge([(hl.AlgebraElement.su2(1, 0, 0), [([1, 0], 0.4), ([0, 2], -0.3)])])
    loop = hl.Path.circle([0.1, 0.0], 0.5)
    assert hl.check_gauge_invariance(conn, gauge, loop).passed


def test_axial_gauge_reduces_residual():
    conn = hl.random_su2_polynomial_connection(3, hl.Chart.box([-1.0, -1.0], [1.0, 1.0]), 0.3)
    small = hl.axial_gauge(conn, [0.0, 1.0], 32).residual
    large = hl.axial_gauge(conn, [0.0, 1.0], 64).residual
    assert large < small


def test_fuzz_is_deterministic():
    a = hl.to_csv(hl.run_fuzz("theorem", seed=11, count=4))
    b = hl.to_csv(hl.run_fuzz("theorem", seed=11, count=4, threads=2))
    assert a == b
    assert a.splitlines()[0] == "scenario_id,lhs,rhs,slack,tolerance,pass,N,grid,seed"


def test_bundled_config_runs():
    config = hl.load_config(os.path.join(CONFIG_DIR, "abelian.json"))
    rows = hl.run_subcommand("amplitude", config)
    assert [r.scenario for r in rows] == config.scenario_ids
    assert all(r.passed for r in rows)


def test_config_error_names_key():
    text = '{"scenarios": [{"id": "x", "group": "U1", "connection": {"family": "constant-field", "B": "one"},' \
           ' "chart": {"type": "ball", "center": [0, 0], "radius": 1}}]}'
    with pytest.raises(hl.ConfigError) as info:
        hl.parse_config(text)
    assert info.value.key == "scenarios[0].connection.B"
