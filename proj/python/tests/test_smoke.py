import math

import pytest

import capq

ANNULUS = {
    "schema": "capq-spec/1",
    "shapes": [
        {"role": "E", "kind": "disc_complement", "center": [0, 0], "radius": 2},
        {"role": "F", "kind": "disc", "center": [0, 0], "radius": 0.5},
    ],
    "grid": {"bounds": [-2.2, -2.2, 2.2, 2.2], "resolution": 128},
}


def test_special_functions():
    assert capq.elliptic_K(0.0) == math.pi / 2
    assert abs(capq.groetzsch_mu(1 / math.sqrt(2)) - math.pi / 2) < 1e-12
    assert abs(capq.teichmuller_ring_modulus() - 2.574988) < 1e-6
    assert abs(capq.jacobi_sn(complex(capq.elliptic_K(0.5), 0), 0.5) - 1) < 1e-9


def test_solve_annulus():
    f = capq.solve(ANNULUS)
    assert f.resolution == 128
    assert f.values.shape == (128, 128)
    assert abs(f.capacity - math.log(4)) < 0.05 * math.log(4)
    pts = f.level(0.0)
    assert pts[0] == pts[-1]
    mean_r = sum(math.hypot(x, y) for x, y in pts) / len(pts)
    assert abs(mean_r - 1.0) < 0.02


def test_analyze_report():
    rep = capq.analyze(ANNULUS, levels=[-0.5, 0.5], compare=[(-0.5, 0.5)])
    assert rep["schema"] == "capq-report/1"
    assert len(rep["levels"]) == 2
    assert abs(rep["comparisons"][0]["K"] - 3.0) < 1e-12


def test_bounds_and_collar():
    assert capq.bound("k_zero_level", {"cap": 2.0}) == pytest.approx(1 + 4 * capq.BETA0)
    assert "k_geodesic" in capq.bound_kinds()
    c = capq.collar(math.pi)
    assert c["r0"] == pytest.approx(0.4405013, rel=1e-6)
    assert capq.radial_distance(c["r"], 1.0, 1 / c["r0"]) == pytest.approx(c["delta0"], abs=1e-8)


def test_chain():
    ch = capq.MapChain(1 / math.sqrt(2))
    assert ch.modulus == pytest.approx(math.log(2))
    w = ch(complex(0.3, 1.0))
    assert ch(complex(-0.3, -1.0)) == pytest.approx(-w)
    assert len(ch.trace(complex(1.0, 0.2))) == 6


def test_errors():
    with pytest.raises(capq.CapqError, match="DomainError"):
        capq.groetzsch_mu(1.5)
    with pytest.raises(capq.CapqError, match="FormatError"):
        capq.solve('{"schema": "nope"}')
