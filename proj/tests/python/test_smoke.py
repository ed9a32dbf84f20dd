import math

import pytest

import randers


@pytest.fixture(scope="module")
def paraboloid():
    return randers.Profile.paraboloid(1.0)


def test_profile(paraboloid):
    assert paraboloid.mu == 1.0
    assert paraboloid.m(1.0) == pytest.approx(1 / math.sqrt(2))
    assert paraboloid.curvature(0.0) == pytest.approx(3.0)
    bump = randers.Profile.from_expressions("r/(1+r^2)", mu=0.2, r_max=6.0, name="bump")
    assert bump.to_dict()["name"] == "bump"
    again = randers.Profile.from_json('{"kind":"paraboloid","mu":0.5}')
    assert again.r_max == 20.0


def test_errors_carry_a_kind():
    with pytest.raises(randers.RandersError) as info:
        randers.Profile.from_json('{"kind":"torus"}')
    assert info.value.kind == "Parse"
    with pytest.raises(randers.RandersError):
        randers.Profile.paraboloid(-1.0)


def test_geodesic_is_unit_speed(paraboloid):
    g = randers.geodesic(paraboloid, (2.0, 0.0), 0.8, 3.0)
    assert g["metric_tag"] == "h"
    s, r, theta, dr, dtheta = g["samples"][-1]
    assert s == pytest.approx(3.0)
    m = paraboloid.m(r)
    assert dr * dr + m * m * dtheta * dtheta == pytest.approx(1.0, abs=1e-8)
    f = randers.geodesic(paraboloid, (2.0, 0.0), 0.8, 3.0, metric="F")
    assert f["metric_tag"] == "F"
    # The F-path is the h-path rotated by mu * s.
    assert f["samples"][-1][2] == pytest.approx(theta + 3.0, abs=1e-9)


def test_clairaut(paraboloid):
    rep = randers.clairaut_report(paraboloid, (1.5, 0.3), 1.0, 5.0)
    assert all(abs(v) < 1e-7 for k, v in rep.items() if k.startswith("max_") and v is not None)


def test_distance_along_twisted_meridian(paraboloid):
    d = randers.distance(paraboloid, (1.0, 0.0), (2.0, 1.0))
    assert d["forward"]["distance"] == pytest.approx(1.0, abs=1e-8)
    assert d["reverse"]["distance"] > d["forward"]["distance"]


def test_conjugate_and_cut_point(paraboloid):
    assert randers.first_conjugate(paraboloid, (1.0, 0.0)) == pytest.approx(2.0, abs=1e-8)
    arc = randers.cut_locus(paraboloid, (1.0, 0.0), samples=5)
    assert len(arc["samples"]) == 5
    chk = randers.check_cut_point(paraboloid, (1.0, 0.0))
    assert chk["passed"]
    assert len(chk["minimizers"]) == 2


def test_embedding(paraboloid):
    assert randers.embed_point(paraboloid, (0.0, 0.0)) == (0.0, 0.0, 0.0)
    x, y, _ = randers.embed_point(paraboloid, (1.0, 0.0))
    assert x == pytest.approx(1 / math.sqrt(2))
    assert y == pytest.approx(0.0)
    rep = randers.pullback_batch(paraboloid, samples=200, seed=3)
    assert rep["passed"] and rep["max_residual"] < 1e-9
    obj = randers.mesh_obj(paraboloid, 2.0, n_r=4, n_theta=8)
    assert obj.startswith("v ") and "\nf " in obj


def test_verify_subset_is_deterministic():
    a = randers.verify(seed=5, only=[1, 4])
    b = randers.verify(seed=5, only=[1, 4])
    assert [c["id"] for c in a] == [1, 4]
    assert all(c["passed"] for c in a)
    assert [c["value"] for c in a] == [c["value"] for c in b]
