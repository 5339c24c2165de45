import json
import math

import numpy as np
import pytest

import steerlab


def test_mub_saturation():
    s = steerlab.steer(steerlab.maximally_entangled(2), steerlab.mub_pair(2))
    assert steerlab.sdi_steerability(s) == pytest.approx(1.0, abs=1e-12)
    assert steerlab.sdi_steerability(s, p=steerlab.INF) == pytest.approx(1.0, abs=1e-12)


def test_isotropic_is_quadratic():
    s = steerlab.steer(steerlab.isotropic(2, 0.5), steerlab.mub_pair(2))
    assert steerlab.sdi_steerability(s) == pytest.approx(0.25, abs=1e-9)


def test_seo_and_verdict():
    s = steerlab.steer(steerlab.maximally_entangled(2), steerlab.mub_pair(2))
    b = steerlab.seo(s)
    assert b.dim == 2
    assert isinstance(b.elements[0][0], np.ndarray)
    v = steerlab.pairwise_commutativity(b.elements)
    assert not v.commuting
    assert v.max_norm == pytest.approx(1.0)


def test_numpy_roundtrip_and_lhs():
    p0 = np.diag([1.0, 0.0]).astype(complex)
    p1 = np.diag([0.0, 1.0]).astype(complex)
    s = steerlab.StateAssemblage(2, [[p0 / 2, p1 / 2], [p0 / 2, p1 / 2]])
    model = steerlab.lhs_from_commuting_seo(s)
    assert model.d_lambda == 2
    assert steerlab.assemblage_distance(steerlab.lhs_assemblage(model), s) < 1e-12


def test_guessing_bound():
    g = steerlab.guessing_bound(0.6)
    assert g.p_g == pytest.approx(0.9)
    assert g.h_min == pytest.approx(-math.log2(0.9))


def test_errors_translate():
    with pytest.raises(steerlab.SteerlabError):
        steerlab.isotropic(2, 2.0)
    with pytest.raises(ValueError):
        steerlab.guessing_bound(1.5)


def test_analyze_document():
    doc = {
        "dims": {"dA": 1, "dB": 2},
        "assemblage": {
            "n_x": 2,
            "n_a": 2,
            "elements": [
                [[[[0.5, 0], [0, 0]], [[0, 0], [0, 0]]], [[[0, 0], [0, 0]], [[0, 0], [0.5, 0]]]],
                [[[[0.25, 0], [0, 0]], [[0, 0], [0.25, 0]]], [[[0.25, 0], [0, 0]], [[0, 0], [0.25, 0]]]],
            ],
        },
    }
    r = steerlab.analyze(json.dumps(doc))
    assert r["commuting"]
    assert r["lhs_residual"] < 1e-9
    assert len(r["digest"]) == 64


def test_sweep_and_suite():
    csv = steerlab.sweep(alphas=[0.0, 1.0])
    assert csv.splitlines()[0] == "alpha,S,p_g,H_min"
    ok, text = steerlab.verify_suite("core", 0, 0.1)
    assert ok
    assert "suite core: ok" in text
