import numpy as np
import pytest

import sovxxx


def test_fixture_params():
    p = sovxxx.fixture_params(2)
    assert p.n_sites == 2
    assert p.xi == [0, 2]


def test_invalid_params_raise():
    with pytest.raises(sovxxx.SovError):
        sovxxx.make_params(1.0, [0.0, 0.0])


def test_transfer_matrices_commute():
    p = sovxxx.sample_generic_params(3, 5)
    t1 = sovxxx.transfer_antiperiodic(p, 0.3 + 0.1j)
    t2 = sovxxx.transfer_antiperiodic(p, -0.7 + 0.4j)
    assert t1.shape == (8, 8)
    assert np.linalg.norm(t1 @ t2 - t2 @ t1) < 1e-10 * np.linalg.norm(t1) * np.linalg.norm(t2)


def test_spectrum_and_scalar_products():
    p = sovxxx.sample_generic_params(3, 2)
    recs = sovxxx.full_spectrum(p)
    assert len(recs) == 8
    for r in recs:
        assert len(r.bethe_roots) == r.R
        assert max(r.residuals.values()) < 1e-7
        ket = np.asarray(r.ket)
        bra = np.asarray(r.bra)
        t = sovxxx.transfer_antiperiodic(p, 0.37)
        assert np.linalg.norm(t @ ket - r.tau_at(0.37) * ket) < 1e-8 * np.linalg.norm(ket)
        g = sovxxx.gaudin_norm(p, r)
        assert abs(bra @ ket - g) <= 1e-7 * abs(g)


def test_form_factor_matches_dense():
    p = sovxxx.sample_generic_params(2, 3)
    recs = sovxxx.full_spectrum(p)
    bra = next(r for r in recs if r.R == 1)
    ket = next(r for r in recs if r.R == 0)
    ff = sovxxx.ff_sigma_minus(p, bra, ket, 1)
    dense = np.asarray(bra.bra) @ sovxxx.sigma_minus(p, 1) @ np.asarray(ket.ket)
    assert abs(ff - dense) <= 1e-8 * max(abs(dense), 1.0)


def test_izergin_single_variable():
    x, y, eta = 0.3, -0.8, 1.0
    assert abs(sovxxx.izergin(-1.0, [x], [y], eta)) > 0


def test_run_report():
    report = sovxxx.run(1, fixture=True)
    assert report["all_pass"]
    assert report["params"]["n_sites"] == 1
    assert any(row["name"].startswith("fixture_") for row in report["rows"])
    assert "homogeneous-stress" in sovxxx.all_suites()
