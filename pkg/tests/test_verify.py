import json

import numpy as np
import pytest

from riqm.opcore import identity_keys
from riqm.verify import (QuadratureSpec, ResidualReport, differential_commutator_oracle,
                         node_count_exact, node_count_grid, ode_residual, ode_residuals,
                         orthonormality_matrix, orthonormality_report, radial_overlap,
                         reports_json)
from riqm.wavefn import full_wavefunction


def wf(dim, n, s):
    return full_wavefunction(n, s, s if dim == 2 else 0, dim)


# reports ----------------------------------------------------------------------

def test_pass_iff_below_tolerance():
    assert ResidualReport("a", 0.5, 1.0).passed
    assert not ResidualReport("a", 1.0, 1.0).passed
    assert not ResidualReport("a", float("nan"), 1.0).passed


def test_reports_json_sorted():
    text = reports_json([ResidualReport("b", 0.0, 1.0), ResidualReport("a", 2.0, 1.0, {"k": 1})])
    data = json.loads(text)
    assert [d["case"] for d in data] == ["a", "b"]
    assert data[0] == {"case": "a", "residual": 2.0, "tolerance": 1.0, "pass": False,
                       "detail": {"k": 1}}


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(kind="simpson")
    with pytest.raises(ValueError):
        QuadratureSpec(nodes=0)
    assert QuadratureSpec(nodes=10).doubled().nodes == 20


# quadrature ---------------------------------------------------------------------

def test_gram_3d_l0():
    rep = orthonormality_report(3, 0, 4)
    assert rep.passed and rep.detail["size"] == 4


def test_gram_2d_m1():
    gram, _ = orthonormality_matrix(2, 1, 4)
    assert np.max(np.abs(gram - np.eye(3))) < 1e-9


def test_single_state_gram():
    gram, _ = orthonormality_matrix(3, 2, 3)
    assert gram.shape == (1, 1) and abs(gram[0, 0] - 1) < 1e-10


@pytest.mark.parametrize("dim", [2, 3])
def test_normalization_and_orthogonality_up_to_6(dim):
    for s in range(6):
        gram, _ = orthonormality_matrix(dim, s, 6)
        assert np.all(np.abs(np.diag(gram) - 1) < 1e-10)
        off = gram - np.diag(np.diag(gram))
        assert np.all(np.abs(off) < 1e-9)


def test_adaptive_rule_agrees():
    a, b = wf(3, 4, 1), wf(3, 5, 1)
    for x, y in ((a, a), (a, b)):
        gl, _ = radial_overlap(x, y)
        ad, _ = radial_overlap(x, y, QuadratureSpec(kind="adaptive"))
        assert abs(gl - ad) < 1e-10


@pytest.mark.parametrize("nodes", [4, 8, 16, 64])
def test_error_estimate_bounds_true_error(nodes):
    spec = QuadratureSpec(nodes=nodes)
    for dim in (2, 3):
        for n in range(1, 7):
            a, b = wf(dim, n, 0), wf(dim, n + 1, 0) if n < 6 else None
            v, err = radial_overlap(a, a, spec)
            assert abs(v - 1) <= err
            if b is not None:
                v, err = radial_overlap(a, b, spec)
                assert abs(v) <= err


def test_error_estimate_is_doubling_difference():
    a = wf(2, 6, 0)
    v, err = radial_overlap(a, a, QuadratureSpec(nodes=8))
    v_half, _ = radial_overlap(a, a, QuadratureSpec(nodes=4))
    assert err >= abs(v - v_half) - 1e-12
    # too few nodes show up in the estimate
    _, coarse = radial_overlap(a, a, QuadratureSpec(nodes=3))
    assert coarse > 1e-6


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        radial_overlap(wf(2, 1, 0), wf(3, 1, 0))


# ODE ------------------------------------------------------------------------------

def test_ode_examples():
    assert ode_residual(wf(3, 1, 0)).passed
    assert ode_residual(wf(3, 3, 1)).passed


def test_ode_wrong_energy_fails():
    rep = ode_residual(wf(3, 1, 0), energy_factor=1.01)
    assert not rep.passed
    assert 0.005 < rep.residual < 0.05


@pytest.mark.parametrize("dim", [2, 3])
def test_ode_all_states(dim):
    for n in range(1, 7):
        for s in range(n):
            res = ode_residuals(wf(dim, n, s))
            assert all(v < 1e-10 for v in res.values()), res


def test_2d_forms_both_checked():
    res = ode_residuals(wf(2, 4, 1))
    assert set(res) == {"radial", "sqrt_rho"}
    bad = ode_residuals(wf(2, 4, 1), energy_factor=1.01)
    assert all(v > 1e-3 for v in bad.values())


# nodes ---------------------------------------------------------------------------

@pytest.mark.parametrize("dim", [2, 3])
def test_node_counts(dim):
    for n in range(1, 7):
        for s in range(n):
            w = wf(dim, n, s)
            assert node_count_exact(w) == n - s - 1
            assert node_count_grid(w) == n - s - 1


# differential oracle ----------------------------------------------------------------

def test_oracle_theta_phi_momenta():
    assert differential_commutator_oracle("theta_momentum_phi_momentum_comm").passed


def test_oracle_ke_2d():
    assert differential_commutator_oracle("ke_2d").passed


@pytest.mark.parametrize("key", ["ke_3d", "ccr_xy", "momentum_1/rho_comm_x",
                                 "radial_momentum_phi_momentum_comm_2d"])
def test_corrupted_identity_fails(key):
    rep = differential_commutator_oracle(key, corrupt=True)
    assert not rep.passed and rep.case.endswith("/corrupt")


def test_oracle_is_seeded():
    a = differential_commutator_oracle("pz_decomposition", seed=3)
    b = differential_commutator_oracle.__wrapped__("pz_decomposition", seed=3)
    assert a.residual == b.residual


@pytest.mark.parametrize("key", identity_keys())
def test_oracle_whole_catalog(key):
    rep = differential_commutator_oracle(key)
    assert rep.passed, (key, rep.residual)
