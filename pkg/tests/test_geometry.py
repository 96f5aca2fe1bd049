import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tspectral import (
    DomainEmpty,
    NonMonotoneScale,
    NonPositiveWeight,
    OutOfDomain,
    jacobian_factor,
    make_geometry,
    validate_geometry,
)
from tspectral.geometry import sample_domain

from conftest import PRESET_IDS, PRESETS


def test_identity_preset():
    g = make_geometry({"kind": "identity", "weight": {"kind": "constant", "c": 1}})
    t = np.array([-3.0, 0.0, 2.5])
    assert np.array_equal(g.psi(t), t)
    assert np.array_equal(g.omega(t), np.ones(3))
    assert g.domain == (-math.inf, math.inf)


def test_hadamard_preset_is_log():
    g = make_geometry({"kind": "hadamard", "params": {"t_shift": 0}})
    assert g.domain == (0.0, math.inf)
    t = np.array([0.5, 1.0, math.e, 10.0])
    assert np.allclose(g.psi(t), np.log(t), rtol=0, atol=0)
    assert np.all(g.omega(t) == 1.0)


def test_affine_negative_slope_rejected():
    with pytest.raises(NonMonotoneScale):
        make_geometry({"kind": "affine", "params": {"a": -1, "b": 0}})
    with pytest.raises(NonMonotoneScale):
        make_geometry({"kind": "affine", "params": {"a": 0.0}})


@pytest.mark.parametrize("weight", [
    {"kind": "constant", "c": 0.0},
    {"kind": "constant", "c": -2.0},
    {"kind": "coeffs", "coeffs": [-1.0, 0.0, 1.0]},   # roots at +-1
    {"kind": "coeffs", "coeffs": [-1.0, 0.0, -1.0]},  # negative everywhere
    {"kind": "coeffs", "coeffs": [0.0]},
])
def test_nonpositive_weights_rejected(weight):
    with pytest.raises(NonPositiveWeight):
        make_geometry({"kind": "identity", "weight": weight})


def test_polynomial_root_outside_domain_is_fine():
    # 1 + t vanishes at t = -1, outside (0, inf)
    g = make_geometry({"kind": "hadamard", "weight": {"kind": "coeffs", "coeffs": [1.0, 1.0]}})
    assert float(g.omega(2.0)) == 3.0
    with pytest.raises(NonPositiveWeight):
        make_geometry({"kind": "identity", "weight": {"kind": "coeffs", "coeffs": [1.0, 1.0]}})


def test_domain_empty():
    with pytest.raises(DomainEmpty):
        make_geometry({"kind": "hadamard", "params": {"t_shift": math.inf}})
    with pytest.raises(DomainEmpty):
        make_geometry({"kind": "composed", "params": {"maps": [{"kind": "affine", "params": {"a": 2}},
                                                               {"kind": "hadamard"}]}})


def test_composed_chain_rule():
    g = make_geometry({"kind": "composed", "params": {"maps": [
        {"kind": "hadamard", "params": {"t_shift": 1.0}},
        {"kind": "affine", "params": {"a": 3.0, "b": -1.0}},
    ]}})
    t = np.array([-0.5, 0.0, 4.0])
    assert np.allclose(g.psi(t), 3 * np.log(t + 1) - 1, rtol=1e-15)
    assert np.allclose(g.dpsi(t), 3 / (t + 1), rtol=1e-15)
    assert np.allclose(g.psi_inv(g.psi(t)), t, rtol=1e-14, atol=1e-15)


def test_descriptor_round_trip(preset):
    assert make_geometry(preset.descriptor()) == preset


def test_validate_identity():
    rep = validate_geometry(make_geometry({}), 100)
    assert rep.min_dpsi == 1.0 and rep.min_omega == 1.0 and rep.passed


def test_validate_hadamard():
    rep = validate_geometry(make_geometry({"kind": "hadamard"}), 100)
    assert rep.min_dpsi > 0 and rep.passed


def test_validate_affine_poly():
    g = make_geometry({"kind": "affine", "params": {"a": 2, "b": 0}, "weight": {"kind": "poly", "p": 2}})
    rep = validate_geometry(g, 50)
    assert rep.min_dpsi == 2.0 and rep.passed
    assert rep.n_samples == 50


def test_validate_needs_two_samples():
    with pytest.raises(ValueError):
        validate_geometry(make_geometry({}), 1)


@pytest.mark.parametrize("g, tau, expected", [
    (make_geometry({}), 3.0, 1.0),
    (make_geometry({"kind": "affine", "params": {"a": 2, "b": 0}}), 0.0, 0.5),
    (make_geometry({"weight": {"kind": "constant", "c": 2}}), 1.0, 0.25),
])
def test_jacobian_factor_examples(g, tau, expected):
    assert jacobian_factor(g, tau) == expected


def test_jacobian_out_of_domain():
    with pytest.raises(OutOfDomain):
        jacobian_factor(make_geometry({"kind": "hadamard"}), -1.0)
    with pytest.raises(OutOfDomain):
        jacobian_factor(make_geometry({"kind": "hadamard"}), 0.0)


@pytest.mark.parametrize("name", PRESET_IDS)
def test_jacobian_identity_all_presets(name):
    g = PRESETS[name]
    tau = sample_domain(g, 1000)
    J = jacobian_factor(g, tau)
    assert np.max(np.abs(J * g.omega(tau) ** 2 * g.dpsi(tau) - 1)) <= 1e-12


@pytest.mark.parametrize("name", PRESET_IDS)
def test_inverse_round_trip_1000_points(name):
    g = PRESETS[name]
    t = sample_domain(g, 1000)
    back = g.psi_inv(g.psi(t))
    assert np.max(np.abs(back - t) / np.maximum(np.abs(t), 1.0)) <= 1e-12


def test_hadamard_derivative_closed_form():
    g = make_geometry({"kind": "hadamard"})
    t = sample_domain(g, 1000)
    assert np.max(np.abs(g.dpsi(t) * t - 1)) <= 1e-14


@settings(max_examples=50, deadline=None)
@given(a=st.floats(0.01, 100), b=st.floats(-50, 50), p=st.floats(-3, 3),
       tau=st.floats(-1e3, 1e3))
def test_jacobian_property_affine_poly(a, b, p, tau):
    g = make_geometry({"kind": "affine", "params": {"a": a, "b": b}, "weight": {"kind": "poly", "p": p}})
    J = jacobian_factor(g, tau)
    assert J > 0
    assert abs(J * float(g.omega(tau)) ** 2 * a - 1) <= 1e-12


def test_derivatives_match_finite_differences():
    # omega' and psi' closed forms against central differences
    for g in PRESETS.values():
        t = np.array([0.7, 1.3, 3.0])
        h = 1e-6
        fd_psi = (g.psi(t + h) - g.psi(t - h)) / (2 * h)
        fd_om = (g.omega(t + h) - g.omega(t - h)) / (2 * h)
        assert np.allclose(g.dpsi(t), fd_psi, rtol=1e-7)
        assert np.allclose(g.domega(t), fd_om, rtol=1e-7, atol=1e-9)
