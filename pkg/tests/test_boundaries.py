import math

import pytest

from nhjc import (
    LevelIndex,
    ModelParams,
    NoBoundaryError,
    ValidationError,
    all_boundaries,
    block_quantities,
    boundary_GR,
    boundary_R,
    boundary_SI,
    gaps,
    texture_coefficients,
    winding_direction,
)
from conftest import G_REF, make_reference

BASE = make_reference(Gamma=0.0)  # kappa=0.5, gamma=0.2, omega=0.9, g at 0.1 of scale


def test_reversal_point_value_and_sign_change():
    point = boundary_R(BASE, 2, "Gamma")
    assert point.value == pytest.approx(0.3 * 0.1 / (8.0 * G_REF), rel=1e-12)
    assert point.value == pytest.approx(0.0791, abs=5e-5)
    assert point.valid and point.level_dependent
    # oracle: B changes sign across the returned value
    below = block_quantities(make_reference(Gamma=point.value * 0.999), 2).B
    above = block_quantities(make_reference(Gamma=point.value * 1.001), 2).B
    assert below * above < 0.0
    at = block_quantities(make_reference(Gamma=point.value), 2)
    assert abs(at.B) < 1e-12 * abs(0.5 * 0.3 * 0.1)


def test_reversal_point_solved_for_each_variable():
    for solved_for in ("kappa", "Gamma", "gamma", "g"):
        point = boundary_R(make_reference(), 2, solved_for)
        at = make_reference().with_value(solved_for, point.value)
        assert abs(block_quantities(at, 2).B) < 1e-12


def test_reversal_rejects_degenerate_resonance():
    p = ModelParams(omega=1.0, Omega=1.0, g=0.1, kappa=0.5, gamma=0.2, Gamma=0.05)
    with pytest.raises(NoBoundaryError):
        boundary_R(p, 1, "kappa")


def test_reversal_invalid_when_A_positive():
    strong = ModelParams(omega=0.9, Omega=1.0, g=0.8, kappa=0.5, gamma=0.2)
    point = boundary_R(strong, 1, "Gamma")
    assert not point.valid
    assert "A" in point.validity_detail


def test_gapped_reversal_value_and_level_independence():
    point = boundary_GR(BASE, "Gamma")
    assert point.value == pytest.approx(G_REF * 0.1 / 0.3, rel=1e-12)
    assert point.value == pytest.approx(0.01581, abs=5e-6)
    assert not point.level_dependent
    assert boundary_GR(BASE, "Gamma", n=1).value == boundary_GR(BASE, "Gamma", n=7).value


def test_gapped_reversal_zeroes_the_z_coefficient():
    point = boundary_GR(BASE, "Gamma", n=2)
    assert point.valid
    at = make_reference(Gamma=point.value)
    for n in (1, 2, 7):
        for eta in (-1, 1):
            coeffs = texture_coefficients(at, LevelIndex(n, eta))
            scale = abs(at.g * 0.1) + abs(at.Gamma * 0.3)
            assert abs(coeffs.c_z) < 1e-12 * scale


def test_gapped_reversal_preemption():
    # levels at and beyond the meeting line with the reversal transition
    point = boundary_GR(BASE, "Gamma", n=11)
    assert not point.valid
    assert "preempted" in point.validity_detail
    at = make_reference(Gamma=point.value)
    coeffs = texture_coefficients(at, LevelIndex(11, -1))
    assert abs(coeffs.c_z) > 1e-4  # the transition is genuinely gone


def test_super_invariant_value_and_coefficient():
    base = make_reference(Gamma=0.05)
    point = boundary_SI(base, "gamma")
    assert point.value == pytest.approx(0.5 + 0.05 * 0.1 / G_REF, rel=1e-12)
    assert point.value == pytest.approx(0.6054, abs=5e-5)
    assert point.valid and not point.level_dependent
    at = base.with_value("gamma", point.value)
    for n in (1, 10, 100):
        coeffs = texture_coefficients(at, LevelIndex(n, -1))
        assert abs(coeffs.c_y) < 1e-12


def test_super_invariant_meets_reversal_in_hermitian_limit():
    # kappa = gamma, Gamma = 0: the no-tilt condition collapses onto g = 0
    p = ModelParams(omega=0.9, Omega=1.0, g=0.3, kappa=0.4, gamma=0.4, Gamma=0.0)
    assert boundary_SI(p, "Gamma").value == 0.0
    with pytest.raises(NoBoundaryError):
        boundary_SI(p, "g")  # 0/0: no closed form left in g
    q = ModelParams(omega=0.9, Omega=1.0, g=0.3, kappa=0.4, gamma=0.5, Gamma=0.0)
    assert boundary_SI(q, "g").value == 0.0


def test_gap_laws_at_the_three_families():
    for n in range(1, 6):
        r_point = boundary_R(BASE, n, "Gamma")
        assert r_point.valid
        assert gaps(make_reference(Gamma=r_point.value), n).delta_minus < 1e-10
    gr_point = boundary_GR(BASE, "Gamma", n=2)
    assert gaps(make_reference(Gamma=gr_point.value), 2).delta_minus > 1e-3
    si_base = make_reference(Gamma=0.05)
    si_point = boundary_SI(si_base, "gamma")
    at = si_base.with_value("gamma", si_point.value)
    assert gaps(at, 1).delta_minus > 1e-6


def test_level_independent_families_never_read_n():
    a = boundary_GR(BASE, "Gamma", n=1)
    b = boundary_GR(BASE, "Gamma", n=7)
    assert a.value == b.value  # bit-identical
    assert boundary_SI(BASE, "gamma").value == boundary_SI(BASE, "gamma").value


def test_direction_flip_certificates():
    # s_zx flips across R and GR; s_yx flips across SI; s_zx does not flip at SI
    n = 2
    level = LevelIndex(n, -1)

    def s(params, plane):
        return winding_direction(texture_coefficients(params, level), plane)

    gr = boundary_GR(BASE, "Gamma", n=n).value
    assert s(make_reference(Gamma=gr - 1e-4), "zx") != s(make_reference(Gamma=gr + 1e-4), "zx")
    r = boundary_R(BASE, n, "Gamma").value
    assert s(make_reference(Gamma=r - 1e-4), "zx") != s(make_reference(Gamma=r + 1e-4), "zx")
    si_base = make_reference(Gamma=0.05)
    si = boundary_SI(si_base, "gamma").value
    lo = si_base.with_value("gamma", si - 1e-4)
    hi = si_base.with_value("gamma", si + 1e-4)
    assert s(lo, "yx") != s(hi, "yx")
    assert s(lo, "zx") == s(hi, "zx")


def test_all_boundaries_bundle():
    points = all_boundaries(BASE, 2, "Gamma")
    assert [p.family for p in points] == ["R", "GR", "SI"]
    degenerate = ModelParams(omega=1.0, Omega=1.0, g=0.1, kappa=0.5, gamma=0.2, Gamma=0.05)
    bundle = all_boundaries(degenerate, 1, "kappa")
    r_entry = bundle[0]
    assert not r_entry.valid and math.isnan(r_entry.value)


def test_solve_for_validation():
    with pytest.raises(ValidationError):
        boundary_R(BASE, 2, "omega")
    with pytest.raises(ValidationError):
        boundary_R(BASE, 0, "Gamma")
