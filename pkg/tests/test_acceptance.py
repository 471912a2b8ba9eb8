"""Acceptance gate: every shipped guarantee, one test per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see one pass/fail line
per criterion. Tolerances are pinned here and nowhere else.
"""

import functools
import time

import numpy as np
import pytest

from nhjc import (
    Axis,
    LevelIndex,
    ModelParams,
    SweepSpec,
    boundary_GR,
    boundary_R,
    boundary_SI,
    gaps,
    hermite_roots,
    nodes,
    run_sweep,
    standard_grid,
    texture_closed_form,
    texture_coefficients,
    texture_from_wavefunctions,
    tilting_angle,
    verify_reversal_identity,
    winding_direction,
    winding_grid,
    winding_integral,
    winding_node_sum,
)
from nhjc.verify import draw_params
from conftest import make_reference


def criterion(number, title):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException:
                print(f"\n[FAIL] criterion {number}: {title}")
                raise
            suffix = f" ({detail})" if detail else ""
            print(f"\n[PASS] criterion {number}: {title}{suffix}")
        return wrapper
    return decorate


@criterion(1, "gapped-reversal transition value and runtime")
def test_c01_gapped_reversal_value():
    base = make_reference(Gamma=0.0)
    boundary_GR(base, "Gamma")  # warm-up
    start = time.perf_counter()
    point = boundary_GR(base, "Gamma")
    elapsed = time.perf_counter() - start
    assert point.value == pytest.approx(0.01581, abs=5e-6)
    assert abs(point.value - 0.016) < 5e-4  # the reported rounding of the transition
    assert elapsed < 1e-3
    return f"Gamma_GR = {point.value:.5f}, {elapsed * 1e6:.0f} us"


def _winding_cases():
    rng = np.random.default_rng(2024)
    cases = []
    for index in range(200):
        params = draw_params(rng, n_max=8)
        eta = -1 if index % 2 else +1
        cases.append((params, eta))
    return cases


@criterion(2, "winding magnitude law on 200 margin-respecting draws (< 30 s)")
def test_c02_winding_magnitude_law():
    start = time.perf_counter()
    worst_residual = 0.0
    checked = 0
    for params, eta in _winding_cases():
        for n in range(1, 9):
            level = LevelIndex(n, eta)
            node_sets = {c: nodes(params, level, c) for c in ("z", "y", "x")}
            tex = texture_closed_form(params, level,
                                      winding_grid(params, level, node_sets["x"]))
            for plane in ("zx", "yx"):
                fast = winding_node_sum(node_sets[plane[0]], node_sets["x"])
                slow = winding_integral(tex, plane)
                assert abs(fast.signed) == n, (params, level, plane)
                assert abs(slow.signed) == n, (params, level, plane)
                assert slow.residual < 0.1
                worst_residual = max(worst_residual, slow.residual)
                checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    test_c02_winding_magnitude_law.cases = checked
    return f"{checked} plane-cases, worst residual {worst_residual:.1e}, {elapsed:.1f} s"


@criterion(3, "method equivalence: node-sum == integral on every criterion-2 case")
def test_c03_method_equivalence():
    mismatches = 0
    checked = 0
    for params, eta in _winding_cases():
        for n in range(1, 9):
            level = LevelIndex(n, eta)
            node_sets = {c: nodes(params, level, c) for c in ("z", "y", "x")}
            tex = texture_closed_form(params, level,
                                      winding_grid(params, level, node_sets["x"]))
            for plane in ("zx", "yx"):
                fast = winding_node_sum(node_sets[plane[0]], node_sets["x"]).signed
                slow = winding_integral(tex, plane).signed
                mismatches += fast != slow
                checked += 1
    assert mismatches == 0  # integers, zero tolerance
    return f"{checked} cases, {mismatches} mismatches"


@criterion(4, "hermitian limit: sigma_y vanishes and the tilt is exactly zero")
def test_c04_hermitian_limit():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(5):
        omega, Omega, g = rng.uniform(0.1, 1.2, 3)
        params = ModelParams(omega=float(omega), Omega=float(Omega), g=float(g))
        for n in range(1, 21):
            for eta in (-1, 1):
                level = LevelIndex(n, eta)
                tex = texture_closed_form(params, level, standard_grid(n))
                worst = max(worst, float(np.max(np.abs(tex.sy))))
                assert tilting_angle(tex.coeffs).theta_t == 0.0
    assert worst < 1e-13
    return f"max |sigma_y| = {worst:.1e}"


@criterion(5, "dual-route texture equivalence below 1e-11 (n <= 20, 50 draws)")
def test_c05_dual_route_equivalence():
    rng = np.random.default_rng(11)
    worst = 0.0
    for index in range(50):
        params = draw_params(rng, n_max=8)
        eta = -1 if index % 2 else +1
        for n in range(1, 21):
            level = LevelIndex(n, eta)
            grid = standard_grid(n)
            a = texture_closed_form(params, level, grid)
            b = texture_from_wavefunctions(params, level, grid)
            worst = max(worst,
                        float(np.max(np.abs(a.sx - b.sx))),
                        float(np.max(np.abs(a.sy - b.sy))),
                        float(np.max(np.abs(a.sz - b.sz))))
    assert worst < 1e-11
    return f"worst pointwise difference {worst:.1e}"


@criterion(6, "parity: sigma_x even, sigma_z and sigma_y odd, below 1e-12")
def test_c06_parity():
    rng = np.random.default_rng(13)
    worst = 0.0
    for _ in range(10):
        params = draw_params(rng, n_max=8)
        for n in (1, 3, 8, 14, 20):
            for eta in (-1, 1):
                tex = texture_closed_form(params, LevelIndex(n, eta), standard_grid(n))
                worst = max(worst,
                            float(np.max(np.abs(tex.sx - tex.sx[::-1]))),
                            float(np.max(np.abs(tex.sy + tex.sy[::-1]))),
                            float(np.max(np.abs(tex.sz + tex.sz[::-1]))))
    assert worst < 1e-12
    return f"worst symmetry residual {worst:.1e}"


@criterion(7, "invariant nodes: Hermite-root positions, counts 2n-1 and 2n")
def test_c07_invariant_nodes():
    rng = np.random.default_rng(17)
    draws = [draw_params(rng, n_max=8) for _ in range(2)]
    worst = 0.0
    for n in range(1, 9):
        union = np.sort(np.concatenate((hermite_roots(n - 1) if n > 1 else np.empty(0),
                                        hermite_roots(n))))
        positions = []
        for params in draws:
            level = LevelIndex(n, -1)
            nz = nodes(params, level, "z")
            ny = nodes(params, level, "y")
            nx = nodes(params, level, "x")
            assert len(nz.positions) == 2 * n - 1 == len(ny.positions)
            assert len(nx.positions) == 2 * n
            worst = max(worst, float(np.max(np.abs(nz.positions - union))))
            assert np.array_equal(nz.positions, ny.positions)
            positions.append(nz.positions)
        worst = max(worst, float(np.max(np.abs(positions[0] - positions[1]))))
    assert worst < 1e-10
    return f"worst node deviation {worst:.1e}"


@criterion(8, "gap laws: closing at reversal points, open at the gapped reversal")
def test_c08_gap_laws():
    base = make_reference(Gamma=0.0)
    closing = 0.0
    for n in range(1, 6):
        point = boundary_R(base, n, "Gamma")
        assert point.valid
        value = gaps(make_reference(Gamma=point.value), n).delta_minus
        closing = max(closing, value)
        assert value < 1e-10
    gr = boundary_GR(base, "Gamma", n=2)
    open_gap = gaps(make_reference(Gamma=gr.value), 2).delta_minus
    assert open_gap > 1e-3
    return f"max gap at reversal {closing:.1e}, gap at gapped reversal {open_gap:.3f}"


@criterion(9, "reversal-closure identity and tilt antisymmetry at Gamma_R")
def test_c09_reversal_identity():
    base = make_reference(Gamma=0.0)
    worst_id = worst_anti = 0.0
    for n in range(1, 6):
        report = verify_reversal_identity(base, n, eps=1e-6)
        assert report.applicable
        worst_id = max(worst_id, report.identity_residual)
        worst_anti = max(worst_anti, report.antisymmetry_residual)
    assert worst_id < 1e-10
    assert worst_anti < 1e-4
    return f"identity {worst_id:.1e}, antisymmetry {worst_anti:.1e}"


@criterion(10, "super-invariance: zero tilt for n in {1, 10, 100}, gap open")
def test_c10_super_invariance():
    base = make_reference(Gamma=0.05)
    point = boundary_SI(base, "gamma")
    at = base.with_value("gamma", point.value)
    worst = 0.0
    for n in (1, 10, 100):
        tilt = tilting_angle(texture_coefficients(at, LevelIndex(n, -1)))
        worst = max(worst, abs(tilt.theta_t))
    assert worst < 1e-10
    gap = gaps(at, 1).delta_minus
    assert gap > 0.0
    return f"max |theta_t| = {worst:.1e}, gap {gap:.3f}"


@criterion(11, "direction-flip certificates across the four representative states")
def test_c11_direction_flips():
    points = [(0.01, 0.2), (0.03, 0.2), (0.06, 0.2), (0.06, 0.9)]
    signs = []
    for Gamma, gamma in points:
        coeffs = texture_coefficients(make_reference(Gamma=Gamma, gamma=gamma),
                                      LevelIndex(4, -1))
        signs.append((winding_direction(coeffs, "zx"), winding_direction(coeffs, "yx")))
    s_zx = [s[0] for s in signs]
    s_yx = [s[1] for s in signs]
    assert s_zx[0] != s_zx[1], "zx direction must flip between states 1 and 2"
    assert s_zx[1] != s_zx[2], "zx direction must flip between states 2 and 3"
    assert s_zx[2] == s_zx[3], "zx direction must not flip between states 3 and 4"
    assert s_yx[0] == s_yx[1] == s_yx[2], "yx direction must hold over states 1-3"
    assert s_yx[2] != s_yx[3], "yx direction must flip between states 3 and 4"
    return f"s_zx = {s_zx}, s_yx = {s_yx}"


@criterion(12, "sweep determinism at phase-diagram scale (< 60 s, byte-identical)")
def test_c12_sweep_determinism(tmp_path):
    spec = SweepSpec(
        base=make_reference(Gamma=0.0),
        axes=(Axis("Gamma", 0.0, 0.12, 121), Axis("g", 0.001, 0.1, 101)),
        levels=(LevelIndex(2, -1),),
        observables=("thetaT", "deltaMinus", "nWzx"),
        overlays=("R", "GR"),
    )
    start = time.perf_counter()
    first = run_sweep(spec)
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    second = run_sweep(spec)
    path_a, path_b = tmp_path / "a.csv", tmp_path / "b.csv"
    first.to_csv(path_a)
    second.to_csv(path_b)
    assert path_a.read_bytes() == path_b.read_bytes()
    assert len(first.rows) == 121 * 101
    return f"{len(first.rows)} rows in {elapsed:.1f} s, re-run byte-identical"
