"""Position-resolved spin textures <sigma_x,y,z(x)> of the eigenstates.

Two independent routes are provided and must agree pointwise:

 * texture_closed_form evaluates the analytic expressions. The raw forms
   carry e^{-x^2} H_{n-1} H_n / (2^{n-3/2} N_sigma) factors that overflow for
   large n; they are algebraically identical to products of orthonormal
   oscillator functions, which is how they are computed:

       <sigma_z(x)> = Cz  sqrt(n) phi_{n-1} phi_n / N_n
       <sigma_y(x)> = Cy  sqrt(n) phi_{n-1} phi_n / N_n
       <sigma_x(x)> = [ (Dx/4) phi_{n-1}^2 - n (g^2+Gamma^2) phi_n^2 ] / N_n

   with the real coefficients (theta, R from the block quantities)

       Cz = g d_Ww - Gamma d_kg + 2 eta R (g cos(theta/2) - Gamma sin(theta/2))
       Cy = Gamma d_Ww + g d_kg + 2 eta R (Gamma cos(theta/2) + g sin(theta/2))
       Dx = d_Ww^2 + d_kg^2 + 4R^2
            + 4 eta R (d_Ww cos(theta/2) + d_kg sin(theta/2))

 * texture_from_wavefunctions builds the spin components of the wave function
   on the sigma_x and sigma_z bases from the complex coefficients and
   contracts |psi|^2 differences directly.

The n = 0 state has <sigma_z> = <sigma_y> = 0 and <sigma_x> = -e^{-x^2}/sqrt(pi).

Nodes: <sigma_z> and <sigma_y> vanish exactly at the union of the roots of
H_{n-1} and H_n (2n-1 points, independent of all model parameters), while
<sigma_x> has 2n parameter-dependent zeros, located where the stable ratio
phi_n/phi_{n-1} equals +-|C_up|/|C_down|.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .errors import NodeCountError, ValidationError
from .oscillator import domain_cutoff, hermite_roots, phi_pair, phi_ratio
from .params import LevelIndex, ModelParams
from .spectrum import block_quantities, eigen_solution

__all__ = [
    "TextureCoefficients",
    "SpinTexture",
    "NodeSet",
    "standard_grid",
    "texture_coefficients",
    "texture_closed_form",
    "texture_from_wavefunctions",
    "wavefunction_components",
    "nodes",
]

STANDARD_POINTS = 801

_NODE_TOL = 1e-12


@dataclass(frozen=True)
class TextureCoefficients:
    """Closed-form amplitudes in front of the Hermite factors."""

    c_z: float
    c_y: float
    d_x: float
    norm_sigma: float  # sqrt(pi) (n-1)! 2 N_n  (inf for n >= 172; recordkeeping only)


@dataclass(frozen=True)
class SpinTexture:
    """Sampled spin-expectation profiles on an ordered grid."""

    grid: np.ndarray
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray
    coeffs: TextureCoefficients | None  # None for the n = 0 state

    def component(self, name: str) -> np.ndarray:
        if name not in ("x", "y", "z"):
            raise ValidationError(f"unknown spin component {name!r}")
        return getattr(self, "s" + name)


@dataclass(frozen=True)
class NodeSet:
    """Finite zero crossings of one spin component and the section signs.

    signs[i] is the sign of the component on the open interval between
    positions[i-1] and positions[i] (the unbounded end sections included), so
    len(signs) == len(positions) + 1.
    """

    component: str
    positions: np.ndarray
    signs: tuple[int, ...]

    def sign_at(self, x: float) -> int:
        """Sign of the component at x (x must not be a node position)."""
        return self.signs[bisect_left(self.positions, x)]


def standard_grid(n: int, points: int = STANDARD_POINTS) -> np.ndarray:
    """Uniform symmetric grid on [-L(n), L(n)]; odd count keeps x = 0 sampled."""
    L = domain_cutoff(n)
    return np.linspace(-L, L, points)


def texture_coefficients(params: ModelParams, level: LevelIndex) -> TextureCoefficients:
    """Closed-form coefficients Cz, Cy, Dx of state (n >= 1, eta)."""
    if level.n < 1:
        raise ValidationError("texture coefficients are defined for n >= 1")
    sol = eigen_solution(params, level)  # propagates exceptional/degenerate
    bq = block_quantities(params, level.n)
    c = params.composites()
    g, Gamma = params.g, params.Gamma
    d_Ww, d_kg = c.d_Omega_omega, c.d_kappa_gamma
    half = 0.5 * bq.vartheta
    rc = level.eta * bq.R * math.cos(half)
    rs = level.eta * bq.R * math.sin(half)
    c_z = g * d_Ww - Gamma * d_kg + 2.0 * (g * rc - Gamma * rs)
    c_y = Gamma * d_Ww + g * d_kg + 2.0 * (Gamma * rc + g * rs)
    d_x = d_Ww * d_Ww + d_kg * d_kg + 4.0 * bq.R * bq.R + 4.0 * (d_Ww * rc + d_kg * rs)
    try:
        fac = float(math.factorial(level.n - 1))
    except OverflowError:
        fac = math.inf
    return TextureCoefficients(
        c_z=c_z,
        c_y=c_y,
        d_x=d_x,
        norm_sigma=math.sqrt(math.pi) * fac * 2.0 * sol.norm,
    )


def _vacuum_texture(grid: np.ndarray) -> SpinTexture:
    zeros = np.zeros_like(grid)
    sx = -np.exp(-grid * grid) / math.sqrt(math.pi)
    return SpinTexture(grid=grid, sx=sx, sy=zeros.copy(), sz=zeros, coeffs=None)


def texture_closed_form(params: ModelParams, level: LevelIndex, grid=None) -> SpinTexture:
    """Spin texture from the analytic coefficient forms."""
    grid = standard_grid(level.n) if grid is None else np.asarray(grid, dtype=float)
    if level.n == 0:
        return _vacuum_texture(grid)
    coeffs = texture_coefficients(params, level)
    sol = eigen_solution(params, level)
    p_lo, p_hi = phi_pair(level.n, grid)
    cross = math.sqrt(level.n) * p_lo * p_hi / sol.norm
    g, Gamma = params.g, params.Gamma
    sx = (0.25 * coeffs.d_x * p_lo * p_lo
          - level.n * (g * g + Gamma * Gamma) * p_hi * p_hi) / sol.norm
    return SpinTexture(
        grid=grid,
        sx=sx,
        sy=coeffs.c_y * cross,
        sz=coeffs.c_z * cross,
        coeffs=coeffs,
    )


def wavefunction_components(params: ModelParams, level: LevelIndex, grid):
    """Position wave functions (psi+^x, psi-^x, psi+^z, psi-^z) on the grid.

    sigma_x basis:  psi+-^x = C_{up,down} phi_{n-1,n}(x) / sqrt(N_n)
    sigma_z basis:  psi+-^z = (C_up phi_{n-1} +- C_down phi_n) / sqrt(2 N_n)
    """
    if level.n < 1:
        raise ValidationError("wavefunction components are defined for n >= 1")
    grid = np.asarray(grid, dtype=float)
    sol = eigen_solution(params, level)
    p_lo, p_hi = phi_pair(level.n, grid)
    rn = math.sqrt(sol.norm)
    up_x = sol.c_up * p_lo / rn
    down_x = sol.c_down * p_hi / rn
    up_z = (up_x + down_x) / math.sqrt(2.0)
    down_z = (up_x - down_x) / math.sqrt(2.0)
    return up_x, down_x, up_z, down_z


def texture_from_wavefunctions(params: ModelParams, level: LevelIndex, grid=None) -> SpinTexture:
    """Spin texture contracted from the position wave functions (oracle route
    for the closed forms; also carries the coefficients for convenience)."""
    grid = standard_grid(level.n) if grid is None else np.asarray(grid, dtype=float)
    if level.n == 0:
        return _vacuum_texture(grid)
    up_x, down_x, up_z, down_z = wavefunction_components(params, level, grid)
    sx = np.abs(up_x) ** 2 - np.abs(down_x) ** 2
    sz = np.abs(up_z) ** 2 - np.abs(down_z) ** 2
    sy = (1j * (np.conj(down_z) * up_z - np.conj(up_z) * down_z)).real
    return SpinTexture(
        grid=grid,
        sx=sx,
        sy=sy,
        sz=sz,
        coeffs=texture_coefficients(params, level),
    )


def _leading_sign(k: int, at_minus_inf: bool) -> int:
    """Sign of phi_k far in the named tail (H_k has positive leading coeff)."""
    return (-1) ** k if at_minus_inf else 1


def _zy_nodes(params: ModelParams, level: LevelIndex, component: str) -> NodeSet:
    """sigma_z / sigma_y nodes: union of the roots of H_{n-1} and H_n."""
    n = level.n
    coeffs = texture_coefficients(params, level)
    amp = coeffs.c_z if component == "z" else coeffs.c_y
    positions = np.sort(np.concatenate((hermite_roots(n - 1) if n > 1 else np.empty(0),
                                        hermite_roots(n))))
    # phi_{n-1} phi_n < 0 as x -> -inf; each union root is simple, so the
    # section signs alternate from -sign(amp)
    first = -_sign(amp)
    signs = tuple(first * (-1) ** i for i in range(len(positions) + 1))
    return NodeSet(component=component, positions=positions, signs=signs)


def _sign(v: float) -> int:
    if v > 0.0:
        return 1
    if v < 0.0:
        return -1
    return 0


def _refine_ratio(n: int, target: float, lo: float, hi: float) -> float:
    """Bisect phi_n/phi_{n-1} - target inside a bracket with a sign change."""
    flo = phi_ratio(n, lo) - target
    fhi = phi_ratio(n, hi) - target
    if not (flo < 0.0 < fhi or fhi < 0.0 < flo):
        raise NodeCountError(
            f"lost bracket for sigma_x node of block n={n} in ({lo}, {hi})"
        )
    neg_left = flo < 0.0
    while hi - lo > _NODE_TOL:
        mid = 0.5 * (lo + hi)
        fm = phi_ratio(n, mid) - target
        if (fm < 0.0) == neg_left:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _shrink_from_pole(n: int, pole: float, toward: float, target: float) -> float:
    """Endpoint between pole and toward that lands past the target ratio.

    The ratio diverges to -inf just right of a pole and to +inf just left of
    it, so shrinking the offset is guaranteed to cross any finite target:
    r < target when approaching from the right, r > target from the left.
    """
    delta = 0.5 * (toward - pole)
    from_right = delta > 0.0
    for _ in range(120):
        r = phi_ratio(n, pole + delta)
        if (r < target) if from_right else (r > target):
            return pole + delta
        delta *= 0.25
    raise NodeCountError(f"sigma_x node of block n={n} unresolvable near pole {pole}")


def _x_nodes(params: ModelParams, level: LevelIndex) -> NodeSet:
    """The 2n sigma_x nodes: solutions of phi_n/phi_{n-1} = +-rho with
    rho = |C_up|/|C_down|, one pair per branch of the ratio between
    consecutive poles (roots of H_{n-1})."""
    n = level.n
    sol = eigen_solution(params, level)
    rho = abs(sol.c_up) / abs(sol.c_down)
    if not (math.isfinite(rho) and rho > 0.0):
        raise NodeCountError(f"coefficient ratio {rho!r} admits no sigma_x nodes")
    poles = hermite_roots(n - 1) if n > 1 else np.empty(0)
    zeros = hermite_roots(n)
    reach = 1.0 + rho * math.sqrt(0.5 * n)  # asymptotic scale of the outer nodes
    found: list[float] = []
    for i in range(n):
        z = float(zeros[i])
        # r = -rho lies in (left, z); r sweeps -inf -> 0 there
        if i == 0:
            a, step = z - reach, reach
            while phi_ratio(n, a) > -rho:
                a -= step
                step *= 2.0
        else:
            a = _shrink_from_pole(n, float(poles[i - 1]), z, -rho)
        found.append(_refine_ratio(n, -rho, a, z))
        # r = +rho lies in (z, right); r sweeps 0 -> +inf there
        if i == n - 1:
            b, step = z + reach, reach
            while phi_ratio(n, b) < rho:
                b += step
                step *= 2.0
        else:
            b = _shrink_from_pole(n, float(poles[i]), z, rho)
        found.append(_refine_ratio(n, rho, z, b))
    positions = np.array(found)
    if len(positions) != 2 * n or np.any(np.diff(positions) <= 0.0):
        raise NodeCountError(
            f"sigma_x node refinement for n={n} produced {len(positions)} "
            "nodes or a non-monotone ordering"
        )
    # sections alternate, starting and ending at the asymptotic sign -1;
    # verify against the sampled sign of the texture at the midpoints
    signs = tuple(1 if i % 2 else -1 for i in range(2 * n + 1))
    mids = 0.5 * (positions[1:] + positions[:-1])
    rho_sq = rho * rho
    for i, m in enumerate(mids):
        r = phi_ratio(n, float(m))
        observed = _sign(rho_sq - r * r)  # sign of sigma_x up to a positive prefactor
        if observed != signs[i + 1]:
            raise NodeCountError(
                f"sigma_x section signs for n={n} do not alternate at x={m}"
            )
    return NodeSet(component="x", positions=positions, signs=signs)


def nodes(params: ModelParams, level: LevelIndex, component: str) -> NodeSet:
    """Finite nodes of one spin component with section signs attached.

    sigma_z and sigma_y share the 2n-1 parameter-independent Hermite-root
    nodes; sigma_x has 2n parameter-dependent nodes. A count or sign-pattern
    violation raises NodeCountError rather than returning silently wrong data.
    """
    if level.n < 1:
        raise ValidationError("nodes are defined for n >= 1")
    if component in ("z", "y"):
        return _zy_nodes(params, level, component)
    if component == "x":
        return _x_nodes(params, level)
    raise ValidationError(f"unknown spin component {component!r}")
