"""Exact eigen-solution of the U(1) blocks of the dissipative JC model.

Conservation of the excitation number splits the Hamiltonian into 2x2 blocks
spanned by {|n-1,up_x>, |n,down_x>}. Each block is parametrized by

    e+ = (n - 1/2) w~,      e- = (W~ - w~)/2,

and the branch root S = sqrt(e-^2 + n g~^2) = R exp(i*theta/2) with

    R = (A^2 + B^2)^(1/4),          theta = arg(A - iB) in (-pi, pi],
    A = n (g^2 - Gamma^2) + d_Ww^2/4 - d_kg^2/4,
    B = 2 n g Gamma - d_kg d_Ww / 2,

where d_Ww = Omega - omega and d_kg = kappa - gamma. The principal branch of
theta is what makes the pi -> -pi shift of the argument (and the resulting
sign reversal of S) emerge automatically when B crosses zero under A < 0.

Coefficients and energies:

    C_up = e- + eta S,   C_down = g~ sqrt(n),   E = e+ + eta S,
    Re E = (n - 1/2) omega + eta R cos(theta/2),
    Im E = -(n - 1/2) kappa + eta R sin(theta/2),

plus the isolated n = 0 state with E0 = -W~/2 and no coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateStateError, ExceptionalPointError, ValidationError
from .params import LevelIndex, ModelParams

__all__ = [
    "BlockQuantities",
    "EigenSolution",
    "GapPair",
    "block_quantities",
    "eigen_solution",
    "gaps",
]

# |B| below this is treated as an exact zero so a signed -0.0 cannot flip the
# branch of arg(A - iB)
_SUBNORMAL_GUARD = 1e-300

# relative floor (on the block's natural squared scale) under which both A and
# B count as zero: exceptional point
_EP_RTOL = 1e-14

# relative norm floor under which the two-component parametrization of the
# eigenvector is considered collapsed
_DEGENERATE_RTOL = 1e-24


@dataclass(frozen=True)
class BlockQuantities:
    """Branch-split data of one 2x2 excitation block."""

    n: int
    e_plus: complex
    e_minus: complex
    A: float
    B: float
    R: float
    vartheta: float
    exceptional: bool

    @property
    def root(self) -> complex:
        """Branch root S = R exp(i*vartheta/2) for eta = +1."""
        return self.R * cmath.exp(0.5j * self.vartheta)


@dataclass(frozen=True)
class EigenSolution:
    """Coefficients, normalization and complex energy of one eigenstate.

    For n = 0 the state is |0, down_x>: c_up and c_down are None and the
    energy is -W~/2.
    """

    level: LevelIndex
    c_up: complex | None
    c_down: complex | None
    norm: float
    energy: complex
    re_energy: float
    im_energy: float


@dataclass(frozen=True)
class GapPair:
    """Real-part gaps: delta_minus within the block, delta_plus to the
    nearest adjacent block (either branch, E0 for n' = 0)."""

    delta_minus: float
    delta_plus: float


def block_quantities(params: ModelParams, n: int) -> BlockQuantities:
    """Branch invariants A, B, R, vartheta of block n >= 1.

    vartheta is the principal argument of A - iB; when both A and B vanish to
    float resolution the block is flagged exceptional (branch split singular,
    vartheta meaningless) and downstream consumers must check the flag.
    """
    if n < 1:
        raise ValidationError(f"block index n must be >= 1, got {n}")
    c = params.composites()
    d_Ww = c.d_Omega_omega
    d_kg = c.d_kappa_gamma
    g, Gamma = params.g, params.Gamma
    A = n * (g * g - Gamma * Gamma) + 0.25 * d_Ww * d_Ww - 0.25 * d_kg * d_kg
    B = 2.0 * n * g * Gamma - 0.5 * d_kg * d_Ww
    im = -B if abs(B) >= _SUBNORMAL_GUARD else 0.0
    vartheta = math.atan2(im, A)
    R = math.sqrt(math.hypot(A, B))
    scale_sq = max(1.0, n * (g * g + Gamma * Gamma), d_Ww * d_Ww, d_kg * d_kg)
    exceptional = abs(A) < _EP_RTOL * scale_sq and abs(B) < _EP_RTOL * scale_sq
    return BlockQuantities(
        n=n,
        e_plus=(n - 0.5) * c.omega_t,
        e_minus=0.5 * (c.Omega_t - c.omega_t),
        A=A,
        B=B,
        R=R,
        vartheta=vartheta,
        exceptional=exceptional,
    )


def eigen_solution(params: ModelParams, level: LevelIndex) -> EigenSolution:
    """Exact eigenstate of the given level.

    Raises ExceptionalPointError when the block's branch split is singular and
    DegenerateStateError when both coefficients collapse to zero (only
    possible with g~ = 0).
    """
    if level.n == 0:
        energy = -0.5 * params.composites().Omega_t
        return EigenSolution(
            level=level,
            c_up=None,
            c_down=None,
            norm=1.0,
            energy=energy,
            re_energy=energy.real,
            im_energy=energy.imag,
        )
    bq = block_quantities(params, level.n)
    if bq.exceptional:
        raise ExceptionalPointError(
            f"block n={level.n} is at an exceptional point (A={bq.A!r}, B={bq.B!r})"
        )
    root = level.eta * bq.root
    c_up = bq.e_minus + root
    c_down = params.composites().g_t * math.sqrt(level.n)
    norm = abs(c_up) ** 2 + abs(c_down) ** 2
    scale = abs(bq.e_minus) ** 2 + level.n * abs(params.composites().g_t) ** 2
    if norm <= _DEGENERATE_RTOL * max(scale, _SUBNORMAL_GUARD):
        raise DegenerateStateError(
            f"state (n={level.n}, eta={level.eta:+d}) has vanishing coefficients"
        )
    half = 0.5 * bq.vartheta
    re_e = (level.n - 0.5) * params.omega + level.eta * bq.R * math.cos(half)
    im_e = -(level.n - 0.5) * params.kappa + level.eta * bq.R * math.sin(half)
    return EigenSolution(
        level=level,
        c_up=c_up,
        c_down=c_down,
        norm=norm,
        energy=bq.e_plus + root,
        re_energy=re_e,
        im_energy=im_e,
    )


def _re_energies(params: ModelParams, n: int) -> tuple[float, ...]:
    """Real parts of both branches of block n (single value for n = 0).

    Exceptional blocks are fine here: R = 0 makes both branches collapse onto
    Re e+ regardless of vartheta.
    """
    if n == 0:
        return (-0.5 * params.Omega,)
    bq = block_quantities(params, n)
    base = (n - 0.5) * params.omega
    shift = bq.R * math.cos(0.5 * bq.vartheta)
    return (base + shift, base - shift)


def gaps(params: ModelParams, n: int) -> GapPair:
    """Intra-block gap delta_minus = |Re E(n,+) - Re E(n,-)| and the smallest
    real-part distance delta_plus to the blocks n-1 and n+1 (both branches)."""
    if n < 1:
        raise ValidationError(f"block index n must be >= 1, got {n}")
    own = _re_energies(params, n)
    delta_minus = abs(own[0] - own[1])
    neighbors = _re_energies(params, n - 1) + _re_energies(params, n + 1)
    delta_plus = min(abs(a - b) for a in own for b in neighbors)
    return GapPair(delta_minus=delta_minus, delta_plus=delta_plus)
