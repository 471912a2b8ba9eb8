"""Closed forms for the three special-point families of the dissipative JCM.

R  (reversal):        B = 0 under A < 0; level-dependent, gap-closing.
GR (gapped reversal): Cz = 0; the same point for every level that still has
                      the transition; no gap closing.
SI (super-invariant): Cy = 0; the same point for every level, no tilting and
                      no gap closing.

Each family is solvable in closed form for any one of kappa, Gamma, gamma, g
(never by root-finding). With d_Ww = Omega - omega and d_kg = kappa - gamma:

    R:   kappa = gamma + 4 n g Gamma / d_Ww      Gamma = d_kg d_Ww / (4 n g)
         gamma = kappa - 4 n g Gamma / d_Ww      g     = d_kg d_Ww / (4 n Gamma)
    GR:  kappa = gamma + g d_Ww / Gamma          Gamma = g d_Ww / d_kg
         gamma = kappa - g d_Ww / Gamma          g     = Gamma d_kg / d_Ww
    SI:  kappa = gamma - Gamma d_Ww / g          Gamma = -g d_kg / d_Ww
         gamma = kappa + Gamma d_Ww / g          g     = -Gamma d_Ww / d_kg

Validity. A family-R point is a genuine transition only when A < 0 there. At
any GR point the relation Gamma*d_kg = g*d_Ww makes e- = i t g~ with
t = d_kg/(2g) = d_Ww/(2Gamma), so the branch root is proportional to g~ and
Cz vanishes (for both branches and every level) iff t^2 > n, i.e.
d_kg^2 > 4 n g^2 at the point. Levels with n >= t^2 have met the reversal
transition and lost the GR point ("preempted"); n = t^2 is the exceptional
meeting line of the two families. SI points exist unconditionally: there
e- = t' g~ with t' = d_Ww/(2g) real, so Cy = 0 identically in n.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import NegativeRateWarning, NoBoundaryError, ValidationError
from .params import ModelParams
from .spectrum import block_quantities

__all__ = ["BoundaryPoint", "boundary_R", "boundary_GR", "boundary_SI", "all_boundaries", "SOLVABLE"]

SOLVABLE = ("kappa", "Gamma", "gamma", "g")

FAMILIES = ("R", "GR", "SI")


@dataclass(frozen=True)
class BoundaryPoint:
    family: str
    solved_for: str
    value: float
    valid: bool
    validity_detail: str
    level_dependent: bool


def _check_solvable(solved_for: str) -> None:
    if solved_for not in SOLVABLE:
        raise ValidationError(
            f"no closed form for {solved_for!r}; solvable parameters: {SOLVABLE}"
        )


def _denominator(name: str, value: float, family: str, solved_for: str) -> float:
    if value == 0.0:
        raise NoBoundaryError(
            f"family {family} has no boundary in {solved_for}: {name} is zero"
        )
    return value


def _at_value(params: ModelParams, name: str, value: float) -> ModelParams:
    """Substitute a boundary value; a negative rate here is a result to be
    reported in the validity detail, not a user input worth a warning."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NegativeRateWarning)
        return params.with_value(name, value)


def boundary_R(params: ModelParams, n: int, solved_for: str) -> BoundaryPoint:
    """Level-n reversal point solved for one parameter (others from params).

    valid requires A < 0 at the point. For solved_for='Gamma' the detail also
    reports the explicit existence conditions Gamma_R > |Omega-omega|/(2 sqrt(n))
    and (kappa-gamma)(Omega-omega) > 0 that apply when Gamma_A^2 > 0.
    """
    _check_solvable(solved_for)
    if n < 1:
        raise ValidationError(f"family R needs a level n >= 1, got {n}")
    c = params.composites()
    d_Ww, d_kg = c.d_Omega_omega, c.d_kappa_gamma
    g, Gamma, kappa, gamma = params.g, params.Gamma, params.kappa, params.gamma
    if solved_for == "kappa":
        value = gamma + 4.0 * n * g * Gamma / _denominator("Omega - omega", d_Ww, "R", solved_for)
    elif solved_for == "gamma":
        value = kappa - 4.0 * n * g * Gamma / _denominator("Omega - omega", d_Ww, "R", solved_for)
    elif solved_for == "Gamma":
        value = d_kg * d_Ww / (4.0 * n * _denominator("g", g, "R", solved_for))
    else:  # g
        value = d_kg * d_Ww / (4.0 * n * _denominator("Gamma", Gamma, "R", solved_for))
    at_point = _at_value(params, solved_for, value)
    A = block_quantities(at_point, n).A
    valid = A < 0.0
    detail = f"A = {A:.6g} at the point ({'A < 0 holds' if valid else 'requires A < 0'})"
    if solved_for == "Gamma":
        gamma_a_sq = g * g + (d_Ww * d_Ww - d_kg * d_kg) / (4.0 * n)
        if gamma_a_sq > 0.0:
            g_min = abs(d_Ww) / (2.0 * math.sqrt(n))
            detail += (
                f"; Gamma_A^2 = {gamma_a_sq:.6g} > 0 so existence needs "
                f"Gamma_R > {g_min:.6g} and (kappa-gamma)(Omega-omega) > 0 "
                f"[{'met' if valid and value > 0 else 'not met'}]"
            )
        else:
            detail += f"; Gamma_A^2 = {gamma_a_sq:.6g} <= 0 (transition exists for any Gamma_R)"
    if value < 0.0:
        detail += "; note: boundary value is a negative rate"
    return BoundaryPoint(
        family="R",
        solved_for=solved_for,
        value=value,
        valid=valid,
        validity_detail=detail,
        level_dependent=True,
    )


def boundary_GR(params: ModelParams, solved_for: str, n: int | None = None) -> BoundaryPoint:
    """Gapped-reversal point; the value never depends on n.

    When n is given, validity reports whether level n still has the
    transition (d_kg^2 > 4 n g^2 at the point) or has been preempted by the
    level's reversal transition.
    """
    _check_solvable(solved_for)
    c = params.composites()
    d_Ww, d_kg = c.d_Omega_omega, c.d_kappa_gamma
    g, Gamma, kappa, gamma = params.g, params.Gamma, params.kappa, params.gamma
    if solved_for == "kappa":
        value = gamma + g * d_Ww / _denominator("Gamma", Gamma, "GR", solved_for)
    elif solved_for == "gamma":
        value = kappa - g * d_Ww / _denominator("Gamma", Gamma, "GR", solved_for)
    elif solved_for == "Gamma":
        value = g * d_Ww / _denominator("kappa - gamma", d_kg, "GR", solved_for)
    else:  # g
        value = Gamma * d_kg / _denominator("Omega - omega", d_Ww, "GR", solved_for)
    at_point = _at_value(params, solved_for, value)
    d_kg_at = at_point.kappa - at_point.gamma
    g_at = at_point.g
    if g_at == 0.0:
        n_max = math.inf if d_kg_at != 0.0 else 0.0
    else:
        n_max = (d_kg_at / (2.0 * g_at)) ** 2
    if n is None:
        valid = n_max > 1.0  # at least the first excited level keeps the transition
        detail = f"transition exists for levels n < {n_max:.6g}"
    else:
        if n < 1:
            raise ValidationError(f"level n must be >= 1, got {n}")
        valid = n < n_max
        detail = (
            f"transition exists for levels n < {n_max:.6g}; "
            + (f"level n={n} keeps it" if valid
               else f"level n={n} is preempted (met the reversal transition)")
        )
    return BoundaryPoint(
        family="GR",
        solved_for=solved_for,
        value=value,
        valid=valid,
        validity_detail=detail,
        level_dependent=False,
    )


def boundary_SI(params: ModelParams, solved_for: str) -> BoundaryPoint:
    """Super-invariant point; identical for every level, no extra conditions."""
    _check_solvable(solved_for)
    c = params.composites()
    d_Ww, d_kg = c.d_Omega_omega, c.d_kappa_gamma
    g, Gamma, kappa, gamma = params.g, params.Gamma, params.kappa, params.gamma
    if solved_for == "kappa":
        value = gamma - Gamma * d_Ww / _denominator("g", g, "SI", solved_for)
    elif solved_for == "gamma":
        value = kappa + Gamma * d_Ww / _denominator("g", g, "SI", solved_for)
    elif solved_for == "Gamma":
        value = -g * d_kg / _denominator("Omega - omega", d_Ww, "SI", solved_for)
    else:  # g
        value = -Gamma * d_Ww / _denominator("kappa - gamma", d_kg, "SI", solved_for)
    return BoundaryPoint(
        family="SI",
        solved_for=solved_for,
        value=value,
        valid=True,
        validity_detail="no tilting for every level at this point",
        level_dependent=False,
    )


def all_boundaries(params: ModelParams, n: int, solved_for: str) -> list[BoundaryPoint]:
    """The three family points in the same variable (R first)."""
    out = []
    for family in FAMILIES:
        try:
            if family == "R":
                out.append(boundary_R(params, n, solved_for))
            elif family == "GR":
                out.append(boundary_GR(params, solved_for, n=n))
            else:
                out.append(boundary_SI(params, solved_for))
        except NoBoundaryError as exc:
            out.append(BoundaryPoint(
                family=family,
                solved_for=solved_for,
                value=math.nan,
                valid=False,
                validity_detail=str(exc),
                level_dependent=family == "R",
            ))
    return out
