"""Numeric characters: alternating Weyl sums, their ratios, and the virtual
normal form for arbitrary lattice weights.

Two kinds of evaluation point are supported.  A Generic point carries a
complex vector u and pairs weights through the quadratic form, (r, u) = r^T G u;
callers who want bounded trigonometric characters pass purely imaginary u.
A Variety point carries an integer vector gamma and a shifted level K = k + c,
and pairs through exp(2 pi i gamma^T C^-1 r / K).  The variety phase is kept
as an exact rational mod 1 until the final exponential, so root-of-unity
coincidences (e.g. chi_4 = -chi_2 on the 8th roots of unity) cancel to
machine precision rather than approximately.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

from .algebra import (
    AlgebraSpec,
    Weight,
    cartan_inverse,
    reflect_to_dominant,
    weyl_orbit,
)
from .errors import SingularPointError
from .weights import weight_system

#: below this magnitude the Weyl denominator counts as a wall, not a value
DENOMINATOR_FLOOR = 1e-9

TWO_PI = 2.0 * cmath.pi


@dataclass(frozen=True)
class GenericPoint:
    """Evaluation point with phase e^{(r,u)}, u a complex weight-space vector."""

    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(complex(x) for x in self.u))


@dataclass(frozen=True)
class VarietyPoint:
    """Root-of-unity evaluation point: phase exp(2 pi i gamma^T C^-1 r / K)
    with K = k + c the shifted level."""

    gamma: tuple
    level_shifted: int

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(int(g) for g in self.gamma))
        if self.level_shifted <= 0:
            raise ValueError("shifted level K = k + c must be positive")


EvalPoint = Union[GenericPoint, VarietyPoint]


class VirtualChar(NamedTuple):
    sign: int
    dominant: Weight | None


def _check_point(spec: AlgebraSpec, p: EvalPoint):
    n = len(p.u) if isinstance(p, GenericPoint) else len(p.gamma)
    if n != spec.rank:
        raise ValueError(f"evaluation point has length {n}, expected rank {spec.rank}")


def _generic_pairing_vector(spec: AlgebraSpec, u):
    """G u, so that (r, u) is a plain dot product against integer labels."""
    g = spec.quad_form
    return tuple(
        sum(float(g[i][j]) * u[j] for j in range(spec.rank)) for i in range(spec.rank)
    )


def _variety_fraction(spec: AlgebraSpec, gamma, r, level_shifted: int) -> Fraction:
    """(C^-1 gamma) . r / K reduced mod 1, exactly.

    This is the phase a clock-operator word r accumulates on the state gamma;
    for symmetric Cartan matrices it is the same as gamma^T C^-1 r."""
    inv = cartan_inverse(spec)
    total = Fraction(0)
    for i, ri in enumerate(r):
        if ri:
            row = inv[i]
            total += ri * sum(row[j] * gj for j, gj in enumerate(gamma) if gj)
    return (total / level_shifted) % 1


@lru_cache(maxsize=1 << 16)
def eval_D(spec: AlgebraSpec, lam: Weight, p: EvalPoint) -> complex:
    """Alternating Weyl orbit sum D_lam = sum_w (-1)^w e^{(w(lam), p)}.

    Antisymmetric under precomposed simple reflections of lam; identically
    zero (by exact pairwise cancellation) when lam lies on a wall.
    """
    _check_point(spec, p)
    lam = tuple(lam)
    orbit = weyl_orbit(spec, lam)
    if isinstance(p, GenericPoint):
        gu = _generic_pairing_vector(spec, p.u)
        total = 0.0 + 0.0j
        for w_lam, sign in orbit:
            pairing = sum(li * gi for li, gi in zip(w_lam, gu))
            total += sign * cmath.exp(pairing)
        return total
    total = 0.0 + 0.0j
    for w_lam, sign in orbit:
        frac = _variety_fraction(spec, p.gamma, w_lam, p.level_shifted)
        total += sign * cmath.exp(1j * TWO_PI * float(frac))
    return total


def eval_char(spec: AlgebraSpec, mu: Weight, p: EvalPoint) -> complex:
    """Character of the dominant weight mu as the Weyl ratio
    D_{mu+rho}(p) / D_rho(p)."""
    if any(label < 0 for label in mu):
        raise ValueError(f"{mu} is not dominant; use virtual_normalize first")
    denominator = eval_D(spec, spec.rho, p)
    if abs(denominator) < DENOMINATOR_FLOOR:
        raise SingularPointError(
            f"point {p} lies on a wall of {spec}: |D_rho| = {abs(denominator):.3e}"
        )
    numerator = eval_D(spec, tuple(m + 1 for m in mu), p)
    return numerator / denominator


def eval_char_trace(spec: AlgebraSpec, mu: Weight, p: EvalPoint) -> complex:
    """Character as the plain weight-system sum sum_{r in Omega_mu} m_r e^{(r,p)};
    slower than eval_char but independent of the Weyl-ratio code path."""
    _check_point(spec, p)
    ws = weight_system(spec, mu)
    if isinstance(p, GenericPoint):
        gu = _generic_pairing_vector(spec, p.u)
        return sum(
            mult * cmath.exp(sum(ri * gi for ri, gi in zip(r, gu)))
            for r, mult in ws.entries.items()
        )
    return sum(
        mult * cmath.exp(1j * TWO_PI * float(_variety_fraction(spec, p.gamma, r, p.level_shifted)))
        for r, mult in ws.entries.items()
    )


def virtual_normalize(spec: AlgebraSpec, lam: Weight) -> VirtualChar:
    """Reduce an arbitrary lattice weight to its virtual-character normal form.

    chi_lam = sign * chi_dominant where (dominant, sign) comes from reducing
    lam + rho; weights whose shift lands on a wall have sign 0 and no
    dominant representative (their character vanishes identically).
    """
    shifted = tuple(l + 1 for l in lam)
    reduced, sign = reflect_to_dominant(spec, shifted)
    if sign == 0:
        return VirtualChar(0, None)
    return VirtualChar(sign, tuple(r - 1 for r in reduced))


def char_su2_closed(n: int, k: int, x: float) -> float:
    """Closed-form level-k su(2) character sin(pi (n+1) x/(k+2)) / sin(pi x/(k+2))."""
    import math

    denominator = math.sin(math.pi * x / (k + 2))
    if abs(denominator) < DENOMINATOR_FLOOR:
        raise SingularPointError(f"x = {x} is a zero of the level-{k} su(2) denominator")
    return math.sin(math.pi * (n + 1) * x / (k + 2)) / denominator
