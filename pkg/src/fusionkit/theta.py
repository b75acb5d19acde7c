"""Lattice theta sums at finite modular parameter, their Weyl
(anti)symmetrizations, and the finite-tau characters built from them.
Simply-laced algebras only: the construction leans on the even root lattice
((alpha, alpha) in 2Z) through both functional equations.

The basic object is

    Theta_{gamma,k}(tau, u) = sum over root-lattice alpha of
        exp(i pi k tau (alpha + gamma/k)^2 + 2 pi i k (alpha + gamma/k, u))

with Im(tau) > 0 for absolute convergence.  The sum is truncated at a radius
derived from a Gaussian tail bound (smallest eigenvalue of the root-lattice
Gram matrix), so every reported value is within the context epsilon of the
full sum; lattice points are accumulated in a fixed order (norm, then
coefficient vector) for reproducibility.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .algebra import (
    AlgebraSpec,
    Weight,
    apply_word,
    weyl_elements,
    word_sign,
)
from .characters import TWO_PI
from .errors import CapExceeded, SingularPointError
from .fusion import fuse_level_k, is_integrable
from .identity import VerificationReport, make_report
from .weights import weight_system

_RADIUS_CAP = 60.0


def _require_simply_laced(spec: AlgebraSpec):
    if spec.series not in ("A", "D", "E"):
        raise ValueError(f"theta sums are defined for the ADE series, not {spec}")


@dataclass(frozen=True)
class ThetaContext:
    """Evaluation context: algebra, theta level, modular parameter tau,
    vector u, and target truncation error.

    ``level`` is the k of Theta_{gamma,k}; character-level callers pass
    k + c.  ``radius`` is the derived truncation bound for shifts gamma/k
    inside the unit ball; larger shifts grow it per call.
    """

    spec: AlgebraSpec
    level: int
    tau: complex
    u: tuple
    epsilon: float = 1e-12

    def __post_init__(self):
        _require_simply_laced(self.spec)
        if self.level <= 0:
            raise ValueError("theta level must be a positive integer")
        object.__setattr__(self, "tau", complex(self.tau))
        if self.tau.imag <= 0:
            raise ValueError(f"Im(tau) = {self.tau.imag} must be positive")
        object.__setattr__(self, "u", tuple(complex(x) for x in self.u))
        if len(self.u) != self.spec.rank:
            raise ValueError(f"u has length {len(self.u)}, expected rank {self.spec.rank}")

    @property
    def radius(self) -> float:
        return _truncation_radius(
            self.spec, self.level, self.tau.imag, self._im_u_norm(), self.epsilon, 1.0
        )

    def _im_u_norm(self) -> float:
        g = _gram_float(self.spec)
        imu = np.array([x.imag for x in self.u])
        return float(np.sqrt(imu @ g @ imu)) if imu.any() else 0.0


@lru_cache(maxsize=None)
def _gram_float(spec: AlgebraSpec):
    return np.array([[float(x) for x in row] for row in spec.quad_form])


@lru_cache(maxsize=None)
def _root_gram(spec: AlgebraSpec):
    """Gram matrix of the simple roots and its smallest eigenvalue."""
    c = np.array(spec.cartan, dtype=float)
    gram = c @ _gram_float(spec) @ c.T
    return gram, float(np.linalg.eigvalsh(gram).min())


@lru_cache(maxsize=4096)
def _truncation_radius(spec: AlgebraSpec, level: int, im_tau: float, im_u_norm: float,
                       epsilon: float, shift_norm: float) -> float:
    """Smallest radius R such that the neglected tail is provably < epsilon.

    Term magnitudes at norm r are bounded by exp(-pi k t r^2 + 2 pi k b r);
    shell populations by a box count through the smallest Gram eigenvalue.
    """
    _, eig_min = _root_gram(spec)
    sqrt_eig = math.sqrt(eig_min)
    kt = math.pi * level * im_tau
    kb = TWO_PI * level * im_u_norm

    def tail(radius: float) -> float:
        total = 0.0
        r = radius
        while True:
            box = 2 * math.ceil((r + 1.0 + shift_norm) / sqrt_eig) + 1
            term = box**spec.rank * math.exp(-kt * r * r + kb * r)
            total += term
            if term < epsilon * 1e-9 or total > 1e30:
                return total
            r += 1.0

    radius = max(1.0, shift_norm + 1.0, kb / (2 * kt) + 1.0)
    while tail(radius) >= epsilon:
        radius += 1.0
        if radius > _RADIUS_CAP:
            raise CapExceeded(
                f"Im(tau) = {im_tau} too small to reach epsilon = {epsilon} "
                f"within radius {_RADIUS_CAP}"
            )
    return radius


@lru_cache(maxsize=4096)
def _lattice_shifts(spec: AlgebraSpec, gamma: Weight, level: int, radius_key: float):
    """Vectors v = alpha + gamma/level with |v| <= radius, as exact rational
    coordinate tuples, ordered by (norm, coefficient vector)."""
    rank = spec.rank
    _, eig_min = _root_gram(spec)
    shift = [Fraction(g, level) for g in gamma]
    shift_norm = _fraction_norm(spec, shift)
    bound = math.ceil((radius_key + shift_norm) / math.sqrt(eig_min))
    g = spec.quad_form
    cartan = spec.cartan
    radius_sq = radius_key * radius_key

    entries = []
    for n in product(range(-bound, bound + 1), repeat=rank):
        v = [shift[j] + sum(n[i] * cartan[i][j] for i in range(rank)) for j in range(rank)]
        norm_sq = Fraction(0)
        for i, vi in enumerate(v):
            if vi:
                norm_sq += vi * sum(g[i][j] * v[j] for j in range(rank))
        if float(norm_sq) <= radius_sq:
            entries.append((float(norm_sq), n, tuple(v)))
    entries.sort(key=lambda e: (e[0], e[1]))
    return tuple((norm_sq, v) for norm_sq, _, v in entries)


def _fraction_norm(spec: AlgebraSpec, vec) -> float:
    g = spec.quad_form
    total = Fraction(0)
    for i, vi in enumerate(vec):
        if vi:
            total += vi * sum(g[i][j] * vec[j] for j in range(spec.rank))
    return math.sqrt(float(total))


def _theta_raw(spec: AlgebraSpec, level: int, tau: complex, u, gamma: Weight,
               radius: float) -> complex:
    """Truncated lattice sum; radius chosen by the caller."""
    g = _gram_float(spec)
    gu = g @ np.array(u, dtype=complex)
    total = 0j
    coeff_tau = 1j * math.pi * level * tau
    coeff_u = 1j * TWO_PI * level
    for norm_sq, v in _lattice_shifts(spec, tuple(gamma), level, radius):
        vf = np.array([float(x) for x in v])
        total += cmath.exp(coeff_tau * norm_sq + coeff_u * complex(vf @ gu))
    return total


def theta_sum(ctx: ThetaContext, gamma: Weight) -> complex:
    """Theta_{gamma, level} at the context's (tau, u)."""
    gamma = tuple(int(x) for x in gamma)
    if len(gamma) != ctx.spec.rank:
        raise ValueError(f"gamma has length {len(gamma)}, expected rank {ctx.spec.rank}")
    radius = _radius_for(ctx, gamma)
    return _theta_raw(ctx.spec, ctx.level, ctx.tau, ctx.u, gamma, radius)


def _radius_for(ctx: ThetaContext, gamma: Weight, margin: float = 0.0) -> float:
    shift_norm = _fraction_norm(ctx.spec, [Fraction(g, ctx.level) for g in gamma])
    return _truncation_radius(
        ctx.spec, ctx.level, ctx.tau.imag, ctx._im_u_norm() + margin, ctx.epsilon,
        max(1.0, math.ceil(shift_norm)),
    )


def _signed_orbit_counts(spec: AlgebraSpec, gamma: Weight, parity: int):
    """Net (+-1)^w counts of each Weyl image of gamma, sorted by image.
    Wall cancellations happen here exactly, before any float work."""
    counts: dict[Weight, int] = {}
    for word in weyl_elements(spec):
        image = apply_word(spec, word, gamma)
        sign = word_sign(word) if parity < 0 else 1
        counts[image] = counts.get(image, 0) + sign
    return sorted((image, c) for image, c in counts.items() if c != 0)


def theta_weyl(ctx: ThetaContext, gamma: Weight, parity: int) -> complex:
    """Weyl-symmetrized (parity +1) or antisymmetrized (parity -1) theta sum
    over the full group action on gamma."""
    if parity not in (1, -1):
        raise ValueError("parity must be +1 or -1")
    gamma = tuple(int(x) for x in gamma)
    total = 0j
    for image, count in _signed_orbit_counts(ctx.spec, gamma, parity):
        total += count * theta_sum(ctx, image)
    return total


def kac_weyl_char(ctx: ThetaContext, mu: Weight) -> complex:
    """Finite-tau character: the ratio of antisymmetrized theta sums
    Theta^-_{mu+rho} / Theta^-_{rho} at the context's shifted level.

    The context level must already be k + c.  mu may be any weight (virtual
    extensions are legal and may evaluate to zero or to signed characters).
    """
    denominator = theta_weyl(ctx, ctx.spec.rho, -1)
    if abs(denominator) < 1e-13:
        raise SingularPointError(
            f"(tau, u) = ({ctx.tau}, {ctx.u}) is a zero of the theta denominator"
        )
    numerator = theta_weyl(ctx, tuple(m + 1 for m in mu), -1)
    return numerator / denominator


def check_T_transform(ctx: ThetaContext, gamma: Weight) -> float:
    """Residual of Theta(tau+1, u) = exp(i pi (gamma,gamma)/k) Theta(tau, u).

    The phase exponent is reduced mod 2 exactly before exponentiation."""
    gamma = tuple(int(x) for x in gamma)
    radius = _radius_for(ctx, gamma)
    lhs = _theta_raw(ctx.spec, ctx.level, ctx.tau + 1.0, ctx.u, gamma, radius)
    norm_sq = Fraction(0)
    g = ctx.spec.quad_form
    for i, gi in enumerate(gamma):
        if gi:
            norm_sq += gi * sum(g[i][j] * gamma[j] for j in range(ctx.spec.rank))
    phase = cmath.exp(1j * math.pi * float((norm_sq / ctx.level) % 2))
    rhs = phase * _theta_raw(ctx.spec, ctx.level, ctx.tau, ctx.u, gamma, radius)
    return abs(lhs - rhs)


def check_heat_equation(ctx: ThetaContext, gamma: Weight, h: float = 1e-3) -> float:
    """Central-difference residual of the Gaussian evolution equation

        (laplacian_u - 4 pi i k d/dtau) Theta = 0

    where the Laplacian is weighted by the inverse quadratic form (the
    coordinates pair through G, so contraction needs G^-1).  Expected to
    scale as h^2 on top of truncation noise."""
    gamma = tuple(int(x) for x in gamma)
    spec, level = ctx.spec, ctx.level
    rank = spec.rank
    radius = _radius_for(ctx, gamma, margin=2.0 * h)

    def value(tau, u):
        return _theta_raw(spec, level, tau, u, gamma, radius)

    tau, u = ctx.tau, np.array(ctx.u, dtype=complex)
    g_inv = np.linalg.inv(_gram_float(spec))
    center = value(tau, tuple(u))

    laplacian = 0j
    for a in range(rank):
        e_a = np.eye(rank)[a]
        laplacian += g_inv[a][a] * (
            value(tau, tuple(u + h * e_a)) - 2 * center + value(tau, tuple(u - h * e_a))
        ) / (h * h)
        for b in range(a + 1, rank):
            e_b = np.eye(rank)[b]
            mixed = (
                value(tau, tuple(u + h * e_a + h * e_b))
                - value(tau, tuple(u + h * e_a - h * e_b))
                - value(tau, tuple(u - h * e_a + h * e_b))
                + value(tau, tuple(u - h * e_a - h * e_b))
            ) / (4 * h * h)
            laplacian += 2 * g_inv[a][b] * mixed

    d_tau = (value(tau + h, tuple(u)) - value(tau - h, tuple(u))) / (2 * h)
    return float(abs(laplacian - 2j * TWO_PI * level * d_tau))


def verify_kw_identity(spec: AlgebraSpec, mu: Weight, nu: Weight, k: int,
                       points, tolerance: float = 1e-9,
                       epsilon: float = 1e-12) -> VerificationReport:
    """Finite-tau numerator identity over a grid of (tau, u) points:

        sum_{mu' in Omega_mu} m Theta^-_{mu'+nu+rho, k+c}
            = sum_iota N_{mu nu}^iota Theta^-_{iota+rho, k+c}

    The antisymmetrization handles virtual left-hand terms by itself (wall
    images cancel exactly), so no normalization step is needed.
    """
    _require_simply_laced(spec)
    mu, nu = tuple(mu), tuple(nu)
    for lam in (mu, nu):
        if not is_integrable(spec, lam, k):
            raise ValueError(f"{lam} is not integrable at level {k}")
    level_shifted = k + spec.dual_coxeter
    table = fuse_level_k(spec, mu, nu, k)
    ws = weight_system(spec, mu)

    def residuals():
        for tau, u in points:
            ctx = ThetaContext(spec, level_shifted, tau, tuple(u), epsilon)
            lhs = 0j
            for mu_prime, mult in ws.entries.items():
                shifted = tuple(m + n + 1 for m, n in zip(mu_prime, nu))
                lhs += mult * theta_weyl(ctx, shifted, -1)
            rhs = sum(
                n * theta_weyl(ctx, tuple(i + 1 for i in iota), -1)
                for iota, n in table.items()
            )
            yield (tau, tuple(u)), lhs, rhs

    case_id = f"kw-identity:{spec}:k={k}:mu={mu}:nu={nu}"
    return make_report(case_id, tolerance, residuals())


def su2_numerator_closed(j: int, k: int, tau: complex, u: complex,
                         epsilon: float = 1e-12) -> complex:
    """The su(2)_k character numerator as an explicit scalar two-term sum:

        sum_{a in Z}  e^{2 pi i tau K (a + m/2K)^2 + 2 pi i K (a + m/2K) u}
                    - e^{2 pi i tau K (a - m/2K)^2 + 2 pi i K (a - m/2K) u}

    with m = j+1 and K = k+2.  Agrees with theta_weyl(-1) on A1 at
    gamma = (j+1,), and vanishes identically at j = k+1; for j+m > k+1 the
    reflection chi_{j+m} = -chi_{2(k+1)-j-m} follows by an index shift.
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError(f"Im(tau) = {tau.imag} must be positive")
    level = k + 2
    shift = (j + 1) / (2.0 * level)
    decay = TWO_PI * tau.imag * level
    growth = TWO_PI * level * abs(complex(u).imag)
    bound = 3 + math.ceil(
        abs(shift) + growth / (2 * decay) + math.sqrt(max(math.log(1 / epsilon), 1.0) / decay)
    )
    def term(x: float) -> complex:
        return cmath.exp(1j * TWO_PI * tau * level * x * x + 1j * TWO_PI * level * x * u)

    total = 0j
    for a in range(-bound, bound + 1):
        total += term(a + shift) - term(a - shift)
    return total
