"""Numerical integration.

Full-period integrals use the equispaced rule

    integral_0^{2pi} f  ~  (2 pi / N) sum_{j<N} f(2 pi j / N),

which for 2pi-periodic analytic integrands converges geometrically in N and
is exact for trigonometric polynomials of degree < N.  Refinement doubles N,
reusing previous evaluations, until successive values agree.

Half-period integrals apply the same rule and halve the result.  That equals
the plain [0, pi] integral whenever the integrand's odd circle harmonics
cancel (in particular for every even integrand); all half-period identities
checked by this package are of that form, and the halved full-period rule is
what keeps the convergence geometric.

The lattice integral from a to b is the pair of geometric sums

    (1-q) b sum_{n>=0} q^n f(b q^n)  -  (1-q) a sum_{n>=0} q^n f(a q^n),

applied verbatim for complex endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, NearSingular, TruncationExceeded
from .qcore import (
    DEFAULT_POLICY,
    NEAR_SINGULAR_TOL,
    QBase,
    TruncationPolicy,
    min_factor_abs,
    qpoch_finite,
    qpoch_infinite,
)
from .qfun import ParamSet4

TWO_PI = 2.0 * math.pi

FULL_PERIOD = (0.0, TWO_PI)
HALF_PERIOD = (0.0, math.pi)


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and refinement rule for the periodic quadrature."""

    nodes: int = 256
    max_nodes: int = 8192
    rel_tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.nodes < 16:
            raise DomainError("nodes must be >= 16")
        if self.max_nodes < self.nodes:
            raise DomainError("max_nodes must be >= nodes")
        if not self.rel_tol > 0.0:
            raise DomainError("rel_tol must be positive")


DEFAULT_QUADRATURE = QuadratureSpec()


class QuadResult(NamedTuple):
    value: complex
    nodes: int
    converged: bool
    est_error: float
    fscale: float  # max |f| over evaluated nodes times interval length


def periodic_integral(
    f: Callable[[np.ndarray], np.ndarray],
    interval: tuple[float, float],
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> QuadResult:
    """Integrate a periodic analytic integrand over a full or half period.

    ``f`` must accept an ndarray of angles and return an ndarray of values.
    ``interval`` is ``FULL_PERIOD`` or ``HALF_PERIOD``; the half-period mode
    evaluates over the whole period and halves, see the module docstring.
    Never raises on slow convergence: the result carries ``converged=False``
    when ``max_nodes`` is reached with residual above ``rel_tol``.
    """
    if interval == FULL_PERIOD:
        factor = 1.0
    elif interval == HALF_PERIOD:
        factor = 0.5
    else:
        raise DomainError(f"interval must be FULL_PERIOD or HALF_PERIOD, got {interval}")
    length = TWO_PI * factor

    n = spec.nodes
    values = np.asarray(f(TWO_PI * np.arange(n) / n), dtype=np.complex128)
    running_sum = values.sum()
    fmax = float(np.max(np.abs(values))) if values.size else 0.0
    estimate = factor * TWO_PI / n * running_sum

    converged = False
    est_error = math.inf
    while n < spec.max_nodes:
        # midpoints of the current grid = the odd nodes of the doubled grid
        new_values = np.asarray(f(TWO_PI * (np.arange(n) + 0.5) / n), dtype=np.complex128)
        running_sum += new_values.sum()
        fmax = max(fmax, float(np.max(np.abs(new_values))))
        n *= 2
        refined = factor * TWO_PI / n * running_sum
        est_error = abs(refined - estimate)
        estimate = refined
        scale = max(abs(estimate), fmax * length)
        if est_error <= spec.rel_tol * scale:
            converged = True
            break
    return QuadResult(complex(estimate), n, converged, est_error, fmax * length)


@dataclass(frozen=True)
class QLattice:
    """Endpoints of a geometric lattice {b q^n} u {a q^n} accumulating at 0."""

    a: complex
    b: complex
    q: QBase

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "q", QBase.coerce(self.q))


def jackson_integral(
    f: Callable[[complex], complex],
    lattice: QLattice,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> complex:
    """The lattice integral of f from a to b.

    Each geometric sum stops once |term| < rel_tol * |partial sum| for 3
    consecutive n (guards against interleaved near-zero terms)."""
    q = lattice.q.q

    def one_side(endpoint: complex) -> complex:
        if endpoint == 0:
            return 0.0 + 0.0j
        total = 0.0 + 0.0j
        qn = 1.0 + 0.0j
        small_streak = 0
        for n in range(policy.max_terms):
            term = qn * f(endpoint * qn)
            total += term
            if abs(term) <= policy.rel_tol * abs(total):
                small_streak += 1
                if small_streak >= 3 and n >= 2:
                    return total
            else:
                small_streak = 0
            qn *= q
        raise TruncationExceeded(
            f"lattice sum did not settle within {policy.max_terms} terms"
        )

    if lattice.a == lattice.b:
        return 0.0 + 0.0j
    return (1.0 - q) * (lattice.b * one_side(lattice.b) - lattice.a * one_side(lattice.a))


def phi_qintegral_repr(
    n: int,
    x,
    y,
    p: ParamSet4,
    q,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> complex:
    """Lattice-integral representation of Phi_n(x, y):

        (ra*rb;q)_n (ra, rb, beta y/(gamma x), alpha x/(delta y); q)_oo
        / ((1-q) delta y (q, ra*rb, gamma x/(delta y), q delta y/(gamma x); q)_oo)
        * integral_{gamma x}^{delta y}
              (q z/(gamma x), q z/(delta y); q)_oo z^n
              / ((beta z/(gamma delta x), alpha z/(gamma delta y); q)_oo)  d_q z,

    with ra = alpha/gamma, rb = beta/delta.  Must agree with
    :func:`qortho.qfun.phi_eval`; raises :class:`NearSingular` when any
    denominator symbol has a factor within 1e-12 of zero.
    """
    qb = QBase.coerce(q)
    if n < 0:
        raise DomainError("n must be a nonnegative integer")
    x = complex(x)
    y = complex(y)
    gx = p.gamma * x
    dy = p.delta * y
    if dy == 0:
        raise DomainError("delta * y must be nonzero")
    if abs(gx - dy) <= 1e-12 * max(abs(gx), abs(dy), 1.0):
        raise NearSingular("gamma*x = delta*y makes the representation singular")

    ra, rb = p.ratio_a, p.ratio_b
    # Symbols that sit in a denominator anywhere: the prefactor's infinite
    # products and, across all lattice nodes z in {gx q^k} u {dy q^k}, the
    # integrand's (beta z/(gamma delta x); q)_oo and (alpha z/(gamma delta y); q)_oo
    # chains reduce to the four bases below.
    denominator_bases = [
        qb.q,
        ra * rb,
        gx / dy,
        qb.q * dy / gx,
        rb,  # beta z/(gamma delta x) at z = gx q^k
        p.beta * y / (p.gamma * x),  # ... at z = dy q^k
        p.alpha * x / (p.delta * y),  # alpha z/(gamma delta y) at z = gx q^k
        ra,  # ... at z = dy q^k
    ]
    for base in denominator_bases:
        if min_factor_abs(base, qb, policy) < NEAR_SINGULAR_TOL:
            raise NearSingular(
                f"denominator symbol with base {base} has a factor within "
                f"{NEAR_SINGULAR_TOL} of zero"
            )

    prefactor_num = qpoch_finite(ra * rb, qb, n)
    for arg in (ra, rb, p.beta * y / (p.gamma * x), p.alpha * x / (p.delta * y)):
        prefactor_num *= qpoch_infinite(arg, qb, policy)
    prefactor_den = (1.0 - qb.q) * dy
    for arg in (qb.q, ra * rb, gx / dy, qb.q * dy / gx):
        prefactor_den *= qpoch_infinite(arg, qb, policy)
    if abs(prefactor_den) < NEAR_SINGULAR_TOL:
        raise NearSingular("prefactor denominator product is near zero")

    gdx = p.gamma * p.delta * x
    gdy = p.gamma * p.delta * y

    def integrand(z: complex) -> complex:
        num = qpoch_infinite(qb.q * z / gx, qb, policy) * qpoch_infinite(
            qb.q * z / dy, qb, policy
        )
        den = qpoch_infinite(p.beta * z / gdx, qb, policy) * qpoch_infinite(
            p.alpha * z / gdy, qb, policy
        )
        return num / den * z ** n

    integral = jackson_integral(integrand, QLattice(gx, dy, qb), policy)
    return prefactor_num / prefactor_den * integral


__all__ = [
    "FULL_PERIOD",
    "HALF_PERIOD",
    "QuadratureSpec",
    "DEFAULT_QUADRATURE",
    "QuadResult",
    "periodic_integral",
    "QLattice",
    "jackson_integral",
    "phi_qintegral_repr",
]
