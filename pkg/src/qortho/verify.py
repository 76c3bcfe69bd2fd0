"""Identity checkers and randomized parameter sweeps.

Each checker computes a left-hand side by quadrature or series evaluation and
a right-hand side from closed-form products, through deliberately independent
code paths, then assembles an immutable :class:`VerificationReport`.  Numeric
trouble (near-singular denominators, truncation caps, slow quadrature) is
surfaced as report flags, never as exceptions escaping a checker.

Identity tags:

    THM_1_1     full-period orthogonality of the four-parameter family
    THM_1_2     seven-parameter product integral vs. single series
    THM_1_3     half-period bi-orthogonality of the a- and b-families
    PROP_2_1_2  Phi on the circle equals (q;q)_n times C_n
    PROP_2_1_3  growth-root diagnostic approaches max(|gamma|, |delta|)
    PROP_2_2    majorant series for the diagonal generating sum is Cauchy
    PROP_2_4    lattice-integral representation reproduces Phi_n
    PROP_3_1    connection expansion between the b- and a-families
    ROGERS_6W5  very-well-poised six-parameter sum vs. closed product form
    QBINOMIAL   binomial series vs. product ratio
    ULTRA_ORTHO half-period orthogonality of the single-parameter family
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import (
    DivergentSeries,
    DomainError,
    NearSingular,
    TruncationExceeded,
)
from .qcore import (
    DEFAULT_POLICY,
    NEAR_SINGULAR_TOL,
    QBase,
    TruncationPolicy,
    qpoch_finite,
    qpoch_infinite,
    tail_start,
)
from .hyper import PhiSpec, phi_series, qbinomial_product_ratio, rogers_6w5_rhs, very_well_poised
from .qfun import (
    ParamSet4,
    ReducedParams,
    big_c_coeffs,
    big_c_eval,
    connection_coeffs,
    cq_ultraspherical_many,
    diag_rhs_thm11,
    growth_root,
    h_norm,
    weight_min_denominator,
    weight_omega_many,
)
from .quad import (
    DEFAULT_QUADRATURE,
    FULL_PERIOD,
    HALF_PERIOD,
    QuadratureSpec,
    periodic_integral,
    phi_qintegral_repr,
)
from .qfun import phi_eval

TWO_PI = 2.0 * math.pi


class IdentityId(str, enum.Enum):
    THM_1_1 = "THM_1_1"
    THM_1_2 = "THM_1_2"
    THM_1_3 = "THM_1_3"
    PROP_2_1_2 = "PROP_2_1_2"
    PROP_2_1_3 = "PROP_2_1_3"
    PROP_2_2 = "PROP_2_2"
    PROP_2_4 = "PROP_2_4"
    PROP_3_1 = "PROP_3_1"
    ROGERS_6W5 = "ROGERS_6W5"
    QBINOMIAL = "QBINOMIAL"
    ULTRA_ORTHO = "ULTRA_ORTHO"


# Quadrature-vs-closed-form identities tolerate 1e-8 (double-precision products
# lose roughly two digits over hundreds of factors); series-vs-product ones
# hold tighter.
DEFAULT_TOLERANCES: Mapping[IdentityId, float] = {
    IdentityId.THM_1_1: 1e-8,
    IdentityId.THM_1_2: 1e-8,
    IdentityId.THM_1_3: 1e-8,
    IdentityId.PROP_2_1_2: 1e-12,
    IdentityId.PROP_2_1_3: 0.05,
    IdentityId.PROP_2_2: 1e-10,
    IdentityId.PROP_2_4: 1e-10,
    IdentityId.PROP_3_1: 1e-9,
    IdentityId.ROGERS_6W5: 1e-9,
    IdentityId.QBINOMIAL: 1e-11,
    IdentityId.ULTRA_ORTHO: 1e-8,
}

_FLAG_ORDER = ("NearSingular", "NoConvergence", "TruncationExceeded", "DivergentSeries")


@dataclass(frozen=True)
class VerificationReport:
    """One identity check: inputs, both sides, residuals, verdict.

    ``passed`` is true iff the flags are empty and the residual criterion
    holds: relative residual <= tolerance when |rhs| > tolerance, else
    absolute residual <= tolerance * scale (so expected-zero sides are judged
    against the problem's magnitude, not against zero)."""

    identity_id: str
    inputs: Mapping[str, object]
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    tolerance: float
    passed: bool
    flags: tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def build(
        cls,
        identity_id: IdentityId | str,
        inputs: Mapping[str, object],
        lhs: complex,
        rhs: complex,
        tolerance: float,
        scale: float = 0.0,
        flags: Sequence[str] = (),
    ) -> "VerificationReport":
        identity_id = IdentityId(identity_id).value
        flags = tuple(
            sorted(
                set(flags),
                key=lambda f: (_FLAG_ORDER.index(f) if f in _FLAG_ORDER else len(_FLAG_ORDER), f),
            )
        )
        if flags:
            abs_residual = math.inf
            rel_residual = math.inf
            passed = False
        else:
            abs_residual = abs(lhs - rhs)
            scale = max(abs(lhs), abs(rhs), scale, 1e-300)
            rel_residual = abs_residual / scale
            if abs(rhs) > tolerance:
                passed = rel_residual <= tolerance
            else:
                passed = abs_residual <= tolerance * scale
        return cls(
            identity_id=identity_id,
            inputs=dict(inputs),
            lhs=complex(lhs),
            rhs=complex(rhs),
            abs_residual=abs_residual,
            rel_residual=rel_residual,
            tolerance=tolerance,
            passed=passed,
            flags=flags,
        )

    def to_record(self) -> dict:
        """Flat record with complex values split into _re/_im fields."""
        rec: dict = {"identity": self.identity_id, "inputs": _flatten_inputs(self.inputs)}
        rec["lhs_re"] = self.lhs.real
        rec["lhs_im"] = self.lhs.imag
        rec["rhs_re"] = self.rhs.real
        rec["rhs_im"] = self.rhs.imag
        rec["abs_residual"] = self.abs_residual
        rec["rel_residual"] = self.rel_residual
        rec["tolerance"] = self.tolerance
        rec["passed"] = self.passed
        rec["flags"] = list(self.flags)
        return rec

    @classmethod
    def from_record(cls, rec: Mapping[str, object]) -> "VerificationReport":
        return cls(
            identity_id=str(rec["identity"]),
            inputs=_unflatten_inputs(rec["inputs"]),
            lhs=complex(rec["lhs_re"], rec["lhs_im"]),
            rhs=complex(rec["rhs_re"], rec["rhs_im"]),
            abs_residual=float(rec["abs_residual"]),
            rel_residual=float(rec["rel_residual"]),
            tolerance=float(rec["tolerance"]),
            passed=bool(rec["passed"]),
            flags=tuple(rec["flags"]),
        )


def _flatten_inputs(inputs: Mapping[str, object]) -> dict:
    flat: dict = {}
    for key, value in inputs.items():
        if isinstance(value, complex):
            flat[f"{key}_re"] = value.real
            flat[f"{key}_im"] = value.imag
        elif isinstance(value, (list, tuple, np.ndarray)):
            flat[key] = [float(v) for v in value]
        elif isinstance(value, (np.integer,)):
            flat[key] = int(value)
        elif isinstance(value, (np.floating,)):
            flat[key] = float(value)
        else:
            flat[key] = value
    return flat


def _unflatten_inputs(flat: Mapping[str, object]) -> dict:
    out: dict = {}
    seen_im = {k[:-3] for k in flat if k.endswith("_im")}
    for key, value in flat.items():
        if key.endswith("_re") and key[:-3] in seen_im:
            out[key[:-3]] = complex(value, flat[key[:-3] + "_im"])
        elif key.endswith("_im") and key[:-3] in seen_im:
            continue
        else:
            out[key] = value
    return out


def _paramset_inputs(p: ParamSet4, q: QBase) -> dict:
    return {
        "alpha": p.alpha,
        "beta": p.beta,
        "gamma": p.gamma,
        "delta": p.delta,
        "q": q.q,
    }


def residual_scale(lhs: complex, rhs: complex, extra: float = 0.0) -> float:
    return max(abs(lhs), abs(rhs), extra, 1e-300)


# ---------------------------------------------------------------------------
# individual checkers
# ---------------------------------------------------------------------------


def check_thm_1_1(
    p: ParamSet4,
    q,
    m: int,
    n: int,
    qspec: QuadratureSpec = DEFAULT_QUADRATURE,
    policy: TruncationPolicy = DEFAULT_POLICY,
    tolerance: float | None = None,
) -> VerificationReport:
    """Full-period orthogonality: quadrature of C_m C_n against the weight vs.
    the closed diagonal (zero off the diagonal)."""
    qb = QBase.coerce(q)
    tolerance = DEFAULT_TOLERANCES[IdentityId.THM_1_1] if tolerance is None else tolerance
    inputs = _paramset_inputs(p, qb) | {"m": m, "n": n}
    flags: list[str] = []
    lhs = complex("nan")
    rhs = complex("nan")
    scale = 0.0

    if weight_min_denominator(p, qb, policy) < NEAR_SINGULAR_TOL:
        flags.append("NearSingular")
    else:
        cm = big_c_coeffs(m, p, qb)
        cn = big_c_coeffs(n, p, qb)

        def integrand(thetas: np.ndarray) -> np.ndarray:
            return (
                kernels.laurent_eval(cm, m, thetas)
                * kernels.laurent_eval(cn, n, thetas)
                * weight_omega_many(thetas, p, qb, policy)
            )

        result = periodic_integral(integrand, FULL_PERIOD, qspec)
        lhs = result.value
        scale = result.fscale
        if not result.converged:
            flags.append("NoConvergence")
        try:
            rhs = diag_rhs_thm11(n, p, qb, policy) if m == n else 0.0 + 0.0j
        except NearSingular:
            flags.append("NearSingular")

    return VerificationReport.build(
        IdentityId.THM_1_1, inputs, lhs, rhs, tolerance, scale=scale, flags=flags
    )


def _thm_1_2_hypothesis(p: ParamSet4, s: complex, t: complex, q: QBase) -> dict[str, float]:
    """The seven moduli that must all be < 1."""
    return {
        "|q|": abs(q.q),
        "|alpha/gamma|": abs(p.ratio_a),
        "|beta/delta|": abs(p.ratio_b),
        "|gamma*s|": abs(p.gamma * s),
        "|gamma*t|": abs(p.gamma * t),
        "|delta*s|": abs(p.delta * s),
        "|delta*t|": abs(p.delta * t),
    }


def check_thm_1_2(
    p: ParamSet4,
    s,
    t,
    q,
    qspec: QuadratureSpec = DEFAULT_QUADRATURE,
    policy: TruncationPolicy = DEFAULT_POLICY,
    tolerance: float | None = None,
) -> VerificationReport:
    """Seven-parameter product integral: quadrature of the 12-product
    integrand vs. the prefactor times a single geometric-type series in
    (gamma delta s t)^n."""
    qb = QBase.coerce(q)
    s = complex(s)
    t = complex(t)
    tolerance = DEFAULT_TOLERANCES[IdentityId.THM_1_2] if tolerance is None else tolerance
    for name, value in _thm_1_2_hypothesis(p, s, t, qb).items():
        if value >= 1.0:
            raise DomainError(
                f"hypothesis max(|q|, |alpha/gamma|, |beta/delta|, |gamma*s|, "
                f"|gamma*t|, |delta*s|, |delta*t|) < 1 violated: {name} = {value:.6g}"
            )
    inputs = _paramset_inputs(p, qb) | {"s": s, "t": t}
    flags: list[str] = []
    lhs = complex("nan")
    rhs = complex("nan")
    scale = 0.0

    if weight_min_denominator(p, qb, policy) < NEAR_SINGULAR_TOL:
        flags.append("NearSingular")
    else:
        num_coefs = np.array(
            [p.alpha * t, p.beta * t, p.alpha * s, p.beta * s,
             p.gamma / p.delta, p.delta / p.gamma],
            dtype=np.complex128,
        )
        den_coefs = np.array(
            [p.gamma * t, p.delta * t, p.gamma * s, p.delta * s,
             p.alpha / p.delta, p.beta / p.gamma],
            dtype=np.complex128,
        )
        exps = np.array([1, -1, 1, -1, 2, -2], dtype=np.int64)
        kmax = tail_start(
            max(np.max(np.abs(num_coefs)), np.max(np.abs(den_coefs))), qb, policy
        )

        def integrand(thetas: np.ndarray) -> np.ndarray:
            num = kernels.poch_product_many(num_coefs, exps, qb.q, kmax, thetas)
            den = kernels.poch_product_many(den_coefs, exps, qb.q, kmax, thetas)
            return num / den

        result = periodic_integral(integrand, FULL_PERIOD, qspec)
        lhs = result.value
        scale = result.fscale
        if not result.converged:
            flags.append("NoConvergence")
        try:
            rhs = thm_1_2_rhs_series(p, s, t, qb, policy)
        except (NearSingular, TruncationExceeded) as exc:
            flags.append(type(exc).__name__)

    return VerificationReport.build(
        IdentityId.THM_1_2, inputs, lhs, rhs, tolerance, scale=scale, flags=flags
    )


def thm_1_2_rhs_series(
    p: ParamSet4, s: complex, t: complex, q, policy: TruncationPolicy = DEFAULT_POLICY
) -> complex:
    """2 pi (ra, rb;q)_oo / (q, ra*rb;q)_oo times
    sum_n (1/(1-ra q^n) + 1/(1-rb q^n)) (ra*rb;q)_n / (q;q)_n (gd s t)^n;
    |gd s t| < 1 makes the tail geometric."""
    qb = QBase.coerce(q)
    ra, rb = p.ratio_a, p.ratio_b
    den = qpoch_infinite(qb.q, qb, policy) * qpoch_infinite(ra * rb, qb, policy)
    if abs(den) < NEAR_SINGULAR_TOL:
        raise NearSingular("(q, ra*rb;q)_oo is near zero")
    prefactor = TWO_PI * qpoch_infinite(ra, qb, policy) * qpoch_infinite(rb, qb, policy) / den
    arg = p.gd * s * t
    total = 0.0 + 0.0j
    poch_ratio = 1.0 + 0.0j  # (ra*rb;q)_n / (q;q)_n
    argn = 1.0 + 0.0j
    qn = 1.0 + 0.0j
    small_streak = 0
    for n in range(policy.max_terms):
        term = (1.0 / (1.0 - ra * qn) + 1.0 / (1.0 - rb * qn)) * poch_ratio * argn
        total += term
        if abs(term) <= policy.rel_tol * abs(total):
            small_streak += 1
            if small_streak >= 3:
                return prefactor * total
        else:
            small_streak = 0
        poch_ratio *= (1.0 - ra * rb * qn) / (1.0 - qb.q * qn)
        qn *= qb.q
        argn *= arg
    raise TruncationExceeded("diagonal series did not settle")


def check_thm_1_3(
    r: ReducedParams,
    gamma,
    delta,
    q,
    m: int,
    n: int,
    qspec: QuadratureSpec = DEFAULT_QUADRATURE,
    policy: TruncationPolicy = DEFAULT_POLICY,
    tolerance: float | None = None,
) -> VerificationReport:
    """Half-period bi-orthogonality: degree m of the b-family against degree n
    of the a-family under the a-family weight.  Zero when m and n have
    opposite parity; otherwise the closed form requires m >= n."""
    qb = QBase.coerce(q)
    gamma = complex(gamma)
    delta = complex(delta)
    tolerance = DEFAULT_TOLERANCES[IdentityId.THM_1_3] if tolerance is None else tolerance
    same_parity = (m - n) % 2 == 0
    if same_parity and m < n:
        raise DomainError(
            "the closed form's product indices (m-n)/2 require m >= n"
        )
    for name, value in (("|a*gamma/delta|", abs(r.a * gamma / delta)),
                        ("|a*delta/gamma|", abs(r.a * delta / gamma))):
        if value >= 1.0:
            raise DomainError(
                f"weight regularity needs {name} < 1, got {value:.6g}"
            )
    p_a = ParamSet4.from_reduced(r.a, gamma, delta)
    p_b = ParamSet4.from_reduced(r.b, gamma, delta)
    inputs = {
        "a": r.a, "b": r.b, "gamma": gamma, "delta": delta, "q": qb.q,
        "m": m, "n": n,
    }
    flags: list[str] = []
    lhs = complex("nan")
    rhs = complex("nan")
    scale = 0.0

    if weight_min_denominator(p_a, qb, policy) < NEAR_SINGULAR_TOL:
        flags.append("NearSingular")
    else:
        cm = big_c_coeffs(m, p_b, qb)
        cn = big_c_coeffs(n, p_a, qb)

        def integrand(thetas: np.ndarray) -> np.ndarray:
            return (
                kernels.laurent_eval(cm, m, thetas)
                * kernels.laurent_eval(cn, n, thetas)
                * weight_omega_many(thetas, p_a, qb, policy)
            )

        result = periodic_integral(integrand, HALF_PERIOD, qspec)
        lhs = result.value
        scale = result.fscale
        if not result.converged:
            flags.append("NoConvergence")
        try:
            rhs = thm_1_3_rhs(r, gamma, delta, qb, m, n, policy)
        except NearSingular:
            flags.append("NearSingular")

    return VerificationReport.build(
        IdentityId.THM_1_3, inputs, lhs, rhs, tolerance, scale=scale, flags=flags
    )


def thm_1_3_rhs(
    r: ReducedParams, gamma, delta, q, m: int, n: int,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> complex:
    """Closed form for m >= n, m = n (mod 2):

        (gd)^n (1 - a q^n) (b/a;q)_j (b;q)_{(m+n)/2} (a gd)^j
        / ((1 - a) h_n(a|q) (q;q)_j (a q;q)_{(m+n)/2}),   j = (m-n)/2;

    zero for opposite parities."""
    if (m - n) % 2 != 0:
        return 0.0 + 0.0j
    qb = QBase.coerce(q)
    gd = complex(gamma) * complex(delta)
    j = (m - n) // 2
    half_sum = (m + n) // 2
    hn = h_norm(n, r.a, qb, policy)
    return (
        gd ** n
        * (1.0 - r.a * qb.q ** n)
        * qpoch_finite(r.b / r.a, qb, j)
        * qpoch_finite(r.b, qb, half_sum)
        * (r.a * gd) ** j
        / (
            (1.0 - r.a)
            * hn
            * qpoch_finite(qb.q, qb, j)
            * qpoch_finite(r.a * qb.q, qb, half_sum)
        )
    )


def check_prop_3_1(
    r: ReducedParams,
    gamma,
    delta,
    q,
    m: int,
    thetas: Sequence[float] | None = None,
    policy: TruncationPolicy = DEFAULT_POLICY,
    tolerance: float | None = None,
) -> VerificationReport:
    """Connection expansion: degree m of the b-family equals the parity-matched
    combination of a-family degrees n <= m.  The report carries the worst
    pointwise residual over the probe angles."""
    qb = QBase.coerce(q)
    gamma = complex(gamma)
    delta = complex(delta)
    tolerance = DEFAULT_TOLERANCES[IdentityId.PROP_3_1] if tolerance is None else tolerance
    if thetas is None:
        thetas = TWO_PI * np.arange(16) / 16
    thetas = np.asarray(thetas, dtype=np.float64)
    p_a = ParamSet4.from_reduced(r.a, gamma, delta)
    p_b = ParamSet4.from_reduced(r.b, gamma, delta)
    inputs = {
        "a": r.a, "b": r.b, "gamma": gamma, "delta": delta, "q": qb.q,
        "m": m, "thetas": thetas,
    }
    flags: list[str] = []
    lhs = complex("nan")
    rhs = complex("nan")
    scale = 0.0
    try:
        coeffs = connection_coeffs(m, r, gamma * delta, qb)
        lhs_vals = kernels.laurent_eval(big_c_coeffs(m, p_b, qb), m, thetas)
        rhs_vals = np.zeros_like(lhs_vals)
        for nn in range(m % 2, m + 1, 2):
            rhs_vals += coeffs[nn] * kernels.laurent_eval(
                big_c_coeffs(nn, p_a, qb), nn, thetas
            )
        worst = int(np.argmax(np.abs(lhs_vals - rhs_vals)))
        lhs = complex(lhs_vals[worst])
        rhs = complex(rhs_vals[worst])
        scale = float(np.max(np.abs(lhs_vals)))
    except (NearSingular, TruncationExceeded, DivergentSeries) as exc:
        flags.append(type(exc).__name__)
    return VerificationReport.build(
        IdentityId.PROP_3_1, inputs, lhs, rhs, tolerance, scale=scale, flags=flags
    )


def check_ultra_ortho(
    beta,
    q,
    m: int,
    n: int,
    qspec: QuadratureSpec = DEFAULT_QUADRATURE,
    policy: TruncationPolicy = DEFAULT_POLICY,
    tolerance: float | None = None,
) -> VerificationReport:
    """Half-period orthogonality of the single-parameter family under the
    (beta, beta, 1, 1) specialization of the weight; diagonal 1/h_n."""
    qb = QBase.coerce(q)
    beta = complex(beta)
    tolerance = DEFAULT_TOLERANCES[IdentityId.ULTRA_ORTHO] if tolerance is None else tolerance
    p = ParamSet4(beta, beta, 1.0, 1.0)
    inputs = {"beta": beta, "q": qb.q, "m": m, "n": n}
    flags: list[str] = []
    lhs = complex("nan")
    rhs = complex("nan")
    scale = 0.0
    if weight_min_denominator(p, qb, policy) < NEAR_SINGULAR_TOL:
        flags.append("NearSingular")
    else:

        def integrand(thetas: np.ndarray) -> np.ndarray:
            return (
                cq_ultraspherical_many(m, thetas, beta, qb)
                * cq_ultraspherical_many(n, thetas, beta, qb)
                * weight_omega_many(thetas, p, qb, policy)
            )

        result = periodic_integral(integrand, HALF_PERIOD, qspec)
        lhs = result.value
        scale = result.fscale
        if not result.converged:
            flags.append("NoConvergence")
        try:
            rhs = 1.0 / h_norm(n, beta, qb, policy) if m == n else 0.0 + 0.0j
        except NearSingular:
            flags.append("NearSingular")
    return VerificationReport.build(
        IdentityId.ULTRA_ORTHO, inputs, lhs, rhs, tolerance, scale=scale, flags=flags
    )


def check_prop_2_1_2(
    p: ParamSet4,
    q,
    n: int,
    theta: float,
    tolerance: float | None = None,
) -> VerificationReport:
    """Phi at (e^{i theta}, e^{-i theta}) equals (q;q)_n C_n(e^{i theta})."""
    qb = QBase.coerce(q)
    tolerance = DEFAULT_TOLERANCES[IdentityId.PROP_2_1_2] if tolerance is None else tolerance
    inputs = _paramset_inputs(p, qb) | {"n": n, "theta": float(theta)}
    x = complex(math.cos(theta), math.sin(theta))
    lhs = phi_eval(n, x, x.conjugate(), p, qb)
    rhs = qpoch_finite(qb.q, qb, n) * big_c_eval(n, theta, p, qb)
    return VerificationReport.build(IdentityId.PROP_2_1_2, inputs, lhs, rhs, tolerance)


def check_prop_2_1_3(
    p: ParamSet4,
    q,
    n: int = 200,
    tolerance: float | None = None,
) -> VerificationReport:
    """Growth-root diagnostic |C_n(1)|^{1/n} against max(|gamma|, |delta|)."""
    qb = QBase.coerce(q)
    tolerance = DEFAULT_TOLERANCES[IdentityId.PROP_2_1_3] if tolerance is None else tolerance
    inputs = _paramset_inputs(p, qb) | {"n": n}
    lhs = complex(growth_root(n, p, qb))
    rhs = complex(max(abs(p.gamma), abs(p.delta)))
    return VerificationReport.build(IdentityId.PROP_2_1_3, inputs, lhs, rhs, tolerance)


def check_prop_2_2(
    p: ParamSet4,
    q,
    k: int = 0,
    t_fraction: float = 0.9,
    partial_terms: int = 200,
    tail_terms: int = 100,
    tolerance: float | None = None,
) -> VerificationReport:
    """Majorant Cauchy check for the diagonal generating sum: with
    |t| = t_fraction * min(1/|gamma|, 1/|delta|), the tail of

        sum_n C_{n+k}(1) C_n(1) |(q;q)_{n+k} / (ra*rb;q)_{n+k}| |t|^n

    beyond ``partial_terms`` must stay below tolerance times the partial sum.
    The report's lhs is the tail, rhs is zero, scale is the partial sum."""
    qb = QBase.coerce(q)
    tolerance = DEFAULT_TOLERANCES[IdentityId.PROP_2_2] if tolerance is None else tolerance
    inputs = _paramset_inputs(p, qb) | {
        "k": k, "t_fraction": t_fraction, "partial_terms": partial_terms,
        "tail_terms": tail_terms,
    }
    t_abs = t_fraction * min(1.0 / abs(p.gamma), 1.0 / abs(p.delta))
    ra_rb = p.ratio_a * p.ratio_b

    c_at_one = [
        abs(big_c_eval(nn, 0.0, p, qb))
        for nn in range(partial_terms + tail_terms + k)
    ]
    partial = 0.0
    tail = 0.0
    poch_ratio = abs(
        qpoch_finite(qb.q, qb, k) / qpoch_finite(ra_rb, qb, k)
    )
    tn = 1.0
    for nn in range(partial_terms + tail_terms):
        term = c_at_one[nn + k] * c_at_one[nn] * poch_ratio * tn
        if nn < partial_terms:
            partial += term
        else:
            tail += term
        poch_ratio *= abs((1.0 - qb.q ** (nn + k + 1)) / (1.0 - ra_rb * qb.q ** (nn + k)))
        tn *= t_abs
    return VerificationReport.build(
        IdentityId.PROP_2_2, inputs, complex(tail), 0.0 + 0.0j, tolerance, scale=partial
    )


def check_prop_2_4(
    p: ParamSet4,
    q,
    n: int,
    x,
    y,
    policy: TruncationPolicy = DEFAULT_POLICY,
    tolerance: float | None = None,
) -> VerificationReport:
    """Lattice-integral representation vs. the double-sum evaluation of Phi_n."""
    qb = QBase.coerce(q)
    x = complex(x)
    y = complex(y)
    tolerance = DEFAULT_TOLERANCES[IdentityId.PROP_2_4] if tolerance is None else tolerance
    inputs = _paramset_inputs(p, qb) | {"n": n, "x": x, "y": y}
    flags: list[str] = []
    lhs = complex("nan")
    try:
        lhs = phi_qintegral_repr(n, x, y, p, qb, policy)
    except (NearSingular, TruncationExceeded) as exc:
        flags.append(type(exc).__name__)
    rhs = phi_eval(n, x, y, p, qb)
    return VerificationReport.build(
        IdentityId.PROP_2_4, inputs, lhs, rhs, tolerance, flags=flags
    )


def check_rogers_6w5(
    a,
    b,
    c,
    d,
    q,
    policy: TruncationPolicy = DEFAULT_POLICY,
    tolerance: float | None = None,
) -> VerificationReport:
    """Very-well-poised six-parameter sum at z = a q/(b c d) vs. its closed
    product form."""
    qb = QBase.coerce(q)
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    tolerance = DEFAULT_TOLERANCES[IdentityId.ROGERS_6W5] if tolerance is None else tolerance
    inputs = {"a": a, "b": b, "c": c, "d": d, "q": qb.q}
    flags: list[str] = []
    lhs = complex("nan")
    rhs = complex("nan")
    z = a * qb.q / (b * c * d)
    try:
        lhs = very_well_poised(a, [b, c, d], qb, z, policy)
    except (DivergentSeries, TruncationExceeded) as exc:
        flags.append(type(exc).__name__)
    try:
        rhs = rogers_6w5_rhs(a, b, c, d, qb, policy)
    except NearSingular:
        flags.append("NearSingular")
    return VerificationReport.build(
        IdentityId.ROGERS_6W5, inputs, lhs, rhs, tolerance, flags=flags
    )


def check_qbinomial(
    a,
    z,
    q,
    policy: TruncationPolicy = DEFAULT_POLICY,
    tolerance: float | None = None,
) -> VerificationReport:
    """Binomial series sum_n (a;q)_n z^n/(q;q)_n vs. (az;q)_oo/(z;q)_oo."""
    qb = QBase.coerce(q)
    a = complex(a)
    z = complex(z)
    tolerance = DEFAULT_TOLERANCES[IdentityId.QBINOMIAL] if tolerance is None else tolerance
    inputs = {"a": a, "z": z, "q": qb.q}
    flags: list[str] = []
    lhs = complex("nan")
    rhs = complex("nan")
    try:
        lhs = phi_series(PhiSpec((a,), (), qb, z), policy)
    except (DivergentSeries, TruncationExceeded) as exc:
        flags.append(type(exc).__name__)
    try:
        rhs = qbinomial_product_ratio(a, z, qb, policy)
    except NearSingular:
        flags.append("NearSingular")
    return VerificationReport.build(
        IdentityId.QBINOMIAL, inputs, lhs, rhs, tolerance, flags=flags
    )


# ---------------------------------------------------------------------------
# randomized sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    """Seeded randomized sweep: ``box`` entries override the identity's
    default parameter ranges (see DEFAULT_BOXES for the keys each identity
    reads); degree draws are capped by m_max / n_max."""

    seed: int
    draws: int
    box: Mapping[str, tuple[float, float]] = field(default_factory=dict)
    m_max: int = 6
    n_max: int = 6

    def __post_init__(self) -> None:
        if self.draws < 0:
            raise DomainError("draws must be >= 0")


# Default parameter boxes.  All default sweeps draw real parameters; q stays
# within (0, 0.8].  Ranges were chosen so that every hypothesis of the target
# identity holds with margin and the weight denominator moduli |alpha/delta|,
# |beta/gamma| stay below 1 - WEIGHT_MARGIN.  The latter is not only a
# conditioning concern: the full-period orthogonality genuinely fails once
# those moduli cross 1 (the closed diagonal assumes the weight denominators
# expand as geometric series on the circle), so draws are restricted to the
# sub-box where the identity holds.
WEIGHT_MARGIN = 0.08

DEFAULT_BOXES: Mapping[IdentityId, Mapping[str, tuple[float, float]]] = {
    IdentityId.THM_1_1: {
        "q": (0.1, 0.7), "ratio": (0.05, 0.6), "scale": (0.5, 1.5),
    },
    IdentityId.THM_1_2: {
        "q": (0.1, 0.7), "ratio": (0.05, 0.6), "scale": (0.5, 1.5),
        "st_fraction": (0.1, 1.0),
    },
    IdentityId.THM_1_3: {
        "q": (0.1, 0.7), "ab": (0.1, 0.6), "scale": (0.5, 1.5),
    },
    IdentityId.PROP_2_1_2: {
        "q": (0.1, 0.7), "ratio": (0.05, 0.6), "scale": (0.5, 1.5),
    },
    IdentityId.PROP_2_1_3: {
        "q": (0.1, 0.7), "ratio": (0.05, 0.6), "scale": (0.5, 1.5),
    },
    IdentityId.PROP_2_2: {
        "q": (0.1, 0.7), "ratio": (0.05, 0.6), "scale": (0.5, 0.9),
    },
    IdentityId.PROP_2_4: {
        "q": (0.1, 0.7), "ratio": (0.05, 0.5), "scale": (0.5, 1.2),
        "xy": (0.4, 1.1),
    },
    IdentityId.PROP_3_1: {
        "q": (0.1, 0.7), "ab": (0.1, 0.6), "scale": (0.5, 1.5),
    },
    IdentityId.ROGERS_6W5: {
        "q": (0.2, 0.7), "bcd": (0.3, 0.8), "z": (0.05, 0.65),
    },
    IdentityId.QBINOMIAL: {
        "q": (0.1, 0.8), "a": (-0.9, 0.9), "z": (-0.7, 0.7),
    },
    IdentityId.ULTRA_ORTHO: {
        "q": (0.1, 0.7), "beta": (0.05, 0.7),
    },
}

_MAX_REJECTS = 500


def _chain_margin(wmod: float, qmod: float) -> float:
    """min_k | w q^k - 1 | over k >= 0 for nonnegative moduli."""
    margin = 1.0
    while wmod > 1e-3:
        margin = min(margin, abs(wmod - 1.0))
        wmod *= qmod
        if qmod == 0.0:
            break
    return margin


def _weight_ok(p: ParamSet4, qmod: float) -> bool:
    """Weight denominator moduli below 1 with margin.  |w| <= 1 - margin
    keeps every factor |1 - w q^k e^{2i theta}| >= margin on the circle and
    keeps the parameters inside the identity's validity domain."""
    return (
        abs(p.alpha / p.delta) <= 1.0 - WEIGHT_MARGIN
        and abs(p.beta / p.gamma) <= 1.0 - WEIGHT_MARGIN
    )


def _uniform(rng: np.random.Generator, lo_hi: tuple[float, float]) -> float:
    lo, hi = lo_hi
    return float(rng.uniform(lo, hi))


def _draw_paramset(rng, box, qval) -> ParamSet4:
    for _ in range(_MAX_REJECTS):
        gamma = _uniform(rng, box["scale"])
        delta = _uniform(rng, box["scale"])
        ra = _uniform(rng, box["ratio"])
        rb = _uniform(rng, box["ratio"])
        p = ParamSet4(ra * gamma, rb * delta, gamma, delta)
        if _weight_ok(p, qval):
            return p
    raise RuntimeError("could not draw a well-conditioned parameter set")


def draw_params(identity_id: IdentityId, rng: np.random.Generator, spec: SweepSpec) -> dict:
    """One deterministic parameter draw for the given identity; rejection
    sampling keeps weight denominators clear of the unit circle."""
    identity_id = IdentityId(identity_id)
    box = dict(DEFAULT_BOXES[identity_id]) | dict(spec.box)
    qval = _uniform(rng, box["q"])

    if identity_id == IdentityId.THM_1_1:
        p = _draw_paramset(rng, box, qval)
        m = int(rng.integers(0, spec.m_max + 1))
        n = int(rng.integers(0, spec.n_max + 1))
        return {"p": p, "q": qval, "m": m, "n": n}

    if identity_id == IdentityId.THM_1_2:
        for _ in range(_MAX_REJECTS):
            p = _draw_paramset(rng, box, qval)
            biggest = max(abs(p.gamma), abs(p.delta))
            s = _uniform(rng, box["st_fraction"]) * 0.7 / biggest
            t = _uniform(rng, box["st_fraction"]) * 0.7 / biggest
            if max(_thm_1_2_hypothesis(p, s, t, QBase.coerce(qval)).values()) <= 0.7:
                return {"p": p, "s": s, "t": t, "q": qval}
        raise RuntimeError("could not draw an admissible seven-parameter set")

    if identity_id == IdentityId.THM_1_3:
        for _ in range(_MAX_REJECTS):
            a = _uniform(rng, box["ab"])
            b = _uniform(rng, box["ab"])
            gamma = _uniform(rng, box["scale"])
            delta = _uniform(rng, box["scale"])
            if max(abs(a * gamma / delta), abs(a * delta / gamma)) >= 1.0 - WEIGHT_MARGIN:
                continue
            p_a = ParamSet4.from_reduced(a, gamma, delta)
            if not _weight_ok(p_a, qval):
                continue
            m = int(rng.integers(0, spec.m_max + 1))
            n = int(rng.integers(0, spec.n_max + 1))
            if (m - n) % 2 == 0 and m < n:
                m, n = n, m
            return {
                "r": ReducedParams(a, b), "gamma": gamma, "delta": delta,
                "q": qval, "m": m, "n": n,
            }
        raise RuntimeError("could not draw an admissible reduced parameter set")

    if identity_id == IdentityId.PROP_3_1:
        a = _uniform(rng, (max(box["ab"][0], 0.05), box["ab"][1]))
        b = _uniform(rng, box["ab"])
        gamma = _uniform(rng, box["scale"])
        delta = _uniform(rng, box["scale"])
        m = int(rng.integers(0, spec.m_max + 1))
        return {
            "r": ReducedParams(a, b), "gamma": gamma, "delta": delta,
            "q": qval, "m": m,
        }

    if identity_id == IdentityId.PROP_2_1_2:
        p = _draw_paramset(rng, {"scale": box["scale"], "ratio": box["ratio"]}, qval)
        n = int(rng.integers(0, spec.n_max + 1))
        theta = float(rng.uniform(0.0, TWO_PI))
        return {"p": p, "q": qval, "n": n, "theta": theta}

    if identity_id == IdentityId.PROP_2_1_3:
        p = _draw_paramset(rng, {"scale": box["scale"], "ratio": box["ratio"]}, qval)
        return {"p": p, "q": qval}

    if identity_id == IdentityId.PROP_2_2:
        p = _draw_paramset(rng, {"scale": box["scale"], "ratio": box["ratio"]}, qval)
        k = int(rng.integers(0, 4))
        return {"p": p, "q": qval, "k": k}

    if identity_id == IdentityId.PROP_2_4:
        for _ in range(_MAX_REJECTS):
            p = _draw_paramset(rng, {"scale": box["scale"], "ratio": box["ratio"]}, qval)
            x = _uniform(rng, box["xy"])
            y = _uniform(rng, box["xy"])
            gx_over_dy = abs(p.gamma * x / (p.delta * y))
            # endpoints must be distinct and the quotient clear of the q-chain
            if not 1.0 / 3.0 <= gx_over_dy <= 3.0:
                continue
            if (
                _chain_margin(gx_over_dy, qval) < WEIGHT_MARGIN
                or _chain_margin(1.0 / gx_over_dy, qval) < WEIGHT_MARGIN
            ):
                continue
            n = int(rng.integers(0, spec.n_max + 1))
            return {"p": p, "q": qval, "n": n, "x": x, "y": y}
        raise RuntimeError("could not draw an admissible lattice configuration")

    if identity_id == IdentityId.ROGERS_6W5:
        for _ in range(_MAX_REJECTS):
            b = _uniform(rng, box["bcd"])
            c = _uniform(rng, box["bcd"])
            d = _uniform(rng, box["bcd"])
            z = _uniform(rng, box["z"])
            a = z * b * c * d / qval
            if abs(a) >= 0.9:
                continue
            aq = a * qval
            if any(
                _chain_margin(abs(w), qval) < WEIGHT_MARGIN
                for w in (aq / b, aq / c, aq / d, z)
            ):
                continue
            return {"a": a, "b": b, "c": c, "d": d, "q": qval}
        raise RuntimeError("could not draw an admissible six-parameter set")

    if identity_id == IdentityId.QBINOMIAL:
        a = _uniform(rng, box["a"])
        z = _uniform(rng, box["z"])
        return {"a": a, "z": z, "q": qval}

    if identity_id == IdentityId.ULTRA_ORTHO:
        beta = _uniform(rng, box["beta"])
        m = int(rng.integers(0, spec.m_max + 1))
        n = int(rng.integers(0, spec.n_max + 1))
        return {"beta": beta, "q": qval, "m": m, "n": n}

    raise DomainError(f"no drawer for identity {identity_id}")


_CHECKERS = {
    IdentityId.THM_1_1: check_thm_1_1,
    IdentityId.THM_1_2: check_thm_1_2,
    IdentityId.THM_1_3: check_thm_1_3,
    IdentityId.PROP_2_1_2: check_prop_2_1_2,
    IdentityId.PROP_2_1_3: check_prop_2_1_3,
    IdentityId.PROP_2_2: check_prop_2_2,
    IdentityId.PROP_2_4: check_prop_2_4,
    IdentityId.PROP_3_1: check_prop_3_1,
    IdentityId.ROGERS_6W5: check_rogers_6w5,
    IdentityId.QBINOMIAL: check_qbinomial,
    IdentityId.ULTRA_ORTHO: check_ultra_ortho,
}


def run_sweep(
    identity_id: IdentityId | str,
    spec: SweepSpec,
    tolerance: float | None = None,
) -> list[VerificationReport]:
    """Run ``spec.draws`` seeded checks of one identity.  Deterministic given
    the seed; individual failures and flags land in the reports, the sweep
    itself never aborts mid-run."""
    identity_id = IdentityId(identity_id)
    rng = np.random.default_rng(spec.seed)
    checker = _CHECKERS[identity_id]
    reports = []
    for _ in range(spec.draws):
        params = draw_params(identity_id, rng, spec)
        reports.append(checker(**params, tolerance=tolerance))
    return reports
