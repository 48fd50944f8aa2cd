"""Scalar special functions over complex arguments.

Gamma plus the one- and two-parameter Mittag-Leffler functions with a
regime-switched evaluation strategy: direct power series in float64 while
it is safe, extended-precision series (mpmath) where alternating terms
cancel, and the large-argument expansion (exponential or pure algebraic
branch, selected by the argument sector of the eigenvalue) beyond that.

All functions are pure; safe to call concurrently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from .errors import NonConvergenceError, PoleError, RegimeError

# Evaluation regime boundaries and budgets.
SERIES_RADIUS = 5.0        # plain float64 series inside this |z|
ASYMPTOTIC_RADIUS = 30.0   # large-argument expansion outside this |z|
SERIES_RTOL = 1e-16        # stop once the next term drops below rtol*|sum|
MAX_FLOAT_TERMS = 200_000
MAX_MP_TERMS = 50_000
MAX_MP_DIGITS = 400
DEFAULT_ASYMPTOTIC_TERMS = 5
CROSSOVER_RTOL = 1e-6      # accuracy promise in the crossover band

EXPONENTIAL_REGIME = "exponential-regime"
ALGEBRAIC_REGIME = "algebraic-regime"

# Lanczos coefficients, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def _is_nonpositive_int(x: float, tol: float = 1e-12) -> bool:
    return x <= 0.5 and abs(x - round(x)) < tol


def _sinpi(x: float) -> float:
    # sin(pi*x) with argument reduction; plain math.sin(pi*x) loses
    # accuracy near integer x once |x| grows.
    r = math.fmod(x, 2.0)
    if r < -1.0:
        r += 2.0
    elif r > 1.0:
        r -= 2.0
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return math.sin(math.pi * r)


def gamma(x: float) -> float:
    """Gamma function of a real argument (Lanczos approximation).

    Raises PoleError at zero and the negative integers.
    """
    x = float(x)
    if _is_nonpositive_int(x):
        raise PoleError(f"gamma pole at x={x!r}")
    if x == round(x) and 0 < x <= 171:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        # reflection: gamma(x) = pi / (sin(pi x) * gamma(1 - x))
        return math.pi / (_sinpi(x) * gamma(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS_C[0]
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_TWO_PI * t ** (z + 0.5) * math.exp(-t) * acc


def gamma_reciprocal(x: float) -> float:
    """1/Gamma(x), with exact zeros at the poles of Gamma."""
    x = float(x)
    if _is_nonpositive_int(x):
        return 0.0
    if x >= 0.5:
        return 1.0 / gamma(x)
    # 1/gamma(x) = sin(pi x) * gamma(1 - x) / pi; go through lgamma so
    # deep negative x does not overflow prematurely.
    lg = math.lgamma(1.0 - x)
    s = _sinpi(x)
    if lg > 700.0:
        # |1/gamma| may still overflow; that is the honest float answer
        return math.copysign(math.inf, s) if lg > 709.0 else s * math.exp(lg) / math.pi
    return s * math.exp(lg) / math.pi


@dataclass(frozen=True)
class MLParams:
    """Order pair for the two-parameter Mittag-Leffler function, plus the
    truncation depth used when the large-argument expansion is requested
    explicitly."""

    alpha: float
    beta: float = 1.0
    asymptotic_terms: int = DEFAULT_ASYMPTOTIC_TERMS

    def __post_init__(self):
        if not 0.0 < self.alpha < 2.0:
            raise ValueError(f"alpha must lie in (0, 2), got {self.alpha}")
        if self.beta <= 0.0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if self.asymptotic_terms < 1:
            raise ValueError("asymptotic_terms must be >= 1")


@dataclass(frozen=True)
class ArgSector:
    """Classification of an eigenvalue's complex argument against the
    sector threshold separating exponential from algebraic asymptotics."""

    theta: float
    classification: str

    @property
    def exponential(self) -> bool:
        return self.classification == EXPONENTIAL_REGIME


def sector_threshold(alpha: float) -> float:
    """Midpoint of the admissible sector-boundary interval
    (pi*alpha/2, min(pi, pi*alpha))."""
    return 0.5 * (math.pi * alpha / 2.0 + min(math.pi, math.pi * alpha))


def classify_arg_sector(alpha: float, lam: complex) -> ArgSector:
    """Exponential regime iff |arg(lam)| <= theta(alpha)."""
    if lam == 0:
        raise ValueError("cannot classify the zero eigenvalue")
    theta = sector_threshold(alpha)
    phase = abs(cmath.phase(complex(lam)))
    kind = EXPONENTIAL_REGIME if phase <= theta else ALGEBRAIC_REGIME
    return ArgSector(theta=theta, classification=kind)


def _cexp(w: complex) -> complex:
    """exp(w) that overflows to a signed complex infinity instead of raising."""
    if w.real > 709.0:
        c, s = math.cos(w.imag), math.sin(w.imag)
        re = math.copysign(math.inf, c) if abs(c) > 1e-300 else 0.0
        im = math.copysign(math.inf, s) if abs(s) > 1e-300 else 0.0
        return complex(re, im)
    return cmath.exp(w)


def _series_float(alpha: float, beta: float, z: complex):
    """Direct series in float64 with compensated summation.

    Returns (value, peak_term_magnitude, converged). The term recurrence
    goes through lgamma ratios so coefficients never overflow on their own.
    """
    term = complex(1.0 / gamma(beta))
    acc = term
    comp = 0.0 + 0.0j  # Kahan compensation
    peak = abs(term)
    lg_prev = math.lgamma(beta)
    for k in range(MAX_FLOAT_TERMS):
        lg_next = math.lgamma(alpha * (k + 1) + beta)
        term = term * z * math.exp(lg_prev - lg_next)
        lg_prev = lg_next
        y = term - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
        mag = abs(term)
        if not math.isfinite(mag):
            return acc, math.inf, False
        if mag > peak:
            peak = mag
        elif mag < SERIES_RTOL * abs(acc):
            return acc, peak, True
    return acc, peak, False


def _series_mp(alpha: float, beta: float, z: complex, digits: int):
    """Series at elevated precision; returns a complex or None when the
    term budget runs out before convergence."""
    with mpmath.workdps(digits):
        zz = mpmath.mpc(z)
        # gamma arguments must be formed in mp arithmetic: float64 products
        # alpha*k carry ~1e-16 relative error, fatal on terms of size 1e80
        a = mpmath.mpf(alpha)
        b = mpmath.mpf(beta)
        g_prev = mpmath.gamma(b)
        acc = mpmath.mpc(1) / g_prev
        term = acc
        peak = abs(acc)
        cutoff = mpmath.mpf(10) ** (-(digits - 5))
        for k in range(MAX_MP_TERMS):
            g_next = mpmath.gamma(a * (k + 1) + b)
            term = term * zz * (g_prev / g_next)
            g_prev = g_next
            acc += term
            mag = abs(term)
            if mag > peak:
                peak = mag
            elif mag < cutoff * abs(acc):
                return complex(acc)
        return None


def _asymptotic_terms(alpha: float, beta: float, z: complex, m: int):
    """The m algebraic correction terms of the large-argument expansion."""
    out = []
    zk = complex(1.0)
    for k in range(1, m + 1):
        zk /= z
        out.append(zk * gamma_reciprocal(beta - alpha * k))
    return out


def _hidden_exponential_bound(alpha: float, z: complex) -> float:
    """Magnitude of the exponential contribution omitted by the pure
    algebraic branch; zero once |arg z| exceeds pi*alpha, where no
    exponential term exists at all."""
    phase = abs(cmath.phase(z))
    if phase > math.pi * alpha:
        return 0.0
    w = cmath.exp(cmath.log(z) / alpha)
    if w.real > 700.0:
        return math.inf
    return math.exp(w.real) / alpha


def _asymptotic(alpha: float, beta: float, z: complex, m: int | None = None):
    """Large-argument expansion with the branch picked by the argument
    sector. Returns (value, absolute error estimate). With m=None the
    algebraic part is truncated adaptively at its smallest term."""
    sector = classify_arg_sector(alpha, z)
    if m is None:
        # optimal truncation: the gamma reciprocals oscillate through
        # poles, so scan a whole budget of terms for the cheapest cut
        # instead of stopping at the first magnitude rise
        raw = _asymptotic_terms(alpha, beta, z, 102)
        while raw and not cmath.isfinite(raw[-1]):
            raw.pop()
        mags = [abs(t) for t in raw]
        # error after summing the first `cut` terms ~ the next two omitted
        # magnitudes (two, so a single pole-killed zero cannot fake it)
        best_m, est = 0, math.inf
        for cut in range(0, max(len(raw) - 1, 1)):
            e = mags[cut] + mags[cut + 1] if cut + 1 < len(mags) else math.inf
            if e < est:
                best_m, est = cut, e
        terms = raw[:best_m]
    else:
        terms = _asymptotic_terms(alpha, beta, z, m)
        est = abs(z) ** (-(m + 1)) * abs(gamma_reciprocal(beta - alpha * (m + 1)))
    alg = -sum(terms) if terms else 0.0 + 0.0j
    if sector.exponential:
        lz = cmath.log(z)
        w = cmath.exp(lz / alpha)  # z**(1/alpha), principal branch
        # fold the z**((1-beta)/alpha)/alpha prefactor into the exponent so
        # an overflowing exp never meets a finite factor (0*inf -> nan)
        value = _cexp(w + ((1.0 - beta) / alpha) * lz - math.log(alpha)) + alg
    else:
        value = alg
        est += _hidden_exponential_bound(alpha, z)
    return value, est


def _cancellation_digits(alpha: float, beta: float, z: complex, coarse: int = 64):
    """Decimal digits lost to cancellation in the series: the gap between
    the largest term and the result magnitude (coarse scan via lgamma)."""
    az = abs(z)
    if az <= 1.0:
        return 0.0, 200
    ln_az = math.log(az)
    # terms peak near alpha*k ~ az**(1/alpha); scan log-spaced k
    peak_ln = -math.lgamma(beta)
    k_hint = az ** (1.0 / alpha) / alpha if ln_az / alpha < 250 else 1e100
    k_max = min(int(4 * k_hint) + 64, 10**9)
    k = 1
    last_k = 1
    while k <= k_max:
        v = k * ln_az - math.lgamma(alpha * k + beta)
        peak_ln = max(peak_ln, v)
        last_k = k
        k = max(k + 1, int(k * 1.25))
    # magnitude of the true value, from the expansion branches
    sector = classify_arg_sector(alpha, z)
    if sector.exponential and ln_az / alpha < 250:
        w = cmath.exp(cmath.log(z) / alpha)
        ln_val = w.real - math.log(alpha)
        ln_val = max(ln_val, -ln_az - 1.0)
    else:
        ln_val = -ln_az  # leading algebraic term ~ 1/|z|
    lost = max(0.0, (peak_ln - ln_val) / math.log(10.0))
    return lost, last_k


@lru_cache(maxsize=100_000)
def _ml_eval(alpha: float, beta: float, z: complex) -> complex:
    if z == 0:
        return complex(1.0 / gamma(beta))
    az = abs(z)
    if az <= SERIES_RADIUS:
        value, peak, converged = _series_float(alpha, beta, z)
        # compensated summation fixes rounding, not cancellation between
        # large alternating terms; escalate when digits were burned
        if converged and math.isfinite(peak) and peak <= 1e2 * abs(value):
            return value
        return _ml_hard(alpha, beta, z, need_rtol=1e-12)
    if az >= ASYMPTOTIC_RADIUS:
        value, est = _asymptotic(alpha, beta, z)
        if not cmath.isfinite(value):
            return value
        if abs(value) > 0 and est <= 1e-8 * abs(value):
            return value
        return _ml_hard(alpha, beta, z, need_rtol=1e-8)
    return _ml_hard(alpha, beta, z, need_rtol=CROSSOVER_RTOL)


def _ml_hard(alpha: float, beta: float, z: complex, need_rtol: float) -> complex:
    """Crossover-band evaluator: extended-precision series when the digit
    budget allows, otherwise the adaptively truncated expansion."""
    lost, k_needed = _cancellation_digits(alpha, beta, z)
    if lost + 25 <= MAX_MP_DIGITS and k_needed <= MAX_MP_TERMS:
        value = _series_mp(alpha, beta, z, digits=int(lost) + 25)
        if value is not None:
            return value
    value, est = _asymptotic(alpha, beta, z)
    if not cmath.isfinite(value):
        return value
    if abs(value) > 0 and est <= need_rtol * abs(value):
        return value
    raise NonConvergenceError(
        f"E_({alpha},{beta})({z!r}): no regime reaches {need_rtol:g} "
        f"(cancellation ~{lost:.0f} digits, expansion estimate {est:g})"
    )


def ml_one(alpha: float, z: complex) -> complex:
    """One-parameter Mittag-Leffler function E_alpha(z)."""
    return ml_two(alpha, 1.0, z)


def ml_two(alpha: float, beta: float, z: complex) -> complex:
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z).

    alpha in (0, 2] (1 and 2 reduce to exp / hyperbolic identities),
    beta > 0. Raises NonConvergenceError when no evaluation regime can
    certify the requested tolerance at this point.
    """
    if not 0.0 < alpha <= 2.0:
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    if beta <= 0.0:
        raise ValueError(f"beta must be positive, got {beta}")
    return _ml_eval(float(alpha), float(beta), complex(z))


def ml_asymptotic(params: MLParams, lam: complex, t: float, m: int | None = None) -> complex:
    """m-term large-argument expansion of E_{alpha,beta}(lam * t**alpha).

    Exponential branch when |arg(lam)| <= theta(alpha), pure algebraic
    branch otherwise. Raises RegimeError when |lam|*t**alpha is too small
    for the expansion to mean anything.
    """
    lam = complex(lam)
    if lam == 0:
        raise RegimeError("asymptotics undefined for lam = 0")
    if m is None:
        m = params.asymptotic_terms
    if m < 1:
        raise ValueError("m must be >= 1")
    z = lam * t**params.alpha
    if abs(z) <= 1.0:
        raise RegimeError(
            f"|lam * t**alpha| = {abs(z):.4g} <= 1: expansion not valid"
        )
    value, _ = _asymptotic(params.alpha, params.beta, z, m=m)
    return value
