"""Scalar special functions used by the zero-counting constants.

Zeta values are computed by Euler--Maclaurin summation with Bernoulli
corrections through B_12 and an explicit remainder bound; the complex
log-gamma uses upward recursion followed by the Stirling series.  The
elementary pieces (``g_bound``, ``big_g``, ``big_f``, ``boundary_weight``)
are the closed forms the error constants are assembled from.

All array-capable functions accept scalars or numpy arrays and return the
same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, NonConvergence, PoleError

__all__ = [
    "EvalTolerance",
    "DEFAULT_TOL",
    "as_complex_point",
    "zeta_real",
    "hurwitz_zeta",
    "log_gamma_complex",
    "StirlingSplit",
    "stirling_im_loggamma",
    "g_bound",
    "big_g",
    "big_f",
    "boundary_weight",
    "WEIGHT_ARCS",
]

_EPS = np.finfo(float).eps

# B_2, B_4, ..., B_18
_BERNOULLI_EVEN = [
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
]

# Euler-Maclaurin uses B_2 .. B_12; the B_14 term bounds the remainder.
_EM_DEPTH = 6
_EM_COEFFS = [
    float(_BERNOULLI_EVEN[j - 1] / math.factorial(2 * j)) for j in range(1, _EM_DEPTH + 2)
]

# Stirling series coefficients B_2j / (2j (2j-1)), j = 1..8.
_STIRLING_COEFFS = [
    float(_BERNOULLI_EVEN[j - 1] / (2 * j * (2 * j - 1))) for j in range(1, 9)
]
_STIRLING_RADIUS = 15.0
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class EvalTolerance:
    """Absolute tolerance and term budget for series evaluation."""

    abs_tol: float = 1e-13
    max_terms: int = 100_000

    def __post_init__(self):
        if not (self.abs_tol >= 10 * _EPS):
            raise DomainError(f"abs_tol must be >= {10 * _EPS:.3g}, got {self.abs_tol!r}")
        if not (1 <= self.max_terms <= 10**6):
            raise DomainError(f"max_terms must lie in [1, 10**6], got {self.max_terms!r}")


DEFAULT_TOL = EvalTolerance()


def as_complex_point(s) -> complex:
    """Coerce to a finite Python complex, rejecting NaN and infinities."""
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite complex point {z!r}")
    return z


def _em_remainder_bound(s: np.ndarray, x: float) -> float:
    """Bound on the Euler-Maclaurin remainder after the B_12 term at cutoff x.

    |R| <= |s(s+1)...(s+12) B_14 / 14!| x^(-sigma-13) |s+13| / (sigma+13).
    """
    sigma = s.real
    poch = np.ones_like(s)
    for m in range(2 * _EM_DEPTH + 1):
        poch = poch * (s + m)
    first_omitted = np.abs(poch * _EM_COEFFS[_EM_DEPTH]) * x ** (-sigma - 2 * _EM_DEPTH - 1)
    factor = np.abs(s + 2 * _EM_DEPTH + 1) / (sigma + 2 * _EM_DEPTH + 1)
    return float(np.max(first_omitted * factor))


def _choose_cutoff(s: np.ndarray, a: float, tol: EvalTolerance) -> int:
    # Start where the asymptotic series is already in its convergent regime.
    n = max(4, int(np.max(np.abs(s))) // 4)
    while _em_remainder_bound(s, n + a) > tol.abs_tol:
        if n >= tol.max_terms:
            raise NonConvergence(
                f"Euler-Maclaurin tail bound not met within {tol.max_terms} terms"
            )
        n = min(tol.max_terms, int(n * 1.25) + 1)
    return n


def _hurwitz_em(s: np.ndarray, a: float, tol: EvalTolerance, cutoff: int | None = None) -> np.ndarray:
    n_cut = _choose_cutoff(s, a, tol) if cutoff is None else int(cutoff)
    # Direct part, accumulated in blocks to bound memory for long sample arrays.
    total = np.zeros_like(s)
    base = np.arange(n_cut, dtype=float) + a
    log_base = np.log(base)
    for start in range(0, s.size, 512):
        chunk = s[start:start + 512]
        total[start:start + 512] = np.exp(-np.outer(chunk, log_base)).sum(axis=1)

    x = n_cut + a
    log_x = math.log(x)
    x_pow = np.exp(-s * log_x)  # x^(-s)
    total += x * x_pow / (s - 1.0) + 0.5 * x_pow

    poch = s.copy()  # s (s+1) ... (s+2j-2)
    term_pow = x_pow / x  # x^(-s-1)
    for j in range(1, _EM_DEPTH + 1):
        total += _EM_COEFFS[j - 1] * poch * term_pow
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
        term_pow = term_pow / (x * x)
    return total


def zeta_real(sigma: float, tol: EvalTolerance = DEFAULT_TOL) -> float:
    """Riemann zeta at real ``sigma > 1``, absolute error at most ``tol.abs_tol``."""
    sigma = float(sigma)
    if not math.isfinite(sigma) or sigma <= 1.0 + 1e-6:
        raise DomainError(f"zeta_real requires sigma > 1 + 1e-6, got {sigma!r}")
    s = np.array([complex(sigma)])
    return float(_hurwitz_em(s, 1.0, tol)[0].real)


def hurwitz_zeta(s, a: float, tol: EvalTolerance = DEFAULT_TOL, cutoff: int | None = None):
    """Hurwitz zeta  sum_{n>=0} (n+a)^(-s)  for ``0 < a <= 1``.

    Continued to ``Re s > -1`` (the region used for counting rectangles) by
    Euler-Maclaurin summation.  ``s`` may be a scalar or an array.  The
    number of directly summed terms is chosen from the remainder bound
    unless ``cutoff`` forces it.
    """
    if not (0.0 < a <= 1.0):
        raise DomainError(f"Hurwitz parameter must lie in (0, 1], got {a!r}")
    scalar = np.ndim(s) == 0
    arr = np.atleast_1d(np.asarray(s, dtype=complex)).ravel()
    if not np.all(np.isfinite(arr)):
        raise DomainError("non-finite argument to hurwitz_zeta")
    if np.any(arr == 1.0):
        raise PoleError("hurwitz_zeta has a pole at s = 1")
    out = _hurwitz_em(arr, float(a), tol, cutoff)
    if scalar:
        return complex(out[0])
    return out.reshape(np.shape(s))


def log_gamma_complex(z):
    """Principal branch of log Gamma(z).

    The argument is shifted upward until ``|z + n| >= 15`` with positive real
    part, the Stirling series (through B_16) is applied there, and the shift
    is undone with principal logarithms, which reproduces the principal
    branch.  Accepts scalars or arrays.
    """
    scalar = np.ndim(z) == 0
    zz = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    if not np.all(np.isfinite(zz)):
        raise DomainError("non-finite argument to log_gamma_complex")
    on_pole = (zz.imag == 0) & (zz.real <= 0) & (zz.real == np.round(zz.real))
    if np.any(on_pole):
        raise PoleError(f"log Gamma has poles at non-positive integers: {zz[on_pole][0]}")

    # shift count per element
    need_re = np.maximum(0.0, np.ceil(1.0 - zz.real))
    need_abs = np.ceil(np.sqrt(np.maximum(0.0, _STIRLING_RADIUS**2 - zz.imag**2)) - zz.real)
    shift = np.maximum(need_re, np.maximum(need_abs, 0.0)).astype(int)

    correction = np.zeros_like(zz)
    for k in range(int(shift.max(initial=0))):
        active = shift > k
        correction[active] += np.log(zz[active] + k)
    w = zz + shift

    inv = 1.0 / w
    inv2 = inv * inv
    series = np.zeros_like(w)
    for c in reversed(_STIRLING_COEFFS):
        series = series * inv2 + c
    series = series * inv
    out = (w - 0.5) * np.log(w) - w + _HALF_LOG_2PI + series - correction
    if scalar:
        return complex(out[0])
    return out.reshape(np.shape(z))


@dataclass(frozen=True)
class StirlingSplit:
    """Im log Gamma(1/4 + a/2 + iT/2) split into main part and g-part.

    ``explicit`` holds the two closed-form terms of the g-part and
    ``remainder`` the Stirling error term, whose magnitude never exceeds
    ``remainder_bound``.
    """

    value: float
    main: float
    explicit: float
    remainder: float
    remainder_bound: float

    @property
    def g_part(self) -> float:
        return self.explicit + self.remainder

    @property
    def theta(self) -> float:
        return self.remainder / self.remainder_bound


def _check_parity(a: int):
    if a not in (0, 1):
        raise DomainError(f"parity must be 0 or 1, got {a!r}")


def stirling_im_loggamma(a: int, T: float) -> StirlingSplit:
    """Decompose Im log Gamma(1/4 + a/2 + iT/2) for ``T >= 1``."""
    _check_parity(a)
    if T < 1:
        raise DomainError(f"T must be >= 1, got {T!r}")
    value = log_gamma_complex(complex(0.25 + 0.5 * a, 0.5 * T)).imag
    main = 0.5 * T * math.log(T / (2.0 * math.e))
    b = 2 * a + 1
    explicit = 0.25 * T * math.log1p(b * b / (4.0 * T * T)) + 0.25 * (2 * a - 1) * math.atan(2.0 * T / b)
    remainder = value - main - explicit
    return StirlingSplit(
        value=value,
        main=main,
        explicit=explicit,
        remainder=remainder,
        remainder_bound=1.0 / (3.0 * abs(complex(0.5 + a, T))),
    )


def g_bound(a: int, T: float) -> float:
    """Worst-case value of the g-part of Im log Gamma(1/4 + a/2 + iT/2).

    For ``a = 1`` this is the upper value with theta = +1; for ``a = 0`` the
    triangle-inequality bound on its magnitude.
    """
    _check_parity(a)
    if not T >= 1:
        raise DomainError(f"T must be >= 1, got {T!r}")
    b = 2 * a + 1
    smooth = 0.25 * T * math.log1p(b * b / (4.0 * T * T)) + 0.25 * (2 * a - 1) * math.atan(2.0 * T / b)
    theta_term = 1.0 / (3.0 * abs(complex(0.5 + a, T)))
    if a == 1:
        return smooth + theta_term
    return abs(smooth) + theta_term


def big_g(a: int, delta: float, t: float) -> float:
    """Bound on |Delta_+ arg Gamma((s+a)/2) + Delta_- arg Gamma((s+a)/2)|.

    The Stirling error terms enter with their worst-case sign.
    """
    _check_parity(a)
    if not (t >= 1 and 0 <= delta <= 3):
        raise DomainError(f"big_g needs t >= 1 and 0 <= delta <= 3, got t={t!r}, delta={delta!r}")
    h = 0.5 + a  # a + 1/2
    c = a - 0.5
    arctans = (
        0.5 * (c + delta) * math.atan((h + delta) / t)
        + 0.5 * (c - delta) * math.atan((h - delta) / t)
        - c * math.atan(h / t)
    )
    ratio = (2 * delta**2 * (t * t - h * h) + delta**4) / (t * t + h * h) ** 2
    log_term = -0.25 * t * math.log1p(ratio)
    theta_terms = (
        1.0 / abs(complex(h + delta, t))
        + 1.0 / abs(complex(h - delta, t))
        + 2.0 / abs(complex(h, t))
    ) / 3.0
    return arctans + log_term + theta_terms


def big_f(delta: float, t: float) -> float:
    """Argument-change bound contributed by the factor s(s-1) of xi_K."""
    if not (t >= 1 and 0 <= delta < 3.5):
        raise DomainError(f"big_f needs t >= 1 and 0 <= delta < 3.5, got t={t!r}, delta={delta!r}")
    return (
        2.0 * math.atan(1.0 / (2.0 * t))
        - math.atan((0.5 + delta) / t)
        - math.atan((0.5 - delta) / t)
    )


# valid phi-arc for each weight kind
WEIGHT_ARCS = {
    "w": (0.5 * math.pi, math.pi),
    "w_star": (math.pi, 1.5 * math.pi),
    "w_tilde": (0.0, 0.5 * math.pi),
    "w_tilde_star": (-0.5 * math.pi, 0.0),
}


def boundary_weight(kind: str, T: float, phi, eta: float, r: float):
    """Weight functions w, w*, w~ and w~* on the Jensen circle.

    ``phi`` may be an array (quadrature nodes).  The starred kinds drop the
    sin(phi)/T term; the tilde kinds replace the offset 2 + eta by eta.
    """
    if kind not in WEIGHT_ARCS:
        raise DomainError(f"unknown weight kind {kind!r}")
    if not (T >= 1 and 0 < eta <= 0.5 and r > 1):
        raise DomainError(f"bad weight parameters T={T!r}, eta={eta!r}, r={r!r}")
    radius = r * (0.5 + eta)
    offset = eta if kind.startswith("w_tilde") else 2.0 + eta
    phi = np.asarray(phi, dtype=float)
    radicand = 1.0 + (radius**2 + offset**2 + 2.0 * radius * offset * np.cos(phi)) / (T * T)
    if not kind.endswith("star"):
        radicand = radicand + 2.0 * radius * np.sin(phi) / T
    if np.any(radicand <= 0):
        raise DomainError(f"non-positive radicand in {kind} at T={T!r}")
    out = np.sqrt(radicand)
    return float(out) if out.ndim == 0 else out
