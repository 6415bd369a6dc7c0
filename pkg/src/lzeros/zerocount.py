"""Counting zeros of Dirichlet L-functions and quadratic Dedekind zeta-functions.

Zeros in the box 0 < Re s < 1, |Im s| <= T are counted as the winding of
the completed function (which is entire and has no trivial zeros) around
the rectangle with corners sigma1 +- iT, 1 - sigma1 +- iT.  The functional
equation makes the argument change over the left half a mirror image of
the change over the right half, so only the path

    1/2 - iT  ->  sigma1 - iT  ->  sigma1 + iT  ->  1/2 + iT

is sampled, and the total winding is twice its argument change.  The
argument change along this open path is a multiple of pi only when the
evaluation is accurate, which gives a built-in integrality residual.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Union

import numpy as np

from .characters import DirichletCharacter, kronecker_character
from .constants import (
    TheoremOneConstants,
    TheoremTwoConstants,
    headline_theorem_one,
    headline_theorem_two,
)
from .errors import BoundaryZero, DomainError, NonConvergence
from .special import DEFAULT_TOL, EvalTolerance, hurwitz_zeta, log_gamma_complex

COUNT_SIGMA1 = 2.0
PHASE_STEP_LIMIT = 0.5 * math.pi
RESIDUAL_LIMIT = 0.05
PERTURB_STEP = 1e-3
MAX_PERTURBATIONS = 5
_INITIAL_SPACING = 0.1
_MIN_SPACING = 1e-9
_MAX_REFINE_ROUNDS = 60
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QuadraticField:
    """Q(sqrt d) for a fundamental discriminant d, or Q itself when d = 1."""

    d: int

    def __post_init__(self):
        if self.d != 1:
            kronecker_character(self.d)  # validates

    @property
    def degree(self) -> int:
        return 1 if self.d == 1 else 2

    @property
    def abs_disc(self) -> int:
        return abs(self.d)

    @property
    def signature(self) -> tuple[int, int]:
        """(r1, r2): numbers of real and complex-pair embeddings."""
        if self.d == 1:
            return 1, 0
        return (2, 0) if self.d > 0 else (0, 1)

    @property
    def character(self) -> DirichletCharacter | None:
        return None if self.d == 1 else kronecker_character(self.d)

    def describe(self) -> dict:
        return {"field": "Q" if self.d == 1 else f"Q(sqrt({self.d}))", "disc": self.d, "degree": self.degree}


Subject = Union[DirichletCharacter, QuadraticField]


def _as_subject(subject) -> Subject:
    if isinstance(subject, (DirichletCharacter, QuadraticField)):
        return subject
    if isinstance(subject, int) and not isinstance(subject, bool):
        return QuadraticField(subject)
    raise DomainError(f"unsupported subject {subject!r}")


@dataclass(frozen=True)
class Rectangle:
    """Counting box with corners sigma1 +- iT and 1 - sigma1 +- iT."""

    T: float
    sigma1: float = COUNT_SIGMA1

    def __post_init__(self):
        if not (1.0 < self.sigma1 <= 2.5):
            raise DomainError(f"sigma1 must lie in (1, 2.5], got {self.sigma1!r}")
        if not self.T >= 1:
            raise DomainError(f"T must be >= 1, got {self.T!r}")

    @property
    def corners(self) -> tuple[complex, complex, complex, complex]:
        s1, T = self.sigma1, self.T
        return (complex(s1, -T), complex(s1, T), complex(1 - s1, T), complex(1 - s1, -T))


@dataclass
class ZeroCountReport:
    subject: dict
    T: float
    N: int
    main_term: float | None = None
    bound: float | None = None
    slack: float | None = None
    winding_residual: float = 0.0
    samples_used: int = 0
    perturbed_T: float | None = None

    @property
    def violation(self) -> bool:
        return self.slack is not None and self.slack < 0

    def to_dict(self) -> dict:
        out = asdict(self)
        out.pop("samples_used")
        return {k: out[k] for k in
                ("subject", "T", "N", "main_term", "bound", "slack", "winding_residual", "perturbed_T")}


# --- evaluation ---------------------------------------------------------

def eval_l(s, chi: DirichletCharacter, tol: EvalTolerance = DEFAULT_TOL):
    """L(s, chi) = k^(-s) sum_a chi(a) zeta(s, a/k).  Scalar or array ``s``."""
    scalar = np.ndim(s) == 0
    arr = np.atleast_1d(np.asarray(s, dtype=complex)).ravel()
    if chi.is_principal and np.any(arr == 1.0):
        raise DomainError("L(s, chi_0) has a pole at s = 1")
    k = chi.modulus
    total = np.zeros_like(arr)
    for a in range(1, k + 1):
        c = chi(a)
        if c != 0:
            total += c * hurwitz_zeta(arr, a / k, tol)
    out = total * np.exp(-arr * math.log(k))
    return complex(out[0]) if scalar else out.reshape(np.shape(s))


def _log_gamma_factor_chi(s: np.ndarray, chi: DirichletCharacter) -> np.ndarray:
    a = chi.parity
    z = 0.5 * (s + a)
    return z * math.log(chi.modulus / math.pi) + log_gamma_complex(z)


def eval_xi_chi(s, chi: DirichletCharacter, tol: EvalTolerance = DEFAULT_TOL):
    """Completed L-function (k/pi)^((s+a)/2) Gamma((s+a)/2) L(s, chi)."""
    if chi.is_principal or not chi.is_primitive:
        raise DomainError("xi(s, chi) requires a primitive nonprincipal character")
    scalar = np.ndim(s) == 0
    arr = np.atleast_1d(np.asarray(s, dtype=complex)).ravel()
    out = np.exp(_log_gamma_factor_chi(arr, chi)) * eval_l(arr, chi, tol)
    return complex(out[0]) if scalar else out.reshape(np.shape(s))


def _log_gamma_factor_field(s: np.ndarray, K: QuadraticField) -> np.ndarray:
    r1, r2 = K.signature
    n = K.degree
    scale = math.log(K.abs_disc) - n * math.log(math.pi) - 2 * r2 * math.log(2.0)
    out = 0.5 * s * scale
    if r1:
        out = out + r1 * log_gamma_complex(0.5 * s)
    if r2:
        out = out + r2 * log_gamma_complex(s)
    return out


def dedekind_zeta(s, K: QuadraticField, tol: EvalTolerance = DEFAULT_TOL):
    """zeta_K(s) = zeta(s) L(s, chi_d) (just zeta(s) for K = Q)."""
    scalar = np.ndim(s) == 0
    arr = np.atleast_1d(np.asarray(s, dtype=complex)).ravel()
    out = hurwitz_zeta(arr, 1.0, tol)
    if K.d != 1:
        out = out * eval_l(arr, K.character, tol)
    return complex(out[0]) if scalar else out.reshape(np.shape(s))


def eval_xi_quadratic(s, d, tol: EvalTolerance = DEFAULT_TOL):
    """Completed Dedekind zeta s(s-1) (d_K / (pi^n 2^(2 r2)))^(s/2) Gamma(s/2)^r1 Gamma(s)^r2 zeta_K(s)."""
    K = d if isinstance(d, QuadraticField) else QuadraticField(d)
    scalar = np.ndim(s) == 0
    arr = np.atleast_1d(np.asarray(s, dtype=complex)).ravel()
    out = arr * (arr - 1) * np.exp(_log_gamma_factor_field(arr, K)) * dedekind_zeta(arr, K, tol)
    return complex(out[0]) if scalar else out.reshape(np.shape(s))


def _phase_function(subject: Subject, tol: EvalTolerance):
    """Return s -> (a representative of arg xi(s), |finite part|) for Re s >= 1/2."""
    if isinstance(subject, DirichletCharacter):
        if subject.is_principal or not subject.is_primitive:
            raise DomainError("zero counting requires a primitive nonprincipal character")

        def phase(s):
            L = eval_l(s, subject, tol)
            return _log_gamma_factor_chi(s, subject).imag + np.angle(L), np.abs(L)

        return phase

    def phase(s):
        Z = dedekind_zeta(s, subject, tol)
        poly = s * (s - 1)
        return _log_gamma_factor_field(s, subject).imag + np.angle(poly) + np.angle(Z), np.abs(Z)

    return phase


def _wrap(x: np.ndarray) -> np.ndarray:
    return (x + math.pi) % _TWO_PI - math.pi


def _right_half_path(rect: Rectangle, u: np.ndarray) -> np.ndarray:
    """Map arclength u in [0, L] onto 1/2 - iT -> s1 - iT -> s1 + iT -> 1/2 + iT."""
    s1, T = rect.sigma1, rect.T
    h = s1 - 0.5
    s = np.empty(u.shape, dtype=complex)
    m1 = u <= h
    m2 = (u > h) & (u <= h + 2 * T)
    m3 = u > h + 2 * T
    s[m1] = (0.5 + u[m1]) - 1j * T
    s[m2] = s1 + 1j * (u[m2] - h - T)
    s[m3] = (s1 - (u[m3] - h - 2 * T)) + 1j * T
    return s


def _argument_change(subject: Subject, rect: Rectangle, tol: EvalTolerance) -> tuple[float, int]:
    """Continuous argument change of xi along the right half of the box."""
    phase = _phase_function(subject, tol)
    h = rect.sigma1 - 0.5
    length = 2 * h + 2 * rect.T
    # corners are always sample points
    knots = [0.0, h, h + 2 * rect.T, length]
    pieces = [
        np.linspace(lo, hi, max(2, int(math.ceil((hi - lo) / _INITIAL_SPACING)) + 1))
        for lo, hi in zip(knots[:-1], knots[1:])
    ]
    u = np.unique(np.concatenate(pieces))
    ph, mag = phase(_right_half_path(rect, u))
    if np.any(mag == 0) or not np.all(np.isfinite(ph)):
        raise BoundaryZero(f"zero of the L-function on the contour at T={rect.T}")

    for _ in range(_MAX_REFINE_ROUNDS):
        inc = _wrap(np.diff(ph))
        bad = np.abs(inc) >= PHASE_STEP_LIMIT
        if not bad.any():
            return float(inc.sum()), int(u.size)
        gaps = np.diff(u)[bad]
        if gaps.min() < _MIN_SPACING:
            raise BoundaryZero(f"phase refinement stalled near T={rect.T}; a zero is on or near the contour")
        mids = 0.5 * (u[:-1][bad] + u[1:][bad])
        new_ph, new_mag = phase(_right_half_path(rect, mids))
        if np.any(new_mag == 0) or not np.all(np.isfinite(new_ph)):
            raise BoundaryZero(f"zero of the L-function on the contour at T={rect.T}")
        order = np.argsort(np.concatenate([u, mids]), kind="stable")
        u = np.concatenate([u, mids])[order]
        ph = np.concatenate([ph, new_ph])[order]
    raise NonConvergence(f"phase continuation did not settle in {_MAX_REFINE_ROUNDS} rounds")


def count_zeros(subject, rect: Rectangle | float, tol: EvalTolerance = DEFAULT_TOL) -> ZeroCountReport:
    """Number of zeros of L(s, chi) or zeta_K(s) with 0 < Re s < 1 and |Im s| <= T.

    Raises :class:`BoundaryZero` when a zero sits on the contour or the
    count is not within ``RESIDUAL_LIMIT`` of an integer.
    """
    subject = _as_subject(subject)
    if not isinstance(rect, Rectangle):
        rect = Rectangle(T=float(rect))
    change, samples = _argument_change(subject, rect, tol)
    # full-boundary winding = 2 * change / (2 pi)
    raw = change / math.pi
    n = int(round(raw))
    residual = abs(raw - n)
    if residual >= RESIDUAL_LIMIT or n < 0:
        raise BoundaryZero(f"winding {raw:.4f} not integral at T={rect.T}")
    return ZeroCountReport(
        subject=_describe(subject),
        T=rect.T,
        N=n,
        winding_residual=residual,
        samples_used=samples,
    )


def _describe(subject: Subject) -> dict:
    return subject.describe()


def main_term(subject, T: float) -> float:
    """(T/pi) log(kT / 2 pi e) for characters; (T/pi) log(d_K (T / 2 pi e)^n_K) for fields."""
    if not T >= 1:
        raise DomainError(f"T must be >= 1, got {T!r}")
    subject = _as_subject(subject)
    x = T / (_TWO_PI * math.e)
    if isinstance(subject, DirichletCharacter):
        return T / math.pi * math.log(subject.modulus * x)
    return T / math.pi * (math.log(subject.abs_disc) + subject.degree * math.log(x))


def theorem_bound(subject, T: float, constants=None) -> float:
    subject = _as_subject(subject)
    if isinstance(subject, DirichletCharacter):
        c = constants or headline_theorem_one()
        if not isinstance(c, TheoremOneConstants):
            raise DomainError("characters need Theorem 1 constants")
        return c.bound(subject.modulus, T)
    c = constants or headline_theorem_two()
    if not isinstance(c, TheoremTwoConstants):
        raise DomainError("fields need Theorem 2 constants")
    return c.bound(subject.abs_disc, subject.degree, T)


def verify(subject, T: float, constants=None, tol: EvalTolerance = DEFAULT_TOL) -> ZeroCountReport:
    """Count zeros up to T and compare with the explicit bound.

    If a zero ordinate sits on the contour T is nudged up by 1e-3 (at most
    five times); the height actually used is recorded in ``perturbed_T``.
    """
    subject = _as_subject(subject)
    if constants is not None and constants.params is not None and T < constants.params.T0:
        raise DomainError(f"T={T} is below the constants' T0={constants.params.T0}")
    if not T >= 1:
        raise DomainError(f"T must be >= 1, got {T!r}")
    T_used = float(T)
    for attempt in range(MAX_PERTURBATIONS + 1):
        try:
            report = count_zeros(subject, Rectangle(T=T_used), tol)
            break
        except BoundaryZero:
            if attempt == MAX_PERTURBATIONS:
                raise
            T_used += PERTURB_STEP
    report.T = float(T)
    report.perturbed_T = T_used if T_used != T else None
    report.main_term = main_term(subject, T_used)
    report.bound = theorem_bound(subject, T_used, constants)
    report.slack = report.bound - abs(report.N - report.main_term)
    return report
