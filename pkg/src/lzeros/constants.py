"""Explicit error constants for the zero-counting formulae.

For a Dirichlet L-function of a primitive character mod k the count of
zeros up to height T differs from (T/pi) log(kT / 2 pi e) by at most
C1 log kT + C2; for a Dedekind zeta-function the remainder is bounded by
D1 (log d_K + n_K log T) + D2 n_K + D3.  Everything here is a function of
the tunables (eta, p, T0).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, Decimal
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, LZerosError
from .quadrature import integrate
from .special import (
    EvalTolerance,
    big_f,
    big_g,
    boundary_weight,
    g_bound,
    hurwitz_zeta,
    zeta_real,
)

QUAD_TOL = 1e-9
_ZETA_TOL = EvalTolerance(abs_tol=1e-13)

PRule = Union[str, float]


@dataclass(frozen=True)
class BoundParameters:
    """Tunables eta, p, T0 plus the quantities derived from them."""

    eta: float
    p: float
    T0: float = 1.0

    def __post_init__(self):
        if not (0 < self.eta <= 0.5):
            raise DomainError(f"eta must lie in (0, 1/2], got {self.eta!r}")
        if not (-self.eta <= self.p < 0):
            raise DomainError(f"p must lie in [-eta, 0), got {self.p!r}")
        if not self.T0 >= 1:
            raise DomainError(f"T0 must be >= 1, got {self.T0!r}")

    @property
    def sigma1(self) -> float:
        return 0.5 + math.sqrt(2.0) * (self.eta + 0.5)

    @property
    def delta(self) -> float:
        return math.sqrt(2.0) * (0.5 + self.eta)

    @property
    def r(self) -> float:
        return (1.0 + self.eta - self.p) / (0.5 + self.eta)

    @property
    def radius(self) -> float:
        """Jensen circle radius r (1/2 + eta), equal to 1 + eta - p."""
        return 1.0 + self.eta - self.p


def derive_params(eta: float, p_rule: PRule = "eta_over_7", T0: float = 1.0) -> BoundParameters:
    """Build parameters with ``p = -eta/7`` or a fixed ``p``."""
    if p_rule == "eta_over_7":
        p = -eta / 7.0
    elif isinstance(p_rule, (int, float)) and not isinstance(p_rule, bool):
        p = float(p_rule)
    else:
        raise DomainError(f"unknown p rule {p_rule!r}")
    return BoundParameters(eta=float(eta), p=p, T0=float(T0))


@dataclass(frozen=True)
class TheoremOneConstants:
    C1: float
    C2: float
    params: BoundParameters | None = None

    def bound(self, k: int, T: float) -> float:
        return self.C1 * math.log(k * T) + self.C2


@dataclass(frozen=True)
class TheoremTwoConstants:
    D1: float
    D2: float
    D3: float
    params: BoundParameters | None = None

    def bound(self, d_K: int, n_K: int, T: float) -> float:
        return self.D1 * (math.log(d_K) + n_K * math.log(T)) + self.D2 * n_K + self.D3


def _log_zeta(x):
    return np.log(hurwitz_zeta(np.asarray(x, dtype=float), 1.0, _ZETA_TOL).real)


def _weight_integral(kind: str, params: BoundParameters, cos_weighted: bool) -> float:
    lo, hi = {
        "w": (0.5 * math.pi, math.pi),
        "w_star": (math.pi, 1.5 * math.pi),
        "w_tilde": (0.0, 0.5 * math.pi),
        "w_tilde_star": (-0.5 * math.pi, 0.0),
    }[kind]
    eta, r, T0 = params.eta, params.r, params.T0

    def f(phi):
        val = np.log(boundary_weight(kind, T0, phi, eta, r))
        return -np.cos(phi) * val if cos_weighted else val

    return integrate(f, lo, hi, QUAD_TOL).value


def c1(params: BoundParameters) -> float:
    """Coefficient of log kT."""
    return (0.5 - params.p) / (math.pi * math.log(params.r))


def c2(params: BoundParameters) -> float:
    """Constant term of the Dirichlet bound, valid for T >= params.T0."""
    eta, p, T0 = params.eta, params.p, params.T0
    log_r = math.log(params.r)
    radius = params.radius

    head = (2.0 / math.pi) * (
        math.log(zeta_real(params.sigma1, _ZETA_TOL))
        + g_bound(1, T0)
        + 0.5 * big_g(0, params.delta, T0)
    )
    zeta_1_eta = zeta_real(1.0 + eta, _ZETA_TOL)
    right_arc = integrate(
        lambda phi: _log_zeta(1.0 + eta + radius * np.cos(phi)),
        -0.5 * math.pi, 0.5 * math.pi, QUAD_TOL,
    ).value
    left_arc = (
        -2.0 * math.log(2.0 * math.pi)
        + _weight_integral("w", params, cos_weighted=True)
        + _weight_integral("w_star", params, cos_weighted=True)
    )
    tail = (
        1.5 * math.log(zeta_1_eta)
        - math.log(zeta_real(2.0 + 2.0 * eta, _ZETA_TOL))
        + math.log(zeta_real(1.0 - p, _ZETA_TOL) / zeta_1_eta) / math.pi
        + right_arc / (2.0 * math.pi)
        + (0.5 - p) / (2.0 * math.pi) * left_arc
    )
    return head + tail / log_r


def theorem_one(params: BoundParameters) -> TheoremOneConstants:
    return TheoremOneConstants(C1=c1(params), C2=c2(params), params=params)


def gamma_gap(T0: float) -> float:
    """(2/pi) (g(1, T0) - |g(0, T0)|), the amount D2 improves on C2."""
    return (2.0 / math.pi) * (g_bound(1, T0) - g_bound(0, T0))


def d_constants(params: BoundParameters) -> TheoremTwoConstants:
    """D1, D2, D3 of the Dedekind bound, valid for T >= params.T0."""
    eta, p, T0 = params.eta, params.p, params.T0
    r = params.r
    log_r = math.log(r)
    d1 = c1(params)
    d2 = c2(params) - gamma_gap(T0)
    arcs = sum(
        _weight_integral(kind, params, cos_weighted=False)
        for kind in ("w_tilde_star", "w_tilde", "w", "w_star")
    )
    d3 = (
        2.0
        + r * (0.5 + eta) / (math.pi * log_r * (1.0 + eta - p)) * math.log((1.0 - p) / (1.0 + p))
        + big_f(params.delta, T0) / math.pi
        + arcs / (2.0 * math.pi * log_r)
    )
    return TheoremTwoConstants(D1=d1, D2=d2, D3=d3, params=params)


def round_up(x: float, places: int = 3) -> float:
    """Round toward +infinity at the given number of decimals."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(float(x))).quantize(q, rounding=ROUND_CEILING))


def headline_theorem_one() -> TheoremOneConstants:
    """Rounded-up constants at eta = 1/4, p = -eta/7, T0 = 1."""
    c = theorem_one(derive_params(0.25))
    return TheoremOneConstants(C1=round_up(c.C1), C2=round_up(c.C2), params=c.params)


def headline_theorem_two() -> TheoremTwoConstants:
    d = d_constants(derive_params(0.25))
    return TheoremTwoConstants(D1=round_up(d.D1), D2=round_up(d.D2), D3=round_up(d.D3), params=d.params)


def _p_rule_label(p_rule: PRule) -> str:
    return "eta_over_7" if p_rule == "eta_over_7" else f"fixed:{float(p_rule):g}"


@dataclass
class TableRow:
    eta: float
    values: dict = field(default_factory=dict)  # column name -> float, or None on error
    error: str | None = None


def table_rows(theorem: int, T0_list: Sequence[float], eta_grid: Sequence[float],
               p_rule: PRule = "eta_over_7") -> list[TableRow]:
    """Unrounded constants for every eta; columns are keyed ``name@T0``."""
    if theorem not in (1, 2):
        raise DomainError(f"theorem must be 1 or 2, got {theorem!r}")
    if not T0_list or not eta_grid:
        raise DomainError("T0_list and eta_grid must be non-empty")
    rows = []
    for eta in eta_grid:
        row = TableRow(eta=float(eta))
        try:
            for T0 in T0_list:
                params = derive_params(eta, p_rule, T0)
                if theorem == 1:
                    c = theorem_one(params)
                    row.values.update({f"C1@{T0:g}": c.C1, f"C2@{T0:g}": c.C2})
                else:
                    d = d_constants(params)
                    row.values.update({f"D1@{T0:g}": d.D1, f"D2@{T0:g}": d.D2, f"D3@{T0:g}": d.D3})
        except (LZerosError, ArithmeticError) as exc:
            row.error = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    return rows


def _columns(theorem: int, T0_list: Sequence[float]) -> list[tuple[str, str]]:
    """(key, header) pairs in published column order: the T-independent coefficient once, then per-T0 terms."""
    first = T0_list[0]
    if theorem == 1:
        cols = [(f"C1@{first:g}", "C1")]
        cols += [(f"C2@{T0:g}", f"C2 (T>={T0:g})") for T0 in T0_list]
    else:
        cols = [(f"D1@{first:g}", "D1")]
        for T0 in T0_list:
            cols += [(f"D2@{T0:g}", f"D2 (T>={T0:g})"), (f"D3@{T0:g}", f"D3 (T>={T0:g})")]
    return cols


def _fmt(x) -> str:
    return "ERR" if x is None else f"{round_up(x):.3f}"


def render_table(theorem: int, T0_list: Sequence[float], eta_grid: Sequence[float],
                 format: str = "markdown", p_rule: PRule = "eta_over_7") -> str:
    """Render the constants table with values rounded up to 3 decimals.

    ``format`` is one of ``markdown``, ``csv`` or ``json``.  The JSON form is
    an envelope ``{theorem, T0, p_rule, rows}`` per T0 (a list when several
    T0 are requested) whose rows are ``{eta, C1, C2}`` or ``{eta, D1, D2, D3}``.
    """
    if format not in ("markdown", "csv", "json"):
        raise DomainError(f"unknown table format {format!r}")
    T0_list = [float(t) for t in T0_list]
    rows = table_rows(theorem, T0_list, eta_grid, p_rule)

    if format == "json":
        names = ("C1", "C2") if theorem == 1 else ("D1", "D2", "D3")
        envelopes = []
        for T0 in T0_list:
            out_rows = []
            for row in rows:
                item = {"eta": row.eta}
                for name in names:
                    v = None if row.error else row.values[f"{name}@{T0:g}"]
                    item[name] = "ERR" if v is None else round_up(v)
                out_rows.append(item)
            envelopes.append({"theorem": theorem, "T0": T0, "p_rule": _p_rule_label(p_rule), "rows": out_rows})
        payload = envelopes[0] if len(envelopes) == 1 else envelopes
        return json.dumps(payload, indent=2)

    cols = _columns(theorem, T0_list)
    header = ["eta"] + [h for _, h in cols]
    body = []
    for row in rows:
        cells = [f"{row.eta:.2f}"]
        cells += [_fmt(None if row.error else row.values[key]) for key, _ in cols]
        body.append(cells)

    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return buf.getvalue()

    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(cells) + " |" for cells in body]
    return "\n".join(lines) + "\n"
