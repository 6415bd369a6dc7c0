"""Acceptance checks for the package as a whole.

Each criterion prints a single ``CRITERION n: PASS|FAIL ...`` line (visible
with ``pytest -s`` and repeated in the terminal summary).  Running this file
directly with ``python tests/test_acceptance.py`` prints the same lines
without pytest.
"""

import math
import time

import mpmath
import numpy as np
import pytest

from lzeros.characters import gauss_sum, primitive_characters
from lzeros.constants import (
    derive_params,
    headline_theorem_one,
    headline_theorem_two,
    round_up,
    table_rows,
)
from lzeros.quadrature import integrate
from lzeros.special import (
    EvalTolerance,
    big_f,
    big_g,
    boundary_weight,
    g_bound,
    hurwitz_zeta,
    log_gamma_complex,
    stirling_im_loggamma,
    zeta_real,
)
from lzeros.zerocount import (
    QuadraticField,
    count_zeros,
    dedekind_zeta,
    eval_l,
    eval_xi_chi,
    eval_xi_quadratic,
    main_term,
    verify,
)

from oracles import brute_force_zeta, direct_l_series, full_boundary_winding, simpson
from published_tables import SUSPECT_CELLS, TABLE_1, TABLE_2

ETA_GRID = [round(0.05 * i, 2) for i in range(1, 11)]
TABLE_TOL = 0.002

# criterion number -> printed line; filled in as the tests run
RESULTS: dict[int, str] = {}


def report(number, title, failures, elapsed=None, limit=None):
    """Print and store the one-line verdict, then return whether it passed."""
    too_slow = limit is not None and elapsed is not None and elapsed >= limit
    ok = not failures and not too_slow
    timing = "" if elapsed is None else f" [{elapsed:.2f}s" + (f" < {limit:g}s]" if limit else "]")
    detail = ""
    if failures:
        detail = f" ({len(failures)} failing: {'; '.join(failures[:3])})"
    elif too_slow:
        detail = " (runtime limit exceeded)"
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} {title}{timing}{detail}"
    RESULTS[number] = line
    print(line)
    return ok


def _close(label, got, want, tol, failures):
    if not abs(got - want) <= tol:
        failures.append(f"{label} got {got:.6g} want {want:.6g}")


# --- criterion 1 -------------------------------------------------------------

def table_one_failures(include_suspect):
    failures = []
    rows = table_rows(1, [1.0, 10.0], ETA_GRID)
    for row in rows:
        c1_print, c2_print, c2_10_print = TABLE_1[row.eta]
        if row.error:
            failures.append(f"eta={row.eta}: {row.error}")
            continue
        c1 = row.values["C1@1"]
        if row.values["C1@10"] != c1:
            failures.append(f"C1 depends on T0 at eta={row.eta}")
        _close(f"C1 eta={row.eta}", c1, c1_print, TABLE_TOL, failures)
        if round_up(c1) != c1_print:
            failures.append(f"C1 eta={row.eta} rounds to {round_up(c1)}")
        _close(f"C2(1) eta={row.eta}", row.values["C2@1"], c2_print, TABLE_TOL, failures)
        if include_suspect or ("C2", row.eta, 10.0) not in SUSPECT_CELLS:
            _close(f"C2(10) eta={row.eta}", row.values["C2@10"], c2_10_print, TABLE_TOL, failures)
    return failures


def test_criterion_1_table_one():
    start = time.perf_counter()
    failures = table_one_failures(include_suspect=True)
    elapsed = time.perf_counter() - start
    # Everything outside the documented misprint must hold.
    suspect_free = table_one_failures(include_suspect=False)
    title = "Table 1 reproduction (C1, C2 at T0=1 and 10)"
    if failures and not suspect_free:
        title += "; only the misprinted cell fails, tracked as a strict xfail"
    report(1, title, failures, elapsed, 10)
    assert not suspect_free, suspect_free
    assert elapsed < 10


@pytest.mark.xfail(strict=True, reason="printed C2 (T>=10) at eta=0.05 is 8.666; the value implied by "
                   "both tables and the C2-D2 identity is 8.660 (see decisions ledger)")
def test_criterion_1_misprinted_cell():
    c2_10 = table_rows(1, [10.0], [0.05])[0].values["C2@10"]
    assert abs(c2_10 - TABLE_1[0.05][2]) <= TABLE_TOL


# --- criterion 2 -------------------------------------------------------------

def test_criterion_2_table_two():
    start = time.perf_counter()
    failures = []
    t2 = table_rows(2, [1.0, 10.0], ETA_GRID)
    t1 = table_rows(1, [1.0], ETA_GRID)
    for row, row1 in zip(t2, t1):
        d1, d2, d3, d2_10, d3_10 = TABLE_2[row.eta]
        if row.error:
            failures.append(f"eta={row.eta}: {row.error}")
            continue
        v = row.values
        _close(f"D1 eta={row.eta}", v["D1@1"], d1, TABLE_TOL, failures)
        _close(f"D2(1) eta={row.eta}", v["D2@1"], d2, TABLE_TOL, failures)
        _close(f"D3(1) eta={row.eta}", v["D3@1"], d3, TABLE_TOL, failures)
        _close(f"D2(10) eta={row.eta}", v["D2@10"], d2_10, TABLE_TOL, failures)
        _close(f"D3(10) eta={row.eta}", v["D3@10"], d3_10, TABLE_TOL, failures)
        if v["D1@1"] != row1.values["C1@1"] or v["D1@10"] != row1.values["C1@1"]:
            failures.append(f"D1 differs from C1 at eta={row.eta}")
        if d1 != TABLE_1[row.eta][0]:
            failures.append(f"printed D1 differs from printed C1 at eta={row.eta}")
    elapsed = time.perf_counter() - start
    ok = report(2, "Table 2 reproduction (D1, D2, D3 at T0=1 and 10)", failures, elapsed)
    assert ok, failures


# --- criterion 3 -------------------------------------------------------------

def test_criterion_3_c2_d2_identity():
    failures = []
    for T0 in (1.0, 10.0):
        gap = 2 / math.pi * (g_bound(1, T0) - g_bound(0, T0))
        c_rows = table_rows(1, [T0], ETA_GRID)
        d_rows = table_rows(2, [T0], ETA_GRID)
        for cr, dr in zip(c_rows, d_rows):
            diff = cr.values[f"C2@{T0:g}"] - dr.values[f"D2@{T0:g}"]
            _close(f"eta={cr.eta} T0={T0:g}", diff, gap, 1e-9, failures)
    ok = report(3, "C2 - D2 equals (2/pi)(g(1,T0) - g(0,T0)) on the grid", failures)
    assert ok, failures


# --- criterion 4 -------------------------------------------------------------

def special_function_failures():
    f = []
    _close("zeta(2)", zeta_real(2), math.pi**2 / 6, 1e-12, f)
    _close("zeta(4)", zeta_real(4), math.pi**4 / 90, 1e-12, f)
    _close("zeta(1.5) vs direct sum", zeta_real(1.5), brute_force_zeta(1.5), 1e-10, f)
    _close("zeta(2,1)", abs(hurwitz_zeta(2 + 0j, 1.0) - math.pi**2 / 6), 0, 1e-12, f)
    _close("zeta(2,1/2)", abs(hurwitz_zeta(2 + 0j, 0.5) - math.pi**2 / 2), 0, 1e-12, f)
    s, a = 0.5 + 10j, 1 / 3
    from lzeros.special import _choose_cutoff

    n = _choose_cutoff(np.array([s]), a, EvalTolerance())
    _close("Hurwitz 4x cutoff", abs(hurwitz_zeta(s, a) - hurwitz_zeta(s, a, cutoff=4 * n)), 0, 1e-8, f)
    # Hurwitz sums over residues reproduce zeta: sum_{r=1}^{q} zeta(s, r/q) = q^s zeta(s)
    s = 0.7 + 6j
    total = sum(hurwitz_zeta(s, r / 4) for r in range(1, 5))
    _close("Hurwitz residue sum", abs(total - 4**s * hurwitz_zeta(s, 1.0)), 0, 1e-10, f)
    _close("log Gamma(1/2)", abs(log_gamma_complex(0.5) - 0.5 * math.log(math.pi)), 0, 1e-12, f)
    _close("log Gamma(5)", abs(log_gamma_complex(5) - math.log(24)), 0, 1e-12, f)
    z = 0.25 + 7.5j
    shifted = log_gamma_complex(z + 20) - sum(np.log(z + k) for k in range(20))
    _close("log Gamma shift identity", abs(log_gamma_complex(z) - shifted), 0, 1e-10, f)
    _close("Stirling a=1 T=1", stirling_im_loggamma(1, 1.0).value, log_gamma_complex(0.75 + 0.5j).imag, 1e-10, f)
    _close("Stirling a=0 T=10", stirling_im_loggamma(0, 10.0).value, log_gamma_complex(0.25 + 5j).imag, 1e-10, f)
    T = 1e6
    _close("Stirling limit", stirling_im_loggamma(1, T).value - 0.5 * T * math.log(T / (2 * math.e)), math.pi / 8, 1e-5, f)
    _close("g(1,1)", g_bound(1, 1.0), 0.62656, 1e-4, f)
    _close("g(0,1)", g_bound(0, 1.0), 0.51914, 1e-4, f)
    _close("G(0,0,1)", big_g(0, 0.0, 1.0), 1.19257, 1e-5, f)
    _close("G(1,0,2)", big_g(1, 0.0, 2.0), 0.53333, 1e-5, f)
    _close("w at pi", boundary_weight("w", 1.0, math.pi, 0.25, 1.714286), 1.38919, 1e-4, f)
    _close("L(2, chi_4)", abs(eval_l(2, primitive_characters(4)[0]) - float(mpmath.catalan)), 0, 1e-10, f)
    ref, _ = direct_l_series(2 + 0j, primitive_characters(3)[0], 10**5)
    _close("L(2, chi_3) vs direct sum", abs(eval_l(2, primitive_characters(3)[0]) - ref), 0, 1e-9, f)
    # functional-equation modulus checks
    for k, s in ((3, 0.3 + 2j), (5, 0.7 + 11.3j)):
        for chi in primitive_characters(k):
            lhs, rhs = abs(eval_xi_chi(1 - s, chi.conjugate())), abs(eval_xi_chi(s, chi))
            _close(f"|xi| symmetry k={k}", lhs / rhs, 1.0, 1e-8, f)
            _close(f"|tau|^2 k={k}", abs(gauss_sum(chi)) ** 2, k, 1e-10, f)
    for d, s in ((-4, 0.3 + 5j), (1, 0.4 + 20j)):
        lhs, rhs = eval_xi_quadratic(s, d), eval_xi_quadratic(1 - s, d)
        _close(f"xi_K symmetry d={d}", abs(lhs - rhs) / abs(rhs), 0, 1e-8, f)
    return f


def test_criterion_4_special_functions():
    start = time.perf_counter()
    failures = special_function_failures()
    elapsed = time.perf_counter() - start
    ok = report(4, "special-function examples and functional-equation checks", failures, elapsed, 5)
    assert ok, failures


# Two numeric examples printed alongside the special-function and counting
# operations disagree with direct arithmetic on their own formulas.  They are
# kept here as strict expected failures rather than loosened.

@pytest.mark.xfail(strict=True, reason="F(sqrt2*0.75, 1) evaluates to 0.4373379 by direct arithmetic, "
                   "not the quoted 0.43711 (see decisions ledger)")
def test_quoted_big_f_example():
    assert big_f(math.sqrt(2) * 0.75, 1.0) == pytest.approx(0.43711, abs=1e-4)


@pytest.mark.xfail(strict=True, reason="(10/pi) log(50/(2 pi e)) = 3.419113, not the quoted 3.41896 "
                   "(see decisions ledger)")
def test_quoted_main_term_example():
    assert main_term(primitive_characters(5)[0], 10.0) == pytest.approx(3.41896, abs=1e-4)


# --- criteria 5 and 6 -----------------------------------------------------------

def test_criterion_5_theorem_one_sweep():
    start = time.perf_counter()
    constants = headline_theorem_one()
    failures, runs, min_slack = [], 0, math.inf
    for k in range(3, 13):
        for chi in primitive_characters(k):
            for T in (2.0, 10.0, 30.0):
                r = verify(chi, T, constants)
                runs += 1
                min_slack = min(min_slack, r.slack)
                if r.slack < 0:
                    failures.append(f"chi {chi.label} T={T:g} slack {r.slack:.3f}")
                if r.winding_residual >= 0.05:
                    failures.append(f"chi {chi.label} T={T:g} residual {r.winding_residual:.3g}")
    elapsed = time.perf_counter() - start
    ok = report(5, f"Theorem 1 holds on {runs} (chi, T) runs, min slack {min_slack:.3f}", failures, elapsed, 600)
    assert ok, failures


def test_criterion_6_theorem_two_sweep():
    start = time.perf_counter()
    constants = headline_theorem_two()
    failures, n_at_30 = [], None
    for d in (1, -3, -4, 5):
        for T in (10.0, 30.0):
            r = verify(d, T, constants)
            if r.slack < 0:
                failures.append(f"d={d} T={T:g} slack {r.slack:.3f}")
            if r.winding_residual >= 0.05:
                failures.append(f"d={d} T={T:g} residual {r.winding_residual:.3g}")
            if d == 1 and T == 30.0:
                n_at_30 = r.N
    winding, _ = full_boundary_winding(lambda s: eval_xi_quadratic(s, 1), 30.0)
    if n_at_30 != 6 or round(winding) != 6:
        failures.append(f"d=1 T=30 gave N={n_at_30}, oracle {winding:.3f}")
    elapsed = time.perf_counter() - start
    ok = report(6, "Theorem 2 holds for d in {1,-3,-4,5}, T in {10,30}; N(30)=6 for Q", failures, elapsed, 600)
    assert ok, failures


# --- criterion 7 -------------------------------------------------------------

def property_failures():
    f = []
    Ts = np.geomspace(1, 1e4, 40)
    for a in (0, 1):
        g = np.array([g_bound(a, T) for T in Ts])
        if a == 1 and np.any(np.diff(g) > 0):
            f.append("g(1,T) not decreasing")
        if np.any(np.array([abs(g_bound(0, T)) for T in Ts]) > np.array([g_bound(1, T) for T in Ts])):
            f.append("|g(0,T)| exceeds g(1,T)")
    deltas = np.linspace(0, 3, 25)
    for a in (0, 1):
        grid = np.array([[big_g(a, d, t) for t in Ts] for d in deltas])
        if np.any(np.diff(grid, axis=1) > 1e-15):
            f.append(f"G({a},d,t) not decreasing in t")
        if np.any(np.diff(grid, axis=0) < -1e-15):
            f.append(f"G({a},d,t) not increasing in delta")
    for d in deltas:
        for t in Ts:
            if big_g(1, d, t) > big_g(0, d, t) + 1e-15:
                f.append(f"G(1) > G(0) at d={d:.2f} t={t:.2f}")
    for eta in (0.05, 0.25, 0.5):
        r = derive_params(eta).r
        for kind, bound_kind in (("w", "w_star"), ("w_tilde", "w_tilde_star")):
            lo, hi = (0.5 * math.pi, math.pi) if kind == "w" else (0.0, 0.5 * math.pi)
            phi = np.linspace(lo, hi, 41)
            vals = np.array([boundary_weight(kind, T, phi, eta, r) for T in Ts])
            if np.any(np.diff(vals, axis=0) > 1e-15):
                f.append(f"{kind} not decreasing in T (eta={eta})")
            lo, hi = (math.pi, 1.5 * math.pi) if kind == "w" else (-0.5 * math.pi, 0.0)
            phi = np.linspace(lo, hi, 41)
            star = np.array([boundary_weight(bound_kind, T, phi, eta, r) for T in Ts])
            plain = np.array([boundary_weight(kind, T, phi, eta, r) for T in Ts])
            if np.any(np.diff(star, axis=0) > 1e-15):
                f.append(f"{bound_kind} not decreasing in T (eta={eta})")
            if np.any(plain > star + 1e-15):
                f.append(f"{kind} exceeds {bound_kind} (eta={eta})")

    # sandwich inequalities
    t = np.random.default_rng(2024).uniform(0, 50, 20)
    for sigma in (1.2, 1.5, 2.0):
        lower, upper = zeta_real(2 * sigma) / zeta_real(sigma), zeta_real(sigma)
        for k in range(3, 13):
            for chi in primitive_characters(k):
                v = np.abs(eval_l(sigma + 1j * t, chi))
                if np.any(v < lower) or np.any(v > upper):
                    f.append(f"Dirichlet sandwich chi {chi.label} sigma={sigma}")
        for d in (-4, -3, 5):
            K = QuadraticField(d)
            zk = lambda x: float(dedekind_zeta(x, K).real)  # noqa: E731
            v = np.abs(dedekind_zeta(sigma + 1j * t, K))
            if np.any(v < zk(2 * sigma) / zk(sigma)) or np.any(v > zeta_real(sigma) ** K.degree):
                f.append(f"Dedekind sandwich d={d} sigma={sigma}")

    # convexity bound for L(s, chi)
    eta = 0.25
    s = (np.linspace(-eta, 1 + eta, 11)[:, None] + 1j * np.linspace(-30, 30, 25)[None, :]).ravel()
    for k in range(3, 13):
        bound = (k * np.abs(s + 1) / (2 * math.pi)) ** ((1 + eta - s.real) / 2) * zeta_real(1 + eta)
        for chi in primitive_characters(k):
            if np.any(np.abs(eval_l(s, chi)) > bound):
                f.append(f"convexity chi {chi.label}")

    # convexity bound for (s - 1) zeta_K(s)
    p = -eta / 7
    for d in (-4, 5):
        K = QuadraticField(d)
        zk = lambda x: float(dedekind_zeta(x, K).real)  # noqa: E731
        pts = (np.linspace(p, 1 + eta, 11)[:, None] + 1j * np.linspace(0.5, 30, 20)[None, :]).ravel()
        pts = np.concatenate([pts, pts.conj()])
        sig, ex = pts.real, 1 + eta - p
        lhs = ex * np.log(np.abs((pts - 1) * dedekind_zeta(pts, K)))
        rhs = (
            (1 + eta - sig) * math.log((1 - p) / (1 + p))
            + (sig - p) * math.log(zk(1 + eta))
            + (1 + eta - sig) * math.log(zk(1 - p))
            + ex * np.log(np.abs(1 + pts))
            + (1 + eta - sig) * (0.5 - p) * (math.log(K.abs_disc) + K.degree * np.log(np.abs(1 + pts) / (2 * math.pi)))
        )
        if np.any(lhs > rhs):
            f.append(f"Dedekind convexity d={d}")

    # counts never decrease with T
    subjects = [1, -3, -4, 5] + [chi for k in (3, 4, 5, 7) for chi in primitive_characters(k)]
    for subj in subjects:
        counts = [count_zeros(subj, T).N for T in (2, 5, 10, 20, 30)]
        if counts != sorted(counts):
            f.append(f"N not monotone for {subj}")
    return f


def test_criterion_7_property_suites():
    start = time.perf_counter()
    failures = property_failures()
    elapsed = time.perf_counter() - start
    ok = report(7, "monotonicity, sandwich and convexity properties", failures, elapsed)
    assert ok, failures


# --- criterion 8 -------------------------------------------------------------

def oracle_failures():
    f = []
    _close("zeta(1.5) vs 1e6-term sum", zeta_real(1.5), brute_force_zeta(1.5), 1e-10, f)
    chi3 = primitive_characters(3)[0]
    ref, tail = direct_l_series(2 + 0j, chi3, 10**5)
    _close("L(2,chi_3) vs direct series", abs(eval_l(2, chi3) - ref), 0, 1e-9 + tail, f)
    z = 0.25 + 7.5j
    shifted = log_gamma_complex(z + 20) - sum(np.log(z + k) for k in range(20))
    _close("log Gamma vs shift identity", abs(log_gamma_complex(z) - shifted), 0, 1e-10, f)

    def integrand(phi):
        return -np.cos(phi) * np.log(boundary_weight("w", 1.0, phi, 0.25, 1.714286))

    gk = integrate(integrand, math.pi / 2, math.pi, 1e-9).value
    _close("GK15 vs 1e4-panel Simpson", gk, simpson(integrand, math.pi / 2, math.pi, 10**4), 1e-8, f)

    cases = [(1, 10.0, 0), (1, 15.0, 2), (chi3, 5.0, 0)]
    cases += [(chi, 10.0, None) for chi in primitive_characters(5)] + [(-4, 10.0, None)]
    for subj, T, expected in cases:
        xi = (lambda s, c=subj: eval_xi_chi(s, c)) if not isinstance(subj, int) else (lambda s, d=subj: eval_xi_quadratic(s, d))
        winding, step = full_boundary_winding(xi, T)
        n = count_zeros(subj, T).N
        if step >= math.pi / 2 or abs(winding - round(winding)) >= 0.05 or round(winding) != n:
            f.append(f"winding oracle {subj} T={T:g}: oracle {winding:.3f}, count {n}")
        if expected is not None and n != expected:
            f.append(f"count {subj} T={T:g} = {n}, expected {expected}")
    return f


def test_criterion_8_oracle_agreement():
    start = time.perf_counter()
    failures = oracle_failures()
    elapsed = time.perf_counter() - start
    ok = report(8, "independent oracles agree with the implementation", failures, elapsed)
    assert ok, failures


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_") and callable(fn) and not hasattr(fn, "pytestmark"):
            try:
                fn()
            except AssertionError:
                pass
