"""Command-line front end.

    lzeros constants-table --theorem 1 --t0 1 --t0 10 --format md
    lzeros constants-eval --eta 0.25 --t0 1
    lzeros verify-dirichlet --modulus 3 --T 10
    lzeros verify-dedekind --quadratic-disc -4 --T 10 --T 30

Exit status: 0 success, 2 if a verification bound is violated, 3 on
numerical non-convergence, 64 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal

from . import __version__
from .characters import primitive_characters
from .constants import (
    TheoremOneConstants,
    TheoremTwoConstants,
    d_constants,
    derive_params,
    headline_theorem_one,
    headline_theorem_two,
    render_table,
    round_up,
    theorem_one,
)
from .errors import DomainError, LZerosError, NonConvergence
from .special import EvalTolerance
from .zerocount import QuadraticField, verify

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_NONCONVERGENCE = 3
EXIT_USAGE = 64

log = logging.getLogger("lzeros")

PUBLISHED_ETA_GRID = [round(0.05 * i, 2) for i in range(1, 11)]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    theorem: int | None = 1
    t0: list = field(default_factory=list)
    eta: list = field(default_factory=list)
    p_rule: object = "eta_over_7"
    modulus: list = field(default_factory=list)
    quadratic_disc: list = field(default_factory=list)
    T: list = field(default_factory=list)
    tol: EvalTolerance = field(default_factory=EvalTolerance)
    format: str = "md"
    jobs: int = 1

    def params_dict(self) -> dict:
        out = {"format": self.format}
        if self.command.startswith("constants"):
            out.update(theorem=self.theorem, t0=self.t0, eta=self.eta, p_rule=_p_rule_label(self.p_rule))
        else:
            out.update(T=self.T, tol=self.tol.abs_tol)
            if self.command == "verify-dirichlet":
                out["modulus"] = self.modulus
            else:
                out["quadratic_disc"] = self.quadratic_disc
            if self.eta or self.t0 or self.p_rule != "eta_over_7":
                out.update(eta=self.eta, t0=self.t0, p_rule=_p_rule_label(self.p_rule))
        return out


def _p_rule_label(rule) -> str:
    return "eta-over-7" if rule == "eta_over_7" else f"fixed:{rule:g}"


def _parse_p_rule(text: str):
    if text == "eta-over-7":
        return "eta_over_7"
    if text.startswith("fixed:"):
        try:
            return float(text[len("fixed:"):])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"expected 'eta-over-7' or 'fixed:<value>', got {text!r}")


def _parse_eta_grid(text: str) -> list[float]:
    try:
        start, stop, step = (Decimal(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}") from None
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"empty eta grid {text!r}")
    out = []
    x = start
    while x <= stop:
        out.append(float(x))
        x += step
    return out


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lzeros", description="Explicit zero-counting constants and their verification.")
    parser.add_argument("--version", action="version", version=f"lzeros {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, default_format):
        p.add_argument("--format", choices=["md", "csv", "json"], default=default_format)
        p.add_argument("--tol", type=_positive_float, default=None, help="series tolerance")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")

    def tunables(p):
        p.add_argument("--eta", type=float, action="append", default=[])
        p.add_argument("--eta-grid", type=_parse_eta_grid, default=None, metavar="START:STOP:STEP")
        p.add_argument("--t0", type=float, action="append", default=[])
        p.add_argument("--p-rule", type=_parse_p_rule, default="eta-over-7")

    p = sub.add_parser("constants-table", help="tabulate constants over an eta grid")
    p.add_argument("--theorem", type=int, choices=[1, 2], default=1)
    tunables(p)
    common(p, "md")

    p = sub.add_parser("constants-eval", help="constants for one parameter choice")
    p.add_argument("--theorem", type=int, choices=[1, 2], default=None)
    tunables(p)
    common(p, "json")

    p = sub.add_parser("verify-dirichlet", help="count zeros of L(s, chi) and check the bound")
    p.add_argument("--modulus", type=int, action="append", required=True)
    p.add_argument("--T", type=float, action="append", default=[])
    tunables(p)
    common(p, "json")

    p = sub.add_parser("verify-dedekind", help="count zeros of zeta_K for quadratic K and check the bound")
    p.add_argument("--quadratic-disc", type=int, action="append", required=True)
    p.add_argument("--T", type=float, action="append", default=[])
    tunables(p)
    common(p, "json")
    return parser


def parse_config(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    eta = list(ns.eta) + (ns.eta_grid or [])
    cfg = RunConfig(command=ns.command, eta=eta, t0=list(ns.t0), p_rule=ns.p_rule,
                    format=ns.format, jobs=ns.jobs)
    if ns.tol is not None:
        try:
            cfg.tol = EvalTolerance(abs_tol=ns.tol)
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    if cfg.jobs < 1:
        raise UsageError("--jobs must be >= 1")

    if cfg.command == "constants-table":
        cfg.theorem = ns.theorem
        cfg.t0 = cfg.t0 or [1.0, 10.0]
        cfg.eta = cfg.eta or list(PUBLISHED_ETA_GRID)
    elif cfg.command == "constants-eval":
        cfg.theorem = ns.theorem  # None evaluates both theorems
        cfg.t0 = cfg.t0 or [1.0]
        cfg.eta = cfg.eta or [0.25]
    else:
        cfg.T = list(ns.T) or [10.0]
        if any(T < 1 for T in cfg.T):
            raise UsageError("--T values must be >= 1")
        if len(cfg.eta) > 1 or len(cfg.t0) > 1:
            raise UsageError("verification takes at most one --eta and one --t0")
        if cfg.command == "verify-dirichlet":
            cfg.modulus = ns.modulus
            if any(k < 3 for k in cfg.modulus):
                raise UsageError("--modulus must be >= 3")
        else:
            cfg.quadratic_disc = ns.quadratic_disc

    for e in cfg.eta:
        if not 0 < e <= 0.5:
            raise UsageError(f"eta must lie in (0, 1/2], got {e}")
    for t in cfg.t0:
        if t < 1:
            raise UsageError(f"T0 must be >= 1, got {t}")
    if cfg.p_rule != "eta_over_7":
        for e in cfg.eta or [0.25]:
            if not -e <= cfg.p_rule < 0:
                raise UsageError(f"fixed p must lie in [-eta, 0) for eta={e}")
    return cfg


# --- commands -------------------------------------------------------------

def _envelope(cfg: RunConfig, rows) -> str:
    payload = {"tool_version": __version__, "command": cfg.command, "params": cfg.params_dict(), "rows": rows}
    return json.dumps(payload, indent=2) + "\n"


def _flat_table(rows: list[dict], columns: list[str], fmt: str) -> str:
    def cell(v):
        if isinstance(v, dict) and "modulus" in v:
            return f"chi {v['label']} (mod {v['modulus']}, a={v['parity']})"
        if isinstance(v, dict) and "field" in v:
            return v["field"]
        if isinstance(v, float):
            return f"{v:.6g}"
        if isinstance(v, (dict, list)):
            return json.dumps(v, sort_keys=True)
        return "" if v is None else str(v)

    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([cell(r.get(c)) for c in columns])
        return buf.getvalue()
    lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
    lines += ["| " + " | ".join(cell(r.get(c)) for c in columns) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def _cmd_constants_table(cfg: RunConfig) -> tuple[int, str]:
    if cfg.format == "json":
        body = render_table(cfg.theorem, cfg.t0, cfg.eta, "json", cfg.p_rule)
        return EXIT_OK, _envelope(cfg, json.loads(body))
    fmt = "markdown" if cfg.format == "md" else "csv"
    text = render_table(cfg.theorem, cfg.t0, cfg.eta, fmt, cfg.p_rule)
    code = EXIT_NONCONVERGENCE if "ERR" in text else EXIT_OK
    return code, text


def _eval_row(eta: float, T0: float, p_rule, theorem: int | None) -> dict:
    params = derive_params(eta, p_rule, T0)
    row = {"eta": eta, "T0": T0, "p": params.p}
    raw = {}
    if theorem in (None, 1):
        c = theorem_one(params)
        raw.update(C1=c.C1, C2=c.C2)
    if theorem in (None, 2):
        d = d_constants(params)
        raw.update(D1=d.D1, D2=d.D2, D3=d.D3)
    row.update({k: round_up(v) for k, v in raw.items()})
    row["raw"] = raw
    return row


def _cmd_constants_eval(cfg: RunConfig) -> tuple[int, str]:
    rows = [_eval_row(eta, T0, cfg.p_rule, cfg.theorem) for eta in cfg.eta for T0 in cfg.t0]
    if cfg.format == "json":
        return EXIT_OK, _envelope(cfg, rows)
    cols = [c for c in ("eta", "T0", "p", "C1", "C2", "D1", "D2", "D3") if c in rows[0]]
    return EXIT_OK, _flat_table(rows, cols, cfg.format)


def _custom_constants(cfg: RunConfig, theorem: int):
    if not (cfg.eta or cfg.t0 or cfg.p_rule != "eta_over_7"):
        return headline_theorem_one() if theorem == 1 else headline_theorem_two()
    params = derive_params(cfg.eta[0] if cfg.eta else 0.25, cfg.p_rule, cfg.t0[0] if cfg.t0 else 1.0)
    if theorem == 1:
        c = theorem_one(params)
        return TheoremOneConstants(C1=round_up(c.C1), C2=round_up(c.C2), params=params)
    d = d_constants(params)
    return TheoremTwoConstants(D1=round_up(d.D1), D2=round_up(d.D2), D3=round_up(d.D3), params=params)


def _verify_job(job):
    subject, T, constants, tol = job
    try:
        return verify(subject, T, constants, tol).to_dict(), None
    except NonConvergence as exc:
        return None, f"{type(exc).__name__}: {exc}"


def _cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    if cfg.command == "verify-dirichlet":
        constants = _custom_constants(cfg, 1)
        subjects = [chi for k in cfg.modulus for chi in primitive_characters(k)]
        missing = [k for k in cfg.modulus if not primitive_characters(k)]
        for k in missing:
            log.warning("no primitive nonprincipal characters mod %d", k)
    else:
        constants = _custom_constants(cfg, 2)
        try:
            subjects = [QuadraticField(d) for d in cfg.quadratic_disc]
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    if constants.params is not None:
        low = [T for T in cfg.T if T < constants.params.T0]
        if low:
            raise UsageError(f"--T values {low} lie below T0={constants.params.T0}")

    jobs = [(s, T, constants, cfg.tol) for s in subjects for T in cfg.T]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_verify_job, jobs))
    else:
        results = [_verify_job(j) for j in jobs]

    rows, code = [], EXIT_OK
    for (subject, T, _, _), (report, err) in zip(jobs, results):
        if err is not None:
            log.error("%s at T=%g: %s", subject.describe(), T, err)
            rows.append({"subject": subject.describe(), "T": T, "error": err})
            code = max(code, EXIT_NONCONVERGENCE)
            continue
        report["violation"] = report["slack"] < 0
        if report["violation"]:
            log.error("bound violated for %s at T=%g (slack %.4f)", report["subject"], T, report["slack"])
            code = EXIT_VIOLATION if code != EXIT_NONCONVERGENCE else code
        rows.append(report)
    if not rows:
        log.warning("nothing to verify")

    if cfg.format == "json":
        return code, _envelope(cfg, rows)
    cols = ["subject", "T", "N", "main_term", "bound", "slack", "winding_residual", "perturbed_T", "violation", "error"]
    return code, _flat_table(rows, cols, cfg.format)


_COMMANDS = {
    "constants-table": _cmd_constants_table,
    "constants-eval": _cmd_constants_eval,
    "verify-dirichlet": _cmd_verify,
    "verify-dedekind": _cmd_verify,
}


def run(argv: list[str], stdout=None, stderr=None) -> int:
    """Execute the CLI; results go to ``stdout`` and diagnostics to ``stderr``."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.addHandler(handler)
    try:
        try:
            cfg = parse_config(argv)
            code, text = _COMMANDS[cfg.command](cfg)
        except UsageError as exc:
            print(str(exc), file=stderr)
            return EXIT_USAGE
        except NonConvergence as exc:
            print(f"non-convergence: {exc}", file=stderr)
            return EXIT_NONCONVERGENCE
        except LZerosError as exc:
            print(f"error: {exc}", file=stderr)
            return EXIT_USAGE
        stdout.write(text)
        return code
    finally:
        log.removeHandler(handler)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
