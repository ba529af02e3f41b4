"""Command-line front end: configure runs, execute verification suites,
emit machine-readable reports.

Exit codes: 0 success, 1 usage or configuration error, 2 a verification
suite found a violation. Reports carry a versioned schema tag and are
byte-identical across repeat runs with the same configuration; wall time
goes to stderr (and into the payload only with --with-timings, which
deliberately breaks byte-stability).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import struct
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .arith import PrimeTable, factorize, sieve_primes, totient_ratio
from .congruence import (
    composed_root_counts,
    lagrange_bound,
    max_root_ratio,
    root_counts_for_moduli,
)
from .errors import (
    BoundsError,
    CapacityError,
    DivergenceError,
    DomainError,
    InsufficientDataError,
    InvariantViolation,
)
from .moments import (
    fit_ratio_constant,
    moment_report,
    moment_upper_bound,
    tail_report,
)
from .progressions import brun_titchmarsh_report
from .sequences import (
    LinearDeltaSpec,
    PolynomialSpec,
    divisible_count,
    fit_divisibility_bound,
    linear_delta_sequence,
    poly_int_sequence,
    poly_prime_sequence,
)
from .smooth import (
    MultiplicativeSpec,
    enumerate_smooth,
    euler_product_bound,
    lcm_tuple_weight,
    smooth_divisor_sum,
)

SCHEMA = "tml/1"
_SPF_MAGIC = b"TMLSPF1"
_DEFAULT_SIEVE = 10**6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Prime-table cache (env TML_SIEVE_CACHE names a directory)

def _write_table(table: PrimeTable, path: Path) -> None:
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(_SPF_MAGIC)
        fh.write(struct.pack("<Q", table.limit))
        fh.write(table.spf.astype("<u4").tobytes())
    os.replace(tmp, path)


def _read_table(path: Path, limit: int) -> PrimeTable | None:
    try:
        with open(path, "rb") as fh:
            if fh.read(len(_SPF_MAGIC)) != _SPF_MAGIC:
                return None
            (stored,) = struct.unpack("<Q", fh.read(8))
            if stored != limit:
                return None
            spf = np.frombuffer(fh.read(), dtype="<u4").astype(np.uint32)
    except OSError:
        return None
    if spf.size != limit + 1:
        return None
    blocks = []
    chunk = 1 << 22
    for lo in range(2, limit + 1, chunk):
        hi = min(lo + chunk, limit + 1)
        idx = np.flatnonzero(
            spf[lo:hi] == np.arange(lo, hi, dtype=np.uint32)
        ).astype(np.int64) + lo
        blocks.append(idx)
    primes = np.concatenate(blocks) if blocks else np.empty(0, np.int64)
    return PrimeTable(limit=limit, primes=primes, spf=spf)


def get_prime_table(limit: int) -> PrimeTable:
    """Sieve, or reuse a serialized table from TML_SIEVE_CACHE."""
    cache = os.environ.get("TML_SIEVE_CACHE")
    if not cache:
        return sieve_primes(limit)
    path = Path(cache) / f"spf-{limit}.tmlspf"
    table = _read_table(path, limit)
    if table is not None:
        return table
    table = sieve_primes(limit)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        _write_table(table, path)
    except OSError:
        pass  # cache is best-effort
    return table


# ---------------------------------------------------------------------------
# Config

@dataclass
class RunConfig:
    command: str
    family: str = "poly-int"
    poly: tuple[int, ...] | None = None
    x: float | None = None
    a: int = 1
    shifts: tuple[int, ...] | None = None
    eta: float = 1.0
    s_values: tuple[int, ...] = ()
    thresholds: tuple[float, ...] = ()
    alpha: float = 0.5
    y_override: float | None = None
    sieve_limit: int = _DEFAULT_SIEVE
    fmt: str = "json"
    output: str | None = None
    exact: str = "auto"
    threads: int = 1
    epsilon: float = 0.5
    k_max: int = 100
    m_max: int = 1000
    p_max: int = 10**4
    ratio_max: int = 10**4
    n_max: int = 10**4
    y: float = 10.0
    fit_range: int = 10**7
    g_spec: str | None = None
    with_timings: bool = False
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "sieve_limit": self.sieve_limit,
            "format": self.fmt,
            "exact": self.exact,
            "threads": self.threads,
        }
        if self.command in ("moments", "tail", "bounds", "omega"):
            out["family"] = self.family
            if self.poly is not None:
                out["poly"] = list(self.poly)
            if self.x is not None:
                out["x"] = self.x
            if self.family == "linear-delta":
                out["a"] = self.a
                out["shifts"] = list(self.shifts or ())
                out["eta"] = self.eta
        if self.s_values:
            out["s"] = list(self.s_values)
        if self.thresholds:
            out["t"] = list(self.thresholds)
        if self.command in ("bounds", "omega"):
            out["alpha"] = self.alpha
            out["y_override"] = self.y_override
            out["g"] = self.g_spec
        if self.command == "bounds":
            out["fit_range"] = self.fit_range
        if self.command == "identities":
            out["y"] = self.y
            out["n_max"] = self.n_max
        if self.command == "rho":
            out["poly"] = list(self.poly or ())
            out["m_max"] = self.m_max
            out["p_max"] = self.p_max
            out["ratio_max"] = self.ratio_max
        if self.command == "brun-titchmarsh":
            out["x"] = self.x
            out["k_max"] = self.k_max
            out["epsilon"] = self.epsilon
        return out


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part.strip()) for part in text.split(",") if part.strip())


def _parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part.strip()) for part in text.split(",") if part.strip())


def _parse_s_list(text: str) -> tuple[int, ...]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return _parse_int_list(text)


def _parse_g(text: str | None, default_d: int | None) -> MultiplicativeSpec:
    if text is None or text == "auto":
        if default_d is None:
            return MultiplicativeSpec.unit()
        return MultiplicativeSpec.power_root(default_d)
    if text == "unit":
        return MultiplicativeSpec.unit()
    if ":" in text:
        kind, param = text.split(":", 1)
        param_i = int(param)
        if kind == "power-root":
            return MultiplicativeSpec.power_root(param_i)
        if kind == "linear-min":
            return MultiplicativeSpec.linear_min(param_i)
        if kind == "shifted-min":
            return MultiplicativeSpec.shifted_min(param_i)
    raise UsageError(
        f"unknown multiplicative weight {text!r} "
        "(use unit, power-root:D, linear-min:K or shifted-min:D)"
    )


def _build_sequence(cfg: RunConfig, table: PrimeTable):
    if cfg.family == "linear-delta":
        if cfg.shifts is None or cfg.x is None:
            raise UsageError("linear-delta needs --shifts and --x")
        spec = LinearDeltaSpec(a=cfg.a, shifts=cfg.shifts, x=cfg.x, eta=cfg.eta)
        return linear_delta_sequence(spec), None
    if cfg.poly is None or cfg.x is None:
        raise UsageError(f"family {cfg.family} needs --poly and --x")
    spec = PolynomialSpec(cfg.poly)
    if cfg.family == "poly-int":
        return poly_int_sequence(spec, cfg.x), spec
    if cfg.family == "poly-prime":
        return poly_prime_sequence(spec, cfg.x, table), spec
    raise UsageError(f"unknown family {cfg.family!r}")


def _default_y(bound_m: float, alpha: float) -> float:
    # natural log throughout
    return max(math.log(bound_m) ** alpha, 2.0)


# ---------------------------------------------------------------------------
# Commands

def _cmd_moments(cfg: RunConfig, table: PrimeTable) -> tuple[dict, int]:
    seq, _ = _build_sequence(cfg, table)
    exact = None if cfg.exact == "auto" else (cfg.exact == "on")
    rep = moment_report(seq, cfg.s_values or tuple(range(1, 7)), table,
                        exact=exact, threads=cfg.threads)
    return rep.to_dict(), 0


def _cmd_tail(cfg: RunConfig, table: PrimeTable) -> tuple[dict, int]:
    seq, _ = _build_sequence(cfg, table)
    exact = None if cfg.exact == "auto" else (cfg.exact == "on")
    rep = tail_report(
        seq,
        cfg.thresholds or (2.0, 2.5, 3.0, 3.5, 4.0),
        table,
        s_values=cfg.s_values or tuple(range(1, 9)),
        exact=exact,
        threads=cfg.threads,
    )
    return rep.to_dict(), 0


def _value_chain_constant(seq, y: float, alpha: float, table: PrimeTable) -> float:
    """max over sequence values v of alpha*(v/phi(v)) / prod_{p|v, p<=y}(1+1/p).

    Direct per-value fit: together with the smooth-set divisibility fit it
    makes the moment bound chain hold by construction even when the dense
    [2, M] scan is truncated.
    """
    from .arith import totient_ratio_parts

    num, den = totient_ratio_parts(seq.values, table)
    ratio = num.astype(np.float64) / den.astype(np.float64)
    prod = np.ones(seq.values.size, dtype=np.float64)
    for p in table.primes_up_to(y):
        p = int(p)
        mask = seq.values % p == 0
        prod[mask] *= (p + 1.0) / p
    return float((alpha * ratio / prod).max())


def _cmd_bounds(cfg: RunConfig, table: PrimeTable) -> tuple[dict, int]:
    seq, spec = _build_sequence(cfg, table)
    g = _parse_g(cfg.g_spec, spec.degree if spec is not None else None)
    y = cfg.y_override if cfg.y_override is not None else _default_y(seq.bound, cfg.alpha)
    dset = enumerate_smooth(y, table)
    omega_fit = fit_divisibility_bound(seq, g, dset)
    scan_max = min(int(seq.bound), cfg.fit_range)
    ratio_fit = fit_ratio_constant(scan_max, cfg.alpha, table)
    c_used = ratio_fit.constant
    truncated = scan_max < int(seq.bound)
    if truncated:
        # Dense scan could not cover every value; take the per-value fit
        # too so the chain below remains an actual theorem instance.
        c_used = max(c_used, _value_chain_constant(seq, y, cfg.alpha, table))
    exact = None if cfg.exact == "auto" else (cfg.exact == "on")
    s_values = cfg.s_values or tuple(range(1, 7))
    rep = moment_report(seq, s_values, table, exact=exact, threads=cfg.threads)
    rows = []
    violations = 0
    for s, total in zip(rep.s_values, rep.sums_float):
        bound = moment_upper_bound(
            omega_fit.constant, c_used / cfg.alpha, s, y, g, table
        )
        ok = total <= bound * (1 + 1e-12)
        violations += 0 if ok else 1
        rows.append({"s": s, "sum": total, "bound": bound, "ok": ok})
    payload = {
        "sequence": seq.label,
        "count": seq.count,
        "y": y,
        "g": g.label(),
        "rows": rows,
        "fitted_constants": {
            "ratio_constant": c_used,
            "ratio_scan_max": scan_max,
            "ratio_witness": ratio_fit.witness,
            "omega_constant": omega_fit.constant,
            "omega_witness": omega_fit.witness,
            "omega_gamma": omega_fit.gamma,
            "moment_growth": rep.growth_constant,
        },
        "violations": violations,
    }
    return payload, (2 if violations else 0)


def _cmd_omega(cfg: RunConfig, table: PrimeTable) -> tuple[dict, int]:
    seq, spec = _build_sequence(cfg, table)
    g = _parse_g(cfg.g_spec, None)
    y = cfg.y_override if cfg.y_override is not None else _default_y(seq.bound, cfg.alpha)
    dset = enumerate_smooth(y, table)
    rows = []
    for n in dset.members:
        cnt = divisible_count(seq, n)
        gval = float(g.at_squarefree(dset.factor(n)))
        rows.append({"n": n, "omega": cnt, "g": gval, "omega_g": cnt * gval})
    fit = fit_divisibility_bound(seq, g, dset)
    payload = {
        "sequence": seq.label,
        "count": seq.count,
        "y": y,
        "g": g.label(),
        "rows": rows,
        "fitted_constants": fit.to_dict(),
    }
    return payload, 0


_TEST_POLYNOMIALS = (
    (0, 1),  # x
    (1, 0, 1),  # x^2 + 1
    (-1, 0, 1),  # x^2 - 1
    (1, 1, 0, 1),  # x^3 + x + 1
    (3, 2),  # 2x + 3
)


def _cmd_rho(cfg: RunConfig, table: PrimeTable) -> tuple[dict, int]:
    spec = PolynomialSpec(cfg.poly)
    brute = root_counts_for_moduli(spec, np.arange(1, cfg.m_max + 1))
    crt = composed_root_counts(spec, cfg.m_max, table)[1:]
    mism = np.flatnonzero(brute != crt)
    rows = [
        {"m": int(m), "rho": int(brute[m - 1]), "rho_crt": int(crt[m - 1])}
        for m in range(1, cfg.m_max + 1)
    ]
    for p in table.primes_up_to(cfg.p_max):
        lagrange_bound(spec, int(p))  # raises InvariantViolation on failure
    ratio, witness = max_root_ratio(spec, cfg.ratio_max, table)
    payload = {
        "poly": list(spec.coefficients),
        "rows": rows,
        "consistency": {
            "checked": int(cfg.m_max),
            "mismatches": int(mism.size),
            "first_mismatch": int(mism[0] + 1) if mism.size else None,
        },
        "lagrange": {"p_max": cfg.p_max, "violations": 0},
        "fitted_constants": {"root_ratio": ratio, "root_ratio_witness": witness},
    }
    return payload, (2 if mism.size else 0)


def _identity_suite(y: float, n_max: int, table: PrimeTable) -> list[dict]:
    results = []

    def record(name: str, cases: int, failures: int):
        results.append({"identity": name, "cases": cases, "failures": failures})

    # Divisor-sum identity at several smoothness bounds.
    cases = failures = 0
    for yy in (2.0, 5.0, 10.0, 100.0):
        for n in range(1, n_max + 1):
            lhs, rhs = smooth_divisor_sum(factorize(n, table), yy)
            cases += 1
            failures += lhs != rhs
    record("divisor-sum", cases, failures)

    # Exact Euler product identity over the smooth set.
    cases = failures = 0
    weights = (
        MultiplicativeSpec.unit(),
        MultiplicativeSpec.linear_min(3),
        MultiplicativeSpec.shifted_min(2),
    )
    for yy in (3.0, 7.0, 13.0):
        dset = enumerate_smooth(yy, table)
        for s in range(1, 6):
            for g in weights:
                lhs = Fraction(0)
                for n in dset.members:
                    lhs += lcm_tuple_weight(n, s) / g.at_squarefree(dset.factor(n))
                rhs = euler_product_bound(yy, s, g, table)
                cases += 1
                failures += lhs != rhs
    record("euler-product", cases, failures)

    # Multiplicativity of the lcm-tuple weight over coprime pairs.
    cases = failures = 0
    dset = enumerate_smooth(min(y, 13.0), table)
    for s in (1, 2, 3):
        for m in dset.members:
            for n in dset.members:
                if m > 1 and n > 1 and math.gcd(m, n) == 1 and m * n in dset:
                    cases += 1
                    failures += lcm_tuple_weight(m * n, s) != lcm_tuple_weight(
                        m, s
                    ) * lcm_tuple_weight(n, s)
    record("weight-multiplicativity", cases, failures)

    # Mean-value bound (1+1/p)^s - 1 < e s / p for p > s: comparing
    # against a rational cut BELOW e proves the strict inequality.
    cases = failures = 0
    e_cut_num, e_cut_den = 27182818284, 10**10  # 2.7182818284 < e
    for p in (int(q) for q in table.primes_up_to(min(1000.0, float(table.limit)))):
        a, b = p + 1, p  # (1+1/p)
        an, bn = 1, 1
        for s in range(1, p):
            an *= a
            bn *= b
            cases += 1
            # ((p+1)^s - p^s)/p^s < e s/p  <=>  p((p+1)^s - p^s) * e_den < e_num * s * p^s
            if p * (an - bn) * e_cut_den >= e_cut_num * s * bn:
                failures += 1
    record("mean-value-bound", cases, failures)

    # n/phi(n) = sum over squarefree divisors d of 1/phi(d), exactly.
    cases = failures = 0
    for n in range(1, n_max + 1):
        f = factorize(n, table)
        total = Fraction(0)
        ps = f.distinct_primes()
        for bits in range(1 << len(ps)):
            d_phi = 1
            m = bits
            i = 0
            while m:
                if m & 1:
                    d_phi *= ps[i] - 1
                m >>= 1
                i += 1
            total += Fraction(1, d_phi)
        cases += 1
        failures += total != totient_ratio(f)
    record("ratio-divisor-sum", cases, failures)

    return results


def _cmd_identities(cfg: RunConfig, table: PrimeTable) -> tuple[dict, int]:
    results = _identity_suite(cfg.y, cfg.n_max, table)
    bad = sum(r["failures"] for r in results)
    return {"rows": results, "failures": bad}, (2 if bad else 0)


def _cmd_brun_titchmarsh(cfg: RunConfig, table: PrimeTable) -> tuple[dict, int]:
    rep = brun_titchmarsh_report(cfg.x or float(table.limit), cfg.k_max, cfg.epsilon, table)
    bad = sum(1 for r in rep.rows if not (r["classic_ok"] and r["working_ok"]))
    payload = rep.to_dict()
    payload["violations"] = bad
    return payload, (2 if bad else 0)


def _cmd_report_all(cfg: RunConfig, table: PrimeTable) -> tuple[dict, int]:
    sections = {}
    worst = 0

    ident, code = _cmd_identities(
        RunConfig(command="identities", y=10.0, n_max=2000), table
    )
    sections["identities"] = ident
    worst = max(worst, code)

    mom_cfg = RunConfig(command="moments", poly=(1, 0, 1), x=10**4,
                        s_values=tuple(range(1, 7)))
    sections["moments"], _ = _cmd_moments(mom_cfg, table)

    tail_cfg = RunConfig(command="tail", poly=(0, 1), x=10**5,
                         thresholds=(2.0, 2.5, 3.0, 3.5))
    sections["tail"], _ = _cmd_tail(tail_cfg, table)

    rho_cfg = RunConfig(command="rho", poly=(1, 0, 1), m_max=1000,
                        p_max=10**4, ratio_max=10**4)
    sections["rho"], code = _cmd_rho(rho_cfg, table)
    worst = max(worst, code)

    bt_cfg = RunConfig(command="brun-titchmarsh", x=10**5, k_max=50, epsilon=0.5)
    sections["brun_titchmarsh"], code = _cmd_brun_titchmarsh(bt_cfg, table)
    worst = max(worst, code)

    return {"sections": sections}, worst


_COMMANDS = {
    "moments": _cmd_moments,
    "tail": _cmd_tail,
    "bounds": _cmd_bounds,
    "omega": _cmd_omega,
    "rho": _cmd_rho,
    "identities": _cmd_identities,
    "brun-titchmarsh": _cmd_brun_titchmarsh,
    "report-all": _cmd_report_all,
}


# ---------------------------------------------------------------------------
# Emission

def _flatten_rows(payload: dict) -> list[dict]:
    rows = payload.get("rows")
    if rows is None and "sections" in payload:
        rows = []
        for name, section in payload["sections"].items():
            for row in section.get("rows", ()):
                rows.append({"section": name, **row})
    return rows or []


def _render(payload: dict, cfg: RunConfig, wall_ms: float | None) -> str:
    if cfg.fmt == "csv":
        rows = _flatten_rows(payload)
        buf = io.StringIO()
        if rows:
            writer = csv.writer(buf, lineterminator="\n")
            header = list(rows[0].keys())
            writer.writerow(header)
            for row in rows:
                writer.writerow([_csv_cell(row.get(k)) for k in header])
        return buf.getvalue()
    doc = {
        "schema": SCHEMA,
        "version": __version__,
        "command": cfg.command,
        "config": cfg.to_dict(),
        "results": payload,
        "fitted_constants": payload.get("fitted_constants", {}),
        "timings": None if wall_ms is None else {"wall_ms": wall_ms},
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _csv_cell(value):
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def build_parser() -> _Parser:
    parser = _Parser(prog="tml", description=__doc__)
    parser.add_argument("--version", action="version", version=f"tml {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--sieve-limit", type=int, default=_DEFAULT_SIEVE)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default=None)
        p.add_argument("--exact", choices=("auto", "on", "off"), default="auto")
        p.add_argument("--with-timings", action="store_true",
                       help="embed wall time in the payload (breaks byte-stability)")

    def add_sequence(p):
        p.add_argument("--family", choices=("poly-int", "poly-prime", "linear-delta"),
                       default="poly-int")
        p.add_argument("--poly", help="coefficients b0,b1,...,bd (constant term first)")
        p.add_argument("--x", type=float)
        p.add_argument("--a", type=int, default=1)
        p.add_argument("--shifts", help="comma-separated shifts for linear-delta")
        p.add_argument("--eta", type=float, default=1.0)

    p = sub.add_parser("moments", help="moment sums S_s with the growth fit")
    add_common(p)
    add_sequence(p)
    p.add_argument("--s", default="1..6", help="orders, e.g. 1..6 or 1,2,4")

    p = sub.add_parser("tail", help="tail counts with Markov and fitted decay")
    add_common(p)
    add_sequence(p)
    p.add_argument("--t", default="2,2.5,3,3.5,4")
    p.add_argument("--s", default="1..8")

    p = sub.add_parser("bounds", help="moment bound chain with fitted constants")
    add_common(p)
    add_sequence(p)
    p.add_argument("--s", default="1..6")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--y", type=float, default=None, help="override y = max((ln M)^alpha, 2)")
    p.add_argument("--g", default="auto")
    p.add_argument("--fit-range", type=int, default=10**7)

    p = sub.add_parser("omega", help="divisibility counts over a smooth set")
    add_common(p)
    add_sequence(p)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--g", default="unit")

    p = sub.add_parser("rho", help="polynomial congruence root counts")
    add_common(p)
    p.add_argument("--poly", required=True)
    p.add_argument("--m-max", type=int, default=1000)
    p.add_argument("--p-max", type=int, default=10**4)
    p.add_argument("--ratio-max", type=int, default=10**4)

    p = sub.add_parser("identities", help="exact identity verification suite")
    add_common(p)
    p.add_argument("--y", type=float, default=10.0)
    p.add_argument("--n-max", type=int, default=10**4)

    p = sub.add_parser("brun-titchmarsh", help="primes in progressions vs upper bounds")
    add_common(p)
    p.add_argument("--x", type=float, default=10**6)
    p.add_argument("--k-max", type=int, default=100)
    p.add_argument("--epsilon", type=float, default=0.5)

    p = sub.add_parser("report-all", help="run every standard section")
    add_common(p)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.sieve_limit = args.sieve_limit
    cfg.threads = args.threads
    cfg.fmt = args.format
    cfg.output = args.output
    cfg.exact = args.exact
    cfg.with_timings = args.with_timings
    if hasattr(args, "family"):
        cfg.family = args.family
        cfg.poly = _parse_int_list(args.poly) if args.poly else None
        cfg.x = args.x
        cfg.a = args.a
        cfg.shifts = _parse_int_list(args.shifts) if args.shifts else None
        cfg.eta = args.eta
    elif hasattr(args, "poly"):
        cfg.poly = _parse_int_list(args.poly) if args.poly else None
    if hasattr(args, "s"):
        cfg.s_values = _parse_s_list(args.s)
    if hasattr(args, "t"):
        cfg.thresholds = _parse_float_list(args.t)
    if hasattr(args, "alpha"):
        cfg.alpha = args.alpha
        if not 0 < cfg.alpha <= 1:
            raise UsageError("alpha must lie in (0, 1]")
    if hasattr(args, "y") and args.command in ("bounds", "omega"):
        cfg.y_override = args.y
    if hasattr(args, "y") and args.command == "identities":
        cfg.y = args.y
    if hasattr(args, "g"):
        cfg.g_spec = args.g
    if hasattr(args, "fit_range"):
        cfg.fit_range = args.fit_range
    if hasattr(args, "n_max"):
        cfg.n_max = args.n_max
    if hasattr(args, "m_max"):
        cfg.m_max = args.m_max
    if hasattr(args, "p_max"):
        cfg.p_max = args.p_max
    if hasattr(args, "ratio_max"):
        cfg.ratio_max = args.ratio_max
    if hasattr(args, "k_max"):
        cfg.k_max = args.k_max
    if hasattr(args, "epsilon"):
        cfg.epsilon = args.epsilon
    if args.command == "brun-titchmarsh":
        cfg.x = args.x
    return cfg


def run(cfg: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit code."""
    start = time.perf_counter()
    table = get_prime_table(cfg.sieve_limit)
    handler = _COMMANDS[cfg.command]
    payload, code = handler(cfg, table)
    wall_ms = (time.perf_counter() - start) * 1000.0
    text = _render(payload, cfg, wall_ms if cfg.with_timings else None)
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"tml {cfg.command}: wall {wall_ms:.1f} ms", file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
        return run(cfg)
    except UsageError as exc:
        print(f"tml: usage error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, BoundsError, CapacityError, DivergenceError,
            InsufficientDataError) as exc:
        print(f"tml: config error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"tml: invariant violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
