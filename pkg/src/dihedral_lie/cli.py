"""Command line driver: dimension tables, theorem checks, cohomology and oracle comparisons.

Exit status is 0 when everything passes, 1 when a check fails (diagnostics as
JSON on stderr) and 2 for usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd

from .linalg import MODE_ENV, ComplexError, WellDefinednessError, default_mode, fast_primes

SUITES = ("shuffle-implies-dihedral", "cojacobi", "d-squared-zero", "acyclicity", "level-iso", "distribution")
VARIANT_NAMES = ("D", "Dhat", "Dtilde", "Dprime", "Dun")


class UsageError(Exception):
    pass


# -- argument parsing -------------------------------------------------------

def int_list(text: str) -> list[int]:
    """Parse '3', '8..20', '5,7,11' or mixtures like '1,4..6'."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise ValueError
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty range")
    return out


def version() -> str:
    try:
        from importlib.metadata import version as _v
        return _v("artifact")
    except Exception:
        return "unknown"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("fast", "exact"), default=None,
                        help=f"rank strategy (default: ${MODE_ENV} or fast)")
    common.add_argument("--format", choices=("json", "text", "csv"), default="text")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--manifest", help="write a reproducibility manifest here")
    common.add_argument("--jobs", type=int, default=1, help="parallel worker processes")

    p = argparse.ArgumentParser(prog="dihedral-lie", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dims", parents=[common], help="dimension tables")
    d.add_argument("--variant", choices=VARIANT_NAMES, default="D")
    d.add_argument("--depth", "--m", dest="m", type=int_list, default=[1])
    d.add_argument("--N", type=int_list, default=[1])
    d.add_argument("--w", type=int_list, default=None)
    d.add_argument("--modular", action="store_true", help="coinvariant complex dimensions instead")

    v = sub.add_parser("verify", parents=[common], help="run a named check suite")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--w-max", type=int, default=9)
    v.add_argument("--m-max", type=int, default=3)
    v.add_argument("--N", type=int_list, default=[1])
    v.add_argument("--p", type=int_list, default=None)

    c = sub.add_parser("cohomology", parents=[common], help="homology of cochain complexes")
    c.add_argument("--variant", choices=("D", "Dhat"), default="D")
    c.add_argument("--depth", "--m", dest="m", type=int_list, default=[2])
    c.add_argument("--N", type=int_list, default=[1])
    c.add_argument("--w", type=int_list, default=None)
    c.add_argument("--modular", action="store_true", help="coinvariant complexes of rank m")
    c.add_argument("--level", type=int_list, default=None, help="level-p rank 2 complexes")

    s = sub.add_parser("series", parents=[common], help="generating series coefficients")
    s.add_argument("--name", choices=("a1", "a2", "d2", "d3", "cusp"), action="append")
    s.add_argument("--order", type=int, default=20)

    k = sub.add_parser("compare", parents=[common], help="brute force against closed forms and a second route")
    k.add_argument("--diagonal", action="store_true")
    k.add_argument("--p", type=int_list, default=[5, 7, 11, 13])
    k.add_argument("--depth", "--m", dest="m", type=int_list, default=[2, 3])
    k.add_argument("--w", type=int_list, default=None)
    return p


# -- jobs (top level so they pickle) ------------------------------------------

def _job(task):
    kind, args = task
    return JOBS[kind](*args)


def _run_jobs(tasks, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [_job(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_job, tasks))


def _dim_cell(variant, N, w, m):
    from .dihedral import build_space
    return {"variant": variant, "N": N, "w": w, "m": m, "dim": build_space(w, m, N, variant).dim}


def _modular_dims_cell(m, w):
    from .modcx import coinvariant_complex
    return {"m": m, "w": w, "dims": coinvariant_complex(m, w).dims}


def _cochain_cell(variant, N, w, m):
    from .dihedral import DihedralCoalgebra
    cx = DihedralCoalgebra(N, variant).cochain_complex(w, m)
    return {"variant": variant, "N": N, "w": w, "m": m, "dims": cx.dims,
            "homology": cx.homology(), "euler": cx.euler()}


def _modular_cochain_cell(m, w):
    from .modcx import coinvariant_complex
    return coinvariant_complex(m, w).report()


def _level_cell(p):
    from .modcx import level_two_complex
    return level_two_complex(p).report()


def _check(name, fn, *args):
    try:
        ok, detail = fn(*args)
    except (WellDefinednessError, ComplexError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return {"check": name, "ok": bool(ok), "detail": detail}


def _sid(w, m, N):
    from .dihedral import shuffle_implies_dihedral
    total, inside = shuffle_implies_dihedral(w, m, N)
    return total == inside, f"{inside}/{total} dihedral vectors in the shuffle span"


def _dahs(m, w):
    from .modcx import dihedral_operators, operator_span_contains, relation_operators
    ok = operator_span_contains(m, w, dihedral_operators(m), relation_operators(m, 1))
    return ok, "coinvariants with S^(w-m) V_m"


def _dahs_level(m, p):
    from .modcx import dihedral_operators, level_span_contains, relation_operators
    return level_span_contains(m, p, dihedral_operators(m), relation_operators(m, 1)), "level coinvariants"


def _cojacobi(N, w, m):
    from .dihedral import DihedralCoalgebra
    cx = DihedralCoalgebra(N, "D").cochain_complex(w, m)
    return True, f"dims {cx.dims}"


def _d2zero(m, w):
    from .modcx import coinvariant_complex
    cx = coinvariant_complex(m, w)
    return True, f"dims {cx.dims}"


def _acyclic(w):
    from .dihedral import DihedralCoalgebra
    h = DihedralCoalgebra(1, "D").cochain_complex(w, 3).homology()
    return not any(h), f"homology {h}"


def _iso(p):
    from .modcx import dihedral_iso_check
    r = dihedral_iso_check(p)
    return r.ok, r.as_dict()


def _totient(n: int) -> int:
    return sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)


def _prime_divisors(n: int) -> int:
    return sum(1 for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q)))


def _distribution(N, w):
    # ranks of K_{2w-1} of Z[zeta_N, 1/N]: units mod torsion at w = 1
    from .dihedral import build_space
    expected = _totient(N) // 2 + (_prime_divisors(N) - 1 if w == 1 else 0)
    got = build_space(w, 1, N).dim
    return got == expected, f"dim {got}, K-theory rank {expected}"


JOBS = {
    "dim": _dim_cell, "modular_dims": _modular_dims_cell, "cochain": _cochain_cell,
    "modular_cochain": _modular_cochain_cell, "level": _level_cell,
    "check": lambda name, fn, args: _check(name, CHECKS[fn], *args),
}
CHECKS = {"sid": _sid, "dahs": _dahs, "dahs_level": _dahs_level, "cojacobi": _cojacobi,
          "d2zero": _d2zero, "acyclic": _acyclic, "iso": _iso, "distribution": _distribution}


def _check_task(name, fn, *args):
    return ("check", (name, fn, args))


# -- commands ------------------------------------------------------------------

def _default_w(args, lo=1, hi=12):
    return args.w if args.w is not None else list(range(lo, hi + 1))


def cmd_dims(args):
    if args.modular:
        if any(m > 3 or m < 1 for m in args.m):
            raise UsageError("modular complexes exist for 1 <= m <= 3")
        tasks = [("modular_dims", (m, w)) for m in args.m for w in _default_w(args) if w >= m]
        return _run_jobs(tasks, args.jobs), []
    if args.variant == "Dun":
        from .dihedral import _is_prime
        if not all(_is_prime(N) for N in args.N):
            raise UsageError("Dun needs prime N")
        tasks = [("dim", ("Dun", N, m, m)) for N in args.N for m in args.m]
    else:
        tasks = [("dim", (args.variant, N, w, m)) for N in args.N for m in args.m
                 for w in _default_w(args) if w >= m]
    return _run_jobs(tasks, args.jobs), []


def cmd_cohomology(args):
    if args.level:
        return _run_jobs([("level", (p,)) for p in args.level], args.jobs), []
    if args.modular:
        if any(m > 3 or m < 1 for m in args.m):
            raise UsageError("modular complexes exist for 1 <= m <= 3")
        tasks = [("modular_cochain", (m, w)) for m in args.m for w in _default_w(args) if w >= m]
    else:
        tasks = [("cochain", (args.variant, N, w, m)) for N in args.N for m in args.m
                 for w in _default_w(args) if w >= m]
    return _run_jobs(tasks, args.jobs), []


def cmd_series(args):
    from .series import NAMED, expand
    names = args.name or sorted(NAMED)
    if args.order < 0:
        raise UsageError("order must be >= 0")
    coeffs = {n: expand(NAMED[n], args.order) for n in names}
    rows = [dict({"w": w}, **{n: coeffs[n][w] for n in names}) for w in range(args.order + 1)]
    return rows, []


def _suite_tasks(args):
    wmax, mmax, Ns = args.w_max, args.m_max, args.N
    ps = args.p
    t = []
    if args.suite == "shuffle-implies-dihedral":
        for N in Ns:
            for m in range(2, min(mmax, 3) + 1):
                for w in range(m, wmax + 1):
                    t.append(_check_task(f"zhds N={N} m={m} w={w}", "sid", w, m, N))
        for m in range(2, min(mmax, 3) + 1):
            for w in range(m, min(wmax, 11) + 1):
                t.append(_check_task(f"modular m={m} w={w}", "dahs", m, w))
            for p in ps or [5, 7]:
                t.append(_check_task(f"modular level m={m} p={p}", "dahs_level", m, p))
    elif args.suite == "cojacobi":
        for N in Ns:
            for m in range(1, mmax + 1):
                for w in range(m, wmax + 1):
                    t.append(_check_task(f"N={N} w={w} m={m}", "cojacobi", N, w, m))
        for p in ps or []:
            for m in range(2, mmax + 1):
                t.append(_check_task(f"diagonal p={p} m={m}", "cojacobi", p, m, m))
    elif args.suite == "d-squared-zero":
        for m in range(2, min(mmax, 3) + 1):
            for w in range(m, wmax + 1):
                t.append(_check_task(f"m={m} w={w}", "d2zero", m, w))
    elif args.suite == "acyclicity":
        for w in range(3, wmax + 1, 2):
            t.append(_check_task(f"depth 3 w={w}", "acyclic", w))
    elif args.suite == "level-iso":
        for p in ps or [5, 7, 11, 13]:
            t.append(_check_task(f"p={p}", "iso", p))
    elif args.suite == "distribution":
        for N in Ns:
            if N < 3:
                raise UsageError("the distribution suite needs N >= 3")
            for w in range(1, wmax + 1):
                t.append(_check_task(f"N={N} w={w}", "distribution", N, w))
    return t


def cmd_verify(args):
    rows = _run_jobs(_suite_tasks(args), args.jobs)
    for r in rows:
        r["suite"] = args.suite
    return rows, [r for r in rows if not r["ok"]]


def _brute_diag(p, m):
    from .dihedral import build_space
    return build_space(m, m, p).dim


def _level_coinvariants(p, m):
    from .modcx import level_coinvariant_dim
    return level_coinvariant_dim(m, p)


JOBS["brute_diag"] = _brute_diag
JOBS["level_coinv"] = _level_coinvariants


def cmd_compare(args):
    from .series import D2, D3, SeriesArgumentError, closed_form, expand
    rows = []
    if args.diagonal:
        if any(m not in (2, 3) for m in args.m):
            raise UsageError("diagonal comparison covers m = 2, 3")
        cells = [(p, m) for p in args.p for m in args.m]
        try:
            closed = [closed_form("depth2_level" if m == 2 else "depth3_level", p=p) for p, m in cells]
        except SeriesArgumentError as exc:
            raise UsageError(str(exc)) from None
        brute = _run_jobs([("brute_diag", c) for c in cells], args.jobs)
        modular = _run_jobs([("level_coinv", c) for c in cells], args.jobs)
        for (p, m), b, c, k in zip(cells, brute, closed, modular):
            rows.append({"p": p, "m": m, "brute_force": b, "closed_form": c, "modular": k,
                         "agree": b == c == k})
    else:
        ws = _default_w(args, 1, 15)
        series = {2: expand(D2, max(ws)), 3: expand(D3, max(ws))}
        tasks = [("dim", ("D", 1, w, m)) for m in args.m for w in ws if w >= m]
        for cell in _run_jobs(tasks, args.jobs):
            w, m = cell["w"], cell["m"]
            kind = {1: "depth1", 2: "depth2", 3: "depth3"}.get(m)
            if kind is None:
                raise UsageError("compare covers depths 1..3")
            c = closed_form(kind, w=w)
            s = series[m][w] if m in series else c
            rows.append({"w": w, "m": m, "brute_force": cell["dim"], "closed_form": c, "series": s,
                         "agree": cell["dim"] == c == s})
    return rows, [r for r in rows if not r["agree"]]


COMMANDS = {"dims": cmd_dims, "verify": cmd_verify, "cohomology": cmd_cohomology,
            "series": cmd_series, "compare": cmd_compare}


# -- rendering -------------------------------------------------------------------

def canonical(x):
    """Plain JSON data with rationals as 'num/den' strings."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): canonical(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [canonical(v) for v in x]
    return x


def _cell(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def render(rows: list, fmt: str) -> str:
    rows = [canonical(r) for r in rows]
    if fmt == "json":
        return json.dumps(rows, sort_keys=True, indent=1) + "\n"
    cols: list[str] = []
    for r in rows:
        cols.extend(k for k in r if k not in cols)
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(cols)
        for r in rows:
            wr.writerow([_cell(r.get(c, "")) for c in cols])
        return buf.getvalue()
    table = [cols] + [[_cell(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
    return "".join("  ".join(x.rjust(wd) for x, wd in zip(row, widths)).rstrip() + "\n" for row in table)


def manifest(args, mode: str) -> dict:
    return {"command": args.command, "mode": mode, "primes": list(fast_primes()) if mode == "fast" else [],
            "version": version()}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    if args.mode:
        os.environ[MODE_ENV] = args.mode
    try:
        mode = default_mode()
    except ValueError as exc:
        parser.error(str(exc))
    try:
        rows, failures = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    text = render(rows, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.manifest:
        with open(args.manifest, "w") as fh:
            json.dump(manifest(args, mode), fh, sort_keys=True, indent=1)
            fh.write("\n")
    if failures:
        diag = {"command": args.command, "failures": canonical(failures)}
        sys.stderr.write(json.dumps(diag, sort_keys=True) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
