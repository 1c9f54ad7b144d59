"""Command-line front end.

Subcommands: ``weierstrass``, ``autgroup``, ``lucas``, ``verify-all``.
Reports go to stdout (deterministic bytes: canonical ordering, sorted
keys); progress and timing go to stderr.  Exit status: 0 when every
asserted invariant passed, 1 on verification failure, 2 on usage errors.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .errors import HurwitzLabError, NotSmooth, PreconditionViolated
from .gf import make_field
from .hurwitz import (
    HurwitzSpec, cubic_g, div_dx, fundamental_divisors, verify_weierstrass,
)
from .lucas import (
    check_maximality, cn_flex_census, total_flex_census,
    verify_fundamental_identity,
)

DEFAULT_SCAN_BUDGET = 2 ** 13   # largest scan field for auto-chosen k0

DEFAULT_MATRIX = """\
weierstrass n=6 p=3 k0=6 cap=2^50
weierstrass n=4 p=5 k0=4
weierstrass n=6 p=19 k0=3 cap=2^65
weierstrass n=7 p=2 k0=6 cap=2^44
weierstrass n=5 p=2 k0=8
weierstrass n=4 p=3 k0=6
weierstrass n=4 p=2 k0=6
weierstrass n=5 p=5 k0=3
discriminant nmax=60 pmax=60
divisors n=4
divisors n=5
divisors n=6
divisors n=7
autgroup n=4 p=5
autgroup n=5 p=2
autgroup n=5 p=13
autgroup n=6 p=5
subgroups n=4
subgroups n=5
subgroups n=6
fixedpoints n=4 p=3
fixedpoints n=5 p=2
genus n=4 p=3
genus n=5 p=2
lucas-identities nmax=50
lucas p=5 r=1 n=3
lucas p=7 r=1 n=4 census=1
lucas p=3 r=2 n=5
lucas p=19 r=1 n=5 census=1
hurwitz-flexes n=4 p=5 k=4
"""


def _log(msg):
    print(msg, file=sys.stderr)


def emit_report(report, fmt):
    """Deterministic serialization of a report dict/str."""
    if fmt == "json":
        return (json.dumps(report, sort_keys=True, indent=2,
                           separators=(",", ": ")) + "\n").encode()
    if isinstance(report, str):
        return (report + "\n").encode()
    lines = _as_table(report)
    return ("\n".join(lines) + "\n").encode()


def _as_table(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_as_table(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {val}")
    elif isinstance(obj, list):
        for val in obj:
            if isinstance(val, (dict, list)):
                lines.extend(_as_table(val, indent + 1))
                lines.append(pad + "-")
            else:
                lines.append(f"{pad}- {val}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _parse_cap(text):
    if text is None or isinstance(text, int):
        return text
    if "^" in text:
        base, exp = text.split("^", 1)
        return int(base) ** int(exp)
    return int(text)


def _auto_scan_degree(spec, construction_k, w_empty):
    """Default completeness-scan degree.

    With a nonempty inflection set the scan field must embed into the
    construction field, so take the largest divisor of its degree whose
    field is still cheap to sweep; for empty sets any degree works.
    """
    if w_empty:
        k0 = 1
        while spec.p ** (k0 + 1) <= 2 ** 11:
            k0 += 1
        return k0
    best = 1
    for k0 in range(1, construction_k + 1):
        if construction_k % k0 == 0 and spec.p ** k0 <= DEFAULT_SCAN_BUDGET:
            best = k0
    return best


# ---------------------------------------------------------------------------
# pipelines behind the subcommands (shared with verify-all)

def run_weierstrass(n, p, k0=None, cap=None):
    spec = HurwitzSpec(n, p)
    if k0 is None:
        from .hurwitz import weierstrass_closed_form
        ws = weierstrass_closed_form(spec, arith_cap=cap)
        k0 = _auto_scan_degree(spec, ws.field.k, not ws.w)
    _log(f"weierstrass n={n} p={p}: scanning GF({p}^{k0})")
    report = verify_weierstrass(spec, k0, arith_cap=cap)
    out = report.to_json()
    eps = report.wset.eps_case.eps
    total = sum(r.j - eps for r in report.wset.records)
    out["bookkeeping"] = {
        "sum_j_minus_eps": total,
        "degR": report.wset.degR,
        "identity_holds": report.wset.degree_identity_checked,
    }
    return out


def run_autgroup(n, p, table=None):
    from .autgroup import (
        check_all_automorphisms, generate_group, genus_table,
        subgroup_classes, verify_subgroup_classification,
    )
    spec = HurwitzSpec(n, p)
    if table == "genus":
        rows = genus_table(spec)
        return {"spec": {"n": n, "p": p},
                "rows": [r.to_json() for r in rows]}
    if table == "subgroups":
        classes = verify_subgroup_classification(n)
        return {"spec": {"n": n, "p": p},
                "classes": [c.to_json() for c in classes],
                "oracle_verified": True}
    group = generate_group(spec)
    assert check_all_automorphisms(group)
    return {"spec": {"n": n, "p": p},
            "order": group.order,
            "field": {"p": group.ctx.p, "k": group.ctx.k},
            "relation_mu_sigma": "mu sigma mu^-1 = sigma^(n-1)",
            "all_elements_fix_form": True}


def run_lucas(p, r, n=None, census=False):
    if n is None:
        ns = [d for d in range(3, (p ** r + 1) // 2 + 1)
              if ((p ** r + 1) // 2) % d == 0]
    else:
        ns = [n]
    out = {"p": p, "r": r, "reports": []}
    for nn in ns:
        _log(f"lucas n={nn} p={p} r={r}: counting points over GF({p}^{2 * r})")
        rep = check_maximality(nn, p, r).to_json()
        if census:
            rep["census"] = cn_flex_census(nn, p, r).to_json()
        out["reports"].append(rep)
    return out


def _run_discriminant_sweep(nmax, pmax):
    from sympy import primerange
    checked = 0
    for p in primerange(3, pmax + 1):
        for n in range(3, nmax + 1):
            if (n * n - n) % p == 0 or (n * n - n + 1) % p == 0:
                continue
            cubic_g(HurwitzSpec(n, p))  # asserts the discriminant identity
            checked += 1
    return {"checked_pairs": checked, "identity": "disc = m^4 (n^2-4n+7)^2"}


def _run_divisors(n):
    branch_ps = {4: (2, 3, 5), 5: (5, 2, 11), 6: (3, 5, 47), 7: (7, 2, 37)}
    ps = branch_ps.get(n)
    if ps is None:
        raise PreconditionViolated(f"no divisor test primes for n = {n}")
    out = {"n": n, "line_cuts_checked": [], "div_dx_degrees": {}}
    for p in ps:
        spec = HurwitzSpec(n, p)
        fundamental_divisors(spec)  # asserts the closed forms
        out["line_cuts_checked"].append(p)
        d = div_dx(spec)
        assert d.degree() == (n + 1) * (n - 2)
        out["div_dx_degrees"][str(p)] = d.degree()
    return out


def _run_subgroups(n):
    from .autgroup import verify_subgroup_classification
    classes = verify_subgroup_classification(n)
    return {"n": n, "classes": len(classes), "oracle_verified": True}


def _run_fixedpoints(n, p):
    from .autgroup import (
        _pow, fixed_point_field, fixed_points, generate_group,
        ramification_filtration,
    )
    spec = HurwitzSpec(n, p)
    ctx = fixed_point_field(spec)
    group = generate_group(spec, ctx)
    out = {"n": n, "p": p, "field": {"p": p, "k": ctx.k}}
    mu_fixed = fixed_points(group.mu, spec, ctx)
    out["mu_fixed"] = [pt.to_json() for pt in mu_fixed]
    if n % 3 == 2:
        tau = _pow(group.sigma, spec.m // 3, ctx)
        out["tau_mu_fixed"] = [pt.to_json() for pt in
                               fixed_points(tau * group.mu, spec, ctx)]
        out["tau2_mu_fixed"] = [pt.to_json() for pt in
                                fixed_points(tau * tau * group.mu, spec, ctx)]
    if p == 3 and n % 3 != 2:
        pt = mu_fixed[0]
        stab = [group.by_abstract[(0, s)] for s in range(3)]
        out["filtration_at_diagonal_point"] = ramification_filtration(
            spec, ctx, pt, stab)
    return out


def _run_genus(n, p):
    from .autgroup import genus_table
    rows = genus_table(HurwitzSpec(n, p))
    return {"n": n, "p": p, "rows": [r.to_json() for r in rows]}


def _run_lucas_identities(nmax):
    for p in (3, 5, 7, 13, 19):
        for n in range(2, nmax + 1):
            assert verify_fundamental_identity(n, p), f"identity failed {n},{p}"
    return {"nmax": nmax, "primes": [3, 5, 7, 13, 19], "all_pass": True}


def _run_hurwitz_flexes(n, p, k):
    spec = HurwitzSpec(n, p)
    ctx = make_field(p, k)
    census = total_flex_census(spec.form(ctx), ctx, f"H_{n}/GF({p}^{k})")
    assert census.total_flex_count == 0, "Hurwitz curve has a total inflection"
    return census.to_json()


MATRIX_RUNNERS = {
    "weierstrass": lambda kw: run_weierstrass(
        kw["n"], kw["p"], kw.get("k0"), _parse_cap(kw.get("cap"))),
    "autgroup": lambda kw: run_autgroup(kw["n"], kw["p"]),
    "lucas": lambda kw: run_lucas(kw["p"], kw["r"], kw.get("n"),
                                  bool(kw.get("census"))),
    "discriminant": lambda kw: _run_discriminant_sweep(kw["nmax"], kw["pmax"]),
    "divisors": lambda kw: _run_divisors(kw["n"]),
    "subgroups": lambda kw: _run_subgroups(kw["n"]),
    "fixedpoints": lambda kw: _run_fixedpoints(kw["n"], kw["p"]),
    "genus": lambda kw: _run_genus(kw["n"], kw["p"]),
    "lucas-identities": lambda kw: _run_lucas_identities(kw["nmax"]),
    "hurwitz-flexes": lambda kw: _run_hurwitz_flexes(kw["n"], kw["p"], kw["k"]),
}


def parse_matrix(text):
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        cmd = parts[0]
        if cmd not in MATRIX_RUNNERS:
            raise PreconditionViolated(f"line {lineno}: unknown row kind {cmd!r}")
        kw = {}
        for part in parts[1:]:
            key, _, val = part.partition("=")
            kw[key] = val if key == "cap" else int(val)
        rows.append((line, cmd, kw))
    return rows


def run_verify_all(matrix_text, fmt):
    rows = parse_matrix(matrix_text)
    results = []
    failures = 0
    for line, cmd, kw in rows:
        t0 = time.time()
        try:
            MATRIX_RUNNERS[cmd](kw)
            status = "PASS"
        except (AssertionError, HurwitzLabError) as exc:
            status = "FAIL"
            failures += 1
            _log(f"row failed: {line}: {type(exc).__name__}: {exc}")
        _log(f"{status} {line} ({time.time() - t0:.1f}s)")
        results.append({"row": line, "status": status})
    summary = {"rows": results, "passed": len(rows) - failures,
               "failed": failures}
    return (0 if failures == 0 else 1), summary


# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    """One dispatchable run: a command, its parameters, output format and
    an optional output path (stdout when unset)."""

    command: str                 # weierstrass | autgroup | lucas | verify-all
    params: dict = field(default_factory=dict)
    fmt: str = "table"
    out: str = None


def run(config):
    """Dispatch a config; returns (exit status, report bytes).

    Exit 0 only when every asserted invariant passed; verification
    failures return 1 with a structured failure report; invalid
    parameters return 2.
    """
    kw = config.params
    try:
        if config.command == "weierstrass":
            report = run_weierstrass(kw["n"], kw["p"], kw.get("k0"),
                                     _parse_cap(kw.get("cap")))
        elif config.command == "autgroup":
            report = run_autgroup(kw["n"], kw["p"], kw.get("table"))
        elif config.command == "lucas":
            report = run_lucas(kw["p"], kw["r"], kw.get("n"),
                               bool(kw.get("census")))
        elif config.command == "verify-all":
            matrix = kw.get("matrix", "default")
            if matrix == "default":
                text = DEFAULT_MATRIX
            else:
                with open(matrix) as fh:
                    text = fh.read()
            code, summary = run_verify_all(text, config.fmt)
            return code, emit_report(summary, config.fmt)
        else:
            raise PreconditionViolated(f"unknown command {config.command!r}")
    except (NotSmooth, PreconditionViolated, ValueError) as exc:
        _log(f"invalid configuration: {exc}")
        return 2, b""
    except (AssertionError, HurwitzLabError) as exc:
        failure = {"failed": True, "error": type(exc).__name__,
                   "message": str(exc)}
        return 1, emit_report(failure, config.fmt)
    return 0, emit_report(report, config.fmt)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hurwitz-lab",
        description="verifiable invariants of Hurwitz-type plane curves "
                    "over finite fields")
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("weierstrass", help="closed-form inflection set, "
                       "verified soundly and against a scan")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--p", type=int, required=True)
    w.add_argument("--scan-k", type=int, default=None, dest="scan_k")
    w.add_argument("--cap", type=str, default=None,
                   help="arithmetic size cap, e.g. 2^50")
    w.add_argument("--json", action="store_true")

    a = sub.add_parser("autgroup", help="automorphism group, subgroup "
                       "classes, quotient genera")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--p", type=int, required=True)
    a.add_argument("--table", choices=["genus", "subgroups"], default=None)
    a.add_argument("--json", action="store_true")

    lc = sub.add_parser("lucas", help="maximality and inflection censuses "
                        "of the Lucas-polynomial curves")
    lc.add_argument("--p", type=int, required=True)
    lc.add_argument("--r", type=int, required=True)
    lc.add_argument("--n", type=int, default=None)
    lc.add_argument("--census", action="store_true")
    lc.add_argument("--json", action="store_true")

    v = sub.add_parser("verify-all", help="run a verification matrix")
    v.add_argument("--matrix", default="default",
                   help="'default' or a path to a matrix file")
    v.add_argument("--json", action="store_true")
    return parser


def config_from_args(args):
    fmt = "json" if getattr(args, "json", False) else "table"
    if args.command == "weierstrass":
        params = {"n": args.n, "p": args.p, "k0": args.scan_k,
                  "cap": args.cap}
    elif args.command == "autgroup":
        params = {"n": args.n, "p": args.p, "table": args.table}
    elif args.command == "lucas":
        params = {"p": args.p, "r": args.r, "n": args.n,
                  "census": args.census}
    else:
        params = {"matrix": args.matrix}
    return RunConfig(args.command, params, fmt)


def main(argv=None):
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    code, payload = run(config)
    if config.out:
        with open(config.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
