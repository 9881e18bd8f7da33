"""Command-line verification harness.

Enumerates identity cases over seeded random admissible parameter points,
evaluates every residual exactly, and emits a deterministic machine-readable
report: the same configuration and seed always produce byte-identical JSON.
No floating point appears anywhere in a report; rationals serialize as
"num/den" strings.

Subcommands: verify, expand, toda, list.  Exit codes: 0 all cases pass,
1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from random import Random

from . import __version__
from .algebra import (
    Laurent,
    Poly,
    Rational,
    SymLaurent,
    chebyshev_lift,
    rational_str,
)
from .families import FAMILIES, make_point
from .burchnall import (
    EXPANSIONS,
    closed_expansion_residual,
    chain_expansion_residual,
    operational_residual,
)
from .functional import adjointness_check
from .ops import leibniz_check, operator_catalog
from .sampling import sample_extras, sample_point, sample_rational
from .toda import (
    MODIFIED_EXPANSIONS,
    TODA_SOLUTIONS,
    modified_expansion_residual,
    toda_from_recurrence_crosscheck,
    toda_residuals,
)

SCHEMA_VERSION = 1

COR23_FAMILIES = (
    "hermite",
    "laguerre",
    "jacobi",
    "meixner",
    "charlier",
    "meixner-pollaczek",
    "big-q-jacobi",
)


@dataclass
class SuiteConfig:
    families: list = field(default_factory=list)  # empty = all
    identities: list = field(default_factory=list)  # empty = all
    max_n: int = 3
    max_m: int = 3
    trials: int = 1
    seed: int = 1
    output: str | None = None
    fmt: str = "json"
    timings: bool = False


def _subseed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _serialize_value(v) -> str:
    return rational_str(v)


def _point_dict(point) -> dict:
    return {k: _serialize_value(v) for k, v in point.values}


def _residual_summary(res) -> str:
    if isinstance(res, tuple):
        if all(not r for r in res):
            return "zero"
        parts = [repr(r) for r in res if r]
        return f"nonzero: {parts[0]}"
    if not res:
        return "zero"
    if isinstance(res, (Poly, Laurent, SymLaurent)):
        if isinstance(res, Poly):
            lead = f"deg {res.degree}: {res.lead}"
        elif isinstance(res, SymLaurent):
            lead = f"deg {res.degree}: {res.lead}"
        else:
            lead = f"z^{res.high}: {res.coeffs[-1]}"
        return f"nonzero, leading term {lead}"
    return f"nonzero: {res}"


def identity_registry() -> dict:
    """Every runnable identity id with its grid type and families."""
    reg = {}
    for ident, e in EXPANSIONS.items():
        reg[ident] = {"kind": "expansion", "families": (e.family,)}
    for ident, e in MODIFIED_EXPANSIONS.items():
        reg[ident] = {"kind": "modified", "families": (e.family,)}
    reg["toda-flows"] = {"kind": "toda", "families": tuple(TODA_SOLUTIONS)}
    reg["toda-crosscheck"] = {"kind": "crosscheck", "families": tuple(TODA_SOLUTIONS)}
    reg["adjointness"] = {"kind": "adjointness", "families": COR23_FAMILIES}
    reg["operational"] = {
        "kind": "operational",
        "families": tuple(t for t, s in FAMILIES.items() if s.raising is not None),
    }
    reg["chain-expansion"] = {
        "kind": "chain-expansion",
        "families": tuple(t for t, s in FAMILIES.items() if s.raising is not None),
    }
    reg["leibniz"] = {"kind": "leibniz", "families": ("operators",)}
    return reg


def _random_poly(rng: Random, degree: int, kind: str) -> object:
    coeffs = [sample_rational(rng, -3, 3) for _ in range(degree + 1)]
    if kind == "even":
        coeffs = [c if k % 2 == 0 else 0 for k, c in enumerate(coeffs)]
    f = Poly(coeffs)
    if kind == "laurent":
        return chebyshev_lift(f)
    return f


def _run_case(kind: str, ident: str, family: str, n: int, m, rng: Random):
    """Returns (point_dict, extras_dict, residual)."""
    if kind == "expansion":
        point = sample_point(family, rng)
        return _point_dict(point), {}, closed_expansion_residual(ident, point, n, m)
    if kind == "modified":
        e = MODIFIED_EXPANSIONS[ident]
        point = sample_point(family, rng)
        extras = sample_extras(e.extras, rng, point)
        res = modified_expansion_residual(ident, point, n, extras)
        return _point_dict(point), {k: _serialize_value(v) for k, v in extras.items()}, res
    if kind == "toda":
        point = sample_point(family, rng)
        top = TODA_SOLUTIONS[family].max_n(point)
        nn = min(n, top - 1) if top is not None else n
        nn = max(nn, 1)
        res = toda_residuals(TODA_SOLUTIONS[family], nn, point)
        return _point_dict(point), {"n_used": str(nn)}, res
    if kind == "crosscheck":
        point = sample_point(family, rng)
        sol = TODA_SOLUTIONS[family]
        if family in ("hermite", "laguerre"):
            extras = sample_extras(("t",), rng, point)
            extra = extras["t"]
        elif family == "meixner-pollaczek":
            extras = sample_extras(("r",), rng, point)
            extra = extras["r"]
        else:
            extras = sample_extras(("u",), rng, point)
            extra = extras["u"]
        top = sol.max_n(point)
        nn = min(n, top - 1) if top is not None else n
        nn = max(nn, 1)
        res = toda_from_recurrence_crosscheck(family, point, extra, nn)
        ser = {k: _serialize_value(v) for k, v in extras.items()}
        ser["n_used"] = str(nn)
        return _point_dict(point), ser, res
    if kind == "adjointness":
        point = sample_point(family, rng)
        ok, witness, failures = adjointness_check(family, point, max(n, 1), 6)
        res = Poly.zero() if ok else Poly.one()
        return _point_dict(point), {"rho": repr(witness.rho), "pairs": str(witness.samples)}, res
    if kind == "operational":
        spec = FAMILIES[family]
        point = sample_point(family, rng)
        carrier = "laurent" if spec.carrier == "laurent" else ("even" if family == "wilson" else "poly")
        f = _random_poly(rng, 4, carrier)
        worst = None
        for var in spec.variants:
            res = operational_residual(family, point, n, f, var.name)
            if res:
                worst = res
        return _point_dict(point), {}, worst if worst is not None else Poly.zero()
    if kind == "chain-expansion":
        spec = FAMILIES[family]
        point = sample_point(family, rng)
        worst = None
        for var in spec.variants:
            res = chain_expansion_residual(family, point, n, m, var.name)
            if res:
                worst = res
        return _point_dict(point), {}, worst if worst is not None else Poly.zero()
    if kind == "leibniz":
        residuals = []
        q = sample_rational(rng, 0, 1)
        p = sample_rational(rng, 0, 1)
        for name, spec in operator_catalog(q, p).items():
            kind2 = "laurent" if spec.carrier == "laurent" else ("even" if name == "delta-x2" else "poly")
            f = _random_poly(rng, 5, kind2)
            g = _random_poly(rng, 5, kind2)
            r = leibniz_check(spec, f, g, n)
            if r:
                residuals.append((name, r))
        res = Poly.zero() if not residuals else Poly.one()
        return {"q": _serialize_value(q), "p": _serialize_value(p)}, {}, res
    raise KeyError(kind)


def run_verify(config: SuiteConfig) -> dict:
    if config.max_n < 0 or config.max_m < 0:
        raise UsageError("degree bounds must be >= 0")
    if config.trials < 1:
        raise UsageError("trials must be >= 1")
    registry = identity_registry()
    idents = config.identities or sorted(registry)
    unknown = [i for i in idents if i not in registry]
    if unknown:
        raise UsageError(f"unknown identities: {unknown}; see `list`")
    known_families = set(FAMILIES) | {"operators"}
    bad_fams = [f for f in config.families if f not in known_families]
    if bad_fams:
        raise UsageError(f"unknown families: {bad_fams}; see `list`")
    cases = []
    for ident in sorted(idents):
        info = registry[ident]
        fams = info["families"]
        if config.families:
            fams = tuple(f for f in fams if f in config.families)
        kind = info["kind"]
        for family in fams:
            if kind in ("expansion", "chain-expansion"):
                grid = [(n, m) for n in range(config.max_n + 1) for m in range(config.max_m + 1)]
            elif kind in ("modified", "operational"):
                grid = [(n, None) for n in range(config.max_n + 1)]
            elif kind in ("toda", "crosscheck", "adjointness"):
                grid = [(n, None) for n in range(1, max(config.max_n, 1) + 1)]
            else:  # leibniz
                grid = [(n, None) for n in range(config.max_n + 1)]
            for n, m in grid:
                for trial in range(config.trials):
                    mm = f"m{m}" if m is not None else "m-"
                    case_id = f"{ident}/{family}/n{n}{mm}/t{trial}"
                    rng = Random(_subseed(config.seed, case_id))
                    started = time.perf_counter()
                    try:
                        pt, extras, res = _run_case(kind, ident, family, n, m, rng)
                        if isinstance(res, tuple):
                            passed = all(not r for r in res)
                        else:
                            passed = not res
                        summary = _residual_summary(res)
                    except Exception as exc:  # inadmissible or internal tripwire
                        pt, extras = {}, {}
                        passed = False
                        summary = f"error: {exc}"
                    case = {
                        "id": case_id,
                        "identity": ident,
                        "family": family,
                        "params": pt,
                        "n": n,
                        "m": m,
                        "extras": extras,
                        "pass": passed,
                        "residual_summary": summary,
                    }
                    if config.timings:
                        case["elapsed_ms"] = int((time.perf_counter() - started) * 1000)
                    cases.append(case)
    cases.sort(key=lambda c: c["id"])
    report = {
        "schema": SCHEMA_VERSION,
        "version": __version__,
        "seed": config.seed,
        "config": {
            "families": sorted(config.families),
            "identities": sorted(config.identities),
            "max_n": config.max_n,
            "max_m": config.max_m,
            "trials": config.trials,
        },
        "cases": cases,
        "totals": {
            "cases": len(cases),
            "passed": sum(1 for c in cases if c["pass"]),
            "failed": sum(1 for c in cases if not c["pass"]),
        },
    }
    return report


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines = [
        f"# verification report (schema {report['schema']}, v{report['version']})",
        "",
        f"seed: {report['seed']}  cases: {report['totals']['cases']}  "
        f"passed: {report['totals']['passed']}  failed: {report['totals']['failed']}",
        "",
        "| case | pass | residual |",
        "| --- | --- | --- |",
    ]
    for c in report["cases"]:
        lines.append(f"| {c['id']} | {'yes' if c['pass'] else 'NO'} | {c['residual_summary']} |")
    return "\n".join(lines) + "\n"


class UsageError(Exception):
    pass


def _parse_params(pairs: list) -> dict:
    out = {}
    for chunk in pairs:
        if "=" not in chunk:
            raise UsageError(f"parameter {chunk!r} is not name=value")
        name, _, val = chunk.partition("=")
        out[name.strip()] = val.strip()
    return out


def _point_from_args(family: str, raw: dict):
    spec = FAMILIES[family]
    vals = {}
    for name in spec.param_names:
        if name not in raw:
            raise UsageError(f"{family} needs --param {name}=...")
        vals[name] = int(raw[name]) if name == "N" else Rational(raw[name])
    point = make_point(family, **vals)
    if not spec.admissible(point):
        raise UsageError(f"inadmissible parameter point {point}")
    return point


def cmd_verify(args) -> int:
    config = SuiteConfig(
        families=args.families or [],
        identities=args.identities or [],
        max_n=args.max_n,
        max_m=args.max_m,
        trials=args.trials,
        seed=args.seed,
        output=args.output,
        fmt=args.format,
        timings=args.timings,
    )
    report = run_verify(config)
    text = render_report(report, config.fmt)
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
        print(
            f"wrote {config.output}: {report['totals']['passed']}/{report['totals']['cases']} passed"
        )
    else:
        sys.stdout.write(text)
    return 0 if report["totals"]["failed"] == 0 else 1


def _term_lines(terms) -> list:
    return [f"  k={k}: {t}" for k, t in enumerate(terms)]


def cmd_expand(args) -> int:
    ident = args.identity
    raw = _parse_params(args.param or [])
    if ident in EXPANSIONS:
        e = EXPANSIONS[ident]
        point = _point_from_args(e.family, raw)
        lhs, terms = e.build(point, args.n, args.m if args.m is not None else 0)
    elif ident in MODIFIED_EXPANSIONS:
        e = MODIFIED_EXPANSIONS[ident]
        point = _point_from_args(e.family, raw)
        extras = {k: Rational(raw[k]) for k in e.extras if k in raw}
        missing = [k for k in e.extras if k not in extras]
        if missing:
            raise UsageError(f"{ident} needs --param {missing[0]}=...")
        lhs, terms = e.build(point, args.n, extras)
    else:
        raise UsageError(f"unknown identity {ident!r}; see `list`")
    rhs = None
    for t in terms:
        rhs = t if rhs is None else rhs + t
    res = Laurent.coerce(rhs) - Laurent.coerce(lhs) if isinstance(
        rhs, (Laurent, SymLaurent)
    ) else rhs - lhs
    print(f"identity: {ident}  point: {point}  n={args.n}" + (f" m={args.m}" if args.m is not None else ""))
    print("terms:")
    for line in _term_lines(terms):
        print(line)
    print(f"lhs: {lhs}")
    print(f"residual: {res if res else 0}")
    return 0 if not res else 1


def cmd_toda(args) -> int:
    fams = args.families or sorted(TODA_SOLUTIONS)
    bad = [f for f in fams if f not in TODA_SOLUTIONS]
    if bad:
        raise UsageError(f"no closed-form flow for families: {bad}")
    failures = 0
    for family in fams:
        sol = TODA_SOLUTIONS[family]
        rng = Random(_subseed(args.seed, f"toda/{family}"))
        point = sample_point(family, rng)
        top = sol.max_n(point)
        nmax = args.max_n if top is None else min(args.max_n, top - 1)
        print(f"{family} at {point} (variable: {sol.variable.tag})")
        for n in range(1, nmax + 1):
            rc, rb = toda_residuals(sol, n, point)
            ok = rc.is_zero() and rb.is_zero()
            failures += 0 if ok else 1
            print(f"  n={n}: b_n = {sol.b(n, point)}  c_n = {sol.c(n, point)}  residuals "
                  + ("zero" if ok else "NONZERO"))
    return 0 if failures == 0 else 1


def cmd_list(args) -> int:
    print("families:")
    for tag, spec in FAMILIES.items():
        names = ", ".join(spec.param_names) if spec.param_names else "-"
        chain = "raising chain" if spec.raising is not None else "closed form only"
        print(f"  {tag:22s} params: {names:18s} carrier: {spec.carrier:7s} ({chain})")
    print("identities:")
    for ident, info in sorted(identity_registry().items()):
        fams = ", ".join(info["families"])
        print(f"  {ident:28s} [{info['kind']}] families: {fams}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="askeykit",
        description="Exact verification of raising-chain identities for the Askey scheme",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity suites and emit a deterministic report")
    v.add_argument("--families", nargs="*", help="restrict to these family tags")
    v.add_argument("--identities", nargs="*", help="restrict to these identity ids")
    v.add_argument("--max-n", type=int, default=3, dest="max_n")
    v.add_argument("--max-m", type=int, default=3, dest="max_m")
    v.add_argument("--trials", type=int, default=1, help="parameter samples per grid cell")
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--output", help="write the report here instead of stdout")
    v.add_argument("--format", choices=("json", "markdown"), default="json")
    v.add_argument(
        "--timings",
        action="store_true",
        help="include wall-clock per case (breaks byte-identical reruns)",
    )
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("expand", help="print the exact terms of one identity instance")
    e.add_argument("identity")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--m", type=int, default=None)
    e.add_argument("--param", action="append", help="name=value, exact rationals", default=[])
    e.set_defaults(func=cmd_expand)

    t = sub.add_parser("toda", help="print closed-form flows and their exact residuals")
    t.add_argument("--families", nargs="*")
    t.add_argument("--max-n", type=int, default=6, dest="max_n")
    t.add_argument("--seed", type=int, default=1)
    t.set_defaults(func=cmd_toda)

    ls = sub.add_parser("list", help="list family tags and identity ids")
    ls.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
