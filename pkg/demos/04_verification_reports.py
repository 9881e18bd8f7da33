"""Deterministic machine-readable verification reports.

The suite runner enumerates identity cases over seeded random rational
parameter points and writes a JSON report; identical configuration and seed
always reproduce the identical bytes.  The same runner backs the
command-line interface:

    askeykit verify --identities hermite-expansion --max-n 3 --max-m 3 --seed 7
    askeykit expand laguerre-expansion --n 2 --m 1 --param nu=1/2
    askeykit toda --families meixner --max-n 6
    askeykit list
"""

import json

from askeykit.cli import SuiteConfig, render_report, run_verify

config = SuiteConfig(
    identities=["hermite-expansion", "charlier-toda-eta1", "toda-flows", "adjointness"],
    max_n=3,
    max_m=3,
    trials=1,
    seed=7,
)
report = run_verify(config)
print(f"cases: {report['totals']['cases']}, passed: {report['totals']['passed']}")

again = run_verify(config)
print("byte-identical rerun:", render_report(report, "json") == render_report(again, "json"))

sample = report["cases"][0]
print("first case record:")
print(json.dumps(sample, indent=2, sort_keys=True))

fails = [c["id"] for c in report["cases"] if not c["pass"]]
print("failing cases:", fails if fails else "none")
