"""Deterministic certificate reports.

A report is a plain dict with a fixed schema: tool, version, scenario, seed,
caps, a list of named checks with PASS/FAIL, a `result` summary, and scenario
payload.  Rendering is byte-stable: identical report dicts give identical
text and identical structured (JSON) documents.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ._version import __version__
from .limits import Caps
from .poly import Poly, poly_to_string

TOOL = "polinv"


def check(name: str, ok: bool, **details) -> dict:
    out = {"name": name, "pass": bool(ok)}
    out.update(details)
    return out


def make_report(scenario: str, seed: int, caps: Caps, checks: list, **payload) -> dict:
    report = {
        "tool": TOOL,
        "version": __version__,
        "scenario": scenario,
        "seed": seed,
        "caps": {
            "group_order": caps.group_order,
            "span_products": caps.span_products,
            "monomials": caps.monomials,
        },
        "checks": checks,
        "result": "PASS" if all(c["pass"] for c in checks) else "FAIL",
    }
    report.update(payload)
    return report


def jsonable(value):
    """Recursively convert report values to JSON-safe, deterministic forms."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Poly):
        return poly_to_string(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, int, str, type(None))):
        return value
    return str(value)


def render_structured(report: dict) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2) + "\n"


def _fmt(value) -> str:
    value = jsonable(value)
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _row_line(row: dict) -> str:
    keys = sorted(row)
    if "multidegree" in row:
        keys = ["multidegree"] + [k for k in keys if k != "multidegree"]
    return " ".join(f"{k}={_fmt(row[k])}" for k in keys)


def render_text(report: dict) -> str:
    lines = [f"{report['tool']} {report['version']}"]
    lines.append(f"scenario: {report['scenario']}")
    lines.append(f"seed: {report['seed']}")
    caps = report["caps"]
    lines.append("caps: " + " ".join(f"{k}={caps[k]}" for k in sorted(caps)))
    core = {"tool", "version", "scenario", "seed", "caps", "checks", "result"}
    for key in sorted(k for k in report if k not in core):
        value = report[key]
        if isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
            lines.append(f"{key}:")
            lines.extend(f"  - {_row_line(r)}" for r in value)
        else:
            lines.append(f"{key}: {_fmt(value)}")
    for c in report["checks"]:
        status = "PASS" if c["pass"] else "FAIL"
        extra = {k: v for k, v in c.items() if k not in ("name", "pass")}
        suffix = "  " + json.dumps(jsonable(extra), sort_keys=True) if extra else ""
        lines.append(f"check {c['name']}: {status}{suffix}")
    lines.append(f"result: {report['result']}")
    return "\n".join(lines) + "\n"
