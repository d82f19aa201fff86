"""Serialization of verdict reports: JSON, Markdown, CSV.

The JSON document is the canonical machine format; identical inputs
produce byte-identical output (sorted keys, no timestamps, exact
integers, canonical field-element strings).  The Markdown table mirrors
the JSON field for field; CSV flattens one report per row.
"""

from __future__ import annotations

import csv
import io
import json

from . import __version__
from .center import KW1Report

_FIELDS = [
    ("algebraName", "algebra_name"),
    ("p", "p"),
    ("e", "e"),
    ("dim", "dim"),
    ("ind", "ind"),
    ("degreeBound", "degree_bound"),
    ("rankZoverZp", "rank_z_over_zp"),
    ("mUpper", "m_upper"),
    ("mUpperFormal", "m_upper_formal"),
    ("mLower", "m_lower"),
    ("verdict", "verdict"),
    ("stabilized", "stabilized"),
    ("seed", "seed"),
    ("indexTrials", "index_trials"),
    ("definingPolynomial", "defining_polynomial"),
]


def report_as_dict(report: KW1Report) -> dict:
    out = {json_name: getattr(report, attr) for json_name, attr in _FIELDS}
    out["notes"] = list(report.notes)
    if report.oracle_estimate is not None:
        out["oracleEstimate"] = report.oracle_estimate
    return out


def document(reports) -> dict:
    return {
        "tool": "kw1",
        "version": __version__,
        "reports": [report_as_dict(r) for r in reports],
    }


def to_json(reports) -> str:
    return json.dumps(document(reports), sort_keys=True, indent=2) + "\n"


def to_markdown(reports) -> str:
    lines = [f"# kw1 {__version__} report", ""]
    for rep in reports:
        data = report_as_dict(rep)
        lines.append(f"## {data['algebraName']} at p = {data['p']}")
        lines.append("")
        lines.append("| field | value |")
        lines.append("| --- | --- |")
        for json_name, _attr in _FIELDS:
            lines.append(f"| {json_name} | {data[json_name]} |")
        if "oracleEstimate" in data:
            oe = data["oracleEstimate"]
            lines.append(f"| oracleM | {oe['M']} |")
            lines.append(f"| oracleWitnessChi | {' '.join(oe['witnessChi'])} |")
            lines.append(f"| oracleDegraded | {oe['degraded']} |")
        for note in data["notes"]:
            lines.append(f"| note | {note} |")
        lines.append("")
    return "\n".join(lines)


def to_csv(reports) -> str:
    buf = io.StringIO()
    names = [json_name for json_name, _ in _FIELDS] + ["oracleM", "notes"]
    writer = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        data = report_as_dict(rep)
        row = {json_name: data[json_name] for json_name, _ in _FIELDS}
        row["oracleM"] = (
            data["oracleEstimate"]["M"] if "oracleEstimate" in data else ""
        )
        row["notes"] = "; ".join(data["notes"])
        writer.writerow(row)
    return buf.getvalue()


def render(reports, fmt: str) -> str:
    if fmt == "json":
        return to_json(reports)
    if fmt == "md":
        return to_markdown(reports)
    if fmt == "csv":
        return to_csv(reports)
    raise ValueError(f"unknown output format {fmt!r}")
