"""Serialization of certification reports.

Field order is fixed so that two runs over the same input produce
byte-identical JSON except for the `timings` values.
"""

from __future__ import annotations

import json

from .certify import CertReport


def report_to_dict(report: CertReport) -> dict:
    out = {
        "group_id": report.group_id,
        "p": report.p,
        "m": report.m,
        "order": report.order,
        "class": report.nilpotency_class,
        "coclass": report.coclass,
        "route": report.route,
        "citations": list(report.citations),
        "context": report.context,
        "chosen": report.chosen,
        "images": report.images,
        "certificates": report.certificates,
        "timings": {k: round(v, 6) for k, v in report.timings.items()},
    }
    return out


def report_to_json(report: CertReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def report_to_text(report: CertReport) -> str:
    lines = [
        f"group   {report.group_id}",
        f"order   {report.p}^{report.m} = {report.order}",
        f"class   {report.nilpotency_class} (coclass {report.coclass})",
        f"route   {report.route}",
    ]
    for c in report.citations:
        lines.append(f"        - {c}")
    if report.route != "ELIGIBLE":
        lines.append("no certificate: the construction does not apply on this route")
        return "\n".join(lines) + "\n"
    ctx = report.context or {}
    lines.append("frame")
    for key in ("N_basis", "a", "b", "w", "comm_a_b", "comm_w_b"):
        lines.append(f"        {key} = {ctx.get(key)}")
    lines.append(f"chosen  {report.chosen}")
    lines.append("images")
    for k, im in enumerate(report.images or [], start=1):
        lines.append(f"        g{k} -> {im}")
    lines.append("certificates")
    for k, v in (report.certificates or {}).items():
        lines.append(f"        {k} = {v}")
    lines.append("timings")
    for k, v in report.timings.items():
        lines.append(f"        {k} = {v:.3f}s")
    return "\n".join(lines) + "\n"
