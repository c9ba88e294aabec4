"""Report assembly and rendering.

JSON is the canonical format; CSV and markdown are renderings of the
same record stream.  Reports are deterministic functions of (version,
config): no timestamps, stable key order, large integers as decimal
strings.
"""

from __future__ import annotations

import csv
import io
import json

from .dihedral import MonodromyDatum, branch_parity_counts
from .prym import ClaimRecord

VERSION = "0.1.0"


def datum_dict(d: MonodromyDatum) -> dict:
    s0, s1 = branch_parity_counts(d)
    return {
        "n": d.n,
        "genus": d.genus,
        "exponents": list(d.exponents),
        "s0": s0,
        "s1": s1,
    }


def record_dict(r: ClaimRecord) -> dict:
    out = {
        "claim": r.claim,
        "anchor": r.anchor,
        "datum": datum_dict(r.datum),
        "formula": None if r.formula is None else str(r.formula),
        "oracle": None if r.oracle is None else str(r.oracle),
        "verdict": r.verdict,
    }
    if r.witness is not None:
        out["witness"] = r.witness
    return out


def skip_record_dict(claim: str, d: MonodromyDatum, reason: str) -> dict:
    return {
        "claim": claim,
        "anchor": "",
        "datum": datum_dict(d),
        "formula": None,
        "oracle": None,
        "verdict": "skip",
        "witness": {"reason": reason},
    }


def build_report(config: dict, records: list[dict], assumptions: list[str]) -> dict:
    summary = {"pass": 0, "fail": 0, "skip": 0}
    for r in records:
        summary[r["verdict"]] += 1
    return {
        "version": VERSION,
        "config": config,
        "records": records,
        "summary": summary,
        "assumptions": sorted(set(assumptions)),
    }


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


_CSV_COLUMNS = [
    "claim",
    "anchor",
    "n",
    "genus",
    "exponents",
    "s0",
    "s1",
    "formula",
    "oracle",
    "verdict",
]


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for r in report["records"]:
        d = r["datum"]
        writer.writerow(
            [
                r["claim"],
                r["anchor"],
                d["n"],
                d["genus"],
                " ".join(str(k) for k in d["exponents"]),
                d["s0"],
                d["s1"],
                "" if r["formula"] is None else r["formula"],
                "" if r["oracle"] is None else r["oracle"],
                r["verdict"],
            ]
        )
    return buf.getvalue()


def render_markdown(report: dict) -> str:
    lines = [
        "| claim | anchor | n | genus | exponents | s0 | s1 | formula | oracle | verdict |",
        "| --- | --- | --- | --- | --- | --- | --- | --- | --- | --- |",
    ]
    for r in report["records"]:
        d = r["datum"]
        lines.append(
            "| {} | `{}` | {} | {} | {} | {} | {} | {} | {} | {} |".format(
                r["claim"],
                r["anchor"] or "-",
                d["n"],
                d["genus"],
                ",".join(str(k) for k in d["exponents"]),
                d["s0"],
                d["s1"],
                r["formula"] if r["formula"] is not None else "-",
                r["oracle"] if r["oracle"] is not None else "-",
                r["verdict"],
            )
        )
    s = report["summary"]
    lines.append("")
    lines.append(
        f"pass: {s['pass']}  fail: {s['fail']}  skip: {s['skip']}"
    )
    if report["assumptions"]:
        lines.append("")
        lines.append("assumptions:")
        for a in report["assumptions"]:
            lines.append(f"- {a}")
    return "\n".join(lines) + "\n"


RENDERERS = {"json": render_json, "csv": render_csv, "markdown": render_markdown}


def render(report: dict, fmt: str) -> str:
    try:
        return RENDERERS[fmt](report)
    except KeyError:
        raise ValueError(f"unknown report format {fmt!r}") from None
