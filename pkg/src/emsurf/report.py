"""Report documents (schema ``emsurf/1``) and their json, csv and markdown renderings."""
from __future__ import annotations

import csv
import io
import json
from datetime import datetime, timezone

from . import __version__
from .curve import CurveInvariants
from .dimensions import DimensionReport
from .subgroup import Subgroup

SCHEMA = "emsurf/1"


def _curve_dict(ci: CurveInvariants) -> dict:
    return {
        "mu": ci.mu,
        "genus": ci.g,
        "eps2": ci.eps2,
        "eps3": ci.eps3,
        "eps_reg": ci.eps_reg,
        "eps_irr": ci.eps_irr,
        "cusps": [
            {
                "id": c.id,
                "label": c.label,
                "witness": list(c.witness),
                "psl_width": c.psl_width,
                "sl_width": c.sl_width,
                "regular": c.regular,
            }
            for c in ci.cusps
        ],
    }


def timestamp_now() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def report_document(spec_text: str, G: Subgroup, report: DimensionReport | None,
                    timestamp: str | None = None) -> dict:
    """Assemble the serializable report.  ``report`` is None for groups containing -1."""
    doc: dict = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "timestamp": timestamp if timestamp is not None else timestamp_now(),
        "spec": spec_text,
        "label": G.label,
        "index": G.rep.n,
        "contains_minus_one": G.minus_one,
    }
    if report is None:
        doc["refusal"] = (
            "the group contains -1; theorem tables are only defined for "
            "finite-index subgroups of SL2(Z) not containing -1"
        )
        doc["verdict"] = False
        return doc
    si = report.surface
    doc.update(
        curve=_curve_dict(report.curve),
        fibers=[{"base": base, "type": str(ft), "euler": ft.euler} for base, ft in report.fibers.fibers],
        surface={
            "e": si.e, "chi": si.chi, "q": si.q, "p_g": si.p_g, "degL": si.degL,
            "kodaira_class": si.kodaira_class,
        },
        weights=[
            {"m": e.m, "weight": e.weight, "side_a": e.side_a, "side_b": e.side_b, "agree": e.agree}
            for e in report.entries
        ],
        even_weights=[{"m": e.m, "weight": e.weight, "dim": e.dim} for e in report.even_entries],
        canonical_ring=[{"m": e.m, "dim": e.dim} for e in report.canonical_entries],
        checks=dict(report.checks),
        verdict=report.verdict,
    )
    return doc


def render_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def render_csv(doc: dict) -> str:
    """Long-format csv: one ``section,key,...`` row per value."""
    rows: list[list] = [["section", "key", "m", "weight", "side_a", "side_b", "agree", "value"]]
    for k in ("schema", "tool_version", "timestamp", "spec", "label", "index", "contains_minus_one"):
        rows.append(["meta", k, "", "", "", "", "", doc[k]])
    if "refusal" in doc:
        rows.append(["meta", "refusal", "", "", "", "", "", doc["refusal"]])
    else:
        for k, v in doc["curve"].items():
            if k != "cusps":
                rows.append(["curve", k, "", "", "", "", "", v])
        for c in doc["curve"]["cusps"]:
            kind = "regular" if c["regular"] else "irregular"
            rows.append(["cusp", c["label"], "", "", "", "", "", f"{kind} h={c['psl_width']} N={c['sl_width']}"])
        for f in doc["fibers"]:
            rows.append(["fiber", f["base"], "", "", "", "", "", f["type"]])
        for k, v in doc["surface"].items():
            rows.append(["surface", k, "", "", "", "", "", v])
        for e in doc["weights"]:
            rows.append(["weight3m", "", e["m"], e["weight"], e["side_a"], e["side_b"], e["agree"], ""])
        for e in doc["even_weights"]:
            rows.append(["weight2m", "", e["m"], e["weight"], "", "", "", e["dim"]])
        for e in doc["canonical_ring"]:
            rows.append(["canonical", "", e["m"], "", "", "", "", e["dim"]])
        for k, v in doc["checks"].items():
            rows.append(["check", k, "", "", "", "", "", v])
    rows.append(["meta", "verdict", "", "", "", "", "", doc["verdict"]])
    return _csv(rows)


def _md_table(header: list[str], rows: list[list]) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(x) for x in r) + " |" for r in rows]
    return lines


def render_md(doc: dict) -> str:
    out = [f"# {doc['label']}", "", f"- spec: `{doc['spec']}`", f"- index: {doc['index']}",
           f"- contains -1: {doc['contains_minus_one']}"]
    if "refusal" in doc:
        out += ["", f"**Refused:** {doc['refusal']}."]
    else:
        c, s = doc["curve"], doc["surface"]
        out += [
            f"- mu = {c['mu']}, g = {c['genus']}, eps3 = {c['eps3']}, "
            f"eps_reg = {c['eps_reg']}, eps_irr = {c['eps_irr']}",
            f"- e = {s['e']}, chi = {s['chi']}, q = {s['q']}, p_g = {s['p_g']} ({s['kodaira_class']})",
            "", "## Cusps", "",
        ]
        out += _md_table(["cusp", "width", "SL-width", "regular"],
                         [[x["label"], x["psl_width"], x["sl_width"], x["regular"]] for x in c["cusps"]])
        out += ["", "## Fibres", ""]
        out += _md_table(["over", "type", "euler"], [[f["base"], f["type"], f["euler"]] for f in doc["fibers"]])
        out += ["", "## Weight 3m", ""]
        out += _md_table(["m", "weight", "modular forms", "log-canonical", "agree"],
                         [[e["m"], e["weight"], e["side_a"], e["side_b"], e["agree"]] for e in doc["weights"]])
        out += ["", "## Weight 2m", ""]
        out += _md_table(["m", "weight", "dim"], [[e["m"], e["weight"], e["dim"]] for e in doc["even_weights"]])
        out += ["", "## Canonical ring", ""]
        out += _md_table(["m", "h0(mK)"], [[e["m"], e["dim"]] for e in doc["canonical_ring"]])
        out += ["", "## Checks", ""]
        out += _md_table(["check", "ok"], [[k, v] for k, v in doc["checks"].items()])
    out += ["", f"**Verdict:** {'PASS' if doc['verdict'] else 'FAIL'}", ""]
    return "\n".join(out)


RENDERERS = {"json": render_json, "csv": render_csv, "md": render_md}


BATCH_COLUMNS = ["line", "spec", "label", "index", "mu", "genus", "eps3", "eps_reg", "eps_irr",
                 "e", "chi", "p_g", "status", "error"]


def render_batch(rows: list[dict], fmt: str) -> str:
    passed = sum(1 for r in rows if r["status"] == "pass")
    summary = {"groups": len(rows), "passed": passed, "failed": len(rows) - passed}
    if fmt == "json":
        return render_json({"schema": SCHEMA, "tool_version": __version__, "rows": rows, "summary": summary})
    table = [[r.get(c, "") if r.get(c) is not None else "" for c in BATCH_COLUMNS] for r in rows]
    if fmt == "csv":
        return _csv([BATCH_COLUMNS] + table + [["summary", f"passed={passed}", f"failed={len(rows) - passed}"]])
    lines = _md_table(BATCH_COLUMNS, table)
    lines += ["", f"**Summary:** {passed} passed, {len(rows) - passed} failed", ""]
    return "\n".join(lines)
