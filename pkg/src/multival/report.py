"""Machine-readable (dict/JSON) and plain-text renderings of analysis results.

Reports carry the raw tables, witnesses and correspondences, so every claim
can be re-checked from the input document alone.
"""
from __future__ import annotations

from .finmap import FiniteMap
from .immanence import Verdict
from .network import CounterCascadedPair, ReductionReport
from .relation import ApproxModel, Relation, SingleValuedVerdict, Witness


def jsonable(e):
    if isinstance(e, tuple):
        return [jsonable(v) for v in e]
    return e


def map_rows(m: FiniteMap) -> list:
    return [[jsonable(w), jsonable(x)] for w, x in m.items()]


def _point(pair: CounterCascadedPair, u) -> dict:
    return {s: jsonable(v) for s, v in zip(pair.sources, u)}


def witness_dict(pair: CounterCascadedPair, w: Witness) -> dict:
    return {
        "w": jsonable(w.w),
        "u": _point(pair, w.u),
        "u_prime": _point(pair, w.u_prime),
        "x": jsonable(w.x),
        "x_prime": jsonable(w.x_prime),
    }


def _pair_header(pair: CounterCascadedPair, ancillary: str) -> dict:
    return {
        "pair": {"dependent": pair.dependent, "primary": pair.primary, "ancillary": ancillary},
        "common_input": list(pair.sources),
    }


def check_report(pair: CounterCascadedPair, verdict: Verdict, ancillary: str = "I") -> dict:
    out = {"command": "check", **_pair_header(pair, ancillary), "status": verdict.status}
    if verdict.immanent:
        out["model"] = map_rows(verdict.model)
        out["unreached"] = [jsonable(w) for w in verdict.model.meta.get("unreached", ())]
    else:
        out["witness"] = witness_dict(pair, verdict.witness)
    return out


def relation_report(pair: CounterCascadedPair, rel: Relation, sv: SingleValuedVerdict,
                    ancillary: str = "I") -> dict:
    out = {
        "command": "relation",
        **_pair_header(pair, ancillary),
        "pairs": [
            {"w": jsonable(w), "x": jsonable(x), "multiplicity": len(us),
             "inputs": [_point(pair, u) for u in us]}
            for (w, x), us in rel.sources
        ],
        "single_valued": sv.single_valued,
    }
    if not sv.single_valued:
        out["witness"] = witness_dict(pair, sv.witness)
    return out


def model_report(pair: CounterCascadedPair, verdict: Verdict, approx: ApproxModel | None,
                 ancillary: str = "I") -> dict:
    out = {"command": "model", **_pair_header(pair, ancillary), "status": verdict.status}
    if approx is not None:
        out.update(
            criterion=approx.criterion,
            model=map_rows(approx.model),
            disagreement=approx.disagreement,
            unreached=[jsonable(w) for w in approx.model.meta.get("unreached", ())],
        )
    elif verdict.immanent:
        out["model"] = map_rows(verdict.model)
        out["unreached"] = [jsonable(w) for w in verdict.model.meta.get("unreached", ())]
    if not verdict.immanent:
        out["witness"] = witness_dict(pair, verdict.witness)
    return out


def reduction_report(report: ReductionReport) -> dict:
    steps = []
    for s in report.steps:
        step = {"primary": s.primary, "dependent": s.dependent, "common_input": list(s.sources),
                "status": s.status, "action": s.action}
        if s.supernode is not None:
            step["supernode"] = s.supernode
            step["model"] = map_rows(s.model)
        if s.witness is not None:
            step["witness"] = {
                "w": jsonable(s.witness.w),
                "u": dict(zip(s.sources, map(jsonable, s.witness.u))),
                "u_prime": dict(zip(s.sources, map(jsonable, s.witness.u_prime))),
                "x": jsonable(s.witness.x),
                "x_prime": jsonable(s.witness.x_prime),
            }
        steps.append(step)
    return {
        "command": "rationalize",
        "node_count_before": report.node_count_before,
        "node_count_after": report.node_count_after,
        "trajectory": list(report.trajectory),
        "steps": steps,
        "correspondence": dict(report.correspondence),
        "behavior_checked": report.behavior_checked,
        "behavior_equivalent": report.behavior_equivalent,
    }


# plain text

def _point_text(point: dict) -> str:
    return "(" + ", ".join(f"{k}={fmt_json(v)}" for k, v in point.items()) + ")"


def fmt_json(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(fmt_json(x) for x in v) + ")"
    return str(v)


def _witness_text(w: dict) -> list:
    return [
        "witness:",
        f"  w  = {fmt_json(w['w'])}",
        f"  u  = {_point_text(w['u'])}  ->  x  = {fmt_json(w['x'])}",
        f"  u' = {_point_text(w['u_prime'])}  ->  x' = {fmt_json(w['x_prime'])}",
    ]


def _model_text(rows, unreached=()) -> list:
    lines = ["model:"]
    for w, x in rows:
        tag = "  (unreached)" if w in unreached else ""
        lines.append(f"  {fmt_json(w)} -> {fmt_json(x)}{tag}")
    return lines


def render_text(rep: dict) -> str:
    lines = []
    cmd = rep["command"]
    if "pair" in rep:
        p = rep["pair"]
        lines.append(f"pair {p['dependent']}:{p['primary']}  "
                     f"({p['dependent']} against ({p['primary']}, {p['ancillary']}))")
        lines.append("common input: " + ", ".join(rep["common_input"]))
    if cmd in ("check", "model"):
        lines.append(f"verdict: {rep['status']}")
        if "criterion" in rep:
            lines.append(f"approximation: {rep['criterion']}, disagreement {rep['disagreement']}")
        if "model" in rep:
            lines.extend(_model_text(rep["model"], rep.get("unreached", ())))
        if "witness" in rep:
            lines.extend(_witness_text(rep["witness"]))
    elif cmd == "relation":
        lines.append("w\tx\tmultiplicity")
        for row in rep["pairs"]:
            lines.append(f"{fmt_json(row['w'])}\t{fmt_json(row['x'])}\t{row['multiplicity']}")
        lines.append(f"single_valued: {str(rep['single_valued']).lower()}")
        if "witness" in rep:
            lines.extend(_witness_text(rep["witness"]))
    elif cmd == "rationalize":
        lines.append(f"nodes: {rep['node_count_before']} -> {rep['node_count_after']}")
        for i, s in enumerate(rep["steps"], 1):
            tail = f" -> {s['supernode']}" if s["action"] == "merge" else ""
            lines.append(f"step {i}: {s['dependent']}:{s['primary']} {s['status']} "
                         f"{s['action']}{tail}")
        for old, new in rep["correspondence"].items():
            if old != new:
                lines.append(f"  {old} => {new}")
        eq = rep["behavior_equivalent"]
        lines.append("equivalence: " + (str(eq).lower() if rep["behavior_checked"]
                                        else "not checked"))
    return "\n".join(lines) + "\n"
