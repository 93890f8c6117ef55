"""
Report assembly and serialisation.
"""
import hashlib
import json

from classifier import TrichotomyVerdict
from settings import SCHEMA_VERSION, TOOL_VERSION


def canonical_json(value):
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def witness_digest(witness):
    return hashlib.sha256(canonical_json(witness).encode("ascii")).hexdigest()


def build_report(spec_text, p, verdict, options, timings=None):
    """
    The JSON report for one classification.

    Params
    ------
    spec_text:
        the group spec as given on the command line (echoed back)
    verdict:
        TrichotomyVerdict from classifier.classify
    timings:
        stage name -> milliseconds, or None to keep the report stable
    """
    summary = {"branch": verdict.branch}
    if verdict.criterion:
        summary["criterion"] = verdict.criterion
    if verdict.aspherical_kind:
        summary["aspherical_kind"] = verdict.aspherical_kind
    witness = verdict.witness_dict
    if witness is not None:
        summary["witness_digest"] = witness_digest(witness)
        summary["witness_provenance"] = witness["provenance"]

    report = {
        "schema": SCHEMA_VERSION,
        "input": {"spec": spec_text, "prime": p},
        "verdict": summary,
        "reduction": [dict(stage) for stage in verdict.reduction],
        "certified": verdict.certified,
        "seed": options.seed,
        "tolerance": options.tolerance,
        "timings_ms": timings,
        "version": TOOL_VERSION,
        "certificate": verdict.to_dict(),
    }
    if verdict.primes:
        report["primes_q"] = list(verdict.primes)
    return report


def error_report(spec_text, p, error):
    """Record for an input line that could not be classified."""
    detail = {"type": type(error).__name__, "message": str(error)}
    for name in ("line", "column"):
        if hasattr(error, name):
            detail[name] = getattr(error, name)
    return {
        "schema": SCHEMA_VERSION,
        "input": {"spec": spec_text, "prime": p},
        "error": detail,
        "version": TOOL_VERSION,
    }


def verdict_from_report(report):
    return TrichotomyVerdict.from_dict(report["certificate"])


def to_json(report, pretty=False):
    if pretty:
        return json.dumps(report, sort_keys=True, indent=2)
    return canonical_json(report)


def to_text(report):
    if "error" in report:
        error = report["error"]
        return f"{report['input']['spec']} at p = {report['input']['prime']}: {error['type']}: {error['message']}"

    verdict = report["verdict"]
    certificate = report["certificate"]
    lines = [f"group {report['input']['spec']} at p = {report['input']['prime']}"]
    branch = verdict["branch"]
    if "criterion" in verdict:
        branch += f" (criterion {verdict['criterion']})"
    elif "aspherical_kind" in verdict:
        branch += f" ({verdict['aspherical_kind']})"
    elif "witness_provenance" in verdict:
        branch += f" ({verdict['witness_provenance']} witness, digest {verdict['witness_digest'][:16]})"
    lines.append(f"  verdict: {branch}")
    lines.append("  reduction: " + " -> ".join(f"{s['stage']} [{s['order']}]" for s in report["reduction"]))
    if "primes_q" in report:
        lines.append("  primes q: " + ", ".join(str(q) for q in report["primes_q"]))
    lines.append(f"  certified: {'yes' if report['certified'] else 'no'}")
    for diagnostic in certificate["diagnostics"]:
        lines.append(f"  diagnostic: {diagnostic}")
    for note in certificate["notes"] + [certificate["fundamental_group_note"]]:
        lines.append(f"  note: {note}")
    if report["timings_ms"]:
        lines.append("  timings (ms): " + ", ".join(f"{k} {v:.1f}" for k, v in report["timings_ms"].items()))
    return "\n".join(lines)
