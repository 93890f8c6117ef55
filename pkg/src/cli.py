"""
Command-line front end.

Exit codes: 0 for a definitive verdict, 2 for Unknown, 1 for an input error.
In batch mode the exit code is the worst line (1 over 2 over 0).
"""
import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from algebra.builtins import list_builtins
from classifier import UNKNOWN, classify, reverify
from errors import StaleCertificate, TrichotomyError
from group_spec import build_group, parse_group_spec
from report import build_report, error_report, to_json, to_text, verdict_from_report
from settings import DEFAULT_ENUM_LIMIT, DEFAULT_SEED, DEFAULT_TOLERANCE, SAMPLE_BUDGET, ClassifyOptions

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_UNKNOWN = 2

# worse codes sort later
SEVERITY = {EXIT_OK: 0, EXIT_UNKNOWN: 1, EXIT_INPUT_ERROR: 2}


def _parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog="cellular-trichotomy",
        description="Decide the shape of the BZ/p-cellularization of BG for a finite group G.",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--group", help="group spec, e.g. builtin:suzuki:8 or perm:3:(1 2),(1 2 3)")
    source.add_argument("--batch", metavar="FILE", help="one '<spec> <prime>' per line")
    source.add_argument("--reverify", metavar="FILE", help="re-check a JSON or JSON-lines report")
    source.add_argument("--list-builtins", action="store_true", help="list builtin families and exit")
    parser.add_argument("--prime", type=int, help="the prime p (required with --group)")
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE, help="matrix tolerance")
    parser.add_argument("--enum-limit", type=int, default=DEFAULT_ENUM_LIMIT,
                        help="largest group enumerated element by element")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--jobs", type=int, default=1, help="batch worker processes")
    parser.add_argument("--timings", action="store_true", help="fill timings_ms in reports")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true")
    verbosity.add_argument("--quiet", "-q", action="store_true")
    args = parser.parse_args(argv)
    if args.group is not None and args.prime is None:
        parser.error("--group needs --prime")
    return args


def _configure_logging(args):
    level = logging.INFO if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def _options(args):
    return ClassifyOptions(enum_limit=args.enum_limit, tolerance=args.tol, seed=args.seed,
                           sample_budget=SAMPLE_BUDGET)


def run_one(spec_text, p, options, timings=False):
    """
    Parse, build and classify one group.

    Returns (exit code, report dict); input errors become error records.
    """
    clock = {}
    try:
        start = time.perf_counter()
        G = build_group(parse_group_spec(spec_text))
        clock["build"] = (time.perf_counter() - start) * 1000
        start = time.perf_counter()
        verdict = classify(G, p, options)
        clock["classify"] = (time.perf_counter() - start) * 1000
    except TrichotomyError as error:
        logger.error("%s at p = %s: %s", spec_text, p, error)
        return EXIT_INPUT_ERROR, error_report(spec_text, p, error)
    report = build_report(spec_text, p, verdict, options, clock if timings else None)
    return (EXIT_UNKNOWN if verdict.branch == UNKNOWN else EXIT_OK), report


def _run_line(job):
    number, line, options, timings = job
    spec_text, _, prime_text = line.rpartition(" ")
    spec_text = spec_text.strip()
    try:
        p = int(prime_text)
    except ValueError:
        p = None
    if not spec_text or p is None:
        logger.error("batch line %d: expected '<spec> <prime>'", number)
        return EXIT_INPUT_ERROR, error_report(line, None, ValueError(f"line {number}: expected '<spec> <prime>'"))
    return run_one(spec_text, p, options, timings)


def _batch_lines(path):
    with open(path, encoding="utf-8") as batch:
        for number, raw in enumerate(batch, start=1):
            line = raw.strip()
            if line and not line.startswith("#"):
                yield number, line


def run_batch(path, options, jobs=1, timings=False, text=False, out=None):
    out = out or sys.stdout
    jobs_list = [(number, line, options, timings) for number, line in _batch_lines(path)]
    logger.info("batch of %d lines with %d worker(s)", len(jobs_list), jobs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_line, jobs_list))
    else:
        results = [_run_line(job) for job in jobs_list]

    worst = EXIT_OK
    for code, report in results:
        print(to_text(report) if text else to_json(report), file=out)
        worst = max(worst, code, key=SEVERITY.get)
    return worst


def _load_reports(path):
    with open(path, encoding="utf-8") as source:
        content = source.read()
    try:
        return [json.loads(content)]
    except json.JSONDecodeError:
        return [json.loads(line) for line in content.splitlines() if line.strip()]


def run_reverify(path, args, out=None):
    """Exit 0 iff every record in the file re-verifies."""
    out = out or sys.stdout
    failed = 0
    for report in _load_reports(path):
        spec_text, p = report["input"]["spec"], report["input"]["prime"]
        if "error" in report:
            print(f"{spec_text} {p}: error record, nothing to verify", file=out)
            failed += 1
            continue
        options = ClassifyOptions(enum_limit=args.enum_limit, tolerance=report["tolerance"],
                                  seed=report["seed"])
        try:
            G = build_group(parse_group_spec(spec_text))
            ok = reverify(verdict_from_report(report), G, p, options)
        except StaleCertificate as error:
            logger.error("%s: stale certificate: %s", spec_text, error)
            ok = False
        print(f"{spec_text} {p}: {'verified' if ok else 'FAILED'}", file=out)
        failed += not ok
    return EXIT_OK if failed == 0 else EXIT_INPUT_ERROR


def print_builtins(out=None):
    out = out or sys.stdout
    for info in list_builtins():
        params = "".join(f":<{name}>" for name in info.params)
        print(f"builtin:{info.name}{params}  {info.description}", file=out)
    print("semidirect:{H}{K}{images}  H semidirect K; per K generator, images of H's generators", file=out)


def main(argv=None):
    args = _parse_args(argv)
    _configure_logging(args)
    if args.list_builtins:
        print_builtins()
        return EXIT_OK
    if args.reverify:
        return run_reverify(args.reverify, args)
    options = _options(args)
    if args.batch:
        return run_batch(args.batch, options, args.jobs, args.timings, args.format == "text")

    code, report = run_one(args.group, args.prime, options, args.timings)
    print(to_text(report) if args.format == "text" else to_json(report, pretty=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
