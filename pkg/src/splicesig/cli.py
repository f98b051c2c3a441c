"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (invalid diagram, failed
check), 2 I/O, parse or usage error.
"""
import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .dedekind import identity_suite
from .errors import DiagramParseError, DomainError, InvariantFailure
from .graph import load_diagram, serialize, validate
from .kernels import BACKEND
from .ops import build_family, generate_random
from .sgamma import check_main_theorem, s_gamma, skip_reason
from .signatures import average_routes, signature_function

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _dump(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _load(path):
    """Load a diagram, or print the problem and return None."""
    try:
        return load_diagram(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror or exc}", file=sys.stderr)
    except DiagramParseError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
    return None


def run_report(d, path=None, report=None):
    """Everything the ``invariants`` command knows about ``d``, in a fixed key order."""
    report = report or validate(d)
    out = {"input": None if path is None else str(path), "validation": report.to_dict()}
    if not report.ok:
        return out
    try:
        out["s_gamma"] = s_gamma(d).to_dict()
    except DomainError as exc:
        out["s_gamma"] = {"error": str(exc)}
    try:
        a, b = average_routes(d)
        out["average"] = {"integral": str(a), "dedekind": str(b), "agree": a == b}
        out["breakpoints"] = len(signature_function(d).breakpoints)
    except DomainError as exc:
        out["average"] = {"error": str(exc)}
        out["breakpoints"] = None
    reason = skip_reason(d, report)
    if reason:
        out["theorem"] = {"holds": None, "skipped": reason}
    else:
        out["theorem"] = {"holds": check_main_theorem(d, report).holds, "skipped": None}
    return out


# -- commands ------------------------------------------------------------------

def cmd_validate(args):
    d = _load(args.path)
    if d is None:
        return EXIT_USAGE
    report = validate(d)
    if args.json:
        sys.stdout.write(_dump(report.to_dict()))
    else:
        print("valid" if report.ok else "invalid")
        for msg in report.structural_errors:
            print(f"  error: {msg}")
        for leaf in report.bad_leaves:
            print(f"  bad leaf: {leaf}")
        for note in report.notes:
            print(f"  note: {note}")
        if report.ok:
            print(f"  almost minimal: {'yes' if report.is_almost_minimal else 'no'}")
            print(f"  link: {'yes' if report.is_link else 'no'}")
    return EXIT_OK if report.ok else EXIT_FAIL


def _write_csv(sf, target, approx):
    text = sf.to_csv(approx=approx)
    if target in (None, "-"):
        sys.stdout.write(text)
        return True
    try:
        Path(target).write_text(text, encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot write {target}: {exc.strerror or exc}", file=sys.stderr)
        return False
    return True


def cmd_invariants(args):
    d = _load(args.path)
    if d is None:
        return EXIT_USAGE
    start = time.perf_counter()
    report = validate(d)
    out = run_report(d, args.path, report)
    if args.timing:
        print(f"wall time: {time.perf_counter() - start:.6f} s", file=sys.stderr)
    if args.json or not report.ok:
        sys.stdout.write(_dump(out))
    else:
        _print_report(out)
    if not report.ok:
        return EXIT_FAIL
    if args.csv:
        try:
            sf = signature_function(d)
        except DomainError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        if not _write_csv(sf, args.csv, args.approx):
            return EXIT_USAGE
    return EXIT_OK


def _print_report(out):
    sg = out["s_gamma"]
    if "error" in sg:
        print(f"S(Gamma): undefined ({sg['error']})")
    else:
        print(f"S(Gamma) = {sg['total']}")
        for key in ("linking", "nodes", "leaves", "edges", "arrowheads"):
            print(f"  {key:<10} {sg[key]}")
    avg = out["average"]
    if "error" in avg:
        print(f"average signature: undefined ({avg['error']})")
    else:
        print(f"average signature = {avg['integral']} (Dedekind route {avg['dedekind']})")
        print(f"breakpoints: {out['breakpoints']}")
    th = out["theorem"]
    if th["skipped"]:
        print(f"theorem: skipped: {th['skipped']}")
    else:
        print(f"theorem: {'holds' if th['holds'] else 'FAILS'}")


def cmd_signature(args):
    d = _load(args.path)
    if d is None:
        return EXIT_USAGE
    report = validate(d)
    if not report.ok:
        sys.stdout.write(_dump(report.to_dict()))
        return EXIT_FAIL
    try:
        sf = signature_function(d)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK if _write_csv(sf, args.output, args.approx) else EXIT_USAGE


def _check_one(d):
    """(status, report dict) with status in {"holds", "skipped", "fails"}."""
    try:
        rep = check_main_theorem(d)
    except (InvariantFailure, DomainError) as exc:
        return "fails", {"error": f"{type(exc).__name__}: {exc}"}
    if rep.skipped:
        return "skipped", rep.to_dict()
    return ("holds" if rep.holds else "fails"), rep.to_dict()


def _check_seed(job):
    seed, nodes, max_weight = job
    d = generate_random(seed, nodes, max_weight)
    status, rep = _check_one(d)
    return seed, status, rep, (serialize(d) if status == "fails" else None)


def derive_seed(seed, i):
    """Seed of the i-th diagram of a batch started from ``seed``."""
    return (seed << 32) + i


def cmd_check(args):
    if args.path is None and args.random is None:
        print("error: give a PATH or --random N", file=sys.stderr)
        return EXIT_USAGE
    if args.path is not None and args.random is not None:
        print("error: PATH and --random are mutually exclusive", file=sys.stderr)
        return EXIT_USAGE
    if args.path is not None:
        d = _load(args.path)
        if d is None:
            return EXIT_USAGE
        status, rep = _check_one(d)
        if status == "skipped":
            print(f"skipped: {rep['skipped']}")
            return EXIT_OK
        if status == "holds":
            print(f"holds: average {rep['average']} = -({rep['s_gamma']})/3")
            return EXIT_OK
        print("FAILS")
        sys.stdout.write(_dump(rep))
        sys.stdout.write(serialize(d))
        return EXIT_FAIL

    jobs = [(derive_seed(args.seed, i), args.nodes, args.max_weight) for i in range(args.random)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_check_seed, jobs, chunksize=max(1, len(jobs) // (4 * args.jobs))))
    else:
        results = [_check_seed(job) for job in jobs]
    counts = {"holds": 0, "skipped": 0, "fails": 0}
    for seed, status, rep, text in results:
        counts[status] += 1
        if status == "fails":
            print(f"counterexample (seed {seed}):")
            sys.stdout.write(_dump(rep))
            sys.stdout.write(text)
    print(f"checked {len(results)}: {counts['holds']} hold, {counts['skipped']} skipped, {counts['fails']} fail")
    return EXIT_FAIL if counts["fails"] else EXIT_OK


def cmd_generate(args):
    if args.family:
        try:
            params = json.loads(args.params)
            d = build_family(args.family, params)
        except (ValueError, TypeError, DomainError) as exc:
            print(f"error: bad family parameters: {exc}", file=sys.stderr)
            return EXIT_USAGE
        sys.stdout.write(serialize(d))
        return EXIT_OK
    seeds = [derive_seed(args.seed, i) for i in range(args.count)]
    if args.out is None:
        if args.count != 1:
            print("error: --count > 1 needs --out DIR", file=sys.stderr)
            return EXIT_USAGE
        sys.stdout.write(serialize(generate_random(seeds[0], args.nodes, args.max_weight)))
        return EXIT_OK
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for i, s in enumerate(seeds):
            (out / f"diagram_{i:05d}.json").write_text(
                serialize(generate_random(s, args.nodes, args.max_weight)), encoding="utf-8"
            )
    except OSError as exc:
        print(f"error: cannot write to {out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_selftest(args):
    if not args.identities:
        print("error: nothing to do; pass --identities", file=sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    results = identity_suite(max_q=args.max_q, samples=args.samples, three_term=args.three_term, seed=args.seed)
    ok = True
    for name, passed, detail in results:
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
    print(f"backend: {BACKEND}; {time.perf_counter() - start:.2f} s", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser --------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="splicesig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check structural validity of a diagram file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants", help="S(Gamma), average signature and theorem verdict")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--csv", metavar="PATH", help="also write the signature step function ('-' for stdout)")
    p.add_argument("--approx", action="store_true", help="add non-authoritative decimal columns to the CSV")
    p.add_argument("--timing", action="store_true", help="print wall time to stderr")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("signature", help="export the signature step function as CSV")
    p.add_argument("path")
    p.add_argument("-o", "--output", metavar="PATH", help="write to PATH instead of stdout")
    p.add_argument("--approx", action="store_true", help="add non-authoritative decimal columns")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("check", help="check average = -S(Gamma)/3 on a file or on random diagrams")
    p.add_argument("path", nargs="?")
    p.add_argument("--random", type=_positive, metavar="N", help="check N generated diagrams")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nodes", type=_positive, default=4, metavar="K", help="max nodes per diagram")
    p.add_argument("--max-weight", type=int, default=5, choices=range(3, 50), metavar="W")
    p.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1, help="worker processes")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", help="write random or named-family diagrams")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--nodes", type=_positive, default=4, metavar="K")
    p.add_argument("--max-weight", type=int, default=5, choices=range(3, 50), metavar="W")
    p.add_argument("--count", type=_positive, default=1)
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--family", choices=("torus", "iterated_torus", "star"))
    p.add_argument("--params", default="null", help='JSON parameters, e.g. "[2, 3]"')
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("selftest", help="run the Dedekind-sum identity suite")
    p.add_argument("--identities", action="store_true")
    p.add_argument("--max-q", type=_positive, default=200)
    p.add_argument("--samples", type=_positive, default=20, help="random p per q")
    p.add_argument("--three-term", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return 130
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
