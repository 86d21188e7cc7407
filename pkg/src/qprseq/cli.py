"""Command-line interface.

Exit codes: 0 success, 1 domain error (unattainable sequence, singular
``B[gamma]``, failed self-test), 2 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import attainability, search, synthesis
from .exactfield import FieldError, FieldSpec
from .matrix import MatrixError, SingularError, complement, schur_complement
from .matrixfile import MatrixFileError, read_matrix, write_matrix
from .sequences import validate_matrix_report

log = logging.getLogger("qprseq")

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _default_seed() -> int:
    raw = os.environ.get("QPR_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"QPR_SEED must be an integer, got {raw!r}") from None


def cmd_compute(args) -> int:
    B = read_matrix(_read_input(args.infile))
    rep = validate_matrix_report(B)
    if args.json:
        print(json.dumps({"n": B.n, "field": B.field.tag, "pr": rep.pr, "epr": rep.epr,
                          "qpr": rep.qpr, "rank": rep.rank}))
    else:
        print(f"pr: {rep.pr}, epr: {rep.epr}, qpr: {rep.qpr}")
        if args.verbose:
            print(f"rank: {rep.rank}")
            for line in rep.lines():
                print(line)
    for c in rep.failures():
        log.warning("invariant violated: %s (%s)", c.name, c.detail)
    return EXIT_OK


def cmd_check(args) -> int:
    v = attainability.check(args.seq)
    print(v)
    if args.field and not FieldSpec.from_tag(args.field).is_rational:
        print(attainability.CHAR_P_CAVEAT)
    return EXIT_OK if v.attainable else EXIT_DOMAIN


def cmd_enumerate(args) -> int:
    for s in attainability.enumerate_attainable(args.n):
        print(s)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        B, trace = synthesis.synthesize(args.seq, seed=seed)
    except synthesis.UnattainableError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except synthesis.RetryExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    text = write_matrix(B, comments=trace.to_text().splitlines())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
        sys.stdout.write(trace.to_text())
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_survey(args) -> int:
    try:
        res = search.exhaustive_survey(args.p, args.n, workers=args.workers)
    except search.SearchError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.json:
        print(res.to_json(args.witnesses))
    else:
        print(res.to_table(args.witnesses))
        bad = [s for s in res.realized() if not attainability.check(s).attainable]
        print(f"# necessary condition holds for all realized sequences: {not bad}")
        print("# " + attainability.CHAR_P_CAVEAT[len("note: "):])
    return EXIT_OK


def _parse_gamma(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad index list {text!r}") from None


def cmd_schur(args) -> int:
    B = read_matrix(_read_input(args.infile))
    gamma = _parse_gamma(args.gamma)
    try:
        C = schur_complement(B, gamma)
    except SingularError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    rows = " ".join(str(i) for i in complement(B.n, gamma))
    sys.stdout.write(write_matrix(C, comments=[f"Schur complement of B[{sorted(gamma)}]",
                                               f"indices inherited from B: {rows}"]))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    results = run_selftest(count=args.count, seed=args.seed)
    for name, ok, detail in results:
        print(f"[{'pass' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail else ""))
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qprseq", description="qpr-sequences of symmetric matrices")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="pr-, epr- and qpr-sequence of a matrix file")
    p.add_argument("--in", dest="infile", required=True, help="matrix file, '-' for stdin")
    p.add_argument("--json", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true", help="also print the invariant report")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("check", help="decide attainability of a qpr-sequence")
    p.add_argument("--seq", required=True)
    p.add_argument("--field", help="field tag (Q, F2, ...); only used for the caveat")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="list attainable sequences of length n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("synthesize", help="build a rational witness matrix")
    p.add_argument("--seq", required=True)
    p.add_argument("--seed", type=int, default=None, help="default: $QPR_SEED or 0")
    p.add_argument("--out", help="write the matrix file here (trace goes to stdout)")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("survey", help="exhaustive survey over GF(p)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--witnesses", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("schur", help="Schur complement of a principal submatrix")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--gamma", required=True, help="1-based indices, e.g. 1,3")
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("selftest", help="run the invariant suite on random matrices")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_IO if e.code else EXIT_OK
    try:
        return args.func(args)
    except (OSError, MatrixFileError, FieldError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, MatrixError) as e:
        # bad sequence strings, out-of-range n or indices
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())
