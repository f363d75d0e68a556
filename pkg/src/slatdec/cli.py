"""Command line interface.

Exit codes: 0 when the property holds (or the command simply succeeded),
1 when it fails (the witness is printed), 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys

from .bounded import check_one_case, check_zero_case
from .congruence import all_congruences, complementary_factor_pairs
from .core import Semilattice
from .directsum import AXIOMS, SummandPair, check_axioms
from .enumeration import RESTRICTIONS, enumerate_semilattices, independence_search
from .errors import SemilatticeError
from .factorize import STRATEGIES, factor_congruence_boolean_check, factorize, refine_join
from .io import emit_dot, emit_slat, parse_slat


def _load(path: str) -> Semilattice:
    if path == "-":
        return parse_slat(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_slat(fh.read())


def _elements(A: Semilattice, spec: str) -> list[int]:
    return [A.index(t) for t in spec.split(",") if t.strip()]


def _pair(A: Semilattice, c: int, spec: str) -> SummandPair:
    try:
        left, right = spec.split("/")
    except ValueError:
        raise SemilatticeError(f"expected 'LIST/LIST', got {spec!r}") from None
    return SummandPair(c, _elements(A, left), _elements(A, right))


def _fmt(A: Semilattice, elems) -> str:
    return "{" + ",".join(A.label(e) for e in elems) + "}"


def _fmt_partition(A: Semilattice, th) -> str:
    return "{" + ", ".join(_fmt(A, b) for b in th.blocks) + "}"


def cmd_validate(args) -> int:
    A = _load(args.file)
    lo = A.minimum
    print(f"valid join-semilattice: n={A.n}, maximum={A.label(A.maximum)}, "
          f"minimum={'none' if lo is None else A.label(lo)}")
    return 0


def cmd_meets(args) -> int:
    A = _load(args.file)
    width = max(len(A.label(x)) for x in A.elements)
    for x in A.elements:
        cells = [("-" if m is None else A.label(m)).rjust(width) for m in A.meet_table[x]]
        print(" ".join(cells))
    return 0


def cmd_congruences(args) -> int:
    A = _load(args.file)
    cons = all_congruences(A)
    for th in cons:
        print(_fmt_partition(A, th))
    print(f"# {len(cons)} congruences")
    return 0


def cmd_factor_pairs(args) -> int:
    A = _load(args.file)
    pairs = complementary_factor_pairs(A)
    for p in pairs:
        print(f"theta={_fmt_partition(A, p.theta)} delta={_fmt_partition(A, p.delta)}")
    print(f"# {len(pairs)} ordered pairs; boolean: {factor_congruence_boolean_check(A)}")
    return 0


def cmd_check_sum(args) -> int:
    A = _load(args.file)
    c = A.index(args.c)
    sp = SummandPair(c, _elements(A, args.i1), _elements(A, args.i2))
    report = check_axioms(A, sp)
    for line in report.lines(A):
        print(line)
    print(f"direct sum: {report.holds}")
    return 0 if report.holds else 1


def _bounded(args, fn) -> int:
    A = _load(args.file)
    rep = fn(A, _elements(A, args.i1), _elements(A, args.i2))
    for line in rep.lines(A):
        print(line)
    print(f"direct sum: {rep.holds}")
    return 0 if rep.holds else 1


def cmd_factorize(args) -> int:
    A = _load(args.file)
    c = A.index(args.c) if args.c is not None else 0
    fz = factorize(A, c, args.select)
    print(f"# {len(fz.factors)} factor(s), sizes {[F.n for F in fz.factors]}")
    for i, F in enumerate(fz.factors):
        print(f"# factor {i}")
        print(emit_slat(F), end="")
    print("# coordinates")
    for x in A.elements:
        print(f"{A.label(x)} -> {fz.coords[x]}")
    return 0


def cmd_refine(args) -> int:
    A = _load(args.file)
    c = A.index(args.c)
    r = refine_join(A, c, _pair(A, c, args.first), _pair(A, c, args.second))
    print(f"I1 & J1 = {_fmt(A, r.pair.I1)}")
    print(f"I2 v J2 = {_fmt(A, r.subset)}")
    print(f"direct sum: {r.verdict}")
    if not r.verdict:
        for line in check_axioms(A, r.pair).lines(A):
            print(line)
    return 0 if r.verdict else 1


def cmd_independence(args) -> int:
    w = independence_search(args.axiom, args.max_n, restrict=args.restrict)
    if w is None:
        print(f"no witness for {args.axiom} up to n={args.max_n}")
        return 1
    print(f"# witness for {args.axiom}: n={w.A.n}, c={w.c}, I1={_fmt(w.A, w.I1)}, I2={_fmt(w.A, w.I2)}")
    for line in w.report.lines(w.A):
        print("# " + line)
    print(emit_slat(w.A), end="")
    return 0


def cmd_enumerate(args) -> int:
    items = enumerate_semilattices(args.n, cap=args.cap)
    print(f"# {len(items)} join-semilattices with {args.n} elements")
    for i, A in enumerate(items):
        print(f"# structure {i}")
        print(emit_slat(A), end="")
    return 0


def cmd_dot(args) -> int:
    A = _load(args.file)
    groups = {}
    for h in args.highlight or []:
        label, _, elems = h.partition("=")
        groups[label] = _elements(A, elems)
    partition = None
    if args.partition:
        partition = [_elements(A, b) for b in args.partition.split("/")]
    sys.stdout.write(emit_dot(A, groups, partition))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slatdec", description="Direct decompositions of finite join-semilattices.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help=".slat file, or - for stdin")
        sp.set_defaults(func=fn)
        return sp

    with_file("validate", cmd_validate, "check the semilattice laws")
    with_file("meets", cmd_meets, "print the partial meet table")
    with_file("congruences", cmd_congruences, "list all congruences")
    with_file("factor-pairs", cmd_factor_pairs, "list complementary factor-congruence pairs")
    s = with_file("check-sum", cmd_check_sum, "check the c-direct-sum axioms")
    s.add_argument("--c", required=True)
    s.add_argument("--i1", required=True)
    s.add_argument("--i2", required=True)
    for name, fn in (("check-zero", check_zero_case), ("check-one", check_one_case)):
        s = with_file(name, lambda a, fn=fn: _bounded(a, fn), f"bounded criterion ({name[6:]})")
        s.add_argument("--i1", required=True)
        s.add_argument("--i2", required=True)
    s = with_file("factorize", cmd_factorize, "factor into directly indecomposables")
    s.add_argument("--c", default=None)
    s.add_argument("--select", choices=STRATEGIES, default="min-quotient")
    s = with_file("refine", cmd_refine, "refinement join of two decompositions")
    s.add_argument("--c", required=True)
    s.add_argument("--first", required=True, help="I1/I2 as comma-separated lists")
    s.add_argument("--second", required=True, help="J1/J2 as comma-separated lists")
    s = sub.add_parser("independence", help="search a witness failing exactly one axiom")
    s.add_argument("--axiom", required=True, choices=AXIOMS)
    s.add_argument("--max-n", type=int, default=7)
    s.add_argument("--restrict", choices=RESTRICTIONS, default="none",
                   help="'base': summands meet only in c; 'ideals': also both down-sets or both up-sets")
    s.set_defaults(func=cmd_independence)
    s = sub.add_parser("enumerate", help="list join-semilattices up to isomorphism")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--cap", type=int, default=None)
    s.set_defaults(func=cmd_enumerate)
    s = with_file("dot", cmd_dot, "emit a DOT Hasse diagram")
    s.add_argument("--highlight", action="append", metavar="LABEL=LIST")
    s.add_argument("--partition", default=None, metavar="LIST/LIST/...")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SemilatticeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
