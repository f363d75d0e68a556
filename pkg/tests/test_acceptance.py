"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines, or
directly with ``python tests/test_acceptance.py``.
"""

import time
from itertools import combinations_with_replacement

import pytest

from slatdec.bounded import check_one_case, check_zero_case
from slatdec.congruence import complementary_factor_pairs
from slatdec.core import (canonical_key, closed_subsets, direct_product, isomorphism_check,
                          product_of, subsemilattice)
from slatdec.directsum import (AXIOMS, SummandPair, build_isomorphism, check_axioms,
                               direct_sums, is_direct_sum, map_I, map_K)
from slatdec.enumeration import corpus, enumerate_semilattices, independence_search
from slatdec.factorize import (STRATEGIES, factor_congruence_boolean_check, factorize,
                               refine_join)
from slatdec.io import parse_slat

from conftest import N5_TEXT
from oracles import brute_isomorphic, brute_lattice_count, brute_meet


def verdict(label, failures, started, extra=""):
    elapsed = time.perf_counter() - started
    status = "PASS" if not failures else "FAIL"
    detail = f"{len(failures)} failure(s)" if failures else "0 failures"
    if extra:
        detail += f"; {extra}"
    print(f"\n{status} criterion {label}: {detail} ({elapsed:.1f}s)")
    assert not failures, failures[:5]


def all_sums(max_n):
    """(A, sp) for every corpus member, every base and every direct sum."""
    for A in corpus(max_n):
        subsets = closed_subsets(A)
        for c in A.elements:
            for sp in direct_sums(A, c, subsets):
                yield A, sp


def products_up_to(size):
    """Products of two or three corpus members of size >= 2 with at most ``size`` elements,
    deduplicated by canonical form, with the expected factor multiset."""
    from slatdec.factorize import factorize as fz

    base = [A for A in corpus(size // 2) if A.n >= 2]
    seen = {}
    for k in (2, 3):
        for combo in combinations_with_replacement(range(len(base)), k):
            parts = [base[i] for i in combo]
            total = 1
            for F in parts:
                total *= F.n
            if total > size:
                continue
            P = product_of(parts)
            key = canonical_key(P)
            if key in seen:
                continue
            expected = sorted(F.key() for part in parts for F in fz(part).factors)
            seen[key] = (P, expected)
    return list(seen.values())


def test_criterion_1_round_trip():
    t0 = time.perf_counter()
    failures = []
    pairs_checked = sums_checked = 0
    for A in corpus(6):
        subsets = closed_subsets(A)
        pairs = complementary_factor_pairs(A)
        for c in A.elements:
            for p in pairs:
                pairs_checked += 1
                if map_K(A, map_I(A, c, p.theta, p.delta)) != (p.theta, p.delta):
                    failures.append(("K.I", A.key(), c, str(p.theta), str(p.delta)))
            for sp in direct_sums(A, c, subsets):
                sums_checked += 1
                th, dl = map_K(A, sp)
                if map_I(A, c, th, dl) != sp:
                    failures.append(("I.K", A.key(), sp))
    elapsed = time.perf_counter() - t0
    if elapsed > 120:
        failures.append(("runtime", round(elapsed, 1)))
    verdict("1 (round trip, corpus n<=6)", failures, t0,
            f"{pairs_checked} pairs, {sums_checked} sums")


def test_criterion_2_summand_isomorphism():
    t0 = time.perf_counter()
    failures = []
    brute_cache = {}
    count = 0
    for A, sp in all_sums(6):
        count += 1
        iso = build_isomorphism(A, sp)
        if not iso.is_isomorphism():
            failures.append(("not iso", A.key(), sp))
            continue
        S1, _ = subsemilattice(A, sp.I1)
        S2, _ = subsemilattice(A, sp.I2)
        P = direct_product(S1, S2).semilattice
        key = (P.key(), A.key())
        if key not in brute_cache:
            brute_cache[key] = brute_isomorphic(P.join_table, A.join_table)
        if not brute_cache[key] or isomorphism_check(P, A) is None:
            failures.append(("search disagrees", A.key(), sp))
    verdict("2 (summand isomorphism)", failures, t0, f"{count} sums")


def test_criterion_3_componentwise_meets():
    t0 = time.perf_counter()
    failures = []
    small = corpus(5)
    count = 0
    for A in small:
        for B in small:
            prod = direct_product(A, B)
            P = prod.semilattice
            J = P.join_table
            for x in P.elements:
                a1, b1 = prod.unpair(x)
                for y in P.elements:
                    a2, b2 = prod.unpair(y)
                    count += 1
                    ma, mb = A.meet(a1, a2), B.meet(b1, b2)
                    expected = None if ma is None or mb is None else prod.pair(ma, mb)
                    brute = brute_meet(J, x, y)
                    if brute != expected or P.meet(x, y) != expected:
                        failures.append((A.key(), B.key(), x, y))
    verdict("3 (componentwise meets on products)", failures, t0, f"{count} element pairs")


def test_criterion_4_bounded_cases():
    t0 = time.perf_counter()
    failures = []
    count = 0
    for A in corpus(6):
        subsets = closed_subsets(A)
        lo, hi = A.minimum, A.maximum
        for I1 in subsets:
            for I2 in subsets:
                if lo is not None:
                    count += 1
                    rep = check_zero_case(A, I1, I2)
                    full = is_direct_sum(A, SummandPair(lo, I1, I2))
                    if rep.holds != full or (rep.holds and not rep.ideals_check):
                        failures.append(("zero", A.key(), I1, I2))
                count += 1
                rep = check_one_case(A, I1, I2)
                full = is_direct_sum(A, SummandPair(hi, I1, I2))
                if rep.holds != full or (rep.holds and not rep.ideals_check):
                    failures.append(("one", A.key(), I1, I2))
    verdict("4 (bounded criteria, corpus n<=6)", failures, t0, f"{count} comparisons")


@pytest.fixture(scope="module")
def witnesses():
    return {ax: independence_search(ax, 7) for ax in AXIOMS}


def test_criterion_5a_all_witnesses_found(witnesses):
    t0 = time.perf_counter()
    failures = []
    sizes = []
    for ax, w in witnesses.items():
        if w is None:
            failures.append((ax, "none found"))
            continue
        sizes.append(f"{ax}:n={w.A.n}")
        sp = SummandPair(w.c, w.I1, w.I2)
        if check_axioms(w.A, sp).failed() != [ax] or is_direct_sum(w.A, sp):
            failures.append((ax, "re-verification"))
    verdict("5a (five witnesses, re-verified)", failures, t0, ", ".join(sizes))


def test_criterion_5b_mod1_on_n5(witnesses):
    t0 = time.perf_counter()
    w = witnesses["Mod1"]
    ok = w is not None and isomorphism_check(w.A, parse_slat(N5_TEXT)) is not None
    verdict("5b (Mod1 witness on N5)", [] if ok else [("Mod1", w and w.A.key())], t0)


def test_criterion_5c_abs_on_n5(witnesses):
    t0 = time.perf_counter()
    w = witnesses["Abs"]
    ok = w is not None and isomorphism_check(w.A, parse_slat(N5_TEXT)) is not None
    extra = "" if w is None else f"smallest Abs witness has n={w.A.n}, I1={w.I1}, I2={w.I2}"
    if not ok:
        alt = independence_search("Abs", 7, restrict="ideals")
        on_n5 = alt is not None and isomorphism_check(alt.A, parse_slat(N5_TEXT)) is not None
        extra += f"; with restrict='ideals' the witness is on N5: {on_n5}"
    verdict("5c (Abs witness on N5)", [] if ok else [("Abs", w and w.A.key())], t0, extra)


def test_criterion_6_unique_factorization():
    t0 = time.perf_counter()
    failures = []
    items = products_up_to(8) + [(A, None) for A in corpus(8, cap=8)]
    for A, expected in items:
        keys = None
        for c in A.elements:
            for how in STRATEGIES:
                f = factorize(A, c, how)
                got = sorted(F.key() for F in f.factors)
                if keys is None:
                    keys = got
                if got != keys or (expected is not None and got != expected):
                    failures.append(("multiset", A.key(), c, how))
                if not f.iso.is_isomorphism():
                    failures.append(("iso", A.key(), c, how))
                if isomorphism_check(product_of(f.factors), A) is None:
                    failures.append(("product", A.key(), c, how))
    verdict("6 (unique factorization)", failures, t0, f"{len(items)} structures")


def test_criterion_7_refinement_and_boolean():
    t0 = time.perf_counter()
    failures = []
    checked = 0
    for A, _ in products_up_to(8):
        subsets = closed_subsets(A)
        for c in A.elements:
            sums = direct_sums(A, c, subsets)
            for first in sums:
                for second in sums:
                    checked += 1
                    if not refine_join(A, c, first, second).verdict:
                        failures.append(("refine", A.key(), first, second))
    boolean = 0
    for A in corpus(6):
        boolean += 1
        if not factor_congruence_boolean_check(A):
            failures.append(("boolean", A.key()))
    verdict("7 (refinement and Boolean factor congruences)", failures, t0,
            f"{checked} refinements, {boolean} Boolean checks")


def test_criterion_8_corpus_counts():
    t0 = time.perf_counter()
    failures = []
    counts = []
    for n in range(1, 8):
        got = len(enumerate_semilattices(n))
        want = brute_lattice_count(n + 1)
        counts.append(got)
        if got != want:
            failures.append((n, got, want))
    verdict("8 (corpus counts n=1..7)", failures, t0, f"counts {counts}")


if __name__ == "__main__":
    raise SystemExit(pytest.main(["-q", "-s", __file__]))
