"""Direct factorisation into indecomposables, the refinement join, and the SRP check."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, Union

from .congruence import Congruence, CongruencePair, complementary_factor_pairs
from .core import ElementMap, Semilattice, canonical_form, product_of, subsemilattice
from .directsum import SummandPair, build_isomorphism, is_direct_sum, map_I, projections
from .errors import NotADirectSum, NotSubsemilattice

Selector = Union[str, Callable[[list[CongruencePair]], CongruencePair]]

STRATEGIES = ("min-quotient", "max-quotient", "first", "last")


@dataclass(frozen=True)
class Factorization:
    """``A`` as an iterated product of directly indecomposable factors.

    ``coords[x]`` lists the coordinates of ``x`` in each factor; ``iso`` maps
    ``A`` onto ``product_of(factors)`` (mixed-radix, first factor most
    significant).
    """

    factors: tuple[Semilattice, ...]
    coords: tuple[tuple[int, ...], ...]
    iso: ElementMap
    base: int

    def factor_keys(self) -> list[tuple[int, ...]]:
        return [F.key() for F in self.factors]


def _select(pairs: list[CongruencePair], how: Selector) -> CongruencePair:
    if callable(how):
        return how(pairs)
    if how == "min-quotient":
        return min(pairs, key=lambda p: len(p.delta))
    if how == "max-quotient":
        return min(pairs, key=lambda p: -len(p.delta))
    if how == "first":
        return pairs[0]
    if how == "last":
        return pairs[-1]
    raise ValueError(f"unknown pair selection {how!r}")


@lru_cache(maxsize=4096)
def _nontrivial_pairs(A: Semilattice, cap) -> tuple[CongruencePair, ...]:
    # independent of the base and of the strategy, so shared across calls
    return tuple(p for p in complementary_factor_pairs(A, cap) if not p.is_trivial)


def _split(A: Semilattice, c: int, how: Selector, cap) -> tuple[list[Semilattice], list[tuple[int, ...]]]:
    nontrivial = list(_nontrivial_pairs(A, cap))
    if not nontrivial:
        return [A], [(x,) for x in A.elements]
    pair = _select(nontrivial, how)
    sp = map_I(A, c, pair.theta, pair.delta)
    iso = build_isomorphism(A, sp)
    S1, emb1 = subsemilattice(A, sp.I1)
    S2, emb2 = subsemilattice(A, sp.I2)
    f1, co1 = _split(S1, emb1.index(c), how, cap)
    f2, co2 = _split(S2, emb2.index(c), how, cap)
    k = len(sp.I2)
    coords: list[tuple[int, ...]] = [()] * A.n
    for idx, x in enumerate(iso.images):
        i, j = divmod(idx, k)
        coords[x] = co1[i] + co2[j]
    return f1 + f2, coords


def factorize(A: Semilattice, c: int = 0, select: Selector = "min-quotient", cap=None) -> Factorization:
    """Split ``A`` recursively along nontrivial complementary factor pairs.

    At each step the chosen pair ``(theta, delta)`` is turned into summands
    with :func:`map_I` and the recursion continues on the two summands
    (``I_theta`` is isomorphic to ``A/delta``), each with ``c`` as base.
    Factors come back in canonical form, sorted by size and join table.
    """
    raw, coords = _split(A, c, select, cap)
    canon = [canonical_form(F) for F in raw]
    order = sorted(range(len(raw)), key=lambda i: (canon[i][0].n, canon[i][0].key()))
    factors = tuple(canon[i][0] for i in order)
    new_coords = tuple(tuple(canon[i][1][co[i]] for i in order) for co in coords)
    P = product_of(factors)
    images = []
    for co in new_coords:
        idx = 0
        for F, v in zip(factors, co):
            idx = idx * F.n + v
        images.append(idx)
    return Factorization(factors, new_coords, ElementMap(A, P, tuple(images)), c)


# -- refinement --------------------------------------------------------------------


@dataclass(frozen=True)
class Refinement:
    subset: tuple[int, ...]
    pair: SummandPair
    verdict: bool


def refine_join(A: Semilattice, c: int, first: SummandPair, second: SummandPair) -> Refinement:
    """Compute ``I2 ⋎ J2`` and test whether ``(I1 ∩ J1, I2 ⋎ J2)`` is again a c-direct sum.

    ``A`` is read as ``A1 x A2`` through the first pair; the set
    ``pi1(J2) x A2`` is pulled back to ``A`` as ``{x : pi1(x) in pi1(J2)}``.
    """
    for sp in (first, second):
        if sp.c != c or not is_direct_sum(A, sp):
            raise NotADirectSum(f"{sp} is not a {c}-direct sum")
    pi1, _ = projections(A, first)
    image = {pi1[y] for y in second.I2}
    subset = tuple(x for x in A.elements if pi1[x] in image)
    meet_part = sorted(set(first.I1) & set(second.I1))
    pair = SummandPair(c, meet_part, subset)
    try:
        verdict = is_direct_sum(A, pair)
    except NotSubsemilattice:
        verdict = False
    return Refinement(subset, pair, verdict)


# -- Boolean algebra of factor congruences ------------------------------------------


def factor_congruences(A: Semilattice, cap=None) -> list[Congruence]:
    found = set()
    for p in complementary_factor_pairs(A, cap):
        found.add(p.theta)
        found.add(p.delta)
    return sorted(found, key=Congruence.sort_key)


def is_boolean_lattice(elements: Sequence, leq: Callable[[object, object], bool]) -> bool:
    """Structural test: bounded lattice, distributive, every element complemented."""
    E = list(elements)
    k = len(E)
    if k == 0:
        return False
    le = [[leq(a, b) for b in E] for a in E]
    for i in range(k):
        for j in range(k):
            if i != j and le[i][j] and le[j][i]:
                return False
    bottoms = [i for i in range(k) if all(le[i])]
    tops = [i for i in range(k) if all(le[j][i] for j in range(k))]
    if len(bottoms) != 1 or len(tops) != 1:
        return False
    bot, top = bottoms[0], tops[0]

    def extremum(cands, better):
        best = [a for a in cands if all(better(a, b) for b in cands)]
        return best[0] if best else None

    join = [[0] * k for _ in range(k)]
    meet = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            ub = [u for u in range(k) if le[i][u] and le[j][u]]
            lb = [u for u in range(k) if le[u][i] and le[u][j]]
            jv = extremum(ub, lambda a, b: le[a][b])
            mv = extremum(lb, lambda a, b: le[b][a])
            if jv is None or mv is None:
                return False
            join[i][j], meet[i][j] = jv, mv
    for x in range(k):
        for y in range(k):
            for z in range(k):
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    return False
    return all(any(meet[x][y] == bot and join[x][y] == top for y in range(k)) for x in range(k))


def factor_congruence_boolean_check(A: Semilattice, cap=None) -> bool:
    """Do the factor congruences, ordered by refinement, form a Boolean lattice
    with the identity and total relations as its bounds?"""
    cons = factor_congruences(A, cap)
    delta, nabla = Congruence.identity(A.n), Congruence.total(A.n)
    if delta not in cons or nabla not in cons:
        return False
    return is_boolean_lattice(cons, lambda a, b: a.refines(b))
