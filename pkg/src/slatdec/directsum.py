"""Generalised direct sums ``A = I1 (+)_c I2`` of a join-semilattice.

Every equation involving the partial meet is read three-valued: it holds
when both sides are undefined, or both are defined and equal.  ``None``
propagates through joins and meets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable

from .congruence import Congruence, as_congruence, is_complementary_pair
from .core import ElementMap, Semilattice, _mask, direct_product, subsemilattice
from .errors import InternalContradiction, NotADirectSum, NotComplementaryPair, NotSubsemilattice

AXIOMS = ("Mod1", "Mod2", "Abs", "exi", "onto")
REPORTED = AXIOMS + ("ori",)


def _j(A: Semilattice, x, y):
    if x is None or y is None:
        return None
    return A.join_table[x][y]


@dataclass(frozen=True)
class SummandPair:
    c: int
    I1: tuple[int, ...]
    I2: tuple[int, ...]

    def __init__(self, c: int, I1: Iterable[int], I2: Iterable[int]):
        object.__setattr__(self, "c", int(c))
        object.__setattr__(self, "I1", tuple(sorted(set(I1))))
        object.__setattr__(self, "I2", tuple(sorted(set(I2))))

    def swapped(self) -> SummandPair:
        return SummandPair(self.c, self.I2, self.I1)


def _require_subsemilattices(A: Semilattice, sp: SummandPair) -> None:
    for name, s in (("I1", sp.I1), ("I2", sp.I2)):
        if not s or not A.is_join_closed(s):
            raise NotSubsemilattice(f"{name} = {list(s)} is not a nonempty join-closed subset")
    if not 0 <= sp.c < A.n:
        raise NotSubsemilattice(f"base element {sp.c} is not in the carrier")


# -- phi ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiWitness:
    x1: int
    x2: int
    x: int
    holds_dist: bool
    holds_p1: bool
    holds_p2: bool
    holds_join: bool

    @property
    def holds(self) -> bool:
        return self.holds_dist and self.holds_p1 and self.holds_p2 and self.holds_join

    def __bool__(self):
        return self.holds


def eval_phi(A: Semilattice, c: int, x1: int, x2: int, x: int) -> PhiWitness:
    J, meet = A.join_table, A.meet
    return PhiWitness(
        x1, x2, x,
        holds_dist=meet(J[x][x1], J[x][x2]) == x,
        holds_p1=meet(J[x][x1], J[c][x1]) == x1,
        holds_p2=meet(J[x][x2], J[c][x2]) == x2,
        holds_join=J[x1][x2] == J[x][c],
    )


# -- reports -----------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomVerdict:
    name: str
    holds: bool
    witness: tuple[int, ...] | None = None
    note: str | None = None

    def __bool__(self):
        return self.holds

    def describe(self, A: Semilattice | None = None) -> str:
        if self.holds:
            return f"{self.name}: holds"
        w = self.witness
        if A is not None and w is not None:
            w = tuple(A.label(e) for e in w)
        extra = f" ({self.note})" if self.note else ""
        return f"{self.name}: FAILS at {w}{extra}"


@dataclass(frozen=True)
class AxiomReport:
    c: int
    I1: tuple[int, ...]
    I2: tuple[int, ...]
    verdicts: dict = field(default_factory=dict)

    def __getitem__(self, name: str) -> AxiomVerdict:
        return self.verdicts[name]

    @property
    def holds(self) -> bool:
        """Conjunction of the five defining axioms (ori is derived, not required)."""
        return all(self.verdicts[a].holds for a in AXIOMS)

    def failed(self) -> list[str]:
        return [a for a in AXIOMS if not self.verdicts[a].holds]

    def lines(self, A: Semilattice | None = None) -> list[str]:
        return [self.verdicts[a].describe(A) for a in REPORTED]


def _mod1(A, c, I1, I2):
    J, meet = A.join_table, A.meet
    for x in A.elements:
        xc = J[x][c]
        for y in A.elements:
            xy = J[x][y]
            for x1 in I1:
                for x2 in I2:
                    if J[J[x1][x2]][xc] != xc:
                        continue
                    lhs = _j(A, meet(J[x][x1], J[x][x2]), y)
                    rhs = meet(J[xy][x1], J[xy][x2])
                    if lhs != rhs:
                        return AxiomVerdict("Mod1", False, (x, y, x1, x2))
    return AxiomVerdict("Mod1", True)


def _mod2(A, c, I1, I2):
    J, meet = A.join_table, A.meet
    for x in A.elements:
        for y in A.elements:
            xy, cy = J[x][y], J[c][y]
            for x1 in I1:
                for x2 in I2:
                    if J[x][J[x1][x2]] != J[x1][x2]:
                        continue
                    for i, xi in ((1, x1), (2, x2)):
                        lhs = _j(A, meet(J[x][xi], J[c][xi]), y)
                        rhs = meet(J[xy][xi], J[cy][xi])
                        if lhs != rhs:
                            return AxiomVerdict("Mod2", False, (x, y, x1, x2), f"i={i}")
    return AxiomVerdict("Mod2", True)


def _abs(A, c, I1, I2):
    J, meet = A.join_table, A.meet
    for label, P, Q in (("I1,I1,I2", I1, I2), ("I2,I2,I1", I2, I1)):
        for x1 in P:
            for y1 in P:
                yc = J[y1][c]
                for z2 in Q:
                    if meet(x1, J[y1][z2]) != meet(x1, yc):
                        return AxiomVerdict("Abs", False, (x1, y1, z2), label)
    return AxiomVerdict("Abs", True)


def _exi(A, c, I1, I2):
    for x1 in I1:
        for x2 in I2:
            if not any(eval_phi(A, c, x1, x2, x).holds for x in A.elements):
                return AxiomVerdict("exi", False, (x1, x2))
    return AxiomVerdict("exi", True)


def _onto(A, c, I1, I2):
    for x in A.elements:
        if not any(eval_phi(A, c, x1, x2, x).holds for x1 in I1 for x2 in I2):
            return AxiomVerdict("onto", False, (x,))
    return AxiomVerdict("onto", True)


def _ori(A, c, I1, I2):
    J = A.join_table
    for x1 in I1:
        for x2 in I2:
            if J[J[x1][x2]][c] != J[x1][x2]:
                return AxiomVerdict("ori", False, (x1, x2))
    return AxiomVerdict("ori", True)


def check_axioms(A: Semilattice, sp: SummandPair) -> AxiomReport:
    """Evaluate Mod1, Mod2, Abs, exi, onto and ori by exhaustive quantification.

    Each verdict carries the lexicographically first failing tuple:
    ``(x, y, x1, x2)`` for Mod1/Mod2 (with ``i`` in the note for Mod2),
    ``(x1, y1, z2)`` for Abs (note gives the orientation), ``(x1, x2)`` for
    exi and ori, ``(x,)`` for onto.
    """
    _require_subsemilattices(A, sp)
    args = (A, sp.c, sp.I1, sp.I2)
    verdicts = {
        "Mod1": _mod1(*args),
        "Mod2": _mod2(*args),
        "Abs": _abs(*args),
        "exi": _exi(*args),
        "onto": _onto(*args),
        "ori": _ori(*args),
    }
    return AxiomReport(sp.c, sp.I1, sp.I2, verdicts)


# -- bitmask kernel ---------------------------------------------------------------


class AxiomKernel:
    """Precomputed tables that decide each axiom with bitmask tests.

    ``mod1_ok[x1][x2]`` is the set of ``x`` for which the Mod1 equation holds
    for every ``y``; the guard is applied per base element.  The Mod2, Abs
    and phi tables are built the same way.  Agreement with
    :func:`check_axioms` is part of the test suite.
    """

    def __init__(self, A: Semilattice):
        self.A = A
        self.n = A.n
        self.full = (1 << A.n) - 1
        self._per_c: dict[int, tuple] = {}

    @cached_property
    def mod1_ok(self):
        A, J, meet, n = self.A, self.A.join_table, self.A.meet, self.n
        out = []
        for x1 in range(n):
            row = []
            for x2 in range(n):
                m = 0
                for x in range(n):
                    inner = meet(J[x][x1], J[x][x2])
                    for y in range(n):
                        xy = J[x][y]
                        if _j(A, inner, y) != meet(J[xy][x1], J[xy][x2]):
                            break
                    else:
                        m |= 1 << x
                row.append(m)
            out.append(row)
        return out

    @cached_property
    def mod2_ok(self):
        """``mod2_ok[xi][c]``: the x for which the Mod2 equation for xi holds for all y."""
        A, J, meet, n = self.A, self.A.join_table, self.A.meet, self.n
        out = []
        for xi in range(n):
            row = []
            for c in range(n):
                m = 0
                for x in range(n):
                    inner = meet(J[x][xi], J[c][xi])
                    for y in range(n):
                        if _j(A, inner, y) != meet(J[J[x][y]][xi], J[J[c][y]][xi]):
                            break
                    else:
                        m |= 1 << x
                row.append(m)
            out.append(row)
        return out

    def tables(self, c: int):
        t = self._per_c.get(c)
        if t is None:
            A, J, meet, n = self.A, self.A.join_table, self.A.meet, self.n
            up = A.up_masks
            guard1 = []
            for s in range(n):
                m = 0
                for x in range(n):
                    if up[s] >> J[x][c] & 1:
                        m |= 1 << x
                guard1.append(m)
            phi = [[0] * n for _ in range(n)]
            for x1 in range(n):
                for x2 in range(n):
                    target = J[x1][x2]
                    m = 0
                    for x in range(n):
                        if (J[x][c] == target
                                and meet(J[x][x1], J[x][x2]) == x
                                and meet(J[x][x1], J[c][x1]) == x1
                                and meet(J[x][x2], J[c][x2]) == x2):
                            m |= 1 << x
                    phi[x1][x2] = m
            absfail = [[0] * n for _ in range(n)]
            for x1 in range(n):
                for y1 in range(n):
                    ref = meet(x1, J[y1][c])
                    m = 0
                    for z in range(n):
                        if meet(x1, J[y1][z]) != ref:
                            m |= 1 << z
                    absfail[x1][y1] = m
            t = (guard1, phi, absfail)
            self._per_c[c] = t
        return t

    def verdicts(self, c: int, I1, I2, only=REPORTED, stop_on_fail: bool = False) -> dict[str, bool]:
        """Boolean verdicts for the requested axioms, evaluated in the given order."""
        J = self.A.join_table
        guard1, phi, absfail = self.tables(c)
        out: dict[str, bool] = {}
        m1, m2 = _mask(I1), _mask(I2)
        for name in only:
            if name == "exi":
                ok = all(phi[a][b] for a in I1 for b in I2)
            elif name == "onto":
                acc = 0
                for a in I1:
                    pa = phi[a]
                    for b in I2:
                        acc |= pa[b]
                ok = acc == self.full
            elif name == "Abs":
                ok = (all(not absfail[a][b] & m2 for a in I1 for b in I1)
                      and all(not absfail[a][b] & m1 for a in I2 for b in I2))
            elif name == "Mod1":
                ok1 = self.mod1_ok
                ok = all(not guard1[J[a][b]] & ~ok1[a][b] for a in I1 for b in I2)
            elif name == "Mod2":
                ok2 = self.mod2_ok
                down = self.A.down_masks
                ok = all(not down[J[a][b]] & ~(ok2[a][c] & ok2[b][c]) for a in I1 for b in I2)
            elif name == "ori":
                upc = self.A.up_masks[c]
                ok = all(upc >> J[a][b] & 1 for a in I1 for b in I2)
            else:
                raise KeyError(name)
            out[name] = ok
            if stop_on_fail and not ok:
                break
        return out


@lru_cache(maxsize=512)
def kernel(A: Semilattice) -> AxiomKernel:
    return AxiomKernel(A)


def is_direct_sum(A: Semilattice, sp: SummandPair) -> bool:
    """True iff all five axioms hold (cheapest checks first, short-circuiting)."""
    _require_subsemilattices(A, sp)
    v = kernel(A).verdicts(sp.c, sp.I1, sp.I2, ("exi", "onto", "Abs", "Mod1", "Mod2"), stop_on_fail=True)
    return len(v) == 5 and all(v.values())


def _require_sum(A: Semilattice, sp: SummandPair) -> None:
    if not is_direct_sum(A, sp):
        failed = check_axioms(A, sp).failed()
        raise NotADirectSum(f"{sp} is not a direct sum (fails {', '.join(failed)})")


# -- summand isomorphism and projections -----------------------------------------


def build_isomorphism(A: Semilattice, sp: SummandPair) -> ElementMap:
    """The map ``I1 x I2 -> A`` sending ``(x1, x2)`` to the unique x with phi_c.

    The source is the product of the two subsemilattices, each relabelled in
    increasing element order, so pair ``(I1[i], I2[j])`` is index
    ``i * |I2| + j``.
    """
    _require_sum(A, sp)
    S1, _ = subsemilattice(A, sp.I1)
    S2, _ = subsemilattice(A, sp.I2)
    P = direct_product(S1, S2)
    phi = kernel(A).tables(sp.c)[1]
    images = []
    for x1 in sp.I1:
        for x2 in sp.I2:
            xs = [x for x in A.elements if phi[x1][x2] >> x & 1]
            if len(xs) != 1:
                raise InternalContradiction(f"phi({x1},{x2},-) has {len(xs)} solutions: {xs}")
            images.append(xs[0])
    m = ElementMap(P.semilattice, A, tuple(images))
    if not m.is_isomorphism():
        raise InternalContradiction("phi does not define an isomorphism")
    return m


def projections(A: Semilattice, sp: SummandPair) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Component maps of the inverse isomorphism, as tuples indexed by elements of A."""
    iso = build_isomorphism(A, sp)
    k = len(sp.I2)
    pi1 = [0] * A.n
    pi2 = [0] * A.n
    for idx, x in enumerate(iso.images):
        i, j = divmod(idx, k)
        pi1[x] = sp.I1[i]
        pi2[x] = sp.I2[j]
    return tuple(pi1), tuple(pi2)


# -- the mutually inverse maps ------------------------------------------------------


def map_I(A: Semilattice, c: int, th, dl) -> SummandPair:
    """``(theta, delta) -> (c, c/theta, c/delta)``."""
    th, dl = as_congruence(th, A.n), as_congruence(dl, A.n)
    if not is_complementary_pair(A, th, dl):
        raise NotComplementaryPair(f"({th}, {dl}) is not a complementary factor pair")
    return SummandPair(c, th.class_of(c), dl.class_of(c))


def map_K(A: Semilattice, sp: SummandPair) -> tuple[Congruence, Congruence]:
    """``(I1, I2) -> (ker pi2, ker pi1)``."""
    pi1, pi2 = projections(A, sp)
    return Congruence.from_labels(pi2), Congruence.from_labels(pi1)


def direct_sums(A: Semilattice, c: int, subsets=None) -> list[SummandPair]:
    """Every pair of join-closed subsets forming a c-direct sum, by exhaustive scan."""
    from .core import closed_subsets

    subsets = closed_subsets(A) if subsets is None else subsets
    k = kernel(A)
    order = ("exi", "onto", "Abs", "Mod1", "Mod2")
    out = []
    for I1 in subsets:
        for I2 in subsets:
            v = k.verdicts(c, I1, I2, order, stop_on_fail=True)
            if len(v) == 5 and all(v.values()):
                out.append(SummandPair(c, I1, I2))
    return out
