"""Simplified direct-sum criteria when the base element is the minimum or the maximum."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import Semilattice
from .directsum import AxiomVerdict
from .errors import NotSubsemilattice


@dataclass(frozen=True)
class BoundedReport:
    applicable: bool
    c: int | None = None
    verdicts: dict = field(default_factory=dict)
    ideals_check: bool | None = None

    @property
    def holds(self) -> bool:
        return self.applicable and all(v.holds for v in self.verdicts.values())

    def lines(self, A: Semilattice | None = None) -> list[str]:
        if not self.applicable:
            return ["not applicable: no such bound"]
        out = [v.describe(A) for v in self.verdicts.values()]
        if self.ideals_check is not None:
            out.append(f"closure: {'holds' if self.ideals_check else 'FAILS'}")
        return out


def _subsets(A: Semilattice, I1: Iterable[int], I2: Iterable[int]):
    I1, I2 = tuple(sorted(set(I1))), tuple(sorted(set(I2)))
    for name, s in (("I1", I1), ("I2", I2)):
        if not s or not A.is_join_closed(s):
            raise NotSubsemilattice(f"{name} = {list(s)} is not a nonempty join-closed subset")
    return I1, I2


def _closed(masks, s) -> bool:
    allowed = 0
    for e in s:
        allowed |= 1 << e
    return all(not masks[e] & ~allowed for e in s)


def check_zero_case(A: Semilattice, I1, I2) -> BoundedReport:
    """Criterion for ``A = I1 (+)_0 I2`` when A has a minimum 0.

    Abs': ``x1 ^ (y1 v z2) = x1 ^ y1`` in both orientations.
    onto': every element is ``x1 v x2`` for some ``x1 in I1``, ``x2 in I2``.
    When both hold, I1 and I2 are checked to be down-sets.
    """
    I1, I2 = _subsets(A, I1, I2)
    zero = A.minimum
    if zero is None:
        return BoundedReport(False)
    J, meet = A.join_table, A.meet
    abs_v = AxiomVerdict("Abs'", True)
    for label, P, Q in (("I1,I1,I2", I1, I2), ("I2,I2,I1", I2, I1)):
        bad = next(((x1, y1, z2) for x1 in P for y1 in P for z2 in Q
                    if meet(x1, J[y1][z2]) != meet(x1, y1)), None)
        if bad is not None:
            abs_v = AxiomVerdict("Abs'", False, bad, label)
            break
    joins = {J[a][b] for a in I1 for b in I2}
    missing = [x for x in A.elements if x not in joins]
    onto_v = AxiomVerdict("onto'", not missing, (missing[0],) if missing else None)
    verdicts = {"Abs'": abs_v, "onto'": onto_v}
    ideals = None
    if abs_v.holds and onto_v.holds:
        ideals = _closed(A.down_masks, I1) and _closed(A.down_masks, I2)
    return BoundedReport(True, zero, verdicts, ideals)


def check_one_case(A: Semilattice, I1, I2) -> BoundedReport:
    """Criterion for ``A = I1 (+)_1 I2`` with 1 the maximum.

    exi': ``x1 v x2 = 1`` for all pairs.
    onto': every element equals ``x1 ^ x2`` for some pair whose meet exists.
    Mod1': ``(x1 ^ x2) v y = (y v x1) ^ (y v x2)`` for all x1, x2, y (three-valued).
    When all hold, I1 and I2 are checked to be up-sets.
    """
    I1, I2 = _subsets(A, I1, I2)
    one = A.maximum
    J, meet = A.join_table, A.meet
    bad = next(((a, b) for a in I1 for b in I2 if J[a][b] != one), None)
    exi_v = AxiomVerdict("exi'", bad is None, bad)
    meets = {meet(a, b) for a in I1 for b in I2}
    missing = [x for x in A.elements if x not in meets]
    onto_v = AxiomVerdict("onto'", not missing, (missing[0],) if missing else None)
    bad = None
    for a in I1:
        for b in I2:
            ab = meet(a, b)
            for y in A.elements:
                lhs = None if ab is None else J[ab][y]
                if lhs != meet(J[y][a], J[y][b]):
                    bad = (a, b, y)
                    break
            if bad:
                break
        if bad:
            break
    mod_v = AxiomVerdict("Mod1'", bad is None, bad)
    verdicts = {"exi'": exi_v, "onto'": onto_v, "Mod1'": mod_v}
    ideals = None
    if all(v.holds for v in verdicts.values()):
        ideals = _closed(A.up_masks, I1) and _closed(A.up_masks, I2)
    return BoundedReport(True, one, verdicts, ideals)
