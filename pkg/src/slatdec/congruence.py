"""Congruences, quotients and complementary factor-congruence pairs."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .core import ElementMap, Product, Semilattice, direct_product
from .errors import CapExceeded, NotACongruence, NotAPartition

CONGRUENCE_CAP = int(os.environ.get("SLATDEC_MAX_N", "10"))


@dataclass(frozen=True)
class Congruence:
    """A partition of ``0..n-1`` in canonical form.

    Blocks are sorted internally and ordered by their least element, so two
    equal partitions always compare equal.
    """

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> Congruence:
        bl = [tuple(sorted(set(b))) for b in blocks]
        seen: list[int] = [e for b in bl for e in b]
        if any(not b for b in bl):
            raise NotAPartition("empty block")
        if len(seen) != len(set(seen)):
            raise NotAPartition("blocks overlap")
        size = len(seen) if n is None else n
        if sorted(seen) != list(range(size)):
            raise NotAPartition(f"blocks do not cover 0..{size - 1}")
        return cls(tuple(sorted(bl)))

    @classmethod
    def from_labels(cls, labels: Sequence) -> Congruence:
        groups: dict = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x)
        return cls(tuple(sorted(tuple(g) for g in groups.values())))

    @classmethod
    def identity(cls, n: int) -> Congruence:
        return cls(tuple((x,) for x in range(n)))

    @classmethod
    def total(cls, n: int) -> Congruence:
        return cls((tuple(range(n)),))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @cached_property
    def block_of(self) -> tuple[int, ...]:
        out = [0] * self.n
        for i, b in enumerate(self.blocks):
            for x in b:
                out[x] = i
        return tuple(out)

    @property
    def rgs(self) -> tuple[int, ...]:
        """Restricted growth string; with canonical block order it is just ``block_of``."""
        return self.block_of

    def related(self, x: int, y: int) -> bool:
        return self.block_of[x] == self.block_of[y]

    def class_of(self, x: int) -> tuple[int, ...]:
        return self.blocks[self.block_of[x]]

    def refines(self, other: Congruence) -> bool:
        return all(other.related(b[0], x) for b in self.blocks for x in b)

    def sort_key(self) -> tuple:
        return (len(self.blocks), self.rgs)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


def as_congruence(p, n: int) -> Congruence:
    if isinstance(p, Congruence):
        if p.n != n:
            raise NotAPartition(f"partition of {p.n} elements, expected {n}")
        return p
    return Congruence.from_blocks(p, n)


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length ``n`` in lexicographic order."""
    if n == 0:
        yield ()
        return
    s = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield tuple(s)
            return
        for b in range(top + 2):
            s[i] = b
            yield from rec(i + 1, max(top, b))

    s[0] = 0
    yield from rec(1, 0)


def find_violation(A: Semilattice, p) -> tuple[int, int, int] | None:
    """Lexicographically first ``(x, y, z)`` with x~y, x<y but x v z, y v z in different blocks."""
    th = as_congruence(p, A.n)
    J, blk = A.join_table, th.block_of
    for x in range(A.n):
        for y in range(x + 1, A.n):
            if blk[x] != blk[y]:
                continue
            for z in range(A.n):
                if blk[J[x][z]] != blk[J[y][z]]:
                    return (x, y, z)
    return None


def is_congruence(A: Semilattice, p) -> bool:
    return find_violation(A, p) is None


def _check_cap(A: Semilattice, cap: int | None) -> None:
    cap = CONGRUENCE_CAP if cap is None else cap
    if A.n > cap:
        raise CapExceeded(f"{A.n} elements exceeds the congruence cap {cap}")


def all_congruences(A: Semilattice, cap: int | None = None) -> list[Congruence]:
    """Every join-compatible partition, ordered by block count then by RGS.

    Elements are assigned top-down (larger down-sets first), so that when an
    element is placed every join it takes part in with already-placed
    elements lands on a placed element and compatibility can be checked
    incrementally.
    """
    _check_cap(A, cap)
    n = A.n
    J = A.join_table
    downsize = [bin(m).count("1") for m in A.down_masks]
    order = sorted(range(n), key=lambda x: (-downsize[x], x))
    blk = [-1] * n
    members: list[list[int]] = []
    found: list[Congruence] = []

    def ok(k: int, placed: list[int]) -> bool:
        b = blk[k]
        Jk = J[k]
        for i in members[b]:
            if i == k:
                continue
            Ji = J[i]
            for z in placed:
                if blk[Jk[z]] != blk[Ji[z]]:
                    return False
        for mem in members:
            if len(mem) < 2:
                continue
            ref = blk[J[mem[0]][k]]
            for j in mem[1:]:
                if j != k and blk[J[j][k]] != ref:
                    return False
        return True

    def rec(pos: int, placed: list[int]):
        if pos == n:
            found.append(Congruence.from_labels(blk))
            return
        k = order[pos]
        placed.append(k)
        for b in range(len(members) + 1):
            if b == len(members):
                members.append([])
            blk[k] = b
            members[b].append(k)
            if ok(k, placed):
                rec(pos + 1, placed)
            members[b].pop()
            if not members[b]:
                members.pop()
            blk[k] = -1
        placed.pop()

    rec(0, [])
    found.sort(key=Congruence.sort_key)
    return found


def quotient(A: Semilattice, th) -> tuple[Semilattice, tuple[int, ...]]:
    """``A/th`` with blocks in canonical order, plus the class map ``A -> A/th``."""
    th = as_congruence(th, A.n)
    w = find_violation(A, th)
    if w is not None:
        raise NotACongruence(f"not join-compatible, witness {w}")
    cls = th.block_of
    table = [[cls[A.join(b[0], d[0])] for d in th.blocks] for b in th.blocks]
    names = None
    if A.names:
        names = ["{" + ",".join(A.label(x) for x in b) + "}" for b in th.blocks]
    return Semilattice(table, names, _trusted=True), cls


@dataclass(frozen=True)
class CongruencePair:
    """Complementary pair ``(theta, delta)`` with the map ``a -> (a/delta, a/theta)``."""

    theta: Congruence
    delta: Congruence
    natural_map: ElementMap
    product: Product

    @property
    def is_trivial(self) -> bool:
        return len(self.theta) == 1 or len(self.delta) == 1


def natural_map(A: Semilattice, theta: Congruence, delta: Congruence) -> tuple[ElementMap, Product]:
    Qd, cd = quotient(A, delta)
    Qt, ct = quotient(A, theta)
    P = direct_product(Qd, Qt)
    return ElementMap(A, P.semilattice, tuple(P.pair(cd[a], ct[a]) for a in range(A.n))), P


def is_complementary_pair(A: Semilattice, theta, delta) -> bool:
    theta, delta = as_congruence(theta, A.n), as_congruence(delta, A.n)
    if len(theta) * len(delta) != A.n:
        return False
    m, _ = natural_map(A, theta, delta)
    return m.is_isomorphism()


def complementary_factor_pairs(A: Semilattice, cap: int | None = None) -> list[CongruencePair]:
    """All ordered pairs whose natural map onto ``A/delta x A/theta`` is an isomorphism."""
    cons = all_congruences(A, cap)
    out = []
    for th in cons:
        for dl in cons:
            if len(th) * len(dl) != A.n:
                continue
            # injectivity of a -> (a/delta, a/theta) is cheap to test first
            seen = {(dl.block_of[a], th.block_of[a]) for a in range(A.n)}
            if len(seen) != A.n:
                continue
            m, P = natural_map(A, th, dl)
            if m.is_isomorphism():
                out.append(CongruencePair(th, dl, m, P))
    return out
