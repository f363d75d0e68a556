"""Finite join-semilattices given by their join table.

Elements are the integers ``0..n-1``; optional names are presentation only.
The order is derived (``x <= y`` iff ``x v y == y``) and the partial meet is
precomputed once per structure, with ``None`` standing for "no infimum".
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    AssociativityViolation,
    CommutativityViolation,
    IdempotenceViolation,
    IndexOutOfRange,
    NotSubsemilattice,
    SizeOverflow,
)

PRODUCT_CAP = int(os.environ.get("SLATDEC_PRODUCT_CAP", "4096"))


def _check_table(table: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(table)
    if n < 1:
        raise IndexOutOfRange((), "a semilattice needs at least one element")
    rows = []
    for i, row in enumerate(table):
        row = tuple(int(v) for v in row)
        if len(row) != n:
            raise IndexOutOfRange((i,), f"row {i} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise IndexOutOfRange((i, j), f"join({i},{j}) = {v} is out of range 0..{n - 1}")
        rows.append(row)
    J = tuple(rows)
    for x in range(n):
        if J[x][x] != x:
            raise IdempotenceViolation((x,), f"join({x},{x}) = {J[x][x]}, not {x}")
    for x in range(n):
        for y in range(x + 1, n):
            if J[x][y] != J[y][x]:
                raise CommutativityViolation(
                    (x, y), f"join({x},{y}) = {J[x][y]} but join({y},{x}) = {J[y][x]}"
                )
    for x in range(n):
        Jx = J[x]
        for y in range(n):
            xy = Jx[y]
            Jy = J[y]
            for z in range(n):
                if J[xy][z] != Jx[Jy[z]]:
                    raise AssociativityViolation(
                        (x, y, z), f"(x v y) v z != x v (y v z) at {(x, y, z)}"
                    )
    return J


class Semilattice:
    """An immutable finite join-semilattice.

    Construct through :func:`validate_semilattice` (or the constructor, which
    validates the same way).  Derived data (order masks, meet table) is
    computed lazily and cached.
    """

    def __init__(self, join: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                 *, _trusted: bool = False):
        if _trusted:
            J = tuple(tuple(r) for r in join)
        else:
            J = _check_table(join)
        self._join = J
        self.n = len(J)
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != self.n:
                raise IndexOutOfRange((len(names),), f"expected {self.n} names, got {len(names)}")
            if len(set(names)) != self.n:
                raise ValueError("element names must be distinct")
        self.names = names

    @property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        return self._join

    def join(self, x: int, y: int) -> int:
        return self._join[x][y]

    def join_all(self, elements: Iterable[int]) -> int:
        it = iter(elements)
        acc = next(it)
        for e in it:
            acc = self._join[acc][e]
        return acc

    def label(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def index(self, token: str | int) -> int:
        """Resolve an element given by index or by name."""
        if isinstance(token, int):
            if 0 <= token < self.n:
                return token
            raise IndexOutOfRange((token,), f"no element {token}")
        token = token.strip()
        if self.names and token in self.names:
            return self.names.index(token)
        if token.lstrip("-").isdigit():
            return self.index(int(token))
        raise IndexOutOfRange((token,), f"no element named {token!r}")

    @property
    def elements(self) -> range:
        return range(self.n)

    # -- order ---------------------------------------------------------------

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        """Bitmask of the principal down-set of each element."""
        masks = [0] * self.n
        for x in range(self.n):
            for y in range(self.n):
                if self._join[x][y] == y:
                    masks[y] |= 1 << x
        return tuple(masks)

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for x in range(self.n):
            for y in range(self.n):
                if self._join[x][y] == y:
                    masks[x] |= 1 << y
        return tuple(masks)

    def leq(self, x: int, y: int) -> bool:
        return self._join[x][y] == y

    @cached_property
    def maximum(self) -> int:
        return self.join_all(range(self.n))

    @cached_property
    def minimum(self) -> int | None:
        full = (1 << self.n) - 1
        for x in range(self.n):
            if self.up_masks[x] == full:
                return x
        return None

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Covering pairs ``(x, y)``: x < y with nothing strictly between."""
        out = []
        for x in range(self.n):
            above = self.up_masks[x] & ~(1 << x)
            for y in range(self.n):
                if not above >> y & 1:
                    continue
                between = above & self.down_masks[y] & ~(1 << y)
                if not between:
                    out.append((x, y))
        return tuple(out)

    # -- meets ---------------------------------------------------------------

    @cached_property
    def meet_table(self) -> tuple[tuple[int | None, ...], ...]:
        # a lower-bound set has a greatest element g exactly when it equals down(g)
        principal = {m: x for x, m in enumerate(self.down_masks)}
        down = self.down_masks
        return tuple(
            tuple(principal.get(down[x] & down[y]) for y in range(self.n))
            for x in range(self.n)
        )

    def meet(self, x: int | None, y: int | None) -> int | None:
        if x is None or y is None:
            return None
        return self.meet_table[x][y]

    # -- misc ----------------------------------------------------------------

    def is_join_closed(self, subset: Iterable[int]) -> bool:
        s = sorted(set(subset))
        mask = _mask(s)
        return bool(s) and all(mask >> self._join[x][y] & 1 for x in s for y in s)

    def key(self) -> tuple[int, ...]:
        """Flattened join table; equal keys mean identical (not just isomorphic) tables."""
        return tuple(v for row in self._join for v in row)

    def __eq__(self, other):
        return isinstance(other, Semilattice) and self._join == other._join

    def __hash__(self):
        return hash(self._join)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Semilattice(n={self.n}, join={[list(r) for r in self._join]})"


def _mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def validate_semilattice(table: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> Semilattice:
    """Check range, idempotence, commutativity and associativity, in that order.

    The first violation raises the matching :class:`ValidationError` subclass
    carrying the offending elements.
    """
    return Semilattice(table, names)


def leq(A: Semilattice, x: int, y: int) -> bool:
    return A.leq(x, y)


def partial_meet(A: Semilattice, x: int, y: int) -> int | None:
    """Infimum of ``{x, y}`` or ``None`` when the lower bounds have no greatest member."""
    return A.meet_table[x][y]


def chain(k: int) -> Semilattice:
    return Semilattice([[max(i, j) for j in range(k)] for i in range(k)], _trusted=True)


# -- element maps ----------------------------------------------------------------


@dataclass(frozen=True)
class ElementMap:
    """A total function ``source -> target`` stored as a tuple of images."""

    source: Semilattice
    target: Semilattice
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def preserves_join(self) -> bool:
        J, K, f = self.source.join_table, self.target.join_table, self.images
        n = self.source.n
        return all(f[J[x][y]] == K[f[x]][f[y]] for x in range(n) for y in range(n))

    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and len(set(self.images)) == self.target.n

    def is_isomorphism(self) -> bool:
        # a join-preserving bijection between semilattices has a join-preserving inverse
        return self.is_bijective() and self.preserves_join()

    def inverse(self) -> ElementMap:
        if not self.is_bijective():
            raise ValueError("map is not bijective")
        inv = [0] * self.target.n
        for x, y in enumerate(self.images):
            inv[y] = x
        return ElementMap(self.target, self.source, tuple(inv))

    def compose(self, after: ElementMap) -> ElementMap:
        """``after . self``."""
        return ElementMap(self.source, after.target, tuple(after.images[y] for y in self.images))


# -- products ----------------------------------------------------------------


@dataclass(frozen=True)
class Product:
    """``A x B`` with pairing/unpairing; carrier ordered lexicographically."""

    semilattice: Semilattice
    left: Semilattice
    right: Semilattice

    def pair(self, a: int, b: int) -> int:
        return a * self.right.n + b

    def unpair(self, z: int) -> tuple[int, int]:
        return divmod(z, self.right.n)


def direct_product(A: Semilattice, B: Semilattice, cap: int | None = None) -> Product:
    cap = PRODUCT_CAP if cap is None else cap
    size = A.n * B.n
    if size > cap:
        raise SizeOverflow(f"product of sizes {A.n} and {B.n} exceeds cap {cap}")
    m = B.n
    JA, JB = A.join_table, B.join_table
    table = [
        [JA[a][c] * m + JB[b][d] for c in range(A.n) for d in range(m)]
        for a in range(A.n) for b in range(m)
    ]
    names = None
    if A.names or B.names:
        names = [f"({A.label(a)},{B.label(b)})" for a in range(A.n) for b in range(m)]
    return Product(Semilattice(table, names, _trusted=True), A, B)


def product_of(factors: Sequence[Semilattice], cap: int | None = None) -> Semilattice:
    """Iterated product ``((F0 x F1) x F2) x ...``; the empty product is trivial."""
    acc = Semilattice([[0]], _trusted=True)
    for i, F in enumerate(factors):
        acc = F if i == 0 else direct_product(acc, F, cap).semilattice
    return acc


def subsemilattice(A: Semilattice, subset: Iterable[int]) -> tuple[Semilattice, tuple[int, ...]]:
    """Restrict ``A`` to a join-closed subset.

    Returns the substructure (elements relabelled ``0..k-1`` in increasing
    order) and the embedding as a tuple of ``A``-elements.
    """
    elems = tuple(sorted(set(subset)))
    if not A.is_join_closed(elems):
        raise NotSubsemilattice(f"{list(elems)} is not closed under join")
    pos = {e: i for i, e in enumerate(elems)}
    table = [[pos[A.join(x, y)] for y in elems] for x in elems]
    names = [A.label(e) for e in elems] if A.names else None
    return Semilattice(table, names, _trusted=True), elems


def closed_subsets(A: Semilattice) -> list[tuple[int, ...]]:
    """All nonempty join-closed subsets, ordered by size and then lexicographically."""
    J = A.join_table
    out = []
    for mask in range(1, 1 << A.n):
        elems = list(_bits(mask))
        if all(mask >> J[x][y] & 1 for i, x in enumerate(elems) for y in elems[i + 1:]):
            out.append(tuple(elems))
    out.sort(key=lambda s: (len(s), s))
    return out


# -- isomorphism -----------------------------------------------------------------


def _local_invariants(A: Semilattice) -> list[tuple]:
    n = A.n
    J = A.join_table
    down = [bin(m).count("1") for m in A.down_masks]
    up = [bin(m).count("1") for m in A.up_masks]
    joindeg = [0] * n
    for x in range(n):
        for y in range(n):
            joindeg[J[x][y]] += 1
    return [
        (down[x], up[x], joindeg[x], tuple(sorted((down[y], down[J[x][y]]) for y in range(n))))
        for x in range(n)
    ]


def isomorphism_check(A: Semilattice, B: Semilattice) -> ElementMap | None:
    """First join-preserving bijection ``A -> B`` in a fixed search order, or None.

    Elements of ``A`` are assigned in index order and candidates tried in
    increasing order, restricted to elements with equal down-set size,
    up-set size and join-degree profile.
    """
    if A.n != B.n:
        return None
    n = A.n
    inv_a, inv_b = _local_invariants(A), _local_invariants(B)
    if sorted(inv_a) != sorted(inv_b):
        return None
    cands = [[y for y in range(n) if inv_b[y] == inv_a[x]] for x in range(n)]
    JA, JB = A.join_table, B.join_table
    f = [-1] * n
    used = [False] * n

    def consistent(i: int) -> bool:
        fi = f[i]
        for j in range(i + 1):
            k = JA[i][j]
            v = JB[fi][f[j]]
            if f[k] >= 0:
                if f[k] != v:
                    return False
            elif used[v]:
                return False
        # pairs completed earlier whose join is i
        for j in range(i):
            for l in range(j, i):
                if JA[j][l] == i and JB[f[j]][f[l]] != fi:
                    return False
        return True

    def extend(i: int) -> bool:
        if i == n:
            return True
        for y in cands[i]:
            if used[y]:
                continue
            f[i] = y
            used[y] = True
            if consistent(i) and extend(i + 1):
                return True
            used[y] = False
            f[i] = -1
        return False

    if not extend(0):
        return None
    m = ElementMap(A, B, tuple(f))
    if not m.is_isomorphism():  # pragma: no cover - guarded by consistent()
        return None
    return m


def is_isomorphic(A: Semilattice, B: Semilattice) -> bool:
    return isomorphism_check(A, B) is not None


# -- canonical form --------------------------------------------------------------


def _rank(keys: Sequence) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(J, colors: list[int]) -> list[int]:
    n = len(colors)
    while True:
        sig = [
            (colors[x], tuple(sorted((colors[y], colors[J[x][y]]) for y in range(n))))
            for x in range(n)
        ]
        new = _rank(sig)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(A: Semilattice) -> tuple[Semilattice, tuple[int, ...]]:
    """Canonical relabelling of ``A``.

    Colour refinement (seeded by down-set and up-set sizes) plus
    individualisation; among all discrete leaves the lexicographically least
    join table wins.  Labels always form a linear extension of the order.
    Returns the relabelled structure and ``perm`` with ``perm[old] = new``.
    """
    n = A.n
    J = A.join_table
    down = [bin(m).count("1") for m in A.down_masks]
    up = [bin(m).count("1") for m in A.up_masks]
    start = _refine(J, _rank(list(zip(down, up))))
    best: list = [None, None]

    def leaf(colors):
        table = tuple(colors[J[x][y]] for x in sorted(range(n), key=colors.__getitem__)
                      for y in sorted(range(n), key=colors.__getitem__))
        if best[0] is None or table < best[0]:
            best[0], best[1] = table, tuple(colors)

    def search(colors):
        if len(set(colors)) == n:
            leaf(colors)
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(n):
            if colors[v] != target:
                continue
            ind = _rank([(c, 0 if x == v else 1) for x, c in enumerate(colors)])
            search(_refine(J, ind))

    search(start)
    perm = best[1]
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    table = [[perm[J[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
    names = [A.label(inv[i]) for i in range(n)] if A.names else None
    return Semilattice(table, names, _trusted=True), perm


def canonical_key(A: Semilattice) -> tuple[int, ...]:
    return canonical_form(A)[0].key()


def relabel(A: Semilattice, perm: Sequence[int]) -> Semilattice:
    """Structure obtained by renaming element ``x`` to ``perm[x]``."""
    n = A.n
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    table = [[perm[A.join(inv[i], inv[j])] for j in range(n)] for i in range(n)]
    names = [A.label(inv[i]) for i in range(n)] if A.names else None
    return Semilattice(table, names, _trusted=True)


def from_order(n: int, leq: Callable[[int, int], bool]) -> Semilattice:
    """Build the join table of a finite poset in which every pair has a least upper bound."""
    from .errors import NoJoinExists

    up = [[y for y in range(n) if leq(x, y)] for x in range(n)]
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            common = [u for u in up[x] if leq(y, u)]
            least = [u for u in common if all(leq(u, v) for v in common)]
            if not least:
                raise NoJoinExists(x, y)
            table[x][y] = table[y][x] = least[0]
    return Semilattice(table)
