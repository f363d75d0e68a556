"""The ``.slat`` text format and DOT export.

Grammar (line oriented, ``#`` starts a comment)::

    n <count>
    elements <name> ... <name>        # optional
    join                              # then n rows of n indices
    <i> <i> ...
or, instead of the ``join`` block, any number of ``cover <i> <j>`` lines
meaning i is covered by j.  Join rows hold plain indices; cover lines may
use declared names, which take precedence over indices.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .core import Semilattice
from .errors import NoJoinExists, SlatSyntaxError


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((part, col + 1))
            col += len(part)
        yield lineno, toks


def _resolve(tok: str, names: Sequence[str] | None, n: int, lineno: int, col: int) -> int:
    if names and tok in names:
        return names.index(tok)
    try:
        v = int(tok)
    except ValueError:
        raise SlatSyntaxError(f"unknown element {tok!r}", lineno, col) from None
    if not 0 <= v < n:
        raise SlatSyntaxError(f"index {v} out of range 0..{n - 1}", lineno, col)
    return v


def parse_slat(text: str) -> Semilattice:
    n = None
    names = None
    rows: list[list[int]] | None = None
    covers: list[tuple[int, int]] = []
    for lineno, toks in _tokens(text):
        head, col = toks[0]
        if n is None:
            if head != "n" or len(toks) != 2:
                raise SlatSyntaxError("expected header 'n <count>'", lineno, col)
            try:
                n = int(toks[1][0])
            except ValueError:
                raise SlatSyntaxError("element count must be an integer", lineno, toks[1][1]) from None
            if n < 1:
                raise SlatSyntaxError("element count must be positive", lineno, toks[1][1])
            continue
        if rows is not None and len(rows) < n:
            rows.append([_resolve(t, None, n, lineno, c) for t, c in toks])
            if len(rows[-1]) != n:
                raise SlatSyntaxError(f"join row has {len(rows[-1])} entries, expected {n}", lineno, col)
            continue
        if head == "elements":
            if names is not None or rows is not None or covers:
                raise SlatSyntaxError("'elements' must directly follow the header", lineno, col)
            names = [t for t, _ in toks[1:]]
            if len(names) != n or len(set(names)) != n:
                raise SlatSyntaxError(f"expected {n} distinct element names", lineno, col)
        elif head == "join":
            if rows is not None or covers or len(toks) != 1:
                raise SlatSyntaxError("unexpected 'join'", lineno, col)
            rows = []
        elif head == "cover":
            if rows is not None or len(toks) != 3:
                raise SlatSyntaxError("expected 'cover <i> <j>'", lineno, col)
            covers.append(tuple(_resolve(t, names, n, lineno, c) for t, c in toks[1:]))
        else:
            raise SlatSyntaxError(f"unexpected {head!r}", lineno, col)
    if n is None:
        raise SlatSyntaxError("missing header 'n <count>'", 1)
    if rows is not None:
        if len(rows) != n:
            raise SlatSyntaxError(f"join block has {len(rows)} rows, expected {n}", lineno)
        return Semilattice(rows, names)
    return _from_covers(n, covers, names)


def _from_covers(n: int, covers: Iterable[tuple[int, int]], names) -> Semilattice:
    up = [1 << x for x in range(n)]
    changed = True
    for x, y in covers:
        up[x] |= 1 << y
    while changed:
        changed = False
        for x in range(n):
            acc = up[x]
            for y in range(n):
                if acc >> y & 1:
                    acc |= up[y]
            if acc != up[x]:
                up[x] = acc
                changed = True
    for x in range(n):
        for y in range(x + 1, n):
            if up[x] >> y & 1 and up[y] >> x & 1:
                raise SlatSyntaxError(f"cover relation has a cycle through {x} and {y}", 1)
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            common = up[x] & up[y]
            least = [u for u in range(n) if common >> u & 1 and up[u] & common == common]
            if not least:
                raise NoJoinExists(x, y)
            table[x][y] = table[y][x] = least[0]
    return Semilattice(table, names)


def emit_slat(A: Semilattice) -> str:
    lines = [f"n {A.n}"]
    if A.names:
        lines.append("elements " + " ".join(A.names))
    lines.append("join")
    lines.extend(" ".join(str(v) for v in row) for row in A.join_table)
    return "\n".join(lines) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(A: Semilattice, highlight: Mapping[str, Iterable[int]] | None = None,
             partition: Sequence[Iterable[int]] | None = None, name: str = "A") -> str:
    """Hasse diagram as a DOT digraph, drawn bottom-up.

    ``highlight`` maps a group label to a subset, each rendered as a
    cluster; ``partition`` renders each block as a cluster.  Output is
    deterministic for identical inputs.
    """
    out = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in A.elements:
        out.append(f"  n{x} [label={_quote(A.label(x))}];")
    groups: list[tuple[str, list[int]]] = []
    if highlight:
        groups.extend((label, sorted(set(s))) for label, s in highlight.items())
    if partition:
        groups.extend((f"block{i}", sorted(set(b))) for i, b in enumerate(partition))
    for i, (label, members) in enumerate(groups):
        out.append(f"  subgraph cluster_{i} {{")
        out.append(f"    label={_quote(label)};")
        out.append("    " + " ".join(f"n{x};" for x in members))
        out.append("  }")
    for x, y in A.covers:
        out.append(f"  n{x} -> n{y};")
    out.append("}")
    return "\n".join(out) + "\n"
