r"""Permutations, marked tuples, and canonical keys.

Permutations on d points are image tuples on 0..d-1.  Points act on the
right: the product g*h means "g then h", so compose(g, h)[x] = h[g[x]]
and a tuple (g_1, ..., g_n) multiplies left to right.  The convention is
global; counts do not depend on it (reversing it reverses tuples,
a bijection).

A marked tuple is one point of a Hurwitz space fiber: one permutation per
target label with the prescribed cycle type, product equal to the
identity, transitive joint action, and for each source label a chosen
cycle of the permutation over its target, of length ram(a), distinct
labels in a fiber using distinct cycles.  Cycles are stored as their
point sets.

Canonical keys quotient by simultaneous conjugation.  For each choice of
base point we relabel 0..d-1 by breadth-first search along the entries in
target order, encode the relabeled tuple, and keep the least encoding.
The byte layout (degree, then length-prefixed image arrays in target
order, then length-prefixed sorted mark sets in source order, all
big-endian) is a stable cache-key contract.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _all_perms

from .core import BranchingData, Partition, make_partition

Perm = tuple[int, ...]


def identity(d: int) -> Perm:
    return tuple(range(d))


def compose(g: Perm, h: Perm) -> Perm:
    """g then h (right action product g*h)."""
    return tuple(h[x] for x in g)


def product(gs, d: int) -> Perm:
    out = identity(d)
    for g in gs:
        out = compose(out, g)
    return out


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for x, y in enumerate(g):
        out[y] = x
    return tuple(out)


def relabel_perm(g: Perm, s: Perm) -> Perm:
    """Conjugate by the relabeling x -> s[x]: result[s[x]] = s[g[x]]."""
    out = [0] * len(g)
    for x in range(len(g)):
        out[s[x]] = s[g[x]]
    return tuple(out)


def cycles(g: Perm) -> list[tuple[int, ...]]:
    """Cycles as point tuples, each starting at its least point, sorted by least point."""
    seen = [False] * len(g)
    out = []
    for start in range(len(g)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = g[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = g[x]
        out.append(tuple(cyc))
    return out


def cycle_type(g: Perm) -> Partition:
    return make_partition(len(c) for c in cycles(g))


def perm_sign(g: Perm) -> int:
    return -1 if (len(g) - len(cycles(g))) % 2 else 1


def transposition_distance(g: Perm) -> int:
    """Least number of transpositions multiplying to g: d - #cycles."""
    return len(g) - len(cycles(g))


def is_transitive(gs, d: int) -> bool:
    """Whether the group generated acts transitively on 0..d-1.

    The empty list is transitive only for d == 1.
    """
    if d == 1:
        return True
    if not gs:
        return False
    seen = [False] * d
    seen[0] = True
    stack = [0]
    invs = [inverse(g) for g in gs]
    while stack:
        x = stack.pop()
        for g in list(gs) + invs:
            y = g[x]
            if not seen[y]:
                seen[y] = True
                stack.append(y)
    return all(seen)


def class_representative(part: Partition, d: int) -> Perm:
    """The permutation with cycles (0..k1-1)(k1..k1+k2-1)... for the given type."""
    assert sum(part) == d
    out = list(range(d))
    start = 0
    for k in part:
        for i in range(k):
            out[start + i] = start + (i + 1) % k
        start += k
    return tuple(out)


@lru_cache(maxsize=None)
def conjugacy_class(part: Partition, d: int) -> tuple[Perm, ...]:
    """All permutations of 0..d-1 with the given cycle type, in lexicographic order."""
    assert sum(part) == d
    return tuple(g for g in _all_perms(range(d)) if cycle_type(g) == part)


@dataclass(frozen=True, eq=False)
class MarkedTuple:
    """One cover: entries per position, labels naming each position's target,
    and a chosen cycle (as a point set) per source label."""

    data: BranchingData
    entries: tuple[Perm, ...]
    marks: dict[str, frozenset[int]]
    labels: tuple[str, ...]

    def entry_over(self, b: str) -> Perm:
        return self.entries[self.labels.index(b)]


def marked_tuple(data: BranchingData, entries, marks, labels=None) -> MarkedTuple:
    return MarkedTuple(
        data=data,
        entries=tuple(tuple(g) for g in entries),
        marks={a: frozenset(s) for a, s in marks.items()},
        labels=tuple(labels) if labels is not None else data.target_points,
    )


def check_marked_tuple(t: MarkedTuple) -> list[str]:
    """All violations of the marked-tuple invariants (empty list means valid)."""
    data = t.data
    d = data.degree
    bad = []
    if sorted(t.labels) != sorted(data.target_points):
        bad.append("position labels are not the target labels")
        return bad
    for pos, b in enumerate(t.labels):
        if cycle_type(t.entries[pos]) != data.branching[b]:
            bad.append(f"entry over {b!r} has cycle type {cycle_type(t.entries[pos])}, wanted {data.branching[b]}")
    if product(t.entries, d) != identity(d):
        bad.append("entries do not multiply to the identity")
    if not is_transitive(t.entries, d):
        bad.append("joint action is not transitive")
    if set(t.marks) != set(data.source_points):
        bad.append("marks do not cover the source labels exactly")
        return bad
    for b in data.target_points:
        g = t.entry_over(b)
        cycs = {c: frozenset(c) for c in cycles(g)}
        used: set[frozenset[int]] = set()
        for a in data.fiber(b):
            s = t.marks[a]
            if s not in cycs.values():
                bad.append(f"mark of {a!r} is not a cycle of the entry over {b!r}")
                continue
            if len(s) != data.ram[a]:
                bad.append(f"mark of {a!r} has length {len(s)}, local degree is {data.ram[a]}")
            if s in used:
                bad.append(f"two marks over {b!r} share the cycle {sorted(s)}")
            used.add(s)
    return bad


def conjugate_tuple(t: MarkedTuple, s: Perm) -> MarkedTuple:
    """Simultaneous relabeling of the sheet set by x -> s[x]."""
    return MarkedTuple(
        data=t.data,
        entries=tuple(relabel_perm(g, s) for g in t.entries),
        marks={a: frozenset(s[x] for x in pts) for a, pts in t.marks.items()},
        labels=t.labels,
    )


def _bfs_relabeling(entries: tuple[Perm, ...], d: int, base: int) -> Perm:
    new = [-1] * d
    new[base] = 0
    order = [base]
    head = 0
    nxt = 1
    while head < len(order):
        x = order[head]
        head += 1
        for g in entries:
            y = g[x]
            if new[y] < 0:
                new[y] = nxt
                nxt += 1
                order.append(y)
    if nxt != d:
        raise ValueError("tuple is not transitive; canonical key undefined")
    return tuple(new)


def _encode(t: MarkedTuple, s: Perm) -> bytes:
    data = t.data
    out = [struct.pack(">I", data.degree), struct.pack(">I", len(t.entries))]
    for g in t.entries:
        img = relabel_perm(g, s)
        out.append(struct.pack(">I", len(img)))
        out.append(struct.pack(f">{len(img)}H", *img))
    out.append(struct.pack(">I", len(data.source_points)))
    for a in data.source_points:
        pts = sorted(s[x] for x in t.marks[a])
        out.append(struct.pack(">I", len(pts)))
        out.append(struct.pack(f">{len(pts)}H", *pts))
    return b"".join(out)


def canonical_key(t: MarkedTuple) -> bytes:
    """Least encoding over all base-point BFS relabelings.

    Two marked tuples get equal keys exactly when some simultaneous
    relabeling carries one to the other, entries, marks and all.
    """
    if t.labels != t.data.target_points:
        raise ValueError("canonical keys need positions in declared target order")
    if t.data.degree > 0xFFFF:
        raise ValueError("degree too large for the key encoding")
    best = None
    for base in range(t.data.degree):
        enc = _encode(t, _bfs_relabeling(t.entries, t.data.degree, base))
        if best is None or enc < best:
            best = enc
    assert best is not None
    return best
