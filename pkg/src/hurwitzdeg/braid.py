r"""Braid moves on marked tuples and orbit decomposition.

The elementary move at position i sends (..., g_i, g_{i+1}, ...) to
(..., g_i g_{i+1} g_i^{-1}, g_i, ...) and swaps the target labels of the
two positions; the prefix products, hence the identity product, are
preserved, and marks ride along the conjugation pointwise.  Intermediate
states carry their labels explicitly because per-position cycle types
only return to the declared ones after a label-restoring word.

The pure move for a pair i < j conjugates position j down next to i,
applies the elementary move twice, and walks back, restoring all labels.
Orbits of the group generated by every pure move are the connected
components of the cover space over the configuration of target points:
two covers are connected exactly when some loop of branch points, each
returning to its place, deforms one to the other.

With four target points the configuration space is a thrice-punctured
sphere; the loop of the last point around the point at position i is the
pure move (i, last), and its cycle structure on a component's keys is
the component's puncture data over the corresponding boundary point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .counting import ConstellationSet
from .perms import MarkedTuple, canonical_key, compose, cycles, inverse


def hurwitz_move(t: MarkedTuple, i: int) -> MarkedTuple:
    """Elementary move at positions (i, i+1), labels swapped."""
    g, h = t.entries[i], t.entries[i + 1]
    new = compose(compose(g, h), inverse(g))  # right-action product g h g^-1
    gi = inverse(g)
    marks = dict(t.marks)
    for a, b in t.data.point_map.items():
        if b == t.labels[i + 1]:
            marks[a] = frozenset(gi[x] for x in t.marks[a])
    entries = list(t.entries)
    entries[i], entries[i + 1] = new, g
    labels = list(t.labels)
    labels[i], labels[i + 1] = labels[i + 1], labels[i]
    return MarkedTuple(data=t.data, entries=tuple(entries), marks=marks, labels=tuple(labels))


def hurwitz_move_inverse(t: MarkedTuple, i: int) -> MarkedTuple:
    """Inverse elementary move: (..., x, y, ...) -> (..., y, y^-1 x y, ...)."""
    x, y = t.entries[i], t.entries[i + 1]
    new = compose(compose(inverse(y), x), y)
    marks = dict(t.marks)
    for a, b in t.data.point_map.items():
        if b == t.labels[i]:
            marks[a] = frozenset(y[p] for p in t.marks[a])
    entries = list(t.entries)
    entries[i], entries[i + 1] = y, new
    labels = list(t.labels)
    labels[i], labels[i + 1] = labels[i + 1], labels[i]
    return MarkedTuple(data=t.data, entries=tuple(entries), marks=marks, labels=tuple(labels))


def pure_braid_move(t: MarkedTuple, i: int, j: int, inverse_move: bool = False) -> MarkedTuple:
    """Pure move for the pair of positions i < j; labels end where they started."""
    if not 0 <= i < j < len(t.entries):
        raise ValueError(f"need 0 <= i < j < {len(t.entries)}")
    labels_in = t.labels
    for k in range(j - 1, i, -1):
        t = hurwitz_move_inverse(t, k)
    if inverse_move:
        t = hurwitz_move_inverse(hurwitz_move_inverse(t, i), i)
    else:
        t = hurwitz_move(hurwitz_move(t, i), i)
    for k in range(i + 1, j):
        t = hurwitz_move(t, k)
    assert t.labels == labels_in
    return t


def sort_to_declared_order(t: MarkedTuple) -> MarkedTuple:
    """Bubble the position labels into declared target order by elementary moves.

    Any two move words realizing the same reordering differ by a pure
    word, so the resulting key always lands in the same component.
    """
    want = {b: k for k, b in enumerate(t.data.target_points)}
    n = len(t.entries)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if want[t.labels[i]] > want[t.labels[i + 1]]:
                t = hurwitz_move(t, i)
                changed = True
    return t


@dataclass(frozen=True)
class Orbit:
    index: int
    keys: tuple[bytes, ...]      # sorted

    @property
    def size(self) -> int:
        return len(self.keys)

    @property
    def representative(self) -> bytes:
        return self.keys[0]


@dataclass
class ComponentDecomposition:
    source: ConstellationSet
    orbits: list[Orbit]

    @property
    def orbit_of(self) -> dict[bytes, int]:
        return {k: o.index for o in self.orbits for k in o.keys}


def _generator_images(t: MarkedTuple, n: int):
    for i in range(n - 1):
        for j in range(i + 1, n):
            yield pure_braid_move(t, i, j)
            yield pure_braid_move(t, i, j, inverse_move=True)


def decompose_components(cs: ConstellationSet) -> ComponentDecomposition:
    """Orbits of all pure moves on the classes, ids assigned by least key."""
    n = len(cs.data.target_points)
    unvisited = set(cs.classes)
    raw: list[tuple[bytes, ...]] = []
    for start in sorted(cs.classes):
        if start not in unvisited:
            continue
        seen = {start}
        stack = [start]
        while stack:
            key = stack.pop()
            t = cs.classes[key]
            for image in _generator_images(t, n):
                k2 = canonical_key(image)
                if k2 not in cs.classes:
                    raise AssertionError("braid move left the enumerated class set")
                if k2 not in seen:
                    seen.add(k2)
                    stack.append(k2)
        unvisited -= seen
        raw.append(tuple(sorted(seen)))
    raw.sort(key=lambda ks: ks[0])
    return ComponentDecomposition(source=cs, orbits=[Orbit(index=i, keys=ks) for i, ks in enumerate(raw)])


def monodromy_permutation(cs: ConstellationSet, keys, i: int, j: int) -> dict[bytes, bytes]:
    """Action of the pure move (i, j) on the given keys, as key -> key."""
    out = {}
    for key in keys:
        out[key] = canonical_key(pure_braid_move(cs.classes[key], i, j))
    return out


def permutation_cycle_lengths(mapping: dict[bytes, bytes]) -> list[int]:
    seen: set[bytes] = set()
    out = []
    for start in sorted(mapping):
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            length += 1
            x = mapping[x]
        out.append(length)
    return sorted(out, reverse=True)
