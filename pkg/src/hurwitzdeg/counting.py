r"""Exact enumeration of marked covers.

enumerate_marked lists, up to simultaneous conjugation, every tuple of
permutations with the prescribed cycle types, identity product and
transitive action, together with every admissible marking.  The count of
classes is the (marked) Hurwitz number: the topological degree of the
map sending a cover to its branch-point configuration.

The search fixes the first entry to a class representative (every class
of tuples has such a member), backtracks over the remaining classes with
two sound prunes (sign and transposition-distance feasibility of the
remaining product), determines the last entry from the prefix product,
and deduplicates by canonical key.  Everything is deterministic; classes
iterate in key order.

Explicit capacity ceilings turn infeasible requests into a typed refusal
rather than an open-ended search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations as _seq_permutations

from .core import BranchingData, require_valid
from .perms import (
    MarkedTuple,
    Perm,
    canonical_key,
    class_representative,
    compose,
    conjugacy_class,
    cycle_type,
    cycles,
    identity,
    inverse,
    is_transitive,
    marked_tuple,
    perm_sign,
    transposition_distance,
)


class CapacityError(RuntimeError):
    """The request exceeds a configured ceiling; raising is the contract."""


@dataclass(frozen=True)
class Ceilings:
    max_degree: int = 6
    max_classes: int = 100_000
    max_nodes: int = 2_000_000


DEFAULT_CEILINGS = Ceilings()


@dataclass
class ConstellationSet:
    """All classes for one datum: canonical key -> representative, in key order."""

    data: BranchingData
    classes: dict[bytes, MarkedTuple] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return len(self.classes)

    def keys(self) -> list[bytes]:
        return list(self.classes)


def check_capacity(data: BranchingData, ceilings: Ceilings) -> None:
    if data.degree > ceilings.max_degree:
        raise CapacityError(
            f"degree {data.degree} exceeds the ceiling {ceilings.max_degree}; raise max_degree to proceed"
        )


def mark_assignments(data: BranchingData, entry_over: dict[str, Perm], targets=None):
    """Yield every marking over the given targets (default all): for each
    fiber an injective choice of cycles of matching lengths, as dicts
    label -> frozenset of points."""
    per_target: list[list[list[tuple[str, frozenset[int]]]]] = []
    for b in (data.target_points if targets is None else targets):
        fiber = data.fiber(b)
        if not fiber:
            continue
        by_len: dict[int, list[frozenset[int]]] = {}
        for c in cycles(entry_over[b]):
            by_len.setdefault(len(c), []).append(frozenset(c))
        groups: list[list[list[tuple[str, frozenset[int]]]]] = []
        for length in sorted({data.ram[a] for a in fiber}):
            labels = [a for a in fiber if data.ram[a] == length]
            pool = by_len.get(length, [])
            if len(pool) < len(labels):
                return  # cycle type cannot host the marks; condition 2 excludes this
            choices = [
                list(zip(labels, chosen))
                for chosen in _seq_permutations(pool, len(labels))
            ]
            groups.append(choices)
        per_target.append(groups)

    flat = per_target

    def rec_target(ti: int, acc: dict[str, frozenset[int]]):
        if ti == len(flat):
            yield dict(acc)
            return
        def rec_group(gi: int, acc2: dict[str, frozenset[int]]):
            if gi == len(flat[ti]):
                yield from rec_target(ti + 1, acc2)
                return
            for choice in flat[ti][gi]:
                nxt = dict(acc2)
                nxt.update(choice)
                yield from rec_group(gi + 1, nxt)
        yield from rec_group(0, acc)

    yield from rec_target(0, {})


def enumerate_marked(data: BranchingData, ceilings: Ceilings = DEFAULT_CEILINGS) -> ConstellationSet:
    """All classes of marked covers for a valid datum."""
    require_valid(data)
    check_capacity(data, ceilings)
    d = data.degree
    targets = data.target_points
    n = len(targets)
    parts = [data.branching[b] for b in targets]

    # sign of every member of each class, and distance lower bounds for prunes
    signs = [perm_sign(class_representative(p, d)) for p in parts]
    dists = [d - len(p) for p in parts]
    suffix_sign = [1] * (n + 1)
    suffix_dist = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_sign[i] = suffix_sign[i + 1] * signs[i]
        suffix_dist[i] = suffix_dist[i + 1] + dists[i]

    out = ConstellationSet(data=data)
    found: dict[bytes, MarkedTuple] = {}
    nodes = 0

    def place(pos: int, chosen: list[Perm], prefix: Perm):
        nonlocal nodes
        nodes += 1
        if nodes > ceilings.max_nodes:
            raise CapacityError(f"search exceeded {ceilings.max_nodes} nodes; raise max_nodes to proceed")
        if pos == n - 1:
            last = inverse(prefix)
            if cycle_type(last) != parts[pos]:
                return
            full = chosen + [last]
            if not is_transitive(full, d):
                return
            entry_over = dict(zip(targets, full))
            for marks in mark_assignments(data, entry_over):
                t = marked_tuple(data, full, marks)
                key = canonical_key(t)
                if key not in found:
                    found[key] = t
                    if len(found) > ceilings.max_classes:
                        raise CapacityError(
                            f"more than {ceilings.max_classes} classes; raise max_classes to proceed"
                        )
            return
        candidates = (
            (class_representative(parts[0], d),) if pos == 0 else conjugacy_class(parts[pos], d)
        )
        for g in candidates:
            nxt = compose(prefix, g)
            # the remaining entries must multiply to the inverse of nxt
            if perm_sign(nxt) != suffix_sign[pos + 1]:
                continue
            if transposition_distance(nxt) > suffix_dist[pos + 1]:
                continue
            place(pos + 1, chosen + [g], nxt)

    if n == 0:
        raise ValueError("datum has no target points")
    place(0, [], identity(d))
    out.classes = dict(sorted(found.items()))
    return out


def hurwitz_number(data: BranchingData, ceilings: Ceilings = DEFAULT_CEILINGS) -> int:
    """Topological degree of the branch-configuration map: the class count."""
    return enumerate_marked(data, ceilings).total
