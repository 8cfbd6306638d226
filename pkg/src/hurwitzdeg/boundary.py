"""Boundary calculus for targets with four branch points.

A four-point target sphere degenerates in three ways, one for each way
of splitting the branch points into two pairs.  A cover degenerates
along with it into an admissible cover: a cover of each side sphere,
branched over the two retained points and the node, such that the two
covers induce the same partition of the degree at the node and are glued
along node cycles of equal length.

Each admissible cover is recorded by one permutation tuple per side,
listing the branch entries in target order followed by the node entry,
with product the identity; the node entry is therefore the inverse of
the product of the branch entries.  Gluing data matches cycles of the
two node entries of equal length.  Sheet relabelings act on each side
independently, and covers are counted up to that action.

Smoothing an admissible cover reverses the degeneration.  The choice of
local smoothing at the nodes is a sheet bijection rho between the sides
satisfying rho h_b rho^{-1} = h_a^{-1} for the node entries; the valid
rho form a torsor under rotations of the glued cycles, and their orbits
under simultaneous rotation are the branches of the family meeting the
cover.  Each branch has local degree lcm of the glued cycle lengths and
a vanishing order (local degree / cycle length) at each node.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .braid import (
    decompose_components,
    monodromy_permutation,
    permutation_cycle_lengths,
    sort_to_declared_order,
    ComponentDecomposition,
)
from .core import (
    BranchingData,
    CompletionResult,
    ModelViolationError,
    Partition,
    fully_marked_completion,
    require_valid,
)
from .counting import (
    check_capacity,
    enumerate_marked,
    mark_assignments,
    Ceilings,
    ConstellationSet,
    DEFAULT_CEILINGS,
    CapacityError,
)
from .perms import (
    canonical_key,
    check_marked_tuple,
    conjugacy_class,
    cycles,
    cycle_type,
    inverse,
    marked_tuple,
    product,
    relabel_perm,
    Perm,
)


@dataclass(frozen=True)
class TargetSplit:
    """One pairing of the four branch points; side_a holds the first."""

    side_a: tuple[str, str]
    side_b: tuple[str, str]

    @property
    def sides(self) -> tuple[tuple[str, str], tuple[str, str]]:
        return (self.side_a, self.side_b)

    def label(self) -> str:
        return ",".join(self.side_a) + "|" + ",".join(self.side_b)

    def generator_positions(self, data: BranchingData) -> tuple[int, int]:
        """Positions of the pure move whose monodromy this split carries.

        The move conjugates the last branch point around the one it is
        paired with, so the positions are those of the side containing
        the last point in target order.
        """
        last = data.target_points[-1]
        side = self.side_a if last in self.side_a else self.side_b
        other = side[0] if side[1] == last else side[1]
        return (data.target_points.index(other), len(data.target_points) - 1)


def splits_of(data: BranchingData) -> tuple[TargetSplit, ...]:
    """The three two-by-two splits of a four-point target."""
    b = data.target_points
    if len(b) != 4:
        raise ValueError("boundary calculus requires exactly four branch points")
    out = []
    for k in (1, 2, 3):
        side_a = (b[0], b[k])
        side_b = tuple(x for x in b if x not in side_a)
        out.append(TargetSplit(side_a=side_a, side_b=tuple(side_b)))
    return tuple(out)


@dataclass
class AdmissibleCover:
    """Canonical representative of one glued cover over a split target.

    entries_a / entries_b list the branch entries in side order followed
    by the node entry.  gluing pairs up node cycles (as point tuples in
    cycle order); marks live on the sheets of the side their fiber lies
    on.  multiplicity is the product of glued cycle lengths, the number
    of local smoothings.
    """

    split: TargetSplit
    degree: int
    entries_a: tuple[Perm, ...]
    entries_b: tuple[Perm, ...]
    marks: dict[str, frozenset[int]]
    gluing: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    multiplicity: int
    node_profile: Partition
    key: bytes


@dataclass(frozen=True)
class Branch:
    """One local smoothing orbit of an admissible cover."""

    offsets: tuple[int, ...]
    local_degree: int
    vanishing: tuple[int, ...]
    smoothed_key: bytes


@dataclass
class SplitAnalysis:
    split: TargetSplit
    covers: tuple[AdmissibleCover, ...]
    branches: tuple[tuple[Branch, ...], ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(c.multiplicity for c in self.covers)


@dataclass
class BoundaryAnalysis:
    """Covers, components and boundary data of one fully marked datum."""

    data: BranchingData
    classes: ConstellationSet
    components: ComponentDecomposition
    splits: tuple[SplitAnalysis, ...]


class _Budget:
    # shared work counter so degenerate enumeration respects the ceilings

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise CapacityError(f"boundary enumeration exceeded {self.limit} states")


def _side_tuples(data: BranchingData, labels, budget: _Budget):
    """All side tuples over the given labels, grouped by node profile.

    Yields dict profile -> list of (branch entries, node entry, markings)
    where markings are the admissible mark dictionaries over the side.
    """
    d = data.degree
    pools = [conjugacy_class(data.branching[b], d) for b in labels]
    out: dict[Partition, list] = {}
    for combo in itertools.product(*pools):
        budget.spend()
        node = inverse(product(combo, d))
        entry_over = dict(zip(labels, combo))
        markings = tuple(mark_assignments(data, entry_over, targets=labels))
        if not markings:
            continue
        out.setdefault(cycle_type(node), []).append((combo, node, markings))
    return out


def _gluings(cycles_a, cycles_b):
    """All length-preserving bijections between two node cycle lists."""
    by_len_a: dict[int, list] = {}
    by_len_b: dict[int, list] = {}
    for c in cycles_a:
        by_len_a.setdefault(len(c), []).append(c)
    for c in cycles_b:
        by_len_b.setdefault(len(c), []).append(c)
    lengths = sorted(by_len_a)
    choices = [itertools.permutations(by_len_b[k]) for k in lengths]
    for combo in itertools.product(*choices):
        pairs = []
        for k, images in zip(lengths, combo):
            pairs.extend(zip(by_len_a[k], images))
        yield tuple(sorted(pairs, key=lambda p: (len(p[0]), p[0])))


def _glued_connected(d: int, entries_a, entries_b, gluing) -> bool:
    # union-find on the disjoint sheets, side b shifted by d
    parent = list(range(2 * d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for g in entries_a:
        for x in range(d):
            union(x, g[x])
    for g in entries_b:
        for x in range(d):
            union(d + x, d + g[x])
    for ca, cb in gluing:
        union(ca[0], d + cb[0])
    return len({find(x) for x in range(2 * d)}) == 1


def _canonical_side(d, entries, mark_sets, cache):
    """Minimal relabeled form of one side and all relabelings achieving it."""
    key = (entries, mark_sets)
    if key in cache:
        return cache[key]
    best = None
    achievers = []
    for rho in itertools.permutations(range(d)):
        enc = (
            tuple(relabel_perm(g, rho) for g in entries),
            tuple(tuple(sorted(rho[x] for x in s)) for s in mark_sets),
        )
        if best is None or enc < best:
            best = enc
            achievers = [rho]
        elif enc == best:
            achievers.append(rho)
    cache[key] = (best, tuple(achievers))
    return cache[key]


def _pack_cover(d, enc_a, enc_b, glue_enc) -> bytes:
    parts = [d.to_bytes(4, "big")]
    for enc in (enc_a, enc_b):
        entries, mark_sets = enc
        parts.append(len(entries).to_bytes(4, "big"))
        for g in entries:
            parts.extend(x.to_bytes(2, "big") for x in g)
        parts.append(len(mark_sets).to_bytes(4, "big"))
        for s in mark_sets:
            parts.append(len(s).to_bytes(4, "big"))
            parts.extend(x.to_bytes(2, "big") for x in s)
    parts.append(len(glue_enc).to_bytes(4, "big"))
    for sa, sb in glue_enc:
        parts.append(len(sa).to_bytes(4, "big"))
        parts.extend(x.to_bytes(2, "big") for x in sa)
        parts.extend(x.to_bytes(2, "big") for x in sb)
    return b"".join(parts)


def _cycle_containing(g: Perm, x: int) -> tuple[int, ...]:
    for c in cycles(g):
        if x in c:
            return c
    raise AssertionError


def enumerate_admissible(
    data: BranchingData, split: TargetSplit, ceilings: Ceilings = DEFAULT_CEILINGS
) -> tuple[AdmissibleCover, ...]:
    """All admissible covers over the split target, up to sheet relabeling
    of each side, sorted by canonical key."""
    report = require_valid(data)
    if not report.fully_marked:
        raise ValueError("admissible cover enumeration requires fully marked data")
    check_capacity(data, ceilings)
    d = data.degree
    budget = _Budget(ceilings.max_nodes)
    sides_a = _side_tuples(data, split.side_a, budget)
    sides_b = _side_tuples(data, split.side_b, budget)
    labels_a = [a for a in data.source_points if data.point_map[a] in split.side_a]
    labels_b = [a for a in data.source_points if data.point_map[a] in split.side_b]
    side_cache: dict = {}
    found: dict[bytes, AdmissibleCover] = {}

    for profile in sorted(set(sides_a) & set(sides_b)):
        for ta, na, markings_a in sides_a[profile]:
            cycles_a = cycles(na)
            for tb, nb, markings_b in sides_b[profile]:
                cycles_b = cycles(nb)
                for gluing in _gluings(cycles_a, cycles_b):
                    if not _glued_connected(d, ta + (na,), tb + (nb,), gluing):
                        continue
                    for ma in markings_a:
                        for mb in markings_b:
                            budget.spend()
                            cover = _canonicalize_cover(
                                data, split, d,
                                ta + (na,), tb + (nb,),
                                labels_a, labels_b, ma, mb,
                                gluing, side_cache,
                            )
                            if cover.key not in found:
                                if len(found) >= ceilings.max_classes:
                                    raise CapacityError(
                                        f"more than {ceilings.max_classes} admissible covers"
                                    )
                                found[cover.key] = cover
    return tuple(found[k] for k in sorted(found))


def _canonicalize_cover(
    data, split, d, entries_a, entries_b, labels_a, labels_b, ma, mb, gluing, cache
) -> AdmissibleCover:
    sets_a = tuple(ma[a] for a in labels_a)
    sets_b = tuple(mb[a] for a in labels_b)
    enc_a, ach_a = _canonical_side(d, entries_a, sets_a, cache)
    enc_b, ach_b = _canonical_side(d, entries_b, sets_b, cache)
    best = None
    for ra in ach_a:
        for rb in ach_b:
            glue_enc = tuple(sorted(
                (tuple(sorted(ra[x] for x in ca)), tuple(sorted(rb[x] for x in cb)))
                for ca, cb in gluing
            ))
            cand = (glue_enc, ra, rb)
            if best is None or cand < best:
                best = cand
    glue_enc, ra, rb = best
    new_a = tuple(relabel_perm(g, ra) for g in entries_a)
    new_b = tuple(relabel_perm(g, rb) for g in entries_b)
    marks = {a: frozenset(ra[x] for x in ma[a]) for a in labels_a}
    marks.update({a: frozenset(rb[x] for x in mb[a]) for a in labels_b})
    new_pairs = [
        (_cycle_containing(new_a[-1], ra[ca[0]]), _cycle_containing(new_b[-1], rb[cb[0]]))
        for ca, cb in gluing
    ]
    new_gluing = tuple(sorted(new_pairs, key=lambda p: (len(p[0]), p[0])))
    mult = 1
    for ca, _ in new_gluing:
        mult *= len(ca)
    return AdmissibleCover(
        split=split,
        degree=d,
        entries_a=new_a,
        entries_b=new_b,
        marks=marks,
        gluing=new_gluing,
        multiplicity=mult,
        node_profile=cycle_type(new_a[-1]),
        key=_pack_cover(d, enc_a, enc_b, glue_enc),
    )


def expand_branches(data: BranchingData, cover: AdmissibleCover) -> tuple[Branch, ...]:
    """The branches of the family meeting the cover, with their smoothed
    component keys.

    A smoothing bijection rho sends side b sheets to side a sheets with
    rho h_b rho^{-1} = h_a^{-1} and respects the gluing; on each glued
    pair it is determined by one offset modulo the cycle length.  Offset
    vectors modulo simultaneous rotation give the branches; each branch
    covers the smoothing parameter with degree lcm of the cycle lengths.
    """
    d = cover.degree
    pairs = cover.gluing
    ks = [len(ca) for ca, _ in pairs]
    total = lcm(*ks) if ks else 1
    na = cover.entries_a[-1]
    nb = cover.entries_b[-1]
    seen: set[tuple[int, ...]] = set()
    out = []
    for offsets in itertools.product(*(range(k) for k in ks)):
        if offsets in seen:
            continue
        orbit = {
            tuple((o + t) % k for o, k in zip(offsets, ks)) for t in range(total)
        }
        if len(orbit) != total:
            raise ModelViolationError("smoothing orbit shorter than the local degree")
        seen |= orbit
        rho = _smoothing_bijection(d, pairs, offsets)
        if relabel_perm(nb, rho) != inverse(na):
            raise ModelViolationError("smoothing bijection fails the node relation")
        smoothed = _smoothed_tuple(data, cover, rho)
        out.append(Branch(
            offsets=offsets,
            local_degree=total,
            vanishing=tuple(total // k for k in ks),
            smoothed_key=smoothed,
        ))
    if sum(b.local_degree for b in out) != cover.multiplicity:
        raise ModelViolationError("branch degrees do not sum to the multiplicity")
    return tuple(out)


def _smoothing_bijection(d, pairs, offsets) -> Perm:
    rho = [None] * d
    for (ca, cb), off in zip(pairs, offsets):
        k = len(ca)
        for t in range(k):
            rho[cb[t]] = ca[(off - t) % k]
    return tuple(rho)


def _smoothed_tuple(data: BranchingData, cover: AdmissibleCover, rho: Perm) -> bytes:
    split = cover.split
    labels = split.side_a + split.side_b
    entries = tuple(cover.entries_a[:-1]) + tuple(
        relabel_perm(g, rho) for g in cover.entries_b[:-1]
    )
    marks = {}
    for a, s in cover.marks.items():
        if data.point_map[a] in split.side_a:
            marks[a] = s
        else:
            marks[a] = frozenset(rho[x] for x in s)
    t = marked_tuple(data, entries, marks, labels=labels)
    t = sort_to_declared_order(t)
    problems = check_marked_tuple(t)
    if problems:
        raise ModelViolationError("smoothed cover is invalid: " + "; ".join(problems))
    return canonical_key(t)


def analyze_boundary(
    data: BranchingData, ceilings: Ceilings = DEFAULT_CEILINGS
) -> BoundaryAnalysis:
    """Enumerate covers, components, admissible covers and branches, and
    check that each degenerate count matches the smooth count.

    Raises ModelViolationError if any split total differs from the
    number of cover classes, or if any smoothed branch leaves the class
    set (flatness of the family over its base).
    """
    report = require_valid(data)
    if not report.fully_marked:
        raise ValueError("boundary analysis requires fully marked data")
    classes = enumerate_marked(data, ceilings)
    components = decompose_components(classes)
    split_analyses = []
    for split in splits_of(data):
        covers = enumerate_admissible(data, split, ceilings)
        total = sum(c.multiplicity for c in covers)
        if total != classes.total:
            raise ModelViolationError(
                f"split {split.label()}: multiplicity total {total} != "
                f"cover count {classes.total}"
            )
        branch_lists = []
        for cover in covers:
            branches = expand_branches(data, cover)
            for b in branches:
                if b.smoothed_key not in classes.classes:
                    raise ModelViolationError(
                        f"split {split.label()}: smoothed branch left the class set"
                    )
            branch_lists.append(branches)
        split_analyses.append(SplitAnalysis(split, covers, tuple(branch_lists)))
    return BoundaryAnalysis(data, classes, components, tuple(split_analyses))


def flatness_check(
    data: BranchingData, ceilings: Ceilings = DEFAULT_CEILINGS
) -> tuple[bool, list[str]]:
    """Compare each split's degenerate count against the smooth count.

    Unlike analyze_boundary this never raises on a mismatch: it returns
    (ok, report lines) so a caller can show the differences.
    """
    report = require_valid(data)
    if not report.fully_marked:
        raise ValueError("flatness check requires fully marked data")
    classes = enumerate_marked(data, ceilings)
    ok = True
    lines = [f"deg_pi1 {classes.total}"]
    for split in splits_of(data):
        covers = enumerate_admissible(data, split, ceilings)
        total = sum(c.multiplicity for c in covers)
        verdict = "ok" if total == classes.total else "MISMATCH"
        if total != classes.total:
            ok = False
        lines.append(
            f"split {split.label()}: covers {len(covers)} "
            f"multiplicity total {total} {verdict}"
        )
    return ok, lines


def euler_characteristic(analysis: BoundaryAnalysis, orbit_index: int) -> int:
    """Euler characteristic of one component, compactified by its
    punctures: -size + punctures counted over the three splits."""
    orbit = analysis.components.orbits[orbit_index]
    chi = -orbit.size
    for sa in analysis.splits:
        i, j = sa.split.generator_positions(analysis.data)
        mapping = monodromy_permutation(analysis.classes, orbit.keys, i, j)
        chi += len(permutation_cycle_lengths(mapping))
    return chi


def component_euler_characteristics(
    data: BranchingData, classes: ConstellationSet, components: ComponentDecomposition
) -> list[int]:
    """Euler characteristic of every component of a four-branch-point
    space, full marking not required: each component covers the
    thrice-punctured moduli curve, so chi = -size + punctures."""
    chis = []
    for orbit in components.orbits:
        chi = -orbit.size
        for split in splits_of(data):
            i, j = split.generator_positions(data)
            mapping = monodromy_permutation(classes, orbit.keys, i, j)
            chi += len(permutation_cycle_lengths(mapping))
        chis.append(chi)
    return chis


def puncture_degrees(analysis: BoundaryAnalysis, orbit_index: int) -> list[list[int]]:
    """Per split, the cycle lengths of the split monodromy on the component."""
    orbit = analysis.components.orbits[orbit_index]
    out = []
    for sa in analysis.splits:
        i, j = sa.split.generator_positions(analysis.data)
        mapping = monodromy_permutation(analysis.classes, orbit.keys, i, j)
        out.append(permutation_cycle_lengths(mapping))
    return out


def branch_degrees(analysis: BoundaryAnalysis, orbit_index: int) -> list[list[int]]:
    """Per split, the local degrees of the branches meeting the component."""
    orbit_of = analysis.components.orbit_of
    out = []
    for sa in analysis.splits:
        degs = []
        for branches in sa.branches:
            for b in branches:
                if orbit_of[b.smoothed_key] == orbit_index:
                    degs.append(b.local_degree)
        out.append(sorted(degs, reverse=True))
    return out


# ---------------------------------------------------------------------------
# source trees and their stabilization


@dataclass
class SourceTree:
    """Dual tree of one admissible cover: a vertex per side component,
    an edge per glued node, marks attached to the component carrying
    their cycle."""

    n_vertices: int
    vertex_marks: tuple[frozenset[str], ...]
    edges: tuple[tuple[int, int, int], ...]  # (u, v, gluing pair index)


def _orbit_partition(entries, d: int) -> list[frozenset[int]]:
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in entries:
        for x in range(d):
            rx, ry = find(x), find(g[x])
            if rx != ry:
                parent[rx] = ry
    groups: dict[int, set[int]] = {}
    for x in range(d):
        groups.setdefault(find(x), set()).add(x)
    return [frozenset(s) for s in sorted(groups.values(), key=min)]


def source_tree(data: BranchingData, cover: AdmissibleCover) -> SourceTree:
    comps_a = _orbit_partition(cover.entries_a, cover.degree)
    comps_b = _orbit_partition(cover.entries_b, cover.degree)
    shift = len(comps_a)

    def vertex_of(side: int, point: int) -> int:
        comps = comps_a if side == 0 else comps_b
        for k, c in enumerate(comps):
            if point in c:
                return k + side * shift
        raise AssertionError

    n = len(comps_a) + len(comps_b)
    vmarks = [set() for _ in range(n)]
    for a, s in cover.marks.items():
        side = 0 if data.point_map[a] in cover.split.side_a else 1
        vmarks[vertex_of(side, min(s))].add(a)
    edges = []
    for idx, (ca, cb) in enumerate(cover.gluing):
        edges.append((vertex_of(0, ca[0]), vertex_of(1, cb[0]), idx))
    if len(edges) != n - 1:
        raise ModelViolationError("glued source curve is not a tree")
    return SourceTree(
        n_vertices=n,
        vertex_marks=tuple(frozenset(s) for s in vmarks),
        edges=tuple(edges),
    )


def stabilize_tree(vertex_marks, edges):
    """Contract unstable vertices of a marked weighted tree.

    A vertex is stable when its marks plus incident edges number at
    least three.  An unmarked vertex on two edges merges them, adding
    their weights; a vertex on one edge carrying at most one mark is
    deleted, its mark moving to the neighbor.  Returns surviving
    (vertex id -> mark set, list of (u, v, weight)).
    """
    marks = {v: set(s) for v, s in enumerate(vertex_marks)}
    live = {}
    for eid, (u, v, w) in enumerate(edges):
        live[eid] = (u, v, w)
    next_eid = len(edges)
    changed = True
    while changed and len(marks) > 1:
        changed = False
        for v in sorted(marks):
            incident = [eid for eid, e in live.items() if v in e[:2]]
            if len(marks[v]) + len(incident) >= 3:
                continue
            if len(incident) == 2 and not marks[v]:
                (u1, v1, w1), (u2, v2, w2) = live[incident[0]], live[incident[1]]
                a = u1 if v1 == v else v1
                b = u2 if v2 == v else v2
                del live[incident[0]]
                del live[incident[1]]
                live[next_eid] = (a, b, w1 + w2)
                next_eid += 1
                del marks[v]
                changed = True
                break
            if len(incident) == 1 and len(marks[v]) <= 1:
                u1, v1, _ = live[incident[0]]
                neighbor = u1 if v1 == v else v1
                marks[neighbor] |= marks[v]
                del live[incident[0]]
                del marks[v]
                changed = True
                break
    return {v: frozenset(s) for v, s in marks.items()}, [live[e] for e in sorted(live)]


def _cut_sides(marks: dict[int, frozenset], edges, cut_index):
    """Mark sets on the two sides of one edge of a (stabilized) tree."""
    u0, v0, _ = edges[cut_index]
    adjacency: dict[int, list[int]] = {v: [] for v in marks}
    for k, (u, v, _) in enumerate(edges):
        if k == cut_index:
            continue
        adjacency[u].append(v)
        adjacency[v].append(u)
    reached = {u0}
    stack = [u0]
    while stack:
        x = stack.pop()
        for y in adjacency[x]:
            if y not in reached:
                reached.add(y)
                stack.append(y)
    side_u: set[str] = set()
    side_v: set[str] = set()
    for v, s in marks.items():
        (side_u if v in reached else side_v).update(s)
    return frozenset(side_u), frozenset(side_v)


# ---------------------------------------------------------------------------
# source degrees


@dataclass(frozen=True)
class EdgeContribution:
    """One qualifying stabilized edge of one branch: the correction it
    contributes to the source degree at the given point."""

    split_index: int
    cover_index: int
    branch_index: int
    orbit_index: int
    point: str
    order: int
    side_marks: tuple[str, ...]


@dataclass
class ComponentSourceDegree:
    orbit_index: int
    size: int
    value: int
    corrections: dict[str, int]


def full_source_degrees(analysis: BoundaryAnalysis, base_points):
    """Source degree of every component of a fully marked space.

    For each component the count of covers divided by the multiplicity
    at a base point, minus the total vanishing order of the qualifying
    boundary edges, must be one and the same non-negative integer for
    every base point; ModelViolationError otherwise.  Qualifying edges
    split off the chosen base point together with auxiliary marks only.
    Returns (per-component list, all edge contributions).
    """
    data = analysis.data
    base = tuple(base_points)
    base_set = set(base)
    orbit_of = analysis.components.orbit_of
    corrections: dict[int, dict[str, int]] = {
        k: {p: 0 for p in base} for k in range(len(analysis.components.orbits))
    }
    audits: list[EdgeContribution] = []
    for si, sa in enumerate(analysis.splits):
        for ci, cover in enumerate(sa.covers):
            tree = source_tree(data, cover)
            for bi, branch in enumerate(sa.branches[ci]):
                orbit_index = orbit_of[branch.smoothed_key]
                weighted = [
                    (u, v, branch.vanishing[idx]) for u, v, idx in tree.edges
                ]
                marks, edges = stabilize_tree(tree.vertex_marks, weighted)
                for k in range(len(edges)):
                    side_u, side_v = _cut_sides(marks, edges, k)
                    w = edges[k][2]
                    for p in base:
                        side = side_u if p in side_u else side_v
                        if side & (base_set - {p}):
                            continue
                        if len(side) < 2:
                            continue
                        corrections[orbit_index][p] += w
                        audits.append(EdgeContribution(
                            split_index=si,
                            cover_index=ci,
                            branch_index=bi,
                            orbit_index=orbit_index,
                            point=p,
                            order=w,
                            side_marks=tuple(sorted(side)),
                        ))
    out = []
    for k, orbit in enumerate(analysis.components.orbits):
        values = set()
        for p in base:
            v = Fraction(orbit.size, data.ram[p]) - corrections[k][p]
            values.add(v)
        if len(values) != 1:
            raise ModelViolationError(
                f"component {k}: source degree depends on the base point: "
                + ", ".join(f"{p}: {Fraction(orbit.size, data.ram[p]) - corrections[k][p]}" for p in base)
            )
        value = values.pop()
        if value.denominator != 1 or value < 0:
            raise ModelViolationError(
                f"component {k}: source degree {value} is not a non-negative integer"
            )
        out.append(ComponentSourceDegree(
            orbit_index=k,
            size=orbit.size,
            value=int(value),
            corrections=corrections[k],
        ))
    return out, audits


@dataclass
class PortraitComponentDegree:
    orbit_index: int
    size: int
    value: int


@dataclass
class SourceDegreeReport:
    """Source degrees of a portrait, computed on its fully marked
    completion and divided back by the marking forgetful degree."""

    data: BranchingData
    completion: CompletionResult
    analysis: BoundaryAnalysis
    portrait_classes: ConstellationSet
    portrait_components: ComponentDecomposition
    orbit_map: dict[int, int]
    full_degrees: list[ComponentSourceDegree]
    audits: list[EdgeContribution]
    per_component: list[PortraitComponentDegree]
    total: int


def source_degree_report(
    data: BranchingData, ceilings: Ceilings = DEFAULT_CEILINGS
) -> SourceDegreeReport:
    """Source degree (theta_top) of each component of a portrait space.

    Requires a portrait with exactly four marked points.  The portrait
    is completed to fully marked data, the boundary calculus runs there,
    and component degrees descend through the forgetful map.
    """
    require_valid(data)
    if not data.is_portrait():
        raise ValueError("source degrees require a portrait (source = target)")
    if len(data.target_points) != 4:
        raise ValueError("source degrees are computed only for four marked points")
    completion = fully_marked_completion(data)
    analysis = analyze_boundary(completion.full, ceilings)
    portrait_classes = enumerate_marked(data, ceilings)
    portrait_components = decompose_components(portrait_classes)
    portrait_orbit_of = portrait_components.orbit_of

    orbit_map: dict[int, int] = {}
    for k, orbit in enumerate(analysis.components.orbits):
        rep = analysis.classes.classes[orbit.representative]
        restricted = {a: s for a, s in rep.marks.items() if a in data.source_points}
        t = marked_tuple(data, rep.entries, restricted)
        pkey = canonical_key(t)
        if pkey not in portrait_classes.classes:
            raise ModelViolationError("forgetting marks left the portrait class set")
        orbit_map[k] = portrait_orbit_of[pkey]

    deg_forget = completion.deg_forget
    for pk, orbit in enumerate(portrait_components.orbits):
        above = sum(
            analysis.components.orbits[k].size
            for k in orbit_map if orbit_map[k] == pk
        )
        if above != deg_forget * orbit.size:
            raise ModelViolationError(
                f"forgetful degree mismatch over component {pk}: "
                f"{above} != {deg_forget} * {orbit.size}"
            )

    full_degrees, audits = full_source_degrees(analysis, data.source_points)
    per_component = []
    total = 0
    for pk, orbit in enumerate(portrait_components.orbits):
        s = sum(fd.value for fd in full_degrees if orbit_map[fd.orbit_index] == pk)
        q, r = divmod(s, deg_forget)
        if r != 0:
            raise ModelViolationError(
                f"component {pk}: degree sum {s} not divisible by "
                f"the forgetful degree {deg_forget}"
            )
        per_component.append(PortraitComponentDegree(
            orbit_index=pk, size=orbit.size, value=q,
        ))
        total += q
    return SourceDegreeReport(
        data=data,
        completion=completion,
        analysis=analysis,
        portrait_classes=portrait_classes,
        portrait_components=portrait_components,
        orbit_map=orbit_map,
        full_degrees=full_degrees,
        audits=audits,
        per_component=per_component,
        total=total,
    )
