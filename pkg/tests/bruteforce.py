"""Brute-force reference enumeration.

Deliberately independent of the package's enumeration code: raw loops
over every permutation tuple, explicit filters for the defining
conditions, explicit mark placement, and explicit dedup by simultaneous
conjugation orbits.  Slow and simple; usable up to degree 3 with four
branch points.
"""

import itertools


def bf_compose(g, h):
    # g then h
    return tuple(h[x] for x in g)


def bf_product(entries, d, order="left"):
    gs = entries if order == "left" else tuple(reversed(entries))
    out = tuple(range(d))
    for g in gs:
        out = bf_compose(out, g)
    return out


def bf_cycles(g):
    seen = set()
    out = []
    for start in range(len(g)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = g[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = g[x]
        out.append(tuple(cyc))
    return out


def bf_cycle_type(g):
    return tuple(sorted((len(c) for c in bf_cycles(g)), reverse=True))


def bf_transitive(entries, d):
    if d == 1:
        return True
    reached = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in entries:
            for y in (g[x], g.index(x)):
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
    return len(reached) == d


def _mark_choices(data, entries):
    """Every admissible mark placement, by explicit injective assignment."""
    per_target = []
    for pos, b in enumerate(data.target_points):
        fiber = [a for a in data.source_points if data.point_map[a] == b]
        cycle_sets = [frozenset(c) for c in bf_cycles(entries[pos])]
        choices_here = []
        for assignment in itertools.permutations(cycle_sets, len(fiber)):
            if all(len(s) == data.ram[a] for a, s in zip(fiber, assignment)):
                choices_here.append(tuple(zip(fiber, assignment)))
        per_target.append(choices_here)
    for combo in itertools.product(*per_target):
        marks = {}
        for group in combo:
            for a, s in group:
                marks[a] = s
        yield marks


def _encode(data, entries, marks):
    return (
        entries,
        tuple(tuple(sorted(marks[a])) for a in data.source_points),
    )


def _conjugate(data, entries, marks, s):
    new_entries = []
    for g in entries:
        img = [0] * len(g)
        for x in range(len(g)):
            img[s[x]] = s[g[x]]
        new_entries.append(tuple(img))
    new_marks = {a: frozenset(s[x] for x in pts) for a, pts in marks.items()}
    return tuple(new_entries), new_marks


def brute_raw(data, order="left"):
    """All raw (entries, marks) satisfying the defining conditions."""
    d = data.degree
    perms = list(itertools.permutations(range(d)))
    want = [tuple(data.branching[b]) for b in data.target_points]
    out = []
    for entries in itertools.product(perms, repeat=len(data.target_points)):
        if bf_product(entries, d, order) != tuple(range(d)):
            continue
        if any(bf_cycle_type(g) != w for g, w in zip(entries, want)):
            continue
        if not bf_transitive(entries, d):
            continue
        for marks in _mark_choices(data, entries):
            out.append((entries, marks))
    return out


def brute_orbit_representatives(data, order="left"):
    """One least encoding per simultaneous-conjugation orbit of the raw set."""
    d = data.degree
    raw = brute_raw(data, order)
    encodings = {_encode(data, e, m): (e, m) for e, m in raw}
    perms = list(itertools.permutations(range(d)))
    reps = []
    remaining = set(encodings)
    while remaining:
        enc = min(remaining)
        entries, marks = encodings[enc]
        orbit = set()
        for s in perms:
            ce, cm = _conjugate(data, entries, marks, s)
            orbit.add(_encode(data, ce, cm))
        assert orbit <= set(encodings), "conjugation left the raw set"
        remaining -= orbit
        reps.append(encodings[min(orbit)])
    return reps
