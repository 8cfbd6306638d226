r"""Branching data for marked covers of the sphere.

A branching datum records the discrete shape of a degree-d cover of the
sphere: a finite set of source labels A, a finite set of target labels B,
a map F: A -> B saying which target point each marked source point lies
over, a local degree ram(a) >= 1 for each marked source point, and a
branching partition of d over each target point.  Two counting conditions
make the datum realizable:

  condition 1:  sum over b of (d - len(branching[b])) == 2d - 2,
                the Riemann-Hurwitz count for genus-0 covers of genus 0;
  condition 2:  over each target b, the multiset {ram(a) : F(a) == b} is
                a submultiset of branching[b], so marked points fit into
                distinct preimage cycles of the right sizes.

A datum is *fully marked* when condition 2 holds with equality: every
preimage of every target point carries a label.  A *portrait* is a datum
with A == B == P, modelling the postcritical dynamics of a branched
self-cover of the sphere (F is the return map on the postcritical set).

All arithmetic is exact; degrees and partition entries are plain Python
integers of arbitrary size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import Counter

Partition = tuple[int, ...]


class ModelViolationError(AssertionError):
    """Computed quantities contradict an identity the model guarantees.

    Raised instead of returning silently wrong numbers: a flatness total
    off by one, a p-dependent source degree, a bound chain that cannot
    hold.  Reaching this means an input outside the model or a defect
    worth a report, never a condition to swallow.
    """


def make_partition(parts) -> Partition:
    """Canonical weakly-decreasing tuple of positive parts."""
    p = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x < 1 for x in p):
        raise ValueError("partition parts must be positive")
    return p


def trivial_partition(d: int) -> Partition:
    return make_partition([1] * d)


@dataclass(frozen=True)
class BranchingData:
    """Immutable branching datum.

    source_points and target_points fix the label orders once and for all;
    every downstream encoding (canonical keys, file output, cache keys)
    reads labels in these declared orders.
    """

    source_points: tuple[str, ...]          # A, order fixed at construction
    target_points: tuple[str, ...]          # B, order fixed at construction
    degree: int                             # d >= 1
    point_map: dict[str, str]               # F : A -> B
    ram: dict[str, int]                     # local degree at each source label
    branching: dict[str, Partition]         # target label -> partition of d

    def is_portrait(self) -> bool:
        return self.source_points == self.target_points

    def fiber(self, b: str) -> tuple[str, ...]:
        """Marked preimages of target b, in source order."""
        return tuple(a for a in self.source_points if self.point_map.get(a) == b)


@dataclass
class ValidationReport:
    ok: bool
    fully_marked: bool
    violations: list[tuple[str, str]] = field(default_factory=list)

    def messages(self) -> list[str]:
        return [f"{code}: {msg}" for code, msg in self.violations]


def validate_branching(data: BranchingData) -> ValidationReport:
    """Check a datum structurally and against conditions 1 and 2.

    Malformed input is reported as violations, never raised, so a caller
    can show every problem at once.  fully_marked reports whether
    condition 2 holds with equality over every target point.
    """
    bad: list[tuple[str, str]] = []

    if len(set(data.source_points)) != len(data.source_points):
        bad.append(("structure", "duplicate source labels"))
    if len(set(data.target_points)) != len(data.target_points):
        bad.append(("structure", "duplicate target labels"))
    if data.degree < 1:
        bad.append(("structure", f"degree must be >= 1, got {data.degree}"))
    # both moduli spaces need at least three marks to exist
    if len(data.source_points) < 3:
        bad.append(("cardinality", f"need at least 3 source labels, got {len(data.source_points)}"))
    if len(data.target_points) < 3:
        bad.append(("cardinality", f"need at least 3 target labels, got {len(data.target_points)}"))

    targets = set(data.target_points)
    for a in data.source_points:
        b = data.point_map.get(a)
        if b is None:
            bad.append(("structure", f"point map undefined at {a!r}"))
        elif b not in targets:
            bad.append(("structure", f"point map sends {a!r} to unknown label {b!r}"))
        r = data.ram.get(a)
        if r is None:
            bad.append(("structure", f"no local degree for {a!r}"))
        elif not (1 <= r <= data.degree):
            bad.append(("structure", f"local degree {r} at {a!r} outside 1..{data.degree}"))

    for b in data.target_points:
        part = data.branching.get(b)
        if part is None:
            bad.append(("structure", f"no branching partition over {b!r}"))
            continue
        if any(x < 1 for x in part):
            bad.append(("structure", f"branching over {b!r} has nonpositive part"))
        elif sum(part) != data.degree:
            bad.append(("structure", f"branching over {b!r} sums to {sum(part)}, degree is {data.degree}"))
        elif tuple(sorted(part, reverse=True)) != tuple(part):
            bad.append(("structure", f"branching over {b!r} not in canonical order"))

    if bad:
        return ValidationReport(ok=False, fully_marked=False, violations=bad)

    total = sum(data.degree - len(data.branching[b]) for b in data.target_points)
    if total != 2 * data.degree - 2:
        bad.append(("condition1", f"total ramification {total} != 2d-2 = {2 * data.degree - 2}"))

    fully = True
    for b in data.target_points:
        have = Counter(data.branching[b])
        want = Counter(data.ram[a] for a in data.fiber(b))
        if want - have:
            extra = sorted((want - have).elements())
            bad.append(("condition2", f"marked local degrees {extra} over {b!r} do not fit into {data.branching[b]}"))
            fully = False
        elif have != want:
            fully = False

    return ValidationReport(ok=not bad, fully_marked=fully and not bad, violations=bad)


def require_valid(data: BranchingData) -> ValidationReport:
    report = validate_branching(data)
    if not report.ok:
        raise ValueError("invalid branching datum: " + "; ".join(report.messages()))
    return report


def require_portrait(data: BranchingData, min_points: int = 4) -> None:
    """Guard for dynamical operations.

    Three-point portraits validate (the moduli space is a point) but have
    no dynamical content, so operations that need a positive-dimensional
    moduli space insist on at least four points.
    """
    if not data.is_portrait():
        raise ValueError("operation requires a portrait (source and target labels equal and in the same order)")
    if len(data.source_points) < min_points:
        raise ValueError(f"operation requires at least {min_points} marked points, got {len(data.source_points)}")


@dataclass(frozen=True)
class CompletionResult:
    full: BranchingData
    deg_forget: int               # degree of the marking-forgetting cover
    added: tuple[str, ...]        # fresh labels, in the order they were created


def fully_marked_completion(data: BranchingData) -> CompletionResult:
    """Add fresh labels until every preimage cycle is marked.

    Fresh labels are named q1, q2, ... (skipping any names already in use),
    created in target order and, over each target, in decreasing part
    order.  deg_forget is the number of ways the added labels can be
    distributed over the cycles they mark: the product over targets and
    cycle lengths of (number of added labels of that length there)!.
    """
    require_valid(data)
    used = set(data.source_points) | set(data.target_points)
    fresh: list[str] = []
    counter = 1

    def next_label() -> str:
        nonlocal counter
        while f"q{counter}" in used:
            counter += 1
        name = f"q{counter}"
        used.add(name)
        return name

    new_map = dict(data.point_map)
    new_ram = dict(data.ram)
    deg = 1
    for b in data.target_points:
        have = Counter(data.branching[b])
        marked = Counter(data.ram[a] for a in data.fiber(b))
        leftover = have - marked
        for length in sorted(leftover, reverse=True):
            n = leftover[length]
            for _ in range(n):
                q = next_label()
                fresh.append(q)
                new_map[q] = b
                new_ram[q] = length
            fact = 1
            for i in range(2, n + 1):
                fact *= i
            deg *= fact

    full = BranchingData(
        source_points=data.source_points + tuple(fresh),
        target_points=data.target_points,
        degree=data.degree,
        point_map=new_map,
        ram=new_ram,
        branching=dict(data.branching),
    )
    report = validate_branching(full)
    if not report.ok or not report.fully_marked:
        raise AssertionError("completion failed to produce a fully marked datum: " + "; ".join(report.messages()))
    return CompletionResult(full=full, deg_forget=deg, added=tuple(fresh))


def relabel_target(data: BranchingData, sigma: dict[str, str]) -> BranchingData:
    """Precompose the target marking with a permutation sigma of P.

    For a portrait this replaces F by sigma^-1 . F and the branching by
    branching . sigma, leaving local degrees alone.  Composing two
    relabelings multiplies the sigmas right-to-left:
    relabel(relabel(data, s), t) == relabel(data, s . t) where
    (s . t)(x) = s(t(x)).  Choosing sigma(p) = F(p) for a point p of
    maximal local degree makes p a fixed point, so the relabeled portrait
    has polynomiality index at least ram(p).
    """
    require_portrait(data, min_points=3)
    points = set(data.source_points)
    if set(sigma) != points or set(sigma.values()) != points:
        raise ValueError("sigma must be a bijection of the marked points")
    inv = {v: k for k, v in sigma.items()}
    out = BranchingData(
        source_points=data.source_points,
        target_points=data.target_points,
        degree=data.degree,
        point_map={a: inv[data.point_map[a]] for a in data.source_points},
        ram=dict(data.ram),
        branching={b: data.branching[sigma[b]] for b in data.target_points},
    )
    require_valid(out)
    return out
