r"""Dynamical invariants of portraits and certified degree bounds.

The polynomiality index of a portrait is the largest geometric mean of
local degrees around a cycle of F: max over cycles of
(prod ram)^(1/length), an exact algebraic number of the form m^(1/l).
It is 1 exactly when no critical point is periodic, and equals the
degree exactly when the map or its square is a topological polynomial
(two fully ramified points is the Riemann-Hurwitz maximum, so a cycle of
fully ramified points has length at most 2).

Writing R for the index, n for the number of marked points, T0 for the
degree of the branch-configuration map and Ttop for the degree of the
source-configuration map, the dynamical degrees T_k of the induced
self-correspondence of moduli space satisfy

    T_0 >= R T_1 >= R^2 T_2 >= ... >= R^(n-3) T_{n-3},

which pins T_k inside [Ttop * R^(n-3-k),  T0 * R^(-k)].  Intermediate
degrees are reported only as such intervals, never as point values.

When the portrait has a periodic fully ramified point (condition 1
below, with minimal such cycle length l0) and every other critical point
is periodic or there is exactly one other critical point (condition 2),
the inverse correspondence is single valued, its degrees are read off by
reversing the table, and on a log scale the degree sequence of the
inverse lies in the band  (k/l0) log d <= log T_k <= k log d,  with
Lyapunov exponent of the maximal measure at least (1/(2 l0)) log d and
topological entropy at most log T_0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Context
from fractions import Fraction

from .core import BranchingData, ModelViolationError, require_portrait, require_valid


def format_significant(x: float, digits: int = 12) -> str:
    """Decimal rendering with exactly the given significant digits (zero as 0)."""
    if x == 0:
        return "0"
    return str(Context(prec=digits).create_decimal(repr(x)))


def integer_nth_root(n: int, k: int) -> int:
    """Largest r with r**k <= n, by Newton iteration on exact integers."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n in (0, 1) or k == 1:
        return n
    r = 1 << ((n.bit_length() + k - 1) // k)  # upper seed
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r ** k > n:
        r -= 1
    return r


class RootValue:
    """Exact m^(1/l), stored reduced: m is no perfect q-th power for primes q | l."""

    __slots__ = ("radicand", "index")

    def __init__(self, radicand: int, index: int = 1):
        if radicand < 1 or index < 1:
            raise ValueError("need radicand >= 1 and index >= 1")
        self.radicand, self.index = _reduce_root(radicand, index)

    def __repr__(self):
        return f"RootValue({self.radicand}, {self.index})"

    def render(self) -> str:
        return f"{self.radicand}^(1/{self.index})"

    def __float__(self):
        return self.radicand ** (1.0 / self.index)

    def __eq__(self, other):
        other = _as_root(other)
        return (self.radicand, self.index) == (other.radicand, other.index)

    def __hash__(self):
        return hash((self.radicand, self.index))

    def __lt__(self, other):
        other = _as_root(other)
        return self.radicand ** other.index < other.radicand ** self.index

    def __le__(self, other):
        other = _as_root(other)
        return self.radicand ** other.index <= other.radicand ** self.index

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __mul__(self, other):
        other = _as_root(other)
        l = math.lcm(self.index, other.index)
        return RootValue(
            self.radicand ** (l // self.index) * other.radicand ** (l // other.index), l
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("RootValue powers are nonnegative")
        if e == 0:
            return RootValue(1)
        return RootValue(self.radicand ** e, self.index)

    @property
    def is_one(self) -> bool:
        return self.radicand == 1


def _reduce_root(m: int, l: int) -> tuple[int, int]:
    if m == 1:
        return 1, 1
    q = 2
    while q <= l:
        while l % q == 0:
            r = integer_nth_root(m, q)
            if r ** q == m:
                m, l = r, l // q
            else:
                break
        # advance to the next prime factor of l
        q += 1 if q == 2 else 2
    return m, l


def _as_root(x) -> RootValue:
    if isinstance(x, RootValue):
        return x
    if isinstance(x, int):
        return RootValue(x)
    raise TypeError(f"cannot interpret {x!r} as a root value")


def compare_roots(x: RootValue, y: RootValue) -> int:
    """-1, 0, or 1 as x is less than, equal to, or greater than y."""
    if x < y:
        return -1
    return 1 if y < x else 0


# ---------------------------------------------------------------------------
# portrait cycle analysis


NO_PERIODIC_CRITICAL = "no-periodic-critical"
TOPOLOGICAL_POLYNOMIAL = "topological-polynomial-like"
INTERMEDIATE = "intermediate"


@dataclass(frozen=True)
class CycleInfo:
    points: tuple[str, ...]
    length: int
    ram_product: int


@dataclass(frozen=True)
class PortraitCycleReport:
    degree: int
    cycles: tuple[CycleInfo, ...]
    index: RootValue              # the polynomiality index
    ell0: int | None              # least cycle length through a fully ramified point
    classification: str


def map_cycles(points, point_map) -> list[tuple[str, ...]]:
    """Cycles of the functional graph of point_map, in first-point order."""
    periodic: set[str] = set()
    for p in points:
        seen = []
        seen_set = set()
        x = p
        while x not in seen_set:
            seen.append(x)
            seen_set.add(x)
            x = point_map[x]
        if x in seen_set:
            periodic.update(seen[seen.index(x):])
    out = []
    done: set[str] = set()
    for p in points:
        if p in periodic and p not in done:
            cyc = [p]
            x = point_map[p]
            while x != p:
                cyc.append(x)
                x = point_map[x]
            done.update(cyc)
            out.append(tuple(cyc))
    return out


def polynomiality_from_maps(points, point_map, ram, degree: int) -> PortraitCycleReport:
    infos = []
    for cyc in map_cycles(points, point_map):
        prod = 1
        for p in cyc:
            prod *= ram[p]
        infos.append(CycleInfo(points=cyc, length=len(cyc), ram_product=prod))
    index = RootValue(1)
    for info in infos:
        cand = RootValue(info.ram_product, info.length)
        if cand > index:
            index = cand
    ells = [info.length for info in infos if any(ram[p] == degree for p in info.points)]
    ell0 = min(ells) if ells and degree > 1 else None
    if index.is_one:
        kind = NO_PERIODIC_CRITICAL
    elif index == RootValue(degree):
        kind = TOPOLOGICAL_POLYNOMIAL
    else:
        kind = INTERMEDIATE
    return PortraitCycleReport(degree=degree, cycles=tuple(infos), index=index, ell0=ell0, classification=kind)


def polynomiality_index(data: BranchingData) -> PortraitCycleReport:
    """Cycle analysis of a portrait with at least four points."""
    require_valid(data)
    require_portrait(data)
    return polynomiality_from_maps(data.source_points, data.point_map, data.ram, data.degree)


def iterated_dynamics(points, point_map, ram, n: int):
    """(F^n, local degrees of the n-th iterate along orbits)."""
    if n < 1:
        raise ValueError("need n >= 1")
    map_n = {}
    ram_n = {}
    for p in points:
        x = p
        r = 1
        for _ in range(n):
            r *= ram[x]
            x = point_map[x]
        map_n[p] = x
        ram_n[p] = r
    return map_n, ram_n


# ---------------------------------------------------------------------------
# bound tables


@dataclass(frozen=True)
class BoundValue:
    """Exact coeff * root^exponent with integer coeff >= 0 and integer exponent."""

    coeff: int
    root: RootValue
    exponent: int

    def _pair(self, other: "BoundValue") -> tuple[int, int]:
        if self.root != other.root:
            raise ValueError("bound values compare only over a common root")
        l = self.root.index
        m = self.root.radicand
        shift = min(self.exponent, other.exponent)
        a = self.coeff ** l * m ** (self.exponent - shift)
        b = other.coeff ** l * m ** (other.exponent - shift)
        return a, b

    def __le__(self, other):
        a, b = self._pair(other)
        return a <= b

    def __lt__(self, other):
        a, b = self._pair(other)
        return a < b

    def __eq__(self, other):
        if not isinstance(other, BoundValue):
            return NotImplemented
        a, b = self._pair(other)
        return a == b

    def __hash__(self):
        raise TypeError("unhashable")

    def as_fraction(self) -> Fraction | None:
        """Exact rational value, or None when irrational."""
        if self.coeff == 0:
            return Fraction(0)
        l, m, e = self.root.index, self.root.radicand, self.exponent
        if m == 1:
            return Fraction(self.coeff)
        if e % l == 0:
            return Fraction(self.coeff) * Fraction(m) ** (e // l)
        return None

    def render(self) -> str:
        f = self.as_fraction()
        if f is not None:
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        l, m, e = self.root.index, self.root.radicand, self.exponent
        g = math.gcd(abs(e), l)
        er, lr = e // g, l // g
        power = f"{m}^({er}/{lr})"
        return power if self.coeff == 1 else f"{self.coeff}*{power}"

    def log_float(self) -> float:
        if self.coeff == 0:
            return float("-inf")
        return math.log(self.coeff) + self.exponent / self.root.index * math.log(self.root.radicand)


@dataclass(frozen=True)
class BoundRow:
    k: int
    lower: BoundValue
    upper: BoundValue
    pinned: bool


@dataclass(frozen=True)
class DegreeBoundTable:
    n_points: int
    root: RootValue
    rows: tuple[BoundRow, ...]
    strict_decrease: bool
    theta0: int
    theta_top: int | None


def degree_bounds(theta0: int, theta_top: int | None, root: RootValue, n_points: int) -> DegreeBoundTable:
    """Certified interval bounds for every dynamical degree.

    theta_top may be None (unknown), in which case the safe lower bound
    1 is used and the top row is not pinned.  A supplied theta_top with
    theta0 < root^(n-3) * theta_top contradicts the degree chain and
    raises ModelViolationError.
    """
    if n_points < 4:
        raise ValueError("bound tables need at least four marked points")
    if theta0 < 1 or (theta_top is not None and theta_top < 0):
        raise ValueError("degrees must be nonnegative (theta0 positive)")
    top = n_points - 3
    if theta_top is not None and theta_top >= 1:
        lhs = BoundValue(theta_top, root, top)
        rhs = BoundValue(theta0, root, 0)
        if not lhs <= rhs:
            raise ModelViolationError(
                f"chain violated: theta_top*R^{top} = {lhs.render()} exceeds theta0 = {theta0}"
            )
    eff = theta_top if (theta_top is not None and theta_top >= 1) else 1
    rows = []
    for k in range(top + 1):
        lower = BoundValue(eff, root, top - k)
        upper = BoundValue(theta0, root, -k)
        pinned = False
        if k == 0:
            # the 0-th degree is theta0 itself, not just chain-bounded
            lower = BoundValue(theta0, root, 0)
            pinned = True
        if k == top and theta_top is not None:
            lower = BoundValue(theta_top, root, 0)
            upper = lower
            pinned = True
        rows.append(BoundRow(k=k, lower=lower, upper=upper, pinned=pinned))
    return DegreeBoundTable(
        n_points=n_points,
        root=root,
        rows=tuple(rows),
        strict_decrease=not root.is_one,
        theta0=theta0,
        theta_top=theta_top,
    )


def inverse_table(table: DegreeBoundTable) -> DegreeBoundTable:
    """Bounds for the inverse correspondence: the k-th degree of the inverse
    is the (n-3-k)-th degree of the forward correspondence."""
    top = table.n_points - 3
    rows = tuple(
        BoundRow(k=top - row.k, lower=row.lower, upper=row.upper, pinned=row.pinned)
        for row in reversed(table.rows)
    )
    return DegreeBoundTable(
        n_points=table.n_points,
        root=table.root,
        rows=rows,
        strict_decrease=table.strict_decrease,
        theta0=table.theta_top if table.theta_top is not None else table.theta0,
        theta_top=table.theta0,
    )


# ---------------------------------------------------------------------------
# single-valued inverse: log band, Lyapunov and entropy notes


@dataclass(frozen=True)
class ConditionsReport:
    """The two hypotheses for a single-valued inverse.

    condition 1: some periodic point is fully ramified; ell0 is the least
    length of such a cycle.  condition 2: every other critical point is
    periodic, or there is exactly one other critical point.
    """

    kc1: bool
    kc2: bool
    ell0: int | None
    critical_count: int
    details: tuple[str, ...]

    @property
    def holds(self) -> bool:
        return self.kc1 and self.kc2


def single_valued_conditions(data: BranchingData) -> ConditionsReport:
    require_valid(data)
    require_portrait(data)
    d = data.degree
    notes = []
    report = polynomiality_from_maps(data.source_points, data.point_map, data.ram, d)
    full_cycles = [c for c in report.cycles if any(data.ram[p] == d for p in c.points)]
    kc1 = bool(full_cycles) and d > 1
    ell0 = min(c.length for c in full_cycles) if kc1 else None
    if kc1:
        notes.append(f"fully ramified periodic point with cycle length {ell0}")
    else:
        notes.append("no fully ramified periodic point")

    critical_count = sum(
        sum(1 for part in data.branching[b] if part >= 2) for b in data.target_points
    )
    marked_critical = [a for a in data.source_points if data.ram[a] >= 2]
    unmarked_critical = critical_count - len(marked_critical)
    periodic_points = {p for c in report.cycles for p in c.points}
    all_marked_periodic = all(a in periodic_points for a in marked_critical)
    option_a = unmarked_critical == 0 and all_marked_periodic
    option_b = critical_count == 2
    kc2 = kc1 and (option_a or option_b)
    if option_a:
        notes.append("every critical point is periodic")
    if option_b:
        notes.append("exactly one other critical point")
    if not (option_a or option_b):
        notes.append(f"{critical_count} critical points, not all periodic")
    return ConditionsReport(
        kc1=kc1, kc2=kc2, ell0=ell0, critical_count=critical_count, details=tuple(notes)
    )


@dataclass(frozen=True)
class BandRow:
    k: int
    lower: Fraction   # multiple of log d
    upper: Fraction


@dataclass(frozen=True)
class BandReport:
    degree: int
    n_points: int
    ell0: int
    rows: tuple[BandRow, ...]
    lyapunov_lower: Fraction      # multiple of log d
    entropy_note: str

    def csv_lines(self) -> list[str]:
        logd = math.log(self.degree)
        lines = [
            f"# d={self.degree} ell0={self.ell0} nP={self.n_points}",
            "k,lower_log,upper_log",
        ]
        for row in self.rows:
            lo = format_significant(float(row.lower) * logd)
            hi = format_significant(float(row.upper) * logd)
            lines.append(f"{row.k},{lo},{hi}")
        return lines


def single_valued_band(degree: int, n_points: int, ell0: int) -> BandReport:
    """Log-scale band for the degree sequence of the single-valued inverse.

    The caller asserts the two conditions hold; use single_valued_conditions
    to verify them from a portrait.
    """
    if degree < 2:
        raise ValueError("the band needs degree at least 2")
    if n_points < 4:
        raise ValueError("the band needs at least four marked points")
    if ell0 < 1:
        raise ValueError("cycle length ell0 must be positive")
    # one row per dynamical degree: k = 0 .. n-3
    rows = tuple(
        BandRow(k=k, lower=Fraction(k, ell0), upper=Fraction(k)) for k in range(n_points - 2)
    )
    return BandReport(
        degree=degree,
        n_points=n_points,
        ell0=ell0,
        rows=rows,
        lyapunov_lower=Fraction(1, 2 * ell0),
        entropy_note="topological entropy is at most log theta_0",
    )


def iterate_counts(theta0: int, theta_top: int, n_max: int) -> list[tuple[int, int, int]]:
    """Endpoint degrees of the n-fold composite, exact for all n."""
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    out = []
    for n in range(1, n_max + 1):
        a, b = theta0 ** n, theta_top ** n
        if theta0 > 0 and integer_nth_root(a, n) != theta0:
            raise AssertionError("integer root sanity check failed")
        out.append((n, a, b))
    return out
