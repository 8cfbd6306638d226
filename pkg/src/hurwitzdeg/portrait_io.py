r"""Line-oriented text format for portraits.

A portrait file is UTF-8, one section per line, `#` starts a comment:

    degree=2
    points=inf,0,c1,c2
    map=inf->inf,0->c1,c1->c2,c2->0
    ram=inf:2,0:2,c1:1,c2:1
    branch=inf:(2),0:(1,1),c1:(2),c2:(1,1)

The points line fixes the label order used everywhere downstream.
Sections may appear in any order in input; canonical output writes them
in the order above, entries in points order, with no spaces.  Parsing a
canonical print returns the identical datum, and printing a parsed
canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import re

from .core import BranchingData, make_partition

_LABEL = re.compile(r"[A-Za-z0-9_]+\Z")
_SECTIONS = ("degree", "points", "map", "ram", "branch")


class PortraitParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _check_label(s: str, line: int, col: int) -> str:
    if not _LABEL.match(s):
        raise PortraitParseError(f"bad label {s!r}", line, col)
    return s


def parse_portrait(text: str) -> BranchingData:
    """Parse portrait text into a branching datum with A == B.

    Raises PortraitParseError with 1-based line and column on the first
    syntactic problem.  Semantic problems (bad counts, unknown labels in
    later sections) are also reported with the position of the offending
    token.  The result is not validated against conditions 1 and 2; run
    validate_branching for that.
    """
    sections: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise PortraitParseError("expected key=value", lineno, raw.index(stripped[0]) + 1)
        key, value = stripped.split("=", 1)
        key = key.strip()
        if key not in _SECTIONS:
            raise PortraitParseError(f"unknown section {key!r}", lineno, 1)
        if key in sections:
            raise PortraitParseError(f"duplicate section {key!r}", lineno, 1)
        sections[key] = (value.strip(), lineno, raw.index("=") + 2)

    for key in _SECTIONS:
        if key not in sections:
            raise PortraitParseError(f"missing section {key!r}", len(text.splitlines()) + 1, 1)

    value, line, col = sections["degree"]
    if not value.isdigit() or int(value) < 1:
        raise PortraitParseError(f"degree must be a positive integer, got {value!r}", line, col)
    degree = int(value)

    value, line, col = sections["points"]
    points = tuple(_check_label(tok.strip(), line, col) for tok in value.split(","))
    if len(set(points)) != len(points):
        raise PortraitParseError("repeated point label", line, col)
    point_set = set(points)

    value, line, col = sections["map"]
    point_map: dict[str, str] = {}
    for tok in value.split(","):
        tok = tok.strip()
        if "->" not in tok:
            raise PortraitParseError(f"map entry {tok!r} needs the form a->b", line, col)
        a, b = (s.strip() for s in tok.split("->", 1))
        for lab in (a, b):
            if lab not in point_set:
                raise PortraitParseError(f"map mentions unknown point {lab!r}", line, col)
        if a in point_map:
            raise PortraitParseError(f"map defined twice at {a!r}", line, col)
        point_map[a] = b
    if set(point_map) != point_set:
        missing = sorted(point_set - set(point_map))
        raise PortraitParseError(f"map undefined at {missing}", line, col)

    value, line, col = sections["ram"]
    ram: dict[str, int] = {}
    for tok in value.split(","):
        tok = tok.strip()
        if ":" not in tok:
            raise PortraitParseError(f"ram entry {tok!r} needs the form a:k", line, col)
        a, k = (s.strip() for s in tok.split(":", 1))
        if a not in point_set:
            raise PortraitParseError(f"ram mentions unknown point {a!r}", line, col)
        if a in ram:
            raise PortraitParseError(f"ram defined twice at {a!r}", line, col)
        if not k.isdigit() or int(k) < 1:
            raise PortraitParseError(f"ram at {a!r} must be a positive integer, got {k!r}", line, col)
        ram[a] = int(k)
    if set(ram) != point_set:
        missing = sorted(point_set - set(ram))
        raise PortraitParseError(f"ram undefined at {missing}", line, col)

    value, line, col = sections["branch"]
    branching: dict[str, tuple[int, ...]] = {}
    for tok in _split_branch_entries(value, line, col):
        m = re.match(r"\A([A-Za-z0-9_]+):\(([0-9, ]*)\)\Z", tok)
        if not m:
            raise PortraitParseError(f"branch entry {tok!r} needs the form b:(k1,k2,...)", line, col)
        b, parts_text = m.group(1), m.group(2)
        if b not in point_set:
            raise PortraitParseError(f"branch mentions unknown point {b!r}", line, col)
        if b in branching:
            raise PortraitParseError(f"branch defined twice at {b!r}", line, col)
        try:
            parts = [int(s) for s in parts_text.split(",") if s.strip()]
            branching[b] = make_partition(parts)
        except ValueError as exc:
            raise PortraitParseError(f"branch over {b!r}: {exc}", line, col) from exc
        if not branching[b]:
            raise PortraitParseError(f"branch over {b!r} is empty", line, col)
    if set(branching) != point_set:
        missing = sorted(point_set - set(branching))
        raise PortraitParseError(f"branch undefined at {missing}", line, col)

    return BranchingData(
        source_points=points,
        target_points=points,
        degree=degree,
        point_map=point_map,
        ram=ram,
        branching=branching,
    )


def _split_branch_entries(value: str, line: int, col: int) -> list[str]:
    # commas inside (...) separate parts, commas outside separate entries
    out, depth, cur = [], 0, []
    for ch in value:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise PortraitParseError("unbalanced parenthesis", line, col)
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise PortraitParseError("unbalanced parenthesis", line, col)
    out.append("".join(cur).strip())
    return [tok for tok in out if tok]


def print_portrait(data: BranchingData) -> str:
    """Canonical text for a portrait: fixed section order, points order, no spaces."""
    if not data.is_portrait():
        raise ValueError("only portraits (A == B) have a text form")
    points = data.source_points
    lines = [
        f"degree={data.degree}",
        "points=" + ",".join(points),
        "map=" + ",".join(f"{a}->{data.point_map[a]}" for a in points),
        "ram=" + ",".join(f"{a}:{data.ram[a]}" for a in points),
        "branch=" + ",".join(f"{b}:({','.join(str(k) for k in data.branching[b])})" for b in points),
    ]
    return "\n".join(lines) + "\n"
