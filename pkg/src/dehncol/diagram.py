"""PD codes, faces of the underlying projection, and crossing geometry.

Convention: a crossing ``X(e1,e2,e3,e4)`` lists its four edge ends
counterclockwise, starting from the incoming under-strand edge. Position
``i`` of a crossing is the i-th entry of that tuple; the corner (quadrant)
``i`` is the region between positions ``i`` and ``i+1``.

With e1 drawn to the south, e2 east, e3 north and e4 west, quadrant 0 is the
south-east region, 1 north-east, 2 north-west, 3 south-west. The under
strand runs e1 -> e3 and the over strand e2 <-> e4.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

Crossing = Tuple[int, int, int, int]


class PDSyntaxError(ValueError):
    """Malformed PD text."""


class PDValidationError(ValueError):
    """Well-formed PD text that does not describe a knot diagram."""


class TopologyError(ValueError):
    """Rotation data that is not a planar 4-valent projection."""


@dataclass(frozen=True)
class PDCode:
    crossings: Tuple[Crossing, ...]

    def __post_init__(self):
        validate_pd(self.crossings)

    def __len__(self):
        return len(self.crossings)

    def to_text(self) -> str:
        return ";".join("X(%d,%d,%d,%d)" % x for x in self.crossings)

    def to_json(self) -> dict:
        return {"pd": [list(x) for x in self.crossings]}


_TERM = re.compile(r"\s*[;,]?\s*X\s*[\(\[]([^()\[\]]*)[\)\]]\s*", re.IGNORECASE)


def _parse_labels(chunk: str, where: str) -> Crossing:
    parts = [s.strip() for s in chunk.split(",")]
    if len(parts) != 4 or not all(parts):
        raise PDSyntaxError("%s: expected 4 edge labels, got %r" % (where, chunk))
    try:
        labels = tuple(int(s) for s in parts)
    except ValueError:
        raise PDSyntaxError("%s: non-integer edge label in %r" % (where, chunk)) from None
    if any(x <= 0 for x in labels):
        raise PDSyntaxError("%s: edge labels must be positive" % where)
    return labels  # type: ignore[return-value]


def parse_pd_code(text: str, allow_empty: bool = False) -> PDCode:
    """Parse ``X(a,b,c,d);X(...)`` text or its JSON equivalent.

    JSON may be a bare array of 4-arrays or ``{"pd": [[...], ...]}``.
    ``allow_empty`` admits the crossingless unknot (used by knot tables).
    """
    stripped = text.strip()
    if not stripped:
        if allow_empty:
            return PDCode(())
        raise PDSyntaxError("empty PD code")

    if stripped[0] in "[{":
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise PDSyntaxError("invalid JSON PD code: %s" % exc) from None
        if isinstance(data, dict):
            if "pd" not in data:
                raise PDSyntaxError('JSON PD object needs a "pd" key')
            data = data["pd"]
        if not isinstance(data, list):
            raise PDSyntaxError("JSON PD code must be a list of 4-lists")
        crossings = []
        for k, item in enumerate(data):
            if not isinstance(item, list) or len(item) != 4:
                raise PDSyntaxError("crossing %d: expected 4 edge labels" % k)
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in item):
                raise PDSyntaxError("crossing %d: edge labels must be integers" % k)
            if any(x <= 0 for x in item):
                raise PDSyntaxError("crossing %d: edge labels must be positive" % k)
            crossings.append(tuple(item))
        if not crossings and not allow_empty:
            raise PDSyntaxError("empty PD code")
        return PDCode(tuple(crossings))

    # text grammar: terms separated by ';' / ',' / whitespace between terms
    crossings = []
    pos = 0
    body = stripped
    while pos < len(body):
        m = _TERM.match(body, pos)
        if m is None:
            raise PDSyntaxError("malformed PD term at offset %d: %r" % (pos, body[pos:pos + 20]))
        crossings.append(_parse_labels(m.group(1), "crossing %d" % len(crossings)))
        pos = m.end()
        if pos < len(body) and body[pos] == ";":
            pos += 1
    return PDCode(tuple(crossings))


def validate_pd(crossings: Sequence[Crossing]) -> None:
    """Raise PDValidationError unless every label occurs twice and the
    strands form a single closed component."""
    counts: Dict[int, int] = {}
    for x in crossings:
        if len(x) != 4:
            raise PDValidationError("crossing %r does not have 4 edge ends" % (x,))
        for e in x:
            counts[e] = counts.get(e, 0) + 1
    bad = sorted(e for e, n in counts.items() if n != 2)
    if bad:
        raise PDValidationError("edge labels not occurring exactly twice: %s" % bad)
    if not crossings:
        return
    # strand connectivity: e1~e3 (under), e2~e4 (over) at every crossing
    parent = {e: e for e in counts}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for a, b, c, d in crossings:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    roots = {find(e) for e in counts}
    if len(roots) != 1:
        raise PDValidationError("PD code has %d components; only knots are supported" % len(roots))


@dataclass(frozen=True)
class DiagramTopology:
    """Regions of a diagram and how they sit around each crossing.

    ``quadrants[k]`` holds the region ids of quadrants 0..3 of crossing k.
    ``edge_sides[e]`` is (left, right) when walking along edge ``e`` away
    from its first occurrence in the PD code. ``shading[r]`` is 0 (black)
    or 1 (white).
    """

    pd: PDCode
    regions: Tuple[int, ...]
    quadrants: Tuple[Tuple[int, int, int, int], ...]
    edge_sides: Dict[int, Tuple[int, int]] = field(compare=False)
    shading: Tuple[int, ...]

    @property
    def n_crossings(self) -> int:
        return len(self.quadrants)

    @property
    def n_regions(self) -> int:
        return len(self.regions)


@dataclass(frozen=True)
class CrossingCorners:
    crossing: int
    x1: int
    x2: int
    x3: int
    x4: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.x1, self.x2, self.x3, self.x4)


def _edge_ends(pd: PDCode) -> Dict[Tuple[int, int], Tuple[int, int]]:
    where: Dict[int, List[Tuple[int, int]]] = {}
    for k, x in enumerate(pd.crossings):
        for i, e in enumerate(x):
            where.setdefault(e, []).append((k, i))
    other = {}
    for ends in where.values():
        u, v = ends
        other[u] = v
        other[v] = u
    return other


def extract_topology(pd: PDCode) -> DiagramTopology:
    """Trace the faces of the projection from the PD rotation system.

    Leaving crossing k along position i, the face on the left is corner
    (k, i). Arriving at the far end (k', j) of that edge, the same face
    continues through corner (k', j-1). Orbits of this map are the faces.
    """
    c = len(pd.crossings)
    if c == 0:
        return DiagramTopology(pd=pd, regions=(0, 1), quadrants=(), edge_sides={}, shading=(0, 1))

    other = _edge_ends(pd)
    region_of: Dict[Tuple[int, int], int] = {}
    n_faces = 0
    for k in range(c):
        for i in range(4):
            if (k, i) in region_of:
                continue
            corner = (k, i)
            steps = 0
            while corner not in region_of:
                region_of[corner] = n_faces
                kk, j = other[corner]
                corner = (kk, (j - 1) % 4)
                steps += 1
                if steps > 4 * c:
                    raise TopologyError("face traversal did not close up")
            if corner != (k, i):
                raise TopologyError("face traversal did not close up")
            n_faces += 1

    if n_faces != c + 2:
        raise TopologyError(
            "face count %d != crossings + 2 = %d; PD code is not a planar projection" % (n_faces, c + 2)
        )

    quadrants = tuple(tuple(region_of[(k, i)] for i in range(4)) for k in range(c))

    edge_sides: Dict[int, Tuple[int, int]] = {}
    for k, x in enumerate(pd.crossings):
        for i, e in enumerate(x):
            if e not in edge_sides:
                edge_sides[e] = (region_of[(k, i)], region_of[(k, (i - 1) % 4)])

    shading = _checkerboard(n_faces, edge_sides)
    return DiagramTopology(
        pd=pd,
        regions=tuple(range(n_faces)),
        quadrants=quadrants,  # type: ignore[arg-type]
        edge_sides=edge_sides,
        shading=shading,
    )


def _checkerboard(n_faces: int, edge_sides: Dict[int, Tuple[int, int]]) -> Tuple[int, ...]:
    adj: Dict[int, List[int]] = {r: [] for r in range(n_faces)}
    for left, right in edge_sides.values():
        adj[left].append(right)
        adj[right].append(left)
    shade = [-1] * n_faces
    shade[0] = 0
    stack = [0]
    while stack:
        r = stack.pop()
        for s in adj[r]:
            if shade[s] == -1:
                shade[s] = 1 - shade[r]
                stack.append(s)
            elif shade[s] == shade[r]:
                raise TopologyError("regions %d and %d share an edge and a shade" % (r, s))
    if -1 in shade:
        raise TopologyError("region adjacency graph is disconnected")
    return tuple(shade)


def crossing_corners(topo: DiagramTopology, crossing: int) -> CrossingCorners:
    """Corners x1..x4 with x1 = quadrant 0 as the specified region."""
    if not 0 <= crossing < topo.n_crossings:
        raise IndexError("unknown crossing %r" % (crossing,))
    q0, q1, q2, q3 = topo.quadrants[crossing]
    return CrossingCorners(crossing, q0, q3, q1, q2)


# Specified-region choices: quadrant k as x1 gives (x1, x2, x3, x4) quadrant
# indices and the sign of the weight (orientation of (n_o, n_u)).
SPECIFIED_REGION_FRAMES = {
    0: ((0, 3, 1, 2), +1),
    1: ((1, 2, 0, 3), -1),
    2: ((2, 1, 3, 0), +1),
    3: ((3, 0, 2, 1), -1),
}


def corners_from(topo: DiagramTopology, crossing: int, specified: int) -> Tuple[Tuple[int, int, int, int], int]:
    """Regions (x1, x2, x3, x4) and weight sign when quadrant ``specified``
    is the specified region."""
    idx, sign = SPECIFIED_REGION_FRAMES[specified]
    q = topo.quadrants[crossing]
    return tuple(q[i] for i in idx), sign  # type: ignore[return-value]
