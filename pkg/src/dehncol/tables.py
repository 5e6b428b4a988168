"""Knot tables: a small built-in table plus CSV/JSON loaders."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Union

from .diagram import (
    PDCode,
    PDSyntaxError,
    PDValidationError,
    TopologyError,
    crossing_corners,
    extract_topology,
    parse_pd_code,
)
from .linalg import bareiss_det


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class KnotTableEntry:
    name: str
    pd: PDCode
    crossings: Optional[int] = None
    determinant: Optional[int] = None
    metadata: Dict[str, str] = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {"name": self.name, "pd": self.pd.to_text()}
        if self.crossings is not None:
            out["crossings"] = self.crossings
        if self.determinant is not None:
            out["determinant"] = self.determinant
        return out


# PD codes in the incoming-under, counterclockwise convention
_BUILTIN_ROWS = [
    ("unknot", "", 0, 1),
    ("trefoil", "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)", 3, 3),
    ("4_1", "X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)", 4, 5),
    ("5_1", "X(1,6,2,7);X(3,8,4,9);X(5,10,6,1);X(7,2,8,3);X(9,4,10,5)", 5, 5),
    ("5_2", "X(1,4,2,5);X(3,8,4,9);X(5,10,6,1);X(9,6,10,7);X(7,2,8,3)", 5, 7),
]

ALIASES = {"3_1": "trefoil", "0_1": "unknot"}


def knot_determinant(pd: PDCode) -> int:
    """|det| of the Dehn coloring matrix with the columns of two regions
    on either side of one edge removed."""
    topo = extract_topology(pd)
    if topo.n_crossings == 0:
        return 1
    rows = []
    for k in range(topo.n_crossings):
        x1, x2, x3, x4 = crossing_corners(topo, k).as_tuple()
        row = [0] * topo.n_regions
        for r, s in ((x1, 1), (x3, 1), (x2, -1), (x4, -1)):
            row[r] += s
        rows.append(row)
    left, right = next(iter(topo.edge_sides.values()))
    keep = [r for r in topo.regions if r not in (left, right)]
    minor = [[row[r] for r in keep] for row in rows]
    return abs(bareiss_det(minor))


def _entry(name: str, pd_text: str, crossings=None, determinant=None, where: str = "") -> KnotTableEntry:
    try:
        pd = parse_pd_code(pd_text, allow_empty=True)
        extract_topology(pd)
    except (PDSyntaxError, PDValidationError, TopologyError) as exc:
        raise TableError("%s%s: %s" % (where, name, exc)) from None
    if crossings is not None and int(crossings) != len(pd):
        raise TableError("%s%s: crossing count %s does not match PD code (%d)" % (where, name, crossings, len(pd)))
    if determinant is not None:
        det = knot_determinant(pd)
        if det != int(determinant):
            raise TableError("%s%s: determinant %s does not match PD code (%d)" % (where, name, determinant, det))
    return KnotTableEntry(
        name,
        pd,
        None if crossings is None else int(crossings),
        None if determinant is None else int(determinant),
    )


def builtin_table() -> List[KnotTableEntry]:
    return [_entry(n, pd, c, d, "built-in ") for n, pd, c, d in _BUILTIN_ROWS]


def _check_unique(entries: List[KnotTableEntry]) -> List[KnotTableEntry]:
    seen = set()
    for e in entries:
        if e.name in seen:
            raise TableError("duplicate knot name %r" % e.name)
        seen.add(e.name)
    return entries


def parse_csv_table(text: str) -> List[KnotTableEntry]:
    """CSV with a header containing at least ``name,pd``; optional
    ``crossings`` and ``determinant`` columns are cross-checked."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not {"name", "pd"} <= set(reader.fieldnames):
        raise TableError("line 1: CSV header must contain name,pd")
    entries = []
    seen: Dict[str, int] = {}
    for row in reader:
        line = reader.line_num
        name = (row.get("name") or "").strip()
        if not name:
            raise TableError("line %d: missing name" % line)
        if name in seen:
            raise TableError("line %d: duplicate knot name %r (first on line %d)" % (line, name, seen[name]))
        seen[name] = line
        entries.append(
            _entry(
                name,
                row.get("pd") or "",
                row.get("crossings") or None,
                row.get("determinant") or None,
                "line %d: " % line,
            )
        )
    return entries


def parse_json_table(text: str) -> List[KnotTableEntry]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableError("line %d: invalid JSON: %s" % (exc.lineno, exc.msg)) from None
    if isinstance(data, dict):
        data = data.get("knots", [])
    entries = []
    for k, item in enumerate(data):
        pd = item.get("pd", "")
        if isinstance(pd, list):
            pd = json.dumps(pd)
        entries.append(_entry(item["name"], pd, item.get("crossings"), item.get("determinant"), "entry %d: " % k))
    return _check_unique(entries)


def load_knot_table(path: Union[str, Path]) -> List[KnotTableEntry]:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return parse_json_table(text)
    return parse_csv_table(text)


def lookup(name: str, table: Optional[List[KnotTableEntry]] = None) -> KnotTableEntry:
    entries = builtin_table() if table is None else table
    wanted = ALIASES.get(name, name)
    for e in entries:
        if e.name == wanted:
            return e
    raise KeyError("unknown knot %r" % name)
