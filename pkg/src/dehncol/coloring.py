"""Dehn p-colorings: the linear system, its solution space, enumeration,
triviality, affine equivalence and palettes."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .diagram import DiagramTopology, crossing_corners
from .linalg import nullspace_mod_p, rank_mod_p

DEFAULT_BUDGET = 10 ** 8
BUDGET_ENV = "DEHNCOL_BUDGET"

Coloring = Tuple[int, ...]


class BudgetExceeded(RuntimeError):
    pass


class NotColorable(ValueError):
    """The diagram has no nontrivial Dehn p-coloring."""


def is_odd_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        return False
    return all(p % q for q in range(3, int(p ** 0.5) + 1, 2))


def require_odd_prime(p: int) -> None:
    if not is_odd_prime(p):
        raise ValueError("p must be an odd prime, got %r" % (p,))


def enumeration_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class DehnColoring:
    p: int
    colors: Coloring

    def __getitem__(self, region: int) -> int:
        return self.colors[region]

    def to_json(self) -> List[int]:
        return list(self.colors)


@dataclass(frozen=True)
class ColorPalette:
    p: int
    elements: Tuple[int, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("palette must be nonempty")
        if any(not 0 <= x < self.p for x in self.elements):
            raise ValueError("palette entries must be residues 0..p-1")

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class ColoringSpace:
    topo: DiagramTopology
    p: int
    basis: Tuple[Coloring, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def count(self) -> int:
        return self.p ** self.dimension


def build_constraints(topo: DiagramTopology, p: int) -> List[List[int]]:
    """One row per crossing: +1 at x1, x3 and -1 at x2, x4 (mod p)."""
    rows = []
    for k in range(topo.n_crossings):
        cc = crossing_corners(topo, k)
        row = [0] * topo.n_regions
        for r, s in ((cc.x1, 1), (cc.x3, 1), (cc.x2, -1), (cc.x4, -1)):
            row[r] += s
        rows.append([x % p for x in row])
    return rows


def solve_coloring_space(topo: DiagramTopology, p: int) -> ColoringSpace:
    require_odd_prime(p)
    rows = build_constraints(topo, p)
    basis = nullspace_mod_p(rows, topo.n_regions, p)
    return ColoringSpace(topo, p, tuple(tuple(v) for v in basis))


def satisfies_constraints(topo: DiagramTopology, colors: Sequence[int], p: int) -> bool:
    for k in range(topo.n_crossings):
        cc = crossing_corners(topo, k)
        if (colors[cc.x1] + colors[cc.x3] - colors[cc.x2] - colors[cc.x4]) % p:
            return False
    return True


def enumerate_colorings(
    space: ColoringSpace, budget: Optional[int] = None, block: Optional[Tuple[int, int]] = None
) -> Iterator[Coloring]:
    """Stream every coloring in the space, in coefficient-vector order.

    ``block=(i, n)`` restricts to the colorings whose leading coefficient
    is congruent to i mod n, so n workers can split one enumeration.
    """
    limit = enumeration_budget() if budget is None else budget
    if space.count > limit:
        raise BudgetExceeded("%d colorings exceed the enumeration budget %d" % (space.count, limit))
    p = space.p
    n = space.topo.n_regions
    basis = space.basis
    if not basis:
        yield (0,) * n
        return
    lead_range = range(p)
    if block is not None:
        i, nb = block
        lead_range = range(i, p, nb)
    for lead in lead_range:
        for rest in itertools.product(range(p), repeat=len(basis) - 1):
            coeffs = (lead,) + rest
            yield tuple(sum(c * v[r] for c, v in zip(coeffs, basis)) % p for r in range(n))


def is_trivial_by_crossings(topo: DiagramTopology, colors: Sequence[int]) -> bool:
    for k in range(topo.n_crossings):
        cc = crossing_corners(topo, k)
        if colors[cc.x1] != colors[cc.x4] or colors[cc.x2] != colors[cc.x3]:
            return False
    return True


def is_trivial_by_shading(topo: DiagramTopology, colors: Sequence[int]) -> bool:
    """Monochromatic or a checkerboard coloring (constant on each shade)."""
    seen: Dict[int, int] = {}
    for r, shade in enumerate(topo.shading):
        if seen.setdefault(shade, colors[r]) != colors[r]:
            return False
    return True


def classify_coloring(topo: DiagramTopology, coloring: Sequence[int]) -> str:
    colors = coloring.colors if isinstance(coloring, DehnColoring) else coloring
    by_crossing = is_trivial_by_crossings(topo, colors)
    by_shading = is_trivial_by_shading(topo, colors)
    assert by_crossing == by_shading, "triviality characterizations disagree"
    return "trivial" if by_crossing else "nontrivial"


def apply_affine(colors: Sequence[int], s: int, t: int, p: int) -> Coloring:
    if s % p == 0:
        raise ValueError("s must be a unit mod p")
    return tuple((s * x + t) % p for x in colors)


def palette_of(colors: Sequence[int], p: int) -> ColorPalette:
    return ColorPalette(p, tuple(sorted(set(colors))))


def nontrivial_colorings(space: ColoringSpace, budget: Optional[int] = None) -> Iterator[Coloring]:
    topo = space.topo
    for col in enumerate_colorings(space, budget):
        if not is_trivial_by_crossings(topo, col):
            yield col


def affine_orbit_min(colors: Sequence[int], p: int) -> Coloring:
    return min(apply_affine(colors, s, t, p) for s in range(1, p) for t in range(p))


def coloring_affine_classes(space: ColoringSpace, budget: Optional[int] = None) -> List[List[Coloring]]:
    """Partition nontrivial colorings into orbits of C -> sC + t.

    Classes are sorted by representative (the lexicographically least
    member); members within a class are sorted too.
    """
    p = space.p
    remaining = set(nontrivial_colorings(space, budget))
    classes = []
    while remaining:
        seed = min(remaining)
        orbit = {apply_affine(seed, s, t, p) for s in range(1, p) for t in range(p)}
        remaining -= orbit
        classes.append(sorted(orbit))
    classes.sort(key=lambda cls: cls[0])
    return classes


def min_colors_over_diagram(space: ColoringSpace, budget: Optional[int] = None) -> Tuple[int, Coloring]:
    """Smallest palette among nontrivial colorings of this diagram, with a
    witness (the first coloring attaining it in enumeration order)."""
    best: Optional[Tuple[int, Coloring]] = None
    for col in nontrivial_colorings(space, budget):
        k = len(set(col))
        if best is None or k < best[0]:
            best = (k, col)
    if best is None:
        raise NotColorable("no nontrivial Dehn %d-coloring on this diagram" % space.p)
    return best


def coloring_counts(space: ColoringSpace, budget: Optional[int] = None) -> Dict[str, int]:
    trivial = nontrivial = 0
    for col in enumerate_colorings(space, budget):
        if is_trivial_by_crossings(space.topo, col):
            trivial += 1
        else:
            nontrivial += 1
    return {"total": trivial + nontrivial, "trivial": trivial, "nontrivial": nontrivial}


def constraint_rank(topo: DiagramTopology, p: int) -> int:
    return rank_mod_p(build_constraints(topo, p), topo.n_regions, p)
