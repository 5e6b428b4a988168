"""Crossing weights, weight sums and the cocycle invariants Phi and Phi^NT,
plus the lower/upper bound report for the minimum number of colors."""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Chain2, Gen2, boundary2_chain, normalize_gen2, theta_chain, theta_fn
from .coloring import (
    ColoringSpace,
    NotColorable,
    apply_affine,
    enumerate_colorings,
    is_trivial_by_crossings,
    min_colors_over_diagram,
    solve_coloring_space,
)
from .diagram import DiagramTopology, corners_from

CONVENTION = "pd-ccw-from-incoming-under/q0-specified/v1"
MIRROR_NOTE = "mirror: reading the PD rotation clockwise negates every theta value"

# primes where 0 not in Phi^NT upgrades the bound; 13 and 29 are unconditional
PHI_BOUND_PRIMES = frozenset({7, 11, 19, 23, 31})
UNCONDITIONAL_PLUS3_PRIMES = frozenset({13, 29})


class KernelAssertionError(AssertionError):
    """A weight sum with nonzero boundary: the modules disagree."""


def crossing_weight(
    topo: DiagramTopology, colors: Sequence[int], crossing: int, specified: int = 0
) -> Tuple[Gen2, int]:
    """Raw generator ((a,b),(a,c)) and sign for one crossing.

    ``specified`` picks which quadrant plays x1. Quadrant 0 always gives
    sign +1 in the fixed PD convention.
    """
    (x1, x2, x3, _), sign = corners_from(topo, crossing, specified)
    return (colors[x1], colors[x2], colors[x3]), sign


@dataclass(frozen=True)
class WeightSum:
    chain: Chain2
    terms: Tuple[Tuple[int, Gen2, int], ...]

    def to_json(self) -> dict:
        return {
            "chain": self.chain.to_json(),
            "terms": [{"crossing": k, "gen": list(g), "sign": s} for k, g, s in self.terms],
        }


def weight_sum(topo: DiagramTopology, colors: Sequence[int], p: int, specified: Optional[Sequence[int]] = None) -> WeightSum:
    """W(D,C) in normal form. ``specified[k]`` optionally overrides the
    specified quadrant at crossing k. The boundary is always checked."""
    chain = Chain2()
    terms = []
    for k in range(topo.n_crossings):
        q = 0 if specified is None else specified[k]
        gen, sign = crossing_weight(topo, colors, k, q)
        terms.append((k, gen, sign))
        chain = chain + normalize_gen2(gen, p, sign)
    bd = boundary2_chain(chain, p)
    if not bd.is_zero():
        raise KernelAssertionError("boundary of W(D,C) is %r for coloring %r" % (bd, tuple(colors)))
    return WeightSum(chain, tuple(terms))


def theta_of_coloring(topo: DiagramTopology, colors: Sequence[int], p: int, theta=None) -> int:
    """theta_p(W(D,C)) summed over raw weights (theta factors through the
    normal form, so no normalization is needed here)."""
    th = theta or theta_fn(p)
    total = 0
    for k in range(topo.n_crossings):
        (a, b, c), sign = crossing_weight(topo, colors, k)
        total += sign * th(a, b, c)
    return total % p


@dataclass(frozen=True)
class PhiMultiset:
    p: int
    flavor: str
    counts: Dict[int, int] = field(compare=True)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __contains__(self, value: int) -> bool:
        return self.counts.get(value, 0) > 0

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "flavor": "NT" if self.flavor == "nt" else "all",
            "counts": {str(v): n for v, n in sorted(self.counts.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "PhiMultiset":
        flavor = "nt" if data["flavor"] == "NT" else "all"
        return cls(int(data["p"]), flavor, {int(k): int(v) for k, v in data["counts"].items()})

    def scaled(self, s: int) -> "PhiMultiset":
        return PhiMultiset(self.p, self.flavor, {(s * v) % self.p: n for v, n in self.counts.items()})


def _phi_block(args) -> Counter:
    space, flavor, block, budget = args
    p = space.p
    topo = space.topo
    th = theta_fn(p)
    out: Counter = Counter()
    for col in enumerate_colorings(space, budget, block):
        if flavor == "nt" and is_trivial_by_crossings(topo, col):
            continue
        weight_sum(topo, col, p)
        out[theta_of_coloring(topo, col, p, th)] += 1
    return out


def phi_invariant(
    topo: DiagramTopology,
    p: int,
    flavor: str = "nt",
    space: Optional[ColoringSpace] = None,
    workers: int = 1,
    budget: Optional[int] = None,
) -> PhiMultiset:
    """Multiset of theta_p(W(D,C)) over all (``"all"``) or nontrivial
    (``"nt"``) colorings. ``workers > 1`` splits the enumeration across
    processes by leading coefficient."""
    if flavor not in ("nt", "all"):
        raise ValueError("flavor must be 'nt' or 'all'")
    space = space or solve_coloring_space(topo, p)
    if space.count > (budget or _budget()):
        from .coloring import BudgetExceeded

        raise BudgetExceeded("%d colorings exceed the enumeration budget" % space.count)
    if workers <= 1 or space.dimension == 0:
        counts = _phi_block((space, flavor, None, budget))
    else:
        n = min(workers, p)
        jobs = [(space, flavor, (i, n), budget) for i in range(n)]
        counts = Counter()
        with ProcessPoolExecutor(max_workers=n) as pool:
            for part in pool.map(_phi_block, jobs):
                counts.update(part)
    return PhiMultiset(p, flavor, dict(sorted(counts.items())))


def _budget() -> int:
    from .coloring import enumeration_budget

    return enumeration_budget()


def affine_law_check(topo: DiagramTopology, p: int, colors: Sequence[int], s: int, t: int) -> bool:
    """theta_p(W(D, sC+t)) == s^2 theta_p(W(D, C))."""
    base = theta_of_coloring(topo, colors, p)
    moved = theta_of_coloring(topo, apply_affine(colors, s, t, p), p)
    return moved == (s * s * base) % p


def region_independent(topo: DiagramTopology, colors: Sequence[int], p: int, crossing: int) -> bool:
    """All four specified-region choices give the same element of C_2^SLB."""
    forms = []
    for q in range(4):
        gen, sign = crossing_weight(topo, colors, crossing, q)
        forms.append(normalize_gen2(gen, p, sign))
    return all(f == forms[0] for f in forms[1:])


def log_bound(p: int) -> int:
    return int(math.floor(math.log2(p))) + 2


@dataclass(frozen=True)
class BoundReport:
    p: int
    colorable: bool
    lower: Optional[int]
    lower_tag: Optional[str]
    upper: Optional[int]
    witness: Optional[Tuple[int, ...]]
    zero_in_phi: Optional[bool]
    notes: Tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "colorable": self.colorable,
            "lower": self.lower,
            "lower_tag": self.lower_tag,
            "upper": self.upper,
            "witness": None if self.witness is None else list(self.witness),
            "zero_in_phi_nt": self.zero_in_phi,
            "convention": CONVENTION,
            "notes": list(self.notes),
        }


def mincol_bounds(
    topo: DiagramTopology, p: int, phi_nt: PhiMultiset, space: Optional[ColoringSpace] = None
) -> BoundReport:
    """Lower bound from the theorems that apply at p, upper bound from the
    best coloring of this diagram."""
    if phi_nt.flavor != "nt":
        raise ValueError("bounds need the nontrivial-coloring multiset")
    if phi_nt.total == 0:
        return BoundReport(
            p, False, None, None, None, None, None,
            ("not Dehn %d-colorable on this diagram" % p, MIRROR_NOTE),
        )
    base = log_bound(p)
    zero_in = 0 in phi_nt
    if p in UNCONDITIONAL_PLUS3_PRIMES:
        lower, tag = base + 1, "plus3-p13-29"
    elif p in PHI_BOUND_PRIMES and not zero_in:
        lower, tag = base + 1, "plus3-phi"
    else:
        lower, tag = base, "log-bound"
    space = space or solve_coloring_space(topo, p)
    try:
        upper, witness = min_colors_over_diagram(space)
    except NotColorable:
        upper, witness = None, None
    notes = [MIRROR_NOTE]
    if upper is not None and upper < lower:
        notes.append("inconsistent: diagram palette below the lower bound")
    return BoundReport(p, True, lower, tag, upper, witness, zero_in, tuple(notes))


@dataclass
class WeightsReport:
    p: int
    passed: bool
    checked: Dict[str, int]
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {"p": self.p, "passed": self.passed, "checked": self.checked, "counterexample": self.counterexample}


def verify_weights(topo: DiagramTopology, p: int, budget: Optional[int] = None) -> WeightsReport:
    """Kernel membership, specified-region independence and the affine law
    over every coloring of the diagram."""
    space = solve_coloring_space(topo, p)
    checked = {"kernel": 0, "region_independence": 0, "affine_law": 0, "trivial_zero": 0}
    th = theta_fn(p)
    for col in enumerate_colorings(space, budget):
        try:
            ws = weight_sum(topo, col, p)
        except KernelAssertionError:
            return WeightsReport(p, False, checked, {"check": "kernel", "coloring": list(col)})
        checked["kernel"] += 1
        for k in range(topo.n_crossings):
            if not region_independent(topo, col, p, k):
                return WeightsReport(p, False, checked, {"check": "region", "coloring": list(col), "crossing": k})
        checked["region_independence"] += 1
        value = theta_of_coloring(topo, col, p, th)
        if theta_chain(ws.chain, p, th) != value:
            return WeightsReport(p, False, checked, {"check": "normal_form_theta", "coloring": list(col)})
        if is_trivial_by_crossings(topo, col):
            if value:
                return WeightsReport(p, False, checked, {"check": "trivial_zero", "coloring": list(col)})
            checked["trivial_zero"] += 1
            continue
        for s in range(1, p):
            for t in range(p):
                moved = theta_of_coloring(topo, apply_affine(col, s, t, p), p, th)
                if moved != (s * s * value) % p:
                    return WeightsReport(
                        p, False, checked, {"check": "affine", "coloring": list(col), "s": s, "t": t}
                    )
                checked["affine_law"] += 1
    return WeightsReport(p, True, checked)
