"""Palette analysis: for a color set S, solve the free part of
boundary(W) = 0 over the S-supported weight generators and test whether
theta_p vanishes on every solution."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import Gen2, boundary2, is_canonical_free, theta_fn, tribracket
from .coloring import BudgetExceeded, is_odd_prime, require_odd_prime
from .linalg import integer_kernel, mat_vec

Palette = Tuple[int, ...]

MAX_FREE_GENERATORS = 1000

# hypothesis route of the theta-based bound applies only at these primes
HYPOTHESIS_ROUTE_PRIMES = frozenset({7, 11, 19, 23, 31})

_CANDIDATES: Dict[int, List[Palette]] = {
    3: [(0, 1, 2)],
    5: [(0, 1, 2, 3)],
    7: [(0, 1, 2, 4)],
    11: [(0, 1, 2, 3, 6), (0, 1, 2, 4, 7)],
    13: [(0, 1, 2, 4, 7)],
    17: [
        (0, 1, 2, 3, 5, 9),
        (0, 1, 2, 3, 5, 10),
        (0, 1, 2, 3, 5, 12),
        (0, 1, 2, 3, 6, 9),
        (0, 1, 2, 3, 6, 10),
        (0, 1, 2, 3, 6, 11),
        (0, 1, 2, 3, 6, 13),
        (0, 1, 2, 3, 7, 11),
        (0, 1, 2, 4, 5, 9),
        (0, 1, 2, 4, 5, 10),
        (0, 1, 2, 4, 5, 12),
        (0, 1, 2, 4, 10, 13),
    ],
    19: [
        (0, 1, 2, 3, 5, 10),
        (0, 1, 2, 3, 6, 10),
        (0, 1, 2, 3, 6, 11),
        (0, 1, 2, 3, 6, 12),
        (0, 1, 2, 3, 6, 13),
        (0, 1, 2, 3, 6, 14),
        (0, 1, 2, 3, 7, 12),
        (0, 1, 2, 4, 5, 10),
        (0, 1, 2, 4, 5, 14),
        (0, 1, 2, 4, 7, 12),
        (0, 1, 2, 4, 7, 15),
    ],
    23: [
        (0, 1, 2, 3, 6, 12),
        (0, 1, 2, 4, 7, 12),
        (0, 1, 2, 4, 7, 13),
        (0, 1, 2, 4, 7, 14),
        (0, 1, 2, 4, 9, 14),
        (0, 1, 2, 4, 10, 19),
    ],
    29: [(0, 1, 2, 4, 8, 15)],
    31: [(0, 1, 2, 4, 8, 16)],
}

SUPPORTED_PRIMES = tuple(sorted(_CANDIDATES))


def _as_palette(S: Iterable[int], p: int) -> Palette:
    pal = tuple(sorted({x % p for x in S}))
    if not pal:
        raise ValueError("palette must be nonempty")
    return pal


def affine_canonical_palette(S: Iterable[int], p: int) -> Palette:
    """Least sorted tuple among sS + t over units s and all t."""
    pal = _as_palette(S, p)
    return min(tuple(sorted((s * x + t) % p for x in pal)) for s in range(1, p) for t in range(p))


def candidate_palettes(p: int) -> List[Palette]:
    if p not in _CANDIDATES:
        raise ValueError("no candidate palette list for p=%r (supported: %s)" % (p, list(SUPPORTED_PRIMES)))
    return list(_CANDIDATES[p])


def weight_generators(S: Iterable[int], p: int) -> Tuple[List[Gen2], List[Gen2]]:
    """Canonical free generators with a, b, c and [a,b,c] in S, sorted, and
    the torsion generators (a,a,b) with a < b in S."""
    require_odd_prime(p)
    pal = _as_palette(S, p)
    members = set(pal)
    free = [
        (a, b, c)
        for a in pal
        for b in pal
        for c in pal
        if tribracket(a, b, c, p) in members and is_canonical_free(a, b, c, p)
    ]
    torsion = [(a, a, b) for a in pal for b in pal if a < b]
    return sorted(free), torsion


@dataclass(frozen=True)
class KernelAnalysis:
    p: int
    palette: Palette
    generators: Tuple[Gen2, ...]
    torsion: Tuple[Gen2, ...]
    row_labels: Tuple[Tuple[int, int], ...]
    matrix: Tuple[Tuple[int, ...], ...]
    kernel: Tuple[Tuple[int, ...], ...]
    theta_values: Tuple[int, ...]

    @property
    def theta_trivial(self) -> bool:
        return all(v == 0 for v in self.theta_values)

    @property
    def verdict(self) -> str:
        return "theta-trivial" if self.theta_trivial else "not-theta-trivial"

    @property
    def rank(self) -> int:
        return len(self.kernel)

    def relations(self) -> str:
        return relation_string(self.kernel, len(self.generators))

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "palette": list(self.palette),
            "generators": ["t%d=((%d,%d),(%d,%d))" % (i + 1, a, b, a, c) for i, (a, b, c) in enumerate(self.generators)],
            "torsion_generators": len(self.torsion),
            "rows": ["(%d,%d)" % r for r in self.row_labels],
            "matrix": [list(r) for r in self.matrix],
            "kernel": [list(v) for v in self.kernel],
            "theta": list(self.theta_values),
            "verdict": self.verdict,
            "relations": self.relations(),
        }
        if self.p in HYPOTHESIS_ROUTE_PRIMES and self.theta_trivial:
            out["label"] = "supports theorem hypothesis route"
        return out


def _term(coeff: Fraction, i: int) -> str:
    name = "t%d" % (i + 1)
    if coeff == 1:
        return name
    if coeff == -1:
        return "-" + name
    return "%s%s" % (coeff, name) if coeff.denominator == 1 else "(%s)%s" % (coeff, name)


def relation_string(kernel: Sequence[Sequence[int]], n: int) -> str:
    """Human-readable form of the solution lattice on t1..tn.

    Rank 0: "t1 = ... = tn = 0". Rank 1 with kernel vector v: the support
    is written as a chain of equalities c_i t_i with c_i = v_lead / v_i, and
    the rest are set to 0. Higher rank lists the basis.
    """
    if n == 0:
        return "no free generators"
    names = ["t%d" % (i + 1) for i in range(n)]
    if not kernel:
        return " = ".join(names) + " = 0"
    if len(kernel) == 1:
        v = kernel[0]
        support = [i for i in range(n) if v[i]]
        lead = v[support[0]]
        chain = " = ".join(_term(Fraction(lead, v[i]), i) for i in support)
        zeros = [names[i] for i in range(n) if not v[i]]
        return chain + ("; " + " = ".join(zeros) + " = 0" if zeros else "")
    return "(t1..t%d) in span{%s}" % (n, ", ".join("(" + ",".join(map(str, v)) + ")" for v in kernel))


def kernel_analysis(S: Iterable[int], p: int, max_generators: int = MAX_FREE_GENERATORS) -> KernelAnalysis:
    pal = _as_palette(S, p)
    free, torsion = weight_generators(pal, p)
    if len(free) > max_generators:
        raise BudgetExceeded("%d free generators exceed the limit %d" % (len(free), max_generators))
    # free part of the boundary; torsion (x,x) rows are dropped
    columns = [boundary2(g, p).free for g in free]
    labels = sorted({key for col in columns for key in col})
    matrix = [[col.get(lab, 0) for col in columns] for lab in labels]
    kernel = integer_kernel(matrix, len(free)) if free else []
    for v in kernel:
        assert not any(mat_vec(matrix, v)), "kernel vector fails M v = 0"
    th = theta_fn(p)
    thetas = tuple(sum(k * th(*g) for k, g in zip(v, free)) % p for v in kernel)
    return KernelAnalysis(
        p,
        pal,
        tuple(free),
        tuple(torsion),
        tuple(labels),
        tuple(tuple(r) for r in matrix),
        tuple(tuple(v) for v in kernel),
        thetas,
    )


@dataclass(frozen=True)
class PaletteReport:
    p: int
    analyses: Tuple[KernelAnalysis, ...]

    @property
    def all_theta_trivial(self) -> bool:
        return all(a.theta_trivial for a in self.analyses)

    @property
    def failing(self) -> List[Palette]:
        return [a.palette for a in self.analyses if not a.theta_trivial]

    def summary(self) -> str:
        if self.all_theta_trivial:
            if self.p in HYPOTHESIS_ROUTE_PRIMES:
                return "all theta-trivial; supports theorem hypothesis route"
            return "all theta-trivial"
        return "%d of %d palettes not theta-trivial" % (len(self.failing), len(self.analyses))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "summary": self.summary(),
            "all_theta_trivial": self.all_theta_trivial,
            "palettes": [a.to_json() for a in self.analyses],
        }


def analyze_all(p: int) -> PaletteReport:
    return PaletteReport(p, tuple(kernel_analysis(S, p) for S in candidate_palettes(p)))


def supported(p: int) -> bool:
    return is_odd_prime(p) and p in _CANDIDATES
