"""Local biquandle chains over Z_p with the Dehn tribracket [a,b,c] = a-b+c.

A raw 2-chain generator ((a,b),(a,c)) is written as the triple (a, b, c).
Raw n-chain generators are tuples (a, b1, ..., bn).

Normal forms of the symmetric quotient C_2^SLB:

* ((a,b),(a,b)) is degenerate and vanishes.
* ((a,a),(a,c)) is 2-torsion; it is stored under the key (min(a,c), max(a,c)).
* every other generator is +-1 times a canonical free generator, the member
  of its four-element orbit whose 4-tuple (a, b, c, [a,b,c]) is smallest.

In C_1^SLB, (a,b) = -(b,a) and (a,a) is 2-torsion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

Gen2 = Tuple[int, int, int]
RawChain = Dict[tuple, int]


def tribracket(a: int, b: int, c: int, p: int) -> int:
    return (a - b + c) % p


def op_under(x: Tuple[int, int], y: Tuple[int, int], p: int) -> Tuple[int, int]:
    """(a,b) under-star_a (a,c) = (c, [a,b,c])."""
    if x[0] != y[0]:
        raise ValueError("local operation needs a shared first coordinate: %r, %r" % (x, y))
    a, b = x
    c = y[1]
    return (c, tribracket(a, b, c, p))


def op_over(x: Tuple[int, int], y: Tuple[int, int], p: int) -> Tuple[int, int]:
    """(a,b) over-star_a (a,c) = (c, [a,c,b])."""
    if x[0] != y[0]:
        raise ValueError("local operation needs a shared first coordinate: %r, %r" % (x, y))
    a, b = x
    c = y[1]
    return (c, tribracket(a, c, b, p))


def q_orbit(a: int, b: int, c: int, p: int) -> Tuple[Tuple[int, int, int, int], ...]:
    d = tribracket(a, b, c, p)
    return ((a, b, c, d), (b, a, d, c), (c, d, a, b), (d, c, b, a))


# sign attached to each member of the orbit, in q_orbit order
_ORBIT_SIGNS = (1, -1, -1, 1)


def q_min(a: int, b: int, c: int, p: int) -> Tuple[int, int, int, int]:
    return min(q_orbit(a, b, c, p))


def canonical_gen2(a: int, b: int, c: int, p: int) -> Optional[Tuple[int, Gen2]]:
    """Sign and canonical free generator equal to ((a,b),(a,c)), or None if
    the generator is degenerate or torsion."""
    a, b, c = a % p, b % p, c % p
    if b == c or a == b:
        return None
    orbit = q_orbit(a, b, c, p)
    k = min(range(4), key=orbit.__getitem__)
    x, y, z, _ = orbit[k]
    return _ORBIT_SIGNS[k], (x, y, z)


def is_canonical_free(a: int, b: int, c: int, p: int) -> bool:
    return a != b and b != c and q_min(a, b, c, p)[:3] == (a, b, c)


@dataclass(frozen=True)
class Chain2:
    """Element of C_2^SLB in normal form.

    ``free`` maps canonical generators (a,b,c) to nonzero integers;
    ``torsion`` is the set of keys (a,b), a<b, carrying coefficient 1 mod 2.
    """

    free: Mapping[Gen2, int] = field(default_factory=dict)
    torsion: FrozenSet[Tuple[int, int]] = frozenset()

    def __add__(self, other: "Chain2") -> "Chain2":
        free = dict(self.free)
        for g, k in other.free.items():
            v = free.get(g, 0) + k
            if v:
                free[g] = v
            else:
                free.pop(g, None)
        return Chain2(free, self.torsion ^ other.torsion)

    def __neg__(self) -> "Chain2":
        return Chain2({g: -k for g, k in self.free.items()}, self.torsion)

    def __sub__(self, other: "Chain2") -> "Chain2":
        return self + (-other)

    def scale(self, n: int) -> "Chain2":
        if n == 0:
            return Chain2()
        return Chain2({g: n * k for g, k in self.free.items()}, self.torsion if n % 2 else frozenset())

    def is_zero(self) -> bool:
        return not self.free and not self.torsion

    def __eq__(self, other):
        if not isinstance(other, Chain2):
            return NotImplemented
        return dict(self.free) == dict(other.free) and self.torsion == other.torsion

    def __hash__(self):
        return hash((frozenset(self.free.items()), self.torsion))

    def to_json(self) -> dict:
        return {
            "free": [{"gen": list(g), "coeff": k} for g, k in sorted(self.free.items())],
            "torsion": [{"gen": [a, a, b]} for a, b in sorted(self.torsion)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Chain2":
        free = {tuple(item["gen"]): int(item["coeff"]) for item in data.get("free", [])}
        torsion = frozenset((item["gen"][0], item["gen"][2]) for item in data.get("torsion", []))
        return cls({g: k for g, k in free.items() if k}, torsion)


@dataclass(frozen=True)
class Chain1:
    """Element of C_1^SLB: free part on (a,b), a<b; torsion part on (a,a)."""

    free: Mapping[Tuple[int, int], int] = field(default_factory=dict)
    torsion: FrozenSet[int] = frozenset()

    def __add__(self, other: "Chain1") -> "Chain1":
        free = dict(self.free)
        for g, k in other.free.items():
            v = free.get(g, 0) + k
            if v:
                free[g] = v
            else:
                free.pop(g, None)
        return Chain1(free, self.torsion ^ other.torsion)

    def __neg__(self) -> "Chain1":
        return Chain1({g: -k for g, k in self.free.items()}, self.torsion)

    def is_zero(self) -> bool:
        return not self.free and not self.torsion

    def __eq__(self, other):
        if not isinstance(other, Chain1):
            return NotImplemented
        return dict(self.free) == dict(other.free) and self.torsion == other.torsion

    def __hash__(self):
        return hash((frozenset(self.free.items()), self.torsion))

    def to_json(self) -> dict:
        return {
            "free": [{"gen": list(g), "coeff": k} for g, k in sorted(self.free.items())],
            "torsion": [{"gen": [a, a]} for a in sorted(self.torsion)],
        }


def normalize_gen2(gen: Gen2, p: int, sign: int = 1) -> Chain2:
    a, b, c = (x % p for x in gen)
    if b == c:
        return Chain2()
    if a == b:
        key = (min(a, c), max(a, c))
        return Chain2({}, frozenset([key]) if sign % 2 else frozenset())
    s, g = canonical_gen2(a, b, c, p)  # type: ignore[misc]
    return Chain2({g: s * sign})


def normalize_chain2(raw: Mapping[tuple, int] | Iterable[Tuple[tuple, int]], p: int) -> Chain2:
    """Normal form of a raw integer combination of 2-generators.

    Keys may be (a,b,c) triples or ((a,b),(a,c)) pairs.
    """
    items = raw.items() if isinstance(raw, Mapping) else raw
    out = Chain2()
    for gen, k in items:
        if k == 0:
            continue
        if len(gen) == 2:
            (a, b), (a2, c) = gen
            if a != a2:
                raise ValueError("not a local generator: %r" % (gen,))
            gen = (a, b, c)
        out = out + normalize_gen2(gen, p, k)
    return out


def normalize_gen1(a: int, b: int, p: int, coeff: int = 1) -> Chain1:
    a, b = a % p, b % p
    if a == b:
        return Chain1({}, frozenset([a]) if coeff % 2 else frozenset())
    if a < b:
        return Chain1({(a, b): coeff})
    return Chain1({(b, a): -coeff})


def boundary2_raw(gen: Gen2, p: int) -> List[Tuple[Tuple[int, int], int]]:
    """-(a,c) + (a,b) + (b,[a,b,c]) - (c,[a,b,c]) as signed raw 1-chains."""
    a, b, c = gen
    d = tribracket(a, b, c, p)
    return [((a, c), -1), ((a, b), 1), ((b, d), 1), ((c, d), -1)]


def boundary2(gen: Gen2, p: int, coeff: int = 1) -> Chain1:
    out = Chain1()
    for (x, y), s in boundary2_raw(gen, p):
        out = out + normalize_gen1(x, y, p, s * coeff)
    return out


def boundary2_chain(chain: Chain2, p: int) -> Chain1:
    """Boundary of a normal-form 2-chain. Torsion generators contribute
    (a,a) + (c,c) mod 2."""
    out = Chain1()
    for g, k in chain.free.items():
        out = out + boundary2(g, p, k)
    for a, c in chain.torsion:
        out = out + boundary2((a, a, c), p, 1)
    return out


def boundary_n_raw(gen: Sequence[int], p: int) -> RawChain:
    """Boundary of a raw generator (a, b1, ..., bn) of C_n^lb, 1 <= n <= 4.

    The result maps raw (n-1)-generators (a', b'1, ...) to integer
    coefficients, zeros dropped. For n = 1 the boundary is 0.
    """
    a, bs = gen[0], tuple(gen[1:])
    n = len(bs)
    if not 1 <= n <= 4:
        raise ValueError("boundary implemented for 1 <= n <= 4, got n=%d" % n)
    out: RawChain = {}
    if n == 1:
        return out
    for i in range(n):
        sign = -1 if (i + 1) % 2 else 1
        bi = bs[i]
        face = (a,) + bs[:i] + bs[i + 1:]
        twisted = (bi,) + tuple(tribracket(a, bj, bi, p) for bj in bs[:i]) + tuple(
            tribracket(a, bi, bj, p) for bj in bs[i + 1:]
        )
        out[face] = out.get(face, 0) + sign
        out[twisted] = out.get(twisted, 0) - sign
    return {g: k for g, k in out.items() if k}


def boundary_raw_chain(chain: Mapping[tuple, int], p: int) -> RawChain:
    out: RawChain = {}
    for g, k in chain.items():
        for h, m in boundary_n_raw(g, p).items():
            out[h] = out.get(h, 0) + k * m
    return {g: k for g, k in out.items() if k}


def rho_relator(gen: Sequence[int], i: int, p: int) -> RawChain:
    """Generator of D_n^lb(X, rho): the tuple plus its i-th rho-twist (0-based i)."""
    a, bs = gen[0], tuple(gen[1:])
    bi = bs[i]
    twisted = (bi,) + tuple(tribracket(a, bj, bi, p) for bj in bs[:i]) + (a,) + tuple(
        tribracket(a, bi, bj, p) for bj in bs[i + 1:]
    )
    out: RawChain = {tuple(gen): 1}
    out[twisted] = out.get(twisted, 0) + 1
    return out


# ---------------------------------------------------------------------------
# the 2-cocycle theta_p


def theta_exact(a: int, b: int, c: int, p: int) -> int:
    """Reference evaluation with the numerator computed in Z."""
    a, b, c = a % p, b % p, c % p
    num = (a - b + 2 * c) ** p + (a + b) ** p - 2 * (a + c) ** p
    q, r = divmod(num, p)
    assert r == 0, "numerator not divisible by p"
    return ((a - b) * q) % p


def theta_value(a: int, b: int, c: int, p: int) -> int:
    """theta_p(((a,b),(a,c))) with the numerator reduced mod p^2.

    (x + kp)^p = x^p mod p^2, so the result does not depend on which
    integer lifts of a, b, c are used.
    """
    a, b, c = a % p, b % p, c % p
    p2 = p * p
    num = (pow(a - b + 2 * c, p, p2) + pow(a + b, p, p2) - 2 * pow(a + c, p, p2)) % p2
    assert num % p == 0, "numerator not divisible by p"
    return ((a - b) * (num // p)) % p


@lru_cache(maxsize=None)
def theta_table(p: int) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    """All values theta_p(a,b,c), indexed [a][b][c]."""
    return tuple(
        tuple(tuple(theta_value(a, b, c, p) for c in range(p)) for b in range(p)) for a in range(p)
    )


ThetaFn = Callable[[int, int, int], int]


def theta_fn(p: int) -> ThetaFn:
    t = theta_table(p)
    return lambda a, b, c: t[a % p][b % p][c % p]


def theta_chain(chain: Chain2, p: int, theta: Optional[ThetaFn] = None) -> int:
    """theta_p on a normal-form chain; torsion generators contribute 0."""
    th = theta or theta_fn(p)
    return sum(k * th(*g) for g, k in chain.free.items()) % p


def theta_raw(raw: Mapping[tuple, int], p: int, theta: Optional[ThetaFn] = None) -> int:
    th = theta or theta_fn(p)
    return sum(k * th(*g) for g, k in raw.items()) % p


@dataclass
class CocycleReport:
    p: int
    passed: bool
    checked: Dict[str, int]
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
        }


def verify_theta_cocycle(p: int, theta: Optional[Callable[[int, int, int], int]] = None) -> CocycleReport:
    """Exhaustive check that theta is a 2-cocycle on C_2^SLB.

    Checks theta((a,b),(a,b)) = 0, both rho-conditions, and theta o d_3 = 0
    on all p^4 generators. ``theta`` defaults to theta_p; pass another
    function to check a perturbed cocycle. Vectorised with numpy.
    """
    import numpy as np

    if theta is None:
        table = np.array(theta_table(p), dtype=np.int64)
    else:
        table = np.array(
            [[[theta(a, b, c) % p for c in range(p)] for b in range(p)] for a in range(p)], dtype=np.int64
        )
    checked: Dict[str, int] = {}

    a, b = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    bad = np.argwhere(table[a, b, b] % p != 0)
    checked["degenerate"] = p * p
    if bad.size:
        x, y = (int(v) for v in bad[0])
        return CocycleReport(p, False, checked, {"check": "degenerate", "gen": [x, y, y]})

    a, b, c = np.meshgrid(np.arange(p), np.arange(p), np.arange(p), indexing="ij")
    d = (a - b + c) % p
    base = table[a, b, c]
    for name, other in (
        ("rho1", table[b, a, d]),
        ("rho2", table[c, d, a]),
    ):
        viol = np.argwhere((base + other) % p != 0)
        checked[name] = p ** 3
        if viol.size:
            x, y, z = (int(v) for v in viol[0])
            return CocycleReport(p, False, checked, {"check": name, "gen": [x, y, z]})

    # d_3((a,b1),(a,b2),(a,b3)) expanded; see boundary_n_raw
    a, b1, b2, b3 = np.meshgrid(*(np.arange(p),) * 4, indexing="ij")
    t = lambda x, y, z: (x - y + z) % p  # noqa: E731
    total = (
        -table[a, b2, b3]
        + table[b1, t(a, b1, b2), t(a, b1, b3)]
        + table[a, b1, b3]
        - table[b2, t(a, b1, b2), t(a, b2, b3)]
        - table[a, b1, b2]
        + table[b3, t(a, b1, b3), t(a, b2, b3)]
    ) % p
    checked["delta"] = p ** 4
    viol = np.argwhere(total != 0)
    if viol.size:
        gen = [int(v) for v in viol[0]]
        return CocycleReport(p, False, checked, {"check": "delta", "gen": gen})
    return CocycleReport(p, True, checked)


def verify_chain_complex(p: int, max_n: int = 3) -> CocycleReport:
    """Exhaustive chain-level checks for small p.

    * d o d = 0 on raw generators of C_n^lb, 2 <= n <= max_n;
    * d_3 maps D_3^lb(X) and D_3^lb(X, rho) into the kernel of the
      projection to C_2^SLB;
    * d_2 of every D_2 generator normalizes to 0 in C_1^SLB;
    * every D_2^lb(X, rho) generator normalizes to 0 in C_2^SLB.
    """
    checked: Dict[str, int] = {}

    def fail(check, gen):
        return CocycleReport(p, False, checked, {"check": check, "gen": list(gen)})

    for n in range(2, max_n + 1):
        count = 0
        for gen in itertools.product(range(p), repeat=n + 1):
            if boundary_raw_chain(boundary_n_raw(gen, p), p):
                return fail("dd%d" % n, gen)
            count += 1
        checked["dd%d" % n] = count

    count = 0
    for gen in itertools.product(range(p), repeat=3):
        a, b, c = gen
        for i in range(2):
            rel = rho_relator(gen, i, p)
            if not normalize_chain2(rel, p).is_zero():
                return fail("rho2_normal_%d" % i, gen)
            bd = Chain1()
            for g, k in rel.items():
                bd = bd + boundary2(g, p, k)
            if not bd.is_zero():
                return fail("rho2_boundary_%d" % i, gen)
        if b == c and not boundary2(gen, p).is_zero():
            return fail("degenerate2_boundary", gen)
        count += 1
    checked["d2_relators"] = count

    count = 0
    for gen in itertools.product(range(p), repeat=4):
        a, b1, b2, b3 = gen
        relators = [rho_relator(gen, i, p) for i in range(3)]
        if b1 == b2 or b2 == b3:
            relators.append({gen: 1})
        for rel in relators:
            image = boundary_raw_chain(rel, p)
            if not normalize_chain2(image, p).is_zero():
                return fail("subcomplex3", gen)
        count += 1
    checked["subcomplex3"] = count
    return CocycleReport(p, True, checked)
