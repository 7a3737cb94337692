"""Weight types and the string group L(p).

L(p) is the rank-one abelian group on generators x_1, ..., x_t, c with
relations p_i * x_i = c.  Elements are kept in the unique normal form
with 0 <= a_i < p_i; the degree map, the dualizing element omega and the
Euler characteristic live here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidWeightVector
from .linalg import smith_diagonal

DOMESTIC = "domestic"
TUBULAR = "tubular"
WILD = "wild"


@dataclass(frozen=True)
class WeightType:
    """Weight sequence p = (p_1, ..., p_t) with optional parameter labels.

    The lambda labels are opaque tokens: they are echoed in CLI output but
    never enter any computation performed by this package.
    """

    p: tuple
    lam: tuple = ()

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        if any(x < 2 for x in p):
            raise InvalidWeightVector(f"weights must be >= 2, got {p}")
        lam = tuple(str(x) for x in self.lam)
        expected = max(len(p) - 2, 0)
        if lam and len(lam) != expected:
            raise InvalidWeightVector(
                f"expected {expected} lambda labels for t={len(p)}, got {len(lam)}")
        if len(set(lam)) != len(lam):
            raise InvalidWeightVector("lambda labels must be pairwise distinct")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "lam", lam)

    @property
    def t(self):
        return len(self.p)

    @property
    def p_lcm(self):
        return math.lcm(*self.p) if self.p else 1

    @property
    def rank_k0(self):
        return 2 + sum(pi - 1 for pi in self.p)

    @classmethod
    def parse(cls, weights: str, lam: str = ""):
        """Parse the CLI forms "p1,p2,...,pt" and "l3,...,lt"."""
        ps = tuple(int(tok) for tok in weights.split(",") if tok.strip()) if weights.strip() else ()
        ls = tuple(tok.strip() for tok in lam.split(",") if tok.strip()) if lam else ()
        return cls(ps, ls)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.p) + ")"


@dataclass(frozen=True, order=False)
class LElement:
    """Element of L(p) in normal form: sum a_i x_i + m c, 0 <= a_i < p_i."""

    a: tuple
    m: int

    def key(self):
        return (self.a, self.m)


def normal_form(a, m, W: WeightType) -> LElement:
    """Normalize coefficients: reduce each a_i mod p_i, carrying into m."""
    a = list(a)
    if len(a) != W.t:
        raise InvalidWeightVector(f"expected {W.t} arm coefficients, got {len(a)}")
    m = int(m)
    out = []
    for ai, pi in zip(a, W.p):
        q, r = divmod(int(ai), pi)
        out.append(r)
        m += q
    return LElement(tuple(out), m)


def zero(W: WeightType) -> LElement:
    return LElement((0,) * W.t, 0)


def x_gen(i, W: WeightType) -> LElement:
    """The generator x_i (1-based arm index)."""
    a = [0] * W.t
    a[i - 1] = 1
    return normal_form(a, 0, W)


def c_gen(W: WeightType) -> LElement:
    return LElement((0,) * W.t, 1)


def add(x: LElement, y: LElement, W: WeightType) -> LElement:
    return normal_form([xa + ya for xa, ya in zip(x.a, y.a)], x.m + y.m, W)


def neg(x: LElement, W: WeightType) -> LElement:
    return normal_form([-xa for xa in x.a], -x.m, W)


def sub(x: LElement, y: LElement, W: WeightType) -> LElement:
    return add(x, neg(y, W), W)


def smul(k: int, x: LElement, W: WeightType) -> LElement:
    return normal_form([k * xa for xa in x.a], k * x.m, W)


def delta(x: LElement, W: WeightType) -> int:
    """Degree map, normalized by delta(c) = lcm(p)."""
    p = W.p_lcm
    return sum(ai * (p // pi) for ai, pi in zip(x.a, W.p)) + x.m * p


def omega(W: WeightType) -> LElement:
    """Dualizing element (t-2)c - sum x_i; twisting by it realizes tau."""
    return normal_form([-1] * W.t, W.t - 2, W)


def euler_characteristic(W: WeightType) -> Fraction:
    return Fraction(2) - sum(Fraction(pi - 1, pi) for pi in W.p)


@dataclass(frozen=True)
class ReprType:
    kind: str
    chi: Fraction


def classify(W: WeightType) -> ReprType:
    chi = euler_characteristic(W)
    if chi > 0:
        kind = DOMESTIC
    elif chi == 0:
        kind = TUBULAR
    else:
        kind = WILD
    return ReprType(kind, chi)


def picard_torsion_order(W: WeightType) -> int:
    """Order of the torsion subgroup of L(p).

    Computed from the Smith normal form of the relation matrix of the
    presentation <x_1..x_t, c | p_i x_i = c>; equals prod(p_i) / lcm(p_i).
    """
    t = W.t
    if t == 0:
        return 1
    rel = [[0] * (t + 1) for _ in range(t)]
    for i, pi in enumerate(W.p):
        rel[i][i] = pi
        rel[i][t] = -1
    diag = smith_diagonal(rel)
    order = 1
    for d in diag:
        if d != 0:
            order *= abs(d)
    return order
