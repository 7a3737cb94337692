"""K_0 of the sheaf category in the canonical-tilting basis.

The basis vertices are 0, (i,j) and omega, identified with the line
bundles O, O(j x_i), O(c); the Gram matrix of the Euler form is then the
Cartan matrix of the canonical algebra, assembled from the line-bundle
hom closed form.  On top of that: Coxeter transformation, rank/degree,
slopes, the radical lattice R and the Moebius action on slopes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import weights as wt
from .errors import NotTubular, ZeroClassSlope
from .linalg import integer_kernel, mat_inverse, mat_mul, mat_transpose, mat_vec
from .weights import LElement, WeightType


def line_hom_dim(x: LElement, y: LElement, W: WeightType) -> int:
    """dim Hom(O(x), O(y)): the number of monomials of degree y - x."""
    d = wt.sub(y, x, W)
    return d.m + 1 if d.m >= 0 else 0


def line_ext_dim(x: LElement, y: LElement, W: WeightType) -> int:
    """dim Ext^1(O(x), O(y)) = dim Hom(O(y), O(x + omega))."""
    return line_hom_dim(y, wt.add(x, wt.omega(W), W), W)


def basis_vertices(W: WeightType):
    return [0] + [(i, j) for i in range(1, W.t + 1)
                  for j in range(1, W.p[i - 1])] + ["omega"]


def vertex_bundle(v, W: WeightType) -> LElement:
    if v == 0:
        return wt.zero(W)
    if v == "omega":
        return wt.c_gen(W)
    i, j = v
    return wt.smul(j, wt.x_gen(i, W), W)


@dataclass(frozen=True)
class KClass:
    coeffs: tuple

    def __add__(self, other):
        return KClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return KClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return KClass(tuple(-a for a in self.coeffs))

    def scale(self, k):
        return KClass(tuple(k * a for a in self.coeffs))

    def is_zero(self):
        return all(a == 0 for a in self.coeffs)


@dataclass
class EulerData:
    W: WeightType
    vertices: list
    G: list              # Gram matrix, G[v][w] = hom(L_v, L_w)
    Phi: list            # Coxeter transformation, -G^{-1} G^T
    R_basis: list        # basis of the radical lattice ker(Phi - I)
    deltas: list         # degree of each basis bundle

    def unit(self, v) -> KClass:
        idx = self.vertices.index(v)
        return KClass(tuple(int(k == idx) for k in range(len(self.vertices))))


def build_euler(W: WeightType) -> EulerData:
    verts = basis_vertices(W)
    bundles = [vertex_bundle(v, W) for v in verts]
    G = [[line_hom_dim(x, y, W) for y in bundles] for x in bundles]
    Ginv = mat_inverse(G)
    PhiQ = mat_mul(Ginv, mat_transpose(G))
    Phi = []
    for row in PhiQ:
        out = []
        for x in row:
            x = -x
            assert x.denominator == 1
            out.append(int(x))
        Phi.append(out)
    n = len(verts)
    PmI = [[Phi[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    R = integer_kernel(PmI)
    deltas = [wt.delta(b, W) for b in bundles]
    return EulerData(W, verts, G, Phi, R, deltas)


def euler_form(x: KClass, y: KClass, E: EulerData) -> int:
    gy = mat_vec(E.G, list(y.coeffs))
    return sum(a * b for a, b in zip(x.coeffs, gy))


def rank(x: KClass, E: EulerData = None) -> int:
    return sum(x.coeffs)


def deg(x: KClass, E: EulerData) -> int:
    return sum(c * d for c, d in zip(x.coeffs, E.deltas))


def tau_K(x: KClass, E: EulerData) -> KClass:
    return KClass(tuple(mat_vec(E.Phi, list(x.coeffs))))


def k_class_of_bundle(x: LElement, E: EulerData) -> KClass:
    """[O(x)] expanded in the basis, via nf(x) = sum a_i x_i + m c and the
    short exact sequences 0 -> O((j-1)x_i) -> O(j x_i) -> S -> 0."""
    W = E.W
    # [O(x+c)] - [O(x)] is independent of x (it is the class of a degree-c
    # torsion sheaf), so reduce to m = 0 using [O(c)] - [O].
    step = E.unit("omega") - E.unit(0)
    cur = E.unit(0) + step.scale(x.m)
    for i in range(1, W.t + 1):
        for j in range(1, x.a[i - 1] + 1):
            # add [S_{i,j}] = [O(j x_i)] - [O((j-1) x_i)], shifted by the
            # accumulated twist; classes of torsion simples are twist
            # independent, so the basis difference applies verbatim.
            hi = E.unit((i, j)) if j < W.p[i - 1] else E.unit("omega")
            lo = E.unit((i, j - 1)) if j > 1 else E.unit(0)
            cur = cur + hi - lo
    return cur


# --------------------------------------------------------------------------
# Slopes and the rational circle


@dataclass(frozen=True)
class SlopeQ:
    """Reduced slope d/r with r >= 0; infinity is (1, 0)."""

    d: int
    r: int

    def __post_init__(self):
        d, r = self.d, self.r
        if r == 0 and d == 0:
            raise ZeroClassSlope("slope 0/0 is undefined")
        g = math.gcd(abs(d), abs(r))
        d, r = d // g, r // g
        if r < 0:
            d, r = -d, -r
        if r == 0:
            d = 1
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)

    @classmethod
    def infinity(cls):
        return cls(1, 0)

    @classmethod
    def parse(cls, s: str):
        s = s.strip()
        if s in ("inf", "infinity", "oo"):
            return cls.infinity()
        if "/" in s:
            a, b = s.split("/")
            return cls(int(a), int(b))
        return cls(int(s), 1)

    @property
    def is_infinite(self):
        return self.r == 0

    def height(self):
        return max(abs(self.d), self.r)

    def __lt__(self, other):
        # total order on Q extended with a maximal infinity
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.d * other.r < other.d * self.r

    def __str__(self):
        if self.is_infinite:
            return "inf"
        return str(self.d) if self.r == 1 else f"{self.d}/{self.r}"


def slope(x: KClass, E: EulerData) -> SlopeQ:
    r, d = rank(x), deg(x, E)
    if r == 0 and d == 0:
        raise ZeroClassSlope("class has rank 0 and degree 0")
    return SlopeQ(d, r)


def slope_interval_contains(r: SlopeQ, p: SlopeQ, q: SlopeQ) -> bool:
    """Membership in the slope interval (p, q):
    the open interval when p < q, the wrap-around (p, inf] u (-inf, q)
    when p > q, and everything except q when p = q."""
    if p == q:
        return r != q
    if p < q:
        return p < r < q
    return r > p or r < q


def circle_from_slope(q: SlopeQ, E: EulerData) -> KClass:
    """The primitive class of slope q in the radical lattice (tubular only)."""
    if len(E.R_basis) != 2:
        raise NotTubular(
            f"radical lattice has rank {len(E.R_basis)}, need 2 for the circle")
    r1, r2 = (KClass(tuple(v)) for v in E.R_basis)
    a1 = q.d * rank(r1) - q.r * deg(r1, E)
    a2 = q.d * rank(r2) - q.r * deg(r2, E)
    assert (a1, a2) != (0, 0)
    g = math.gcd(abs(a1), abs(a2))
    v = r1.scale(a2 // g) + r2.scale(-a1 // g)
    rk, dg = rank(v), deg(v, E)
    if rk < 0 or (rk == 0 and dg < 0):
        v = -v
    assert slope(v, E) == q
    return v


def circle_to_slope(w: KClass, E: EulerData) -> SlopeQ:
    return slope(w, E)


# --------------------------------------------------------------------------
# Moebius words in sigma: x -> x+1 and rho: x -> x/(1+x)

_GEN_MATS = {
    "s": ((1, 1), (0, 1)),
    "s-": ((1, -1), (0, 1)),
    "r": ((1, 0), (1, 1)),
    "r-": ((1, 0), (-1, 1)),
}


@dataclass(frozen=True)
class MoebiusWord:
    """Word in the slope generators, run-length encoded.

    Entries are (generator, exponent) pairs with generator in
    {s, s-, r, r-} and exponent >= 1; evaluation multiplies the entry
    matrices in list order and acts on the column vector (d, r), i.e.
    the last entry is applied to the argument first.
    """

    runs: tuple = ()

    def __len__(self):
        return len(self.runs)

    def __str__(self):
        return " ".join(g if k == 1 else f"{g}^{k}" for g, k in self.runs)

    @classmethod
    def parse(cls, s: str):
        runs = []
        for tok in s.split():
            g, _, e = tok.partition("^")
            if g not in _GEN_MATS:
                raise ValueError(f"unknown generator {g!r}")
            runs.append((g, int(e) if e else 1))
        return cls(tuple(runs))

    def matrix(self):
        M = ((1, 0), (0, 1))
        for g, k in self.runs:
            B = _GEN_MATS[g]
            for _ in range(k):
                M = ((M[0][0] * B[0][0] + M[0][1] * B[1][0],
                      M[0][0] * B[0][1] + M[0][1] * B[1][1]),
                     (M[1][0] * B[0][0] + M[1][1] * B[1][0],
                      M[1][0] * B[0][1] + M[1][1] * B[1][1]))
        return M


def apply_word(w: MoebiusWord, q: SlopeQ) -> SlopeQ:
    M = w.matrix()
    return SlopeQ(M[0][0] * q.d + M[0][1] * q.r, M[1][0] * q.d + M[1][1] * q.r)


def word_for_slope(q: SlopeQ) -> MoebiusWord:
    """Word w with apply_word(w, inf) = q, via the Euclidean algorithm on
    (d, r); the run count is logarithmic in the height of q."""
    runs = []
    d, r = q.d, q.r
    while r != 0:
        if d <= 0:
            k = (r - d) // r          # smallest k with d + k*r >= 1
            runs.append(("s-", k))
            d += k * r
        elif d > r:
            k = (d - 1) // r
            runs.append(("s", k))
            d -= k * r
        elif d == r:
            runs.append(("r", 1))
            d, r = 1, 0
        else:
            k = (r - 1) // d
            runs.append(("r", k))
            r -= k * d
    merged = []
    for g, k in runs:
        if merged and merged[-1][0] == g:
            merged[-1] = (g, merged[-1][1] + k)
        else:
            merged.append((g, k))
    w = MoebiusWord(tuple(merged))
    assert apply_word(w, SlopeQ.infinity()) == q
    return w
