"""Stable tubes of rank p and their cluster tubes.

Objects X_i^(n) are indexed so that tau X_i^(n) = X_{i+1}^(n).  The
concrete model binds i to the socle of the uniserial nilpotent
representation of the cyclic quiver with p vertices (arrows j -> j+1);
this binding is validated by ar_sequence_check.

The representation oracle is normative: the closed-form dimension
formulas are an optimization that must match it exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotComposable
from .linalg import mat_mul, nullspace, rank


@dataclass(frozen=True)
class TubeObject:
    """Indecomposable X_i^(n) in the tube of rank p (i in Z_p, n >= 1)."""

    p: int
    i: int
    n: int

    def __post_init__(self):
        if self.p < 1 or self.n < 1:
            raise ValueError(f"need rank >= 1 and length >= 1, got {self}")
        object.__setattr__(self, "i", self.i % self.p)

    @property
    def exceptional(self):
        return self.n < self.p

    def tau(self, k=1):
        return TubeObject(self.p, self.i + k, self.n)

    def vertex(self, k):
        """Vertex of the k-th basis vector (k=0 top, k=n-1 socle)."""
        return (self.i - (self.n - 1) + k) % self.p


def hom_dim(X: TubeObject, Y: TubeObject) -> int:
    """Closed-form dim Hom(X_i^(n), X_j^(m)).

    A morphism image is simultaneously a length-l quotient of X and a
    length-l submodule of Y; matching socles forces l = (j - i) + n
    mod p, so the dimension counts such l in 1..min(n, m).
    """
    if X.p != Y.p:
        raise ValueError("objects live in tubes of different ranks")
    p, top = X.p, min(X.n, Y.n)
    r0 = (Y.i - X.i + X.n - 1) % p + 1
    if r0 > top:
        return 0
    return (top - r0) // p + 1


def ext_dim(X: TubeObject, Y: TubeObject) -> int:
    """dim Ext^1(X, Y) = dim Hom(Y, tau X) by Serre duality."""
    return hom_dim(Y, X.tau())


def cluster_hom_dims(X: TubeObject, Y: TubeObject):
    """(degree-0, degree-1) dimensions of Hom in the cluster tube."""
    return hom_dim(X, Y), ext_dim(X, Y.tau(-1))


# --------------------------------------------------------------------------
# Representation oracle


class HomSpace:
    """Basis of the intertwiner space Hom(X, Y) in the nilpotent model.

    A morphism is an n x m matrix F over Q with F[k][l] the coefficient
    of the l-th basis vector of Y in the image of the k-th basis vector
    of X.  The basis returned by the nullspace solver is echelonized on
    its free coordinates, which makes coordinate extraction trivial.
    """

    def __init__(self, X: TubeObject, Y: TubeObject):
        if X.p != Y.p:
            raise ValueError("tube rank mismatch")
        self.X, self.Y = X, Y
        n, m = X.n, Y.n
        nvars = n * m
        var = lambda k, l: k * m + l
        rows = []
        # vertex compatibility
        for k in range(n):
            for l in range(m):
                if X.vertex(k) != Y.vertex(l):
                    row = [0] * nvars
                    row[var(k, l)] = 1
                    rows.append(row)
        # commute with the arrow action: u_k -> u_{k+1}, u_{n-1} -> 0
        for k in range(n - 1):
            for l in range(m):
                row = [0] * nvars
                row[var(k + 1, l)] = 1
                if l >= 1:
                    row[var(k, l - 1)] -= 1
                rows.append(row)
        # image of the socle must be killed by the arrows
        for l in range(m - 1):
            row = [0] * nvars
            row[var(n - 1, l)] = 1
            rows.append(row)
        vecs = nullspace(rows) if rows else [
            [Fraction(int(t == s)) for t in range(nvars)] for s in range(nvars)]
        self.free = []
        for v in vecs:
            self.free.append(next(idx for idx, x in enumerate(v) if x == 1 and all(
                w[idx] == 0 for w in vecs if w is not v)))
        self.basis = [self._unflatten(v) for v in vecs]

    def _unflatten(self, v):
        m = self.Y.n
        return [[v[k * m + l] for l in range(m)] for k in range(self.X.n)]

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, F):
        """Coordinates of an intertwiner matrix F in this basis."""
        m = self.Y.n
        return [F[idx // m][idx % m] for idx in self.free]


def oracle_hom_dim(X: TubeObject, Y: TubeObject) -> int:
    """Dimension of the intertwiner space, solved independently of the
    closed form.

    Every defining equation of the system (vertex compatibility, arrow
    commutation, socle annihilation) either kills a matrix entry or
    identifies two entries, so the solution space is counted exactly by
    union-find over entry positions, with a distinguished zero class.
    """
    if X.p != Y.p:
        raise ValueError("tube rank mismatch")
    n, m = X.n, Y.n
    ZERO = n * m
    parent = list(range(n * m + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    pos = lambda k, l: k * m + l
    for k in range(n):
        for l in range(m):
            if X.vertex(k) != Y.vertex(l):
                union(pos(k, l), ZERO)
    for k in range(n - 1):
        for l in range(m):
            if l >= 1:
                union(pos(k + 1, l), pos(k, l - 1))
            else:
                union(pos(k + 1, 0), ZERO)
    for l in range(m - 1):
        union(pos(n - 1, l), ZERO)
    zr = find(ZERO)
    classes = {find(pos(k, l)) for k in range(n) for l in range(m)}
    classes.discard(zr)
    return len(classes)


def oracle_ext_dim(X: TubeObject, Y: TubeObject) -> int:
    return HomSpace(Y, X.tau()).dim


def iota(X: TubeObject):
    """Inclusion X_i^(n) -> X_i^(n+1) (same socle)."""
    Y = TubeObject(X.p, X.i, X.n + 1)
    F = [[Fraction(int(l == k + 1)) for l in range(Y.n)] for k in range(X.n)]
    return Y, F


def pi(X: TubeObject):
    """Quotient X_{i+1}^(n+1) -> X_i^(n) (kill the socle).  X is the source."""
    if X.n < 2:
        raise ValueError("pi needs length >= 2 at the source")
    Y = TubeObject(X.p, X.i - 1, X.n - 1)
    F = [[Fraction(int(l == k)) for l in range(Y.n)] for k in range(X.n)]
    return Y, F


def tau_mor(F):
    """tau of a morphism: the same matrix between the shifted objects."""
    return [list(row) for row in F]


# --------------------------------------------------------------------------
# Z_2-graded morphisms of the cluster tube


@dataclass
class GradedHom:
    """Element of Hom_C(X, Y) = Hom(X, Y) + Ext^1(X, tau^- Y).

    The degree-one part is stored through Serre duality as a linear
    functional on Hom(tau^- Y, tau X), given by its values on the oracle
    basis of that space.
    """

    X: TubeObject
    Y: TubeObject
    deg0: list          # X.n x Y.n matrix
    deg1: list          # values on HomSpace(tau^- Y, tau X).basis

    @classmethod
    def zero(cls, X, Y):
        d1 = HomSpace(Y.tau(-1), X.tau()).dim
        return cls(X, Y, [[Fraction(0)] * Y.n for _ in range(X.n)], [Fraction(0)] * d1)

    @classmethod
    def identity(cls, X):
        g = cls.zero(X, X)
        for k in range(X.n):
            g.deg0[k][k] = Fraction(1)
        return g

    def is_zero(self):
        return all(all(x == 0 for x in row) for row in self.deg0) and all(
            x == 0 for x in self.deg1)


def compose_graded(g: GradedHom, f: GradedHom) -> GradedHom:
    """Yoneda composition g o f; the degree-one times degree-one term
    vanishes identically."""
    if f.Y != g.X:
        raise NotComposable(f"cannot compose {g.X}->{g.Y} after {f.X}->{f.Y}")
    X, Y, Z = f.X, f.Y, g.Y
    out = GradedHom.zero(X, Z)
    out.deg0 = mat_mul(f.deg0, g.deg0)
    # degree-one part, evaluated on the basis of Hom(tau^- Z, tau X)
    space_h = HomSpace(Z.tau(-1), X.tau())
    space_f1 = HomSpace(Y.tau(-1), X.tau())
    space_g1 = HomSpace(Z.tau(-1), Y.tau())
    vals = []
    for h in space_h.basis:
        # f1(h o tau^- g0): precompose with tau^- g0 : tau^- Y -> tau^- Z
        hf = mat_mul(tau_mor(g.deg0), h)
        a = sum(c * v for c, v in zip(space_f1.coords(hf), f.deg1))
        # g1(tau f0 o h): postcompose with tau f0 : tau X -> tau Y
        hg = mat_mul(h, tau_mor(f.deg0))
        b = sum(c * v for c, v in zip(space_g1.coords(hg), g.deg1))
        vals.append(a + b)
    out.deg1 = vals
    return out


def random_graded(X, Y, rng: random.Random) -> GradedHom:
    """Random element of Hom_C(X, Y), coefficients in {-2..2}."""
    g = GradedHom.zero(X, Y)
    space0 = HomSpace(X, Y)
    for b in space0.basis:
        c = rng.randint(-2, 2)
        for k in range(X.n):
            for l in range(Y.n):
                g.deg0[k][l] += c * b[k][l]
    g.deg1 = [Fraction(rng.randint(-2, 2)) for _ in g.deg1]
    return g


# --------------------------------------------------------------------------
# Machine checks of the tube structure


def check_yoneda_lemma(p: int, n_max: int) -> dict:
    """Check the dualized restriction maps along the inclusions iota.

    For every i, n < n_max and every tube object Z of length <= n_max the
    map Hom(Z, tau X_i^(n)) -> Hom(Z, tau X_i^(n+1)), f -> tau(iota) o f,
    must be injective, and bijective when Z has length exactly n.
    """
    violations = []
    checked = 0
    for i in range(p):
        for n in range(1, n_max):
            X = TubeObject(p, i, n)
            _, inc = iota(X)            # X_i^(n) -> X_i^(n+1)
            tinc = tau_mor(inc)         # X_{i+1}^(n) -> X_{i+1}^(n+1)
            src_obj, dst_obj = X.tau(), TubeObject(p, i + 1, n + 1)
            for j in range(p):
                for ln in range(1, n_max + 1):
                    Z = TubeObject(p, j, ln)
                    src = HomSpace(Z, src_obj)
                    dst = HomSpace(Z, dst_obj)
                    images = [dst.coords(mat_mul(f, tinc)) for f in src.basis]
                    rk = rank(images)
                    checked += 1
                    if rk != src.dim:
                        violations.append(
                            {"i": i, "n": n, "z": [j, ln], "kind": "not_injective"})
                    elif ln == n and rk != dst.dim:
                        violations.append(
                            {"i": i, "n": n, "z": [j, ln], "kind": "not_bijective"})
    return {"rank": p, "n_max": n_max, "checked": checked, "violations": violations}


def ar_sequence_check(p: int, n_max: int) -> dict:
    """Verify the iota/pi commutation identity and exactness of the
    Auslander-Reiten sequences up to length n_max."""
    violations = []
    checked = 0
    for i in range(p):
        for n in range(1, n_max + 1):
            checked += 1
            mid = TubeObject(p, i + 1, n)      # tau X_i^(n)
            # commutation: iota_i^(n-1) pi_i^(n-1) = pi_i^(n) iota_{i+1}^(n)
            _, up = iota(mid)                   # X_{i+1}^(n) -> X_{i+1}^(n+1)
            big = TubeObject(p, i + 1, n + 1)
            _, down_big = pi(big)               # X_{i+1}^(n+1) -> X_i^(n)
            rhs = mat_mul(up, down_big)
            if n == 1:
                lhs = [[Fraction(0)] * n for _ in range(n)]
                first_cols = up
                second_rows = down_big
                mid_dim = n + 1
            else:
                _, down = pi(mid)               # X_{i+1}^(n) -> X_i^(n-1)
                small = TubeObject(p, i, n - 1)
                _, up_small = iota(small)       # X_i^(n-1) -> X_i^(n)
                lhs = mat_mul(down, up_small)
                first_cols = [row_a + row_b for row_a, row_b in zip(up, down)]
                second_rows = down_big + [[-x for x in row] for row in up_small]
                mid_dim = (n + 1) + (n - 1)
            if lhs != rhs:
                violations.append({"i": i, "n": n, "kind": "commutation"})
                continue
            if n == 1:
                # 0 -> X_{i+1}^(1) -> X_{i+1}^(2) -> X_i^(1) -> 0
                comp = mat_mul(first_cols, second_rows)
            else:
                comp = mat_mul(first_cols, second_rows)
            if any(any(x != 0 for x in row) for row in comp):
                violations.append({"i": i, "n": n, "kind": "composite_nonzero"})
                continue
            r1, r2 = rank(first_cols), rank(second_rows)
            if r1 != n or r2 != n or r1 + r2 != mid_dim:
                violations.append({"i": i, "n": n, "kind": "not_exact"})
    return {"rank": p, "n_max": n_max, "checked": checked, "violations": violations}
