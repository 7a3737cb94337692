"""Fomin-Zelevinsky quiver mutation on skew B-matrices.

Includes the explicit cluster-tilted presentation of the three-armed
canonical algebras (one cycle relation plus the eta-monomials) and
mutation-class exploration with canonical labeling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NodeCapExceeded, WrongArity


@dataclass(frozen=True)
class MutQuiver:
    """Loop-free, 2-cycle-free quiver as a skew-symmetric integer matrix:
    B[i][j] > 0 means B[i][j] arrows i -> j."""

    labels: tuple
    B: tuple             # tuple of tuples

    def __post_init__(self):
        B = tuple(tuple(int(x) for x in row) for row in self.B)
        n = len(B)
        assert len(self.labels) == n
        for i in range(n):
            assert B[i][i] == 0, "diagonal must vanish"
            for j in range(n):
                assert B[i][j] == -B[j][i], "matrix must be skew-symmetric"
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n(self):
        return len(self.labels)

    @classmethod
    def from_arrows(cls, labels, arrows):
        idx = {v: i for i, v in enumerate(labels)}
        n = len(labels)
        B = [[0] * n for _ in range(n)]
        for u, v in arrows:
            B[idx[u]][idx[v]] += 1
            B[idx[v]][idx[u]] -= 1
        return cls(tuple(labels), tuple(tuple(r) for r in B))

    def arrows(self):
        out = []
        for i in range(self.n):
            for j in range(self.n):
                for _ in range(max(0, self.B[i][j])):
                    out.append((self.labels[i], self.labels[j]))
        return out

    def max_entry(self):
        return max((abs(x) for row in self.B for x in row), default=0)


def fz_mutate(Q: MutQuiver, k: int) -> MutQuiver:
    """Matrix mutation at vertex k."""
    n = Q.n
    if not 0 <= k < n:
        raise IndexError(f"vertex {k} out of range")
    B = Q.B
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                s = 1 if B[i][k] > 0 else (-1 if B[i][k] < 0 else 0)
                out[i][j] = B[i][j] + s * max(0, B[i][k] * B[k][j])
    return MutQuiver(Q.labels, tuple(tuple(r) for r in out))


def _permuted(B, perm):
    return tuple(tuple(B[perm[i]][perm[j]] for j in range(len(perm)))
                 for i in range(len(perm)))


def canonical_form(Q: MutQuiver):
    """Permutation-minimal matrix; exact for n <= 9, invariant-pruned
    search above (still exact, but prunes by row invariants first)."""
    n = Q.n
    if n <= 9:
        return min(_permuted(Q.B, p) for p in itertools.permutations(range(n)))
    inv = [tuple(sorted(Q.B[i])) for i in range(n)]
    groups = {}
    for i in range(n):
        groups.setdefault(inv[i], []).append(i)
    blocks = [groups[key] for key in sorted(groups)]
    best = None
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = [i for part in parts for i in part]
        cand = _permuted(Q.B, perm)
        if best is None or cand < best:
            best = cand
    return best


def mutation_class_bfs(Q: MutQuiver, depth: int = None,
                       node_cap: int = 200000) -> dict:
    """Explore the mutation class up to iso; depth None = exhaustive."""
    start = canonical_form(Q)
    seen = {start}
    frontier = [Q]
    d = 0
    max_entry = Q.max_entry()
    truncated = False
    while frontier and (depth is None or d < depth):
        nxt = []
        for cur in frontier:
            for k in range(cur.n):
                nq = fz_mutate(cur, k)
                max_entry = max(max_entry, nq.max_entry())
                key = canonical_form(nq)
                if key not in seen:
                    seen.add(key)
                    if len(seen) > node_cap:
                        raise NodeCapExceeded(
                            f"mutation class exceeds {node_cap} quivers")
                    nxt.append(nq)
        frontier = nxt
        d += 1
    if frontier and depth is not None:
        truncated = True
    return {"class_size": len(seen), "max_entry": max_entry,
            "truncated": truncated, "depth_reached": d}


@dataclass(frozen=True)
class Presentation:
    quiver: MutQuiver
    relations: tuple


def canonical_cluster_presentation(p1: int, p2: int, p3: int) -> Presentation:
    """Quiver with relations of the cluster-tilted three-armed canonical
    algebra: three arms of p_i arrows from the source to the sink, one
    return arrow eta, the cyclic arm relation and the eta monomials."""
    ps = (p1, p2, p3)
    if len(ps) != 3 or any(p < 2 for p in ps):
        raise WrongArity("presentation requires exactly three weights >= 2")
    labels = ["0"] + [f"x{i}.{j}" for i in (1, 2, 3)
                      for j in range(1, ps[i - 1])] + ["w"]
    arrows = []
    for i in (1, 2, 3):
        chain = ["0"] + [f"x{i}.{j}" for j in range(1, ps[i - 1])] + ["w"]
        arrows += [(chain[a], chain[a + 1]) for a in range(len(chain) - 1)]
    arrows.append(("w", "0"))
    quiver = MutQuiver.from_arrows(labels, arrows)
    relations = ["x1^%d + x2^%d + x3^%d" % ps]
    for i in (1, 2, 3):
        p = ps[i - 1]
        for a in range(1, p + 1):
            relations.append(f"x{i}^{p - a} eta x{i}^{a - 1}")
    return Presentation(quiver, tuple(relations))
