"""Exact spanning-tree counts.

Everything here works on a :class:`~planar_resistance.sp.MarkedGraph` alone
and never looks at the series-parallel term a graph came from, so it can be
used to check constructions independently.

``tau`` evaluates a principal minor of the Laplacian (matrix-tree theorem).
Two exact determinant routes are provided: fraction-free Bareiss elimination
on the dense minor, and sparse symmetric elimination in minimum-degree order
over exact fractions.  The sparse route is what makes graphs with thousands
of vertices affordable; on series-parallel graphs every elimination step
touches at most two neighbours.  ``tau_bruteforce`` enumerates edge subsets
with a union-find and is the check on both.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .sp import MarkedGraph

__all__ = [
    "bareiss_det",
    "laplacian_minor",
    "tau",
    "tau_delete",
    "tau_contract",
    "tau_triple",
    "zeta_graph",
    "eff_resistance",
    "tau_bruteforce",
    "check_deletion_contraction",
    "ImproperGraphError",
    "BRUTEFORCE_MAX_EDGES",
    "DENSE_MAX_DIM",
]

BRUTEFORCE_MAX_EDGES = 20
# minors up to this dimension go through dense Bareiss under method="auto"
DENSE_MAX_DIM = 16


class ImproperGraphError(ValueError):
    """Raised when the spanning tree ratio is requested for a bridge or a
    disconnected graph."""


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def _multiplicities(edges: Iterable[tuple[int, int]]) -> dict[tuple[int, int], int]:
    mult: dict[tuple[int, int], int] = defaultdict(int)
    for u, v in edges:
        if u == v:
            continue
        mult[(u, v) if u < v else (v, u)] += 1
    return mult


def laplacian_minor(n: int, edges: Iterable[tuple[int, int]], ground: int = 0) -> list[list[int]]:
    """Laplacian with row and column ``ground`` removed (loops ignored)."""
    lap = [[0] * n for _ in range(n)]
    for (u, v), w in _multiplicities(edges).items():
        lap[u][u] += w
        lap[v][v] += w
        lap[u][v] -= w
        lap[v][u] -= w
    keep = [i for i in range(n) if i != ground]
    return [[lap[i][j] for j in keep] for i in keep]


def _sparse_count(n: int, edges: Iterable[tuple[int, int]]) -> int:
    ground = 0
    diag: list[Fraction | int] = [0] * n
    nbr: list[dict[int, Fraction | int]] = [dict() for _ in range(n)]
    for (u, v), w in _multiplicities(edges).items():
        diag[u] += w
        diag[v] += w
        if u != ground and v != ground:
            nbr[u][v] = nbr[u].get(v, 0) + w
            nbr[v][u] = nbr[v].get(u, 0) + w

    alive = [v != ground for v in range(n)]
    heap = [(len(nbr[v]), v) for v in range(n) if alive[v]]
    heapq.heapify(heap)
    det: Fraction | int = 1
    while heap:
        d, v = heapq.heappop(heap)
        if not alive[v] or d != len(nbr[v]):
            continue
        alive[v] = False
        p = diag[v]
        if p == 0:
            # symmetric positive semidefinite: a zero pivot means singular
            return 0
        det *= p
        links = nbr[v]
        nbr[v] = {}
        items = list(links.items())
        for a, wa in items:
            del nbr[a][v]
            diag[a] -= Fraction(wa * wa) / p
        for i, (a, wa) in enumerate(items):
            for b, wb in items[i + 1:]:
                fill = Fraction(wa * wb) / p
                nbr[a][b] = nbr[a].get(b, 0) + fill
                nbr[b][a] = nbr[b].get(a, 0) + fill
        for a, _ in items:
            heapq.heappush(heap, (len(nbr[a]), a))
    det = Fraction(det)
    if det.denominator != 1:
        raise ArithmeticError("non-integral spanning tree count")
    return det.numerator


def _count(n: int, edges: Sequence[tuple[int, int]], method: str) -> int:
    if n <= 1:
        return 1
    if method == "auto":
        method = "bareiss" if n - 1 <= DENSE_MAX_DIM else "sparse"
    if method == "bareiss":
        return bareiss_det(laplacian_minor(n, edges))
    if method == "sparse":
        return _sparse_count(n, edges)
    raise ValueError(f"unknown method {method!r}")


def tau(g: MarkedGraph, method: str = "auto") -> int:
    """Number of spanning trees of ``g`` (0 when disconnected)."""
    return _count(g.n, g.edges, method)


def _deleted(g: MarkedGraph) -> list[tuple[int, int]]:
    return [e for i, e in enumerate(g.edges) if i != g.marked]


def _contracted(g: MarkedGraph) -> tuple[int, list[tuple[int, int]]]:
    x, y = g.marked_edge
    keep, gone = min(x, y), max(x, y)

    def relabel(w: int) -> int:
        if w == gone:
            w = keep
        return w - 1 if w > gone else w

    out = []
    for u, v in g.edges:
        u, v = relabel(u), relabel(v)
        if u != v:  # loops created by the contraction are dropped
            out.append((u, v))
    return g.n - 1, out


def tau_delete(g: MarkedGraph, method: str = "auto") -> int:
    return _count(g.n, _deleted(g), method)


def tau_contract(g: MarkedGraph, method: str = "auto") -> int:
    n, edges = _contracted(g)
    return _count(n, edges, method)


def tau_triple(g: MarkedGraph, method: str = "auto") -> tuple[int, int, int]:
    """``(tau(G), tau(G - e), tau(G / e))``, each from its own determinant."""
    return tau(g, method), tau_delete(g, method), tau_contract(g, method)


def zeta_graph(g: MarkedGraph, method: str = "auto") -> Fraction:
    """Spanning tree ratio ``tau(G - e) / tau(G / e)`` of a proper marked graph."""
    d, c = tau_delete(g, method), tau_contract(g, method)
    if d == 0 or c == 0:
        raise ImproperGraphError("spanning tree ratio needs a connected graph whose marked edge is not a bridge")
    return Fraction(d, c)


def eff_resistance(g: MarkedGraph, method: str = "auto") -> Fraction:
    """Effective resistance ``tau(G / e) / tau(G)`` across the marked edge."""
    total = tau(g, method)
    if total == 0:
        raise ImproperGraphError("effective resistance needs a connected graph")
    return Fraction(tau_contract(g, method), total)


def tau_bruteforce(g: MarkedGraph) -> int:
    """Count spanning trees by testing every ``(n-1)``-subset of edges."""
    m = len(g.edges)
    if m > BRUTEFORCE_MAX_EDGES:
        raise ValueError(f"brute force is limited to {BRUTEFORCE_MAX_EDGES} edges, got {m}")
    n = g.n
    if n == 1:
        return 1
    count = 0
    edges = g.edges
    for subset in combinations(range(m), n - 1):
        parent = list(range(n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i in subset:
            u, v = edges[i]
            ru, rv = find(u), find(v)
            if ru == rv:
                break
            parent[ru] = rv
        else:
            count += 1
    return count


def check_deletion_contraction(g: MarkedGraph, method: str = "auto") -> bool:
    t, d, c = tau_triple(g, method)
    return t == d + c
