"""Series-parallel terms for marked graphs, and their materialization.

A marked graph ``(G, e)`` with ``e = (x, y)`` is represented by the
two-terminal network ``H = G - e`` between ``x`` and ``y``.  Every graph
built here arises from a single edge by subdivision, duplication and marked
sum, so ``H`` is always a series-parallel term over unit edges:

* ``O``  -- open circuit (no connection between the terminals),
* ``L``  -- one unit edge between the terminals,
* ``S(...)`` -- series composition of two or more terms,
* ``P(...)`` -- parallel composition of two or more terms.

Terms are kept flattened (no ``S`` directly inside ``S``, no ``P`` directly
inside ``P``).  Plane duality on such networks is the ``S``/``P`` swap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "MarkedSP",
    "MarkedGraph",
    "LEAF",
    "OPEN",
    "series",
    "parallel",
    "single_edge",
    "k_duplicate",
    "k_subdivide",
    "marked_sum",
    "dual",
    "double",
    "halve",
    "simplify",
    "zeta_sp",
    "materialize",
    "is_simple",
    "is_proper",
    "parse_term",
    "random_term",
    "is_connected",
    "term_is_simple",
]

_KINDS = ("O", "L", "S", "P")


@dataclass(frozen=True)
class MarkedSP:
    """An immutable series-parallel term.

    ``leaves``, ``internal`` (internal vertex count) and ``open_free`` are
    derived at construction; ``zeta`` is computed on first use and cached.
    """

    kind: str
    children: tuple["MarkedSP", ...] = ()
    leaves: int = field(init=False, compare=False, repr=False)
    internal: int = field(init=False, compare=False, repr=False)
    open_free: bool = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        kind, ch = self.kind, self.children
        if kind not in _KINDS:
            raise ValueError(f"unknown term kind {kind!r}")
        if kind in ("O", "L"):
            if ch:
                raise ValueError(f"{kind} takes no children")
            leaves = int(kind == "L")
            internal = 0
            open_free = kind == "L"
        else:
            if len(ch) < 2:
                raise ValueError(f"{kind} needs at least two children")
            if any(c.kind == kind for c in ch):
                raise ValueError(f"{kind} term is not flattened")
            if kind == "P" and any(c.kind == "O" for c in ch):
                raise ValueError("open circuit inside a parallel term")
            leaves = sum(c.leaves for c in ch)
            internal = sum(c.internal for c in ch)
            if kind == "S":
                internal += len(ch) - 1
            open_free = all(c.open_free for c in ch)
        object.__setattr__(self, "leaves", leaves)
        object.__setattr__(self, "internal", internal)
        object.__setattr__(self, "open_free", open_free)

    @cached_property
    def zeta(self) -> Fraction:
        """Effective conductance between the terminals (the spanning tree ratio)."""
        if self.kind == "O":
            return Fraction(0)
        if self.kind == "L":
            return Fraction(1)
        zs = [c.zeta for c in self.children]
        if self.kind == "P":
            return sum(zs, Fraction(0))
        if any(z == 0 for z in zs):
            return Fraction(0)
        return 1 / sum(1 / z for z in zs)

    @property
    def n_vertices(self) -> int:
        return self.internal + 2

    @property
    def n_edges(self) -> int:
        """Edges of the materialized marked graph, marked edge included."""
        return self.leaves + 1

    @property
    def is_proper(self) -> bool:
        return self.leaves > 0 and self.zeta > 0

    def __str__(self) -> str:
        if not self.children:
            return self.kind
        return f"{self.kind}({','.join(str(c) for c in self.children)})"


OPEN = MarkedSP("O")
LEAF = MarkedSP("L")


def _compose(kind: str, terms: Iterable[MarkedSP]) -> MarkedSP:
    flat: list[MarkedSP] = []
    for t in terms:
        if t.kind == kind:
            flat.extend(t.children)
        elif kind == "P" and t.kind == "O":
            continue
        else:
            flat.append(t)
    if not flat:
        return OPEN
    if len(flat) == 1:
        return flat[0]
    return MarkedSP(kind, tuple(flat))


def series(*terms: MarkedSP) -> MarkedSP:
    return _compose("S", terms)


def parallel(*terms: MarkedSP) -> MarkedSP:
    # an open circuit in parallel contributes nothing
    return _compose("P", terms)


def single_edge() -> MarkedSP:
    return OPEN


def k_duplicate(g: MarkedSP, k: int) -> MarkedSP:
    """Replace the marked edge by ``k + 1`` parallel edges; zeta grows by k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return g
    return parallel(g, *([LEAF] * k))


def k_subdivide(g: MarkedSP, k: int) -> MarkedSP:
    """Replace the marked edge by a path of ``k + 1`` edges; 1/zeta grows by k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return g
    return series(*([LEAF] * k), g)


def _require_proper(g: MarkedSP, op: str) -> None:
    if not g.open_free or g.leaves == 0:
        raise ValueError(f"{op} needs a proper marked graph, got {g}")


def marked_sum(*terms: MarkedSP) -> MarkedSP:
    """Glue marked graphs along their marked edges; zeta values add."""
    if not terms:
        raise ValueError("marked_sum needs at least one operand")
    for t in terms:
        _require_proper(t, "marked_sum")
    return parallel(*terms)


def _map_leaves(g: MarkedSP, leaf: MarkedSP) -> MarkedSP:
    if g.kind == "L":
        return leaf
    if g.kind == "O":
        return g
    return _compose(g.kind, (_map_leaves(c, leaf) for c in g.children))


def _swap(g: MarkedSP) -> MarkedSP:
    if not g.children:
        return g
    kind = "P" if g.kind == "S" else "S"
    return MarkedSP(kind, tuple(_swap(c) for c in g.children))


def dual(g: MarkedSP) -> MarkedSP:
    """Plane dual of a proper series-parallel marked graph."""
    _require_proper(g, "dual")
    return _swap(g)


_DOUBLED = MarkedSP("P", (LEAF, LEAF))
_HALVED = MarkedSP("S", (LEAF, LEAF))


def double(g: MarkedSP) -> MarkedSP:
    """Duplicate every non-marked edge (zeta doubles)."""
    _require_proper(g, "double")
    return _map_leaves(g, _DOUBLED)


def halve(g: MarkedSP) -> MarkedSP:
    """Subdivide every non-marked edge (zeta halves)."""
    _require_proper(g, "halve")
    return _map_leaves(g, _HALVED)


def simplify(g: MarkedSP) -> MarkedSP:
    """Doubling followed by halving; zeta is unchanged and the result is simple."""
    return halve(double(g))


def term_is_simple(g: MarkedSP) -> bool:
    """Whether ``materialize(g)`` has no repeated edge, read off the term.

    Two edges share endpoints only as leaf children of one ``P`` node, or as
    a leaf at the top level next to the marked edge.
    """
    if g.kind == "L":
        return False
    if g.kind == "P" and any(c.kind == "L" for c in g.children):
        return False
    stack = [g]
    while stack:
        t = stack.pop()
        if t.kind == "P" and sum(c.kind == "L" for c in t.children) > 1:
            return False
        stack.extend(c for c in t.children if c.children)
    return True


def zeta_sp(g: MarkedSP) -> Fraction:
    return g.zeta


def parse_term(text: str) -> MarkedSP:
    """Parse the text form produced by ``str(term)``, e.g. ``S(P(L,L,L),L,L)``."""
    s = text.replace(" ", "")
    pos = 0

    def node() -> MarkedSP:
        nonlocal pos
        if pos >= len(s):
            raise ValueError(f"unexpected end of term {text!r}")
        ch = s[pos]
        pos += 1
        if ch in "OL":
            return OPEN if ch == "O" else LEAF
        if ch not in "SP" or pos >= len(s) or s[pos] != "(":
            raise ValueError(f"bad term syntax at offset {pos - 1} in {text!r}")
        pos += 1
        kids = [node()]
        while pos < len(s) and s[pos] == ",":
            pos += 1
            kids.append(node())
        if pos >= len(s) or s[pos] != ")":
            raise ValueError(f"missing ')' in {text!r}")
        pos += 1
        return _compose(ch, kids)

    out = node()
    if pos != len(s):
        raise ValueError(f"trailing characters in {text!r}")
    return out


# ---------------------------------------------------------------------------
# concrete graphs


@dataclass(frozen=True)
class MarkedGraph:
    """A loopless multigraph on vertices ``0..n-1`` with one marked edge."""

    n: int
    edges: tuple[tuple[int, int], ...]
    marked: int

    def __post_init__(self) -> None:
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if not 0 <= self.marked < len(edges):
            raise ValueError("marked edge index out of range")
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{self.n - 1}")

    @property
    def marked_edge(self) -> tuple[int, int]:
        return self.edges[self.marked]

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def faces(self) -> int:
        """Face count of a connected plane embedding (Euler's formula)."""
        return len(self.edges) - self.n + 2

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges], "marked": self.marked}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> "MarkedGraph":
        return cls(int(data["n"]), tuple(tuple(e) for e in data["edges"]), int(data["marked"]))

    @classmethod
    def loads(cls, text: str) -> "MarkedGraph":
        return cls.from_json(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines.extend(f"  {i};" for i in range(self.n))
        for i, (u, v) in enumerate(self.edges):
            style = ' [style=bold, penwidth=3, color="red"]' if i == self.marked else ""
            lines.append(f"  {u} -- {v}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def materialize(g: MarkedSP) -> MarkedGraph:
    """Build the concrete marked graph of a term.

    Terminals are vertices 0 and 1, internal vertices are numbered in term
    preorder, and the marked edge ``(0, 1)`` is the last edge.
    """
    edges: list[tuple[int, int]] = []
    next_vertex = 2
    stack: list[tuple[MarkedSP, int, int]] = [(g, 0, 1)]
    while stack:
        t, u, v = stack.pop()
        if t.kind == "L":
            edges.append((u, v))
        elif t.kind == "P":
            stack.extend((c, u, v) for c in reversed(t.children))
        elif t.kind == "S":
            m = len(t.children)
            mids = list(range(next_vertex, next_vertex + m - 1))
            next_vertex += m - 1
            ends = [u, *mids, v]
            stack.extend(
                (t.children[i], ends[i], ends[i + 1]) for i in reversed(range(m))
            )
    edges.append((0, 1))
    return MarkedGraph(next_vertex, tuple(edges), len(edges) - 1)


class _DSU:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.components = n

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.components -= 1
        return True


def is_connected(g: MarkedGraph, skip: int | None = None) -> bool:
    dsu = _DSU(g.n)
    for i, (u, v) in enumerate(g.edges):
        if i != skip:
            dsu.union(u, v)
    return dsu.components == 1


def is_simple(g: MarkedGraph) -> bool:
    seen = set()
    for u, v in g.edges:
        key = (u, v) if u < v else (v, u)
        if key in seen:
            return False
        seen.add(key)
    return True


def is_proper(g: MarkedGraph) -> bool:
    """Connected, and the marked edge is not a bridge."""
    return is_connected(g) and is_connected(g, skip=g.marked)


def random_term(rng, max_leaves: int, *, p_series: float = 0.5) -> MarkedSP:
    """A random Open-free term with between 1 and ``max_leaves`` leaves.

    Used by tests and demos; the distribution is not uniform over terms.
    """
    def build(budget: int) -> MarkedSP:
        if budget == 1 or rng.random() < 0.2:
            return LEAF
        parts = rng.randint(2, min(4, budget))
        cuts = sorted(rng.sample(range(1, budget), parts - 1))
        sizes = [b - a for a, b in zip([0, *cuts], [*cuts, budget])]
        kids = [build(s) for s in sizes]
        return series(*kids) if rng.random() < p_series else parallel(*kids)

    return build(rng.randint(1, max_leaves))
