"""Constraint graph of a formula and the structural queries used for branching."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Union

from .formula import Formula, var_of


@dataclass(frozen=True)
class ConstraintGraph:
    """Undirected co-occurrence graph on the variables occurring in a formula."""

    adjacency: Mapping[int, frozenset[int]]

    @property
    def vertices(self) -> list[int]:
        return sorted(self.adjacency)

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self.adjacency[v]
        except KeyError:
            raise KeyError(f"variable {v} is not a vertex of the graph") from None

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices for v in sorted(self.adjacency[u]) if u < v]

    def to_dot(self) -> str:
        lines = ["graph constraints {"]
        lines += [f"  {v};" for v in self.vertices]
        lines += [f"  {u} -- {v};" for u, v in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_graph(f: Formula) -> ConstraintGraph:
    adj: dict[int, set[int]] = {v: set() for v in f.variables}
    for clause in f.clauses:
        for a, b in combinations(clause, 2):
            u, v = var_of(a), var_of(b)
            adj[u].add(v)
            adj[v].add(u)
    return ConstraintGraph({v: frozenset(ns) for v, ns in adj.items()})


def degree(g: ConstraintGraph, v: int) -> int:
    return len(g.neighbors(v))


def formula_degree(g: ConstraintGraph) -> int:
    return max((len(ns) for ns in g.adjacency.values()), default=0)


def connected_vertex_sets(g: ConstraintGraph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, ordered by least id."""
    seen: set[int] = set()
    out = []
    for start in g.vertices:
        if start in seen:
            continue
        seen.add(start)
        stack, comp = [start], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in g.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        out.append(sorted(comp))
    return out


def components(f: Formula, g: ConstraintGraph | None = None) -> list[tuple[Formula, ConstraintGraph]]:
    """Split ``f`` into variable-disjoint connected parts.

    Each empty clause becomes its own part, listed first.  Parts keep the
    original variable ids; a part's declared universe is its largest id.
    A formula without clauses yields itself as the only part.
    """
    if g is None:
        g = build_graph(f)
    if not f.clauses:
        return [(f, g)]
    owner = {}
    vertex_sets = connected_vertex_sets(g)
    for index, comp in enumerate(vertex_sets):
        for v in comp:
            owner[v] = index
    groups: list[list[tuple[int, ...]]] = [[] for _ in vertex_sets]
    parts = []
    for clause in f.clauses:
        if not clause:
            parts.append((Formula.of([()], 0), ConstraintGraph({})))
        else:
            groups[owner[var_of(clause[0])]].append(clause)
    for comp, clauses in zip(vertex_sets, groups):
        sub = Formula.of(clauses, max(comp))
        parts.append((sub, ConstraintGraph({v: g.adjacency[v] for v in comp})))
    return parts


def l_value(g: ConstraintGraph, x: int) -> int:
    """Number of neighbours of ``x`` adjacent to something outside x's closed neighbourhood."""
    near = g.neighbors(x)
    closed = near | {x}
    return sum(1 for u in near if not g.adjacency[u] <= closed)


def u_of(g: ConstraintGraph, x: int) -> int:
    """The single neighbour of ``x`` that reaches outside its closed neighbourhood."""
    near = g.neighbors(x)
    closed = near | {x}
    reaching = [u for u in sorted(near) if not g.adjacency[u] <= closed]
    if len(reaching) != 1:
        raise ValueError(f"U({x}) undefined: {len(reaching)} neighbours reach outside")
    return reaching[0]


@dataclass(frozen=True)
class PathShape:
    order: tuple[int, ...]


@dataclass(frozen=True)
class CycleShape:
    order: tuple[int, ...]


@dataclass(frozen=True)
class OtherShape:
    pass


Shape = Union[PathShape, CycleShape, OtherShape]


def classify_component(g: ConstraintGraph) -> Shape:
    """Classify a connected graph as a path, a cycle, or neither.

    Orders start at the lowest-id endpoint (paths) or the lowest-id vertex
    walking towards its smaller neighbour (cycles).
    """
    verts = g.vertices
    if not verts or formula_degree(g) > 2:
        return OtherShape()
    ends = [v for v in verts if len(g.adjacency[v]) < 2]
    start = ends[0] if ends else verts[0]
    order = [start]
    prev, cur = None, start
    while True:
        nxt = sorted(v for v in g.adjacency[cur] if v != prev)
        if not nxt or nxt[0] == start:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    if len(order) != len(verts):
        raise ValueError("graph is not connected")
    return PathShape(tuple(order)) if ends else CycleShape(tuple(order))


def split_vertex(shape: PathShape) -> int:
    """Vertex at 1-based position ceil(n/2), leaving sides of ceil(n/2)-1 and floor(n/2)."""
    n = len(shape.order)
    return shape.order[(n + 1) // 2 - 1]
