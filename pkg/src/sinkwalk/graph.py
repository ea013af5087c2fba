"""Symmetric digraphs, maze parsing, generators and the start/goal/sink decoration."""

from __future__ import annotations

import enum
import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np


class GraphError(ValueError):
    """Raised for malformed mazes, edge lists and decoration requests."""


@dataclass(frozen=True)
class SymmetricDigraph:
    """Underlying graph of a maze.

    Every undirected edge ``i = (u, v)`` becomes the arc pair ``2i: u -> v`` and
    ``2i + 1: v -> u``, so ``inverse(a) = a ^ 1``.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    # grid mazes only: (row, col) of each vertex and the (height, width) of the text
    cells: tuple[tuple[int, int], ...] | None = field(default=None, compare=False)
    shape: tuple[int, int] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise GraphError("graph needs at least one vertex")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise GraphError(f"self-loop at vertex {u} in underlying graph")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"multiple edge {key}")
            seen.add(key)
        if not self._connected():
            raise GraphError("graph is not connected")

    @classmethod
    def from_edges(cls, vertex_count: int, edges, **kwargs) -> SymmetricDigraph:
        return cls(vertex_count, tuple((int(u), int(v)) for u, v in edges), **kwargs)

    @property
    def arc_count(self) -> int:
        return 2 * len(self.edges)

    def origin(self, a: int) -> int:
        u, v = self.edges[a >> 1]
        return u if a % 2 == 0 else v

    def terminal(self, a: int) -> int:
        u, v = self.edges[a >> 1]
        return v if a % 2 == 0 else u

    @staticmethod
    def inverse(a: int) -> int:
        return a ^ 1

    def out_arcs(self, v: int) -> list[int]:
        return self._out[v]

    def arc_between(self, u: int, v: int) -> int:
        for a in self._out[u]:
            if self.terminal(a) == v:
                return a
        raise GraphError(f"no arc {u} -> {v}")

    @cached_property
    def _out(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for a in range(self.arc_count):
            out[self.origin(a)].append(a)
        return out

    def _connected(self) -> bool:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count


class SinkPlacement(enum.Enum):
    AT_START = "start"
    AT_GOAL = "goal"


@dataclass(frozen=True)
class DecoratedGraph:
    """Underlying graph plus self-loops at start and goal and one sink vertex.

    Arc layout: base arcs ``0 .. 2|E|-1``, then the start loop, the goal loop,
    the sink arc ``d`` (into the sink) and its inverse ``dbar``. The sink vertex
    is ``base.vertex_count``.
    """

    base: SymmetricDigraph
    start: int
    goal: int
    sink_placement: SinkPlacement
    origin: np.ndarray = field(repr=False, compare=False)
    terminal: np.ndarray = field(repr=False, compare=False)
    inverse: np.ndarray = field(repr=False, compare=False)
    degree: np.ndarray = field(repr=False, compare=False)

    @property
    def self_loop_s(self) -> int:
        return self.base.arc_count

    @property
    def self_loop_g(self) -> int:
        return self.base.arc_count + 1

    @property
    def sink_arc(self) -> int:
        return self.base.arc_count + 2

    @property
    def sink_arc_rev(self) -> int:
        return self.base.arc_count + 3

    @property
    def sink_vertex(self) -> int:
        return self.base.vertex_count

    @property
    def arc_count(self) -> int:
        return self.base.arc_count + 4

    @property
    def vertex_count(self) -> int:
        return self.base.vertex_count + 1

    @property
    def sink_anchor(self) -> int:
        return self.start if self.sink_placement is SinkPlacement.AT_START else self.goal

    @property
    def bipartite(self) -> bool:
        return is_bipartite(self.base)

    def incoming(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.terminal == v)


def decorate(
    g: SymmetricDigraph,
    s: int,
    goal: int,
    placement: SinkPlacement | str = SinkPlacement.AT_START,
) -> DecoratedGraph:
    placement = SinkPlacement(placement)
    n = g.vertex_count
    if not (0 <= s < n and 0 <= goal < n):
        raise GraphError("start/goal out of range")
    if s == goal:
        raise GraphError("start and goal must be distinct vertices")
    anchor = s if placement is SinkPlacement.AT_START else goal
    sink = n
    origin = [g.origin(a) for a in range(g.arc_count)] + [s, goal, anchor, sink]
    terminal = [g.terminal(a) for a in range(g.arc_count)] + [s, goal, sink, anchor]
    base = g.arc_count
    inverse = [a ^ 1 for a in range(base)] + [base, base + 1, base + 3, base + 2]
    terminal_arr = np.asarray(terminal, dtype=np.intp)
    degree = np.bincount(terminal_arr, minlength=n + 1)
    return DecoratedGraph(
        base=g,
        start=s,
        goal=goal,
        sink_placement=placement,
        origin=np.asarray(origin, dtype=np.intp),
        terminal=terminal_arr,
        inverse=np.asarray(inverse, dtype=np.intp),
        degree=degree,
    )


# -- parsing -----------------------------------------------------------------


def parse_grid_maze(text: str) -> tuple[SymmetricDigraph, int, int]:
    """Parse an ASCII maze of ``#`` walls, ``.`` floor and one ``S`` and ``G``."""
    rows = [line.rstrip("\r") for line in text.strip("\n").split("\n")]
    if not rows or not rows[0]:
        raise GraphError("empty maze")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise GraphError("maze is not rectangular")
    ids: dict[tuple[int, int], int] = {}
    start = goal = None
    for r, line in enumerate(rows):
        for c, ch in enumerate(line):
            if ch not in "#.SG":
                raise GraphError(f"bad character {ch!r} at row {r}, col {c}")
            if ch == "#":
                continue
            ids[(r, c)] = len(ids)
            if ch == "S":
                if start is not None:
                    raise GraphError("duplicate start")
                start = ids[(r, c)]
            elif ch == "G":
                if goal is not None:
                    raise GraphError("duplicate goal")
                goal = ids[(r, c)]
    if start is None:
        raise GraphError("missing start")
    if goal is None:
        raise GraphError("missing goal")
    edges = []
    for (r, c), i in ids.items():
        for nb in ((r, c + 1), (r + 1, c)):
            if nb in ids:
                edges.append((i, ids[nb]))
    cells = tuple(ids)
    graph = SymmetricDigraph.from_edges(len(ids), edges, cells=cells, shape=(len(rows), width))
    return graph, start, goal


def parse_edge_list(text: str) -> tuple[SymmetricDigraph, int, int]:
    """Parse ``{"vertices": N, "edges": [[u, v], ...], "start": s, "goal": g}``."""
    try:
        data = json.loads(text)
        graph = SymmetricDigraph.from_edges(int(data["vertices"]), data["edges"])
        s, g = int(data["start"]), int(data["goal"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise GraphError(f"bad edge list: {exc}") from exc
    if not (0 <= s < graph.vertex_count and 0 <= g < graph.vertex_count):
        raise GraphError("start/goal out of range")
    return graph, s, g


def dump_edge_list(g: SymmetricDigraph, s: int, goal: int) -> str:
    return json.dumps(
        {"vertices": g.vertex_count, "edges": [list(e) for e in g.edges], "start": s, "goal": goal}
    )


def load_maze(text: str) -> tuple[SymmetricDigraph, int, int]:
    """Dispatch on content: JSON edge list if it starts with ``{``, grid otherwise."""
    if text.lstrip().startswith("{"):
        return parse_edge_list(text)
    return parse_grid_maze(text)


# -- generators --------------------------------------------------------------


def path_graph(n: int) -> SymmetricDigraph:
    return SymmetricDigraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SymmetricDigraph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return SymmetricDigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_random_tree(n: int, seed: int | None = None) -> SymmetricDigraph:
    """Random recursive tree: vertex ``i`` attaches to a uniform earlier vertex."""
    if n < 2:
        raise GraphError("tree needs at least 2 vertices")
    rng = random.Random(seed)
    return SymmetricDigraph.from_edges(n, [(rng.randrange(i), i) for i in range(1, n)])


@dataclass(frozen=True)
class LadderLayout:
    """Vertex walks of the route and of each rectangle in a generated ladder."""

    m: int
    l: int
    k: int
    route: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]


def ladder_layout(m: int, l: int, k: int) -> tuple[SymmetricDigraph, LadderLayout]:
    """Chain of ``k + 1`` rectangles with vertical rungs of length ``m``.

    Rectangle ``i`` spans columns ``i*l .. (i+1)*l`` and rows ``0 .. m``; neighbouring
    rectangles share a rung. Start hangs off the lower-left corner of rectangle 0 and
    goal off its upper-left corner, so the shortest route is ``s``, rung 0, ``g``.
    """
    if m < 1 or l < 1 or k < 0:
        raise GraphError("ladder needs m >= 1, l >= 1, k >= 0")
    width = l * (k + 1)
    rung_cols = {i * l for i in range(k + 2)}
    cells = [(x, y) for y in range(m + 1) for x in range(width + 1) if y in (0, m) or x in rung_cols]
    index = {"s": 0}
    for cell in cells:
        index[cell] = len(index)
    index["g"] = len(index)

    edges = [(index["s"], index[(0, 0)])]
    for y in (0, m):
        edges += [(index[(x, y)], index[(x + 1, y)]) for x in range(width)]
    for x in sorted(rung_cols):
        edges += [(index[(x, y)], index[(x, y + 1)]) for y in range(m)]
    edges.append((index[(0, m)], index["g"]))
    graph = SymmetricDigraph.from_edges(len(index), edges)

    route = (index["s"], *(index[(0, y)] for y in range(m + 1)), index["g"])
    cycles = []
    for i in range(k + 1):
        x0, x1 = i * l, (i + 1) * l
        walk = [(x, 0) for x in range(x0, x1)]
        walk += [(x1, y) for y in range(m)]
        walk += [(x, m) for x in range(x1, x0, -1)]
        walk += [(x0, y) for y in range(m, 0, -1)]
        cycles.append(tuple(index[c] for c in walk))
    return graph, LadderLayout(m, l, k, route, tuple(cycles))


def walk_arcs(g: SymmetricDigraph, walk, closed: bool = False) -> list[int]:
    """Arc ids along a vertex walk, optionally closing it back to the first vertex."""
    hops = list(zip(walk, walk[1:]))
    if closed:
        hops.append((walk[-1], walk[0]))
    return [g.arc_between(u, v) for u, v in hops]


def alternating_signs(g: SymmetricDigraph, walk, closed: bool = False) -> dict[int, int]:
    """Signs ``(-1)**i`` on the i-th arc of a vertex walk and on its inverse (1-based)."""
    signs = {}
    for i, a in enumerate(walk_arcs(g, walk, closed), start=1):
        signs[a] = signs[a ^ 1] = (-1) ** i
    return signs


def make_ladder(m: int, l: int, k: int) -> tuple[SymmetricDigraph, int, int]:
    graph, layout = ladder_layout(m, l, k)
    # route vector carries the two self-loops on top of its base arcs
    xi = alternating_signs(graph, layout.route)
    gamma0 = alternating_signs(graph, layout.cycles[0], closed=True)
    overlap = abs(sum(xi[a] * gamma0.get(a, 0) for a in xi))
    overlap /= math.sqrt(len(xi) + 2) * math.sqrt(len(gamma0))
    expected = m / math.sqrt(2 * (l + m) * (m + 3))
    assert len(xi) + 2 == 2 * (m + 3), "route length drifted from m + 2 edges"
    assert math.isclose(overlap, expected, rel_tol=1e-12), (overlap, expected)
    return graph, layout.route[0], layout.route[-1]


# -- classical oracles -------------------------------------------------------


def bfs_shortest_path(g: SymmetricDigraph, s: int, t: int) -> list[int]:
    """Arc ids of a shortest ``s``-``t`` path; ties go to the smallest arc id."""
    if s == t:
        return []
    parent: dict[int, int] = {s: -1}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for a in sorted(g.out_arcs(v)):
            w = g.terminal(a)
            if w in parent:
                continue
            parent[w] = a
            if w == t:
                path = []
                while w != s:
                    a = parent[w]
                    path.append(a)
                    w = g.origin(a)
                return path[::-1]
            queue.append(w)
    raise GraphError(f"no path from {s} to {t}")


def path_vertices(g: SymmetricDigraph, s: int, arcs: list[int]) -> list[int]:
    return [s] + [g.terminal(a) for a in arcs]


def is_bipartite(g: SymmetricDigraph) -> bool:
    colour = [-1] * g.vertex_count
    colour[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for a in g.out_arcs(v):
            w = g.terminal(a)
            if colour[w] < 0:
                colour[w] = 1 - colour[v]
                queue.append(w)
            elif colour[w] == colour[v]:
                return False
    return True


def betti_number(g: SymmetricDigraph) -> int:
    return len(g.edges) - g.vertex_count + 1
