"""Generalized Geography: graph positions, vertex and edge move rules, the
DAG embedding, JSON/DOT serialization and the small-graph nimber sweep."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations

from .core import Budget, GameDag, _budget, mex, topological_order


def _order(v):
    return (isinstance(v, str), v)


@dataclass(frozen=True)
class GeoGraph:
    """A directed graph with a token: one Generalized Geography position.

    ``labels`` optionally tags vertices with their role in a construction
    (``start``, ``b_3``, ``t_1``, ``payload``, ...).
    """

    vertices: frozenset
    edges: frozenset
    token: object
    labels: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset((u, v) for u, v in self.edges))
        if self.token not in self.vertices:
            raise ValueError(f"token {self.token!r} is not a vertex")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u!r}, {v!r}) has an endpoint outside the graph")
        for v in self.labels:
            if v not in self.vertices:
                raise ValueError(f"label on unknown vertex {v!r}")

    def __eq__(self, other):
        if not isinstance(other, GeoGraph):
            return NotImplemented
        return (self.vertices, self.edges, self.token, self.labels) == (
            other.vertices,
            other.edges,
            other.token,
            other.labels,
        )

    def __hash__(self):
        return hash((self.vertices, self.edges, self.token))

    @cached_property
    def successors(self) -> dict:
        out = {v: [] for v in self.vertices}
        for u, v in sorted(self.edges, key=lambda e: (_order(e[0]), _order(e[1]))):
            out[u].append(v)
        return out

    def sorted_vertices(self):
        return sorted(self.vertices, key=_order)

    def sorted_edges(self):
        return sorted(self.edges, key=lambda e: (_order(e[0]), _order(e[1])))

    def with_token(self, v) -> "GeoGraph":
        return GeoGraph(self.vertices, self.edges, v, self.labels)

    def vertex_named(self, label):
        """The vertex carrying ``label`` (labels are unique per construction)."""
        for v, tag in self.labels.items():
            if tag == label:
                return v
        raise KeyError(label)

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except ValueError:
            return False
        return True

    def topological_order(self) -> list:
        vs = self.sorted_vertices()
        idx = {v: i for i, v in enumerate(vs)}
        children = [[idx[w] for w in self.successors[v]] for v in vs]
        return [vs[i] for i in topological_order(children)]


def geo_options(g: GeoGraph) -> list[GeoGraph]:
    """Vertex Geography moves: delete the token's vertex, slide along an edge."""
    rest = g.vertices - {g.token}
    edges = frozenset(e for e in g.edges if g.token not in e)
    labels = {v: t for v, t in g.labels.items() if v != g.token}
    return [GeoGraph(rest, edges, v, labels) for v in g.successors[g.token]]


def edge_geo_options(g: GeoGraph) -> list[GeoGraph]:
    """Edge Geography moves: delete only the traversed edge."""
    return [GeoGraph(g.vertices, g.edges - {(g.token, v)}, v, g.labels) for v in g.successors[g.token]]


class _Board:
    """Static adjacency shared by every position of one Geography game."""

    def __init__(self, graph: GeoGraph):
        self.graph = graph
        self.successors = graph.successors
        self.acyclic = graph.is_acyclic()
        self.order = {v: i for i, v in enumerate(graph.sorted_vertices())}

    def reach(self, token, removed) -> frozenset:
        seen = {token}
        stack = [token]
        while stack:
            for w in self.successors[stack.pop()]:
                if w not in removed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)


@dataclass(frozen=True, eq=False)
class VertexGeography:
    """Play position of vertex Geography over a fixed starting graph.

    ``removed`` holds the vertices deleted so far (the path played).  With
    ``prune`` (default) the key keeps only the live vertices reachable from
    the token, since nothing else can affect play.  On an acyclic board
    that set never loses a vertex, so the key reduces to the token.
    """

    board: _Board
    removed: frozenset
    token: object
    prune: bool = True

    @classmethod
    def of(cls, graph: GeoGraph, prune: bool = True) -> "VertexGeography":
        return cls(_Board(graph), frozenset(), graph.token, prune)

    def options(self):
        removed = self.removed | {self.token}
        return [
            VertexGeography(self.board, removed, v, self.prune)
            for v in self.board.successors[self.token]
            if v not in removed
        ]

    def is_terminal(self):
        return not self.options()

    @property
    def alive(self) -> frozenset:
        return self.board.graph.vertices - self.removed

    def key(self):
        order = self.board.order
        if self.prune and self.board.acyclic:
            return b"geo:%d" % order[self.token]
        if self.prune:
            ids = sorted(order[v] for v in self.board.reach(self.token, self.removed))
        else:
            ids = sorted(order[v] for v in self.removed)
            ids.append(-1)  # marks the removed-set form of the key
        return b"geo:%d|%s" % (order[self.token], ",".join(map(str, ids)).encode())

    def size(self):
        return len(self.board.graph.vertices) - len(self.removed)

    def graph(self) -> GeoGraph:
        alive = self.alive
        es = [(u, v) for u, v in self.board.graph.edges if u in alive and v in alive]
        labels = {v: t for v, t in self.board.graph.labels.items() if v in alive}
        return GeoGraph(alive, es, self.token, labels)


@dataclass(frozen=True, eq=False)
class EdgeGeography:
    """Play position of edge Geography: traversed edges disappear."""

    board: _Board
    alive: frozenset  # remaining edges
    token: object

    @classmethod
    def of(cls, graph: GeoGraph) -> "EdgeGeography":
        return cls(_Board(graph), graph.edges, graph.token)

    def options(self):
        return [
            EdgeGeography(self.board, self.alive - {(self.token, v)}, v)
            for v in self.board.successors[self.token]
            if (self.token, v) in self.alive
        ]

    def is_terminal(self):
        return not self.options()

    def key(self):
        order = self.board.order
        es = ",".join(f"{a}>{b}" for a, b in sorted((order[u], order[v]) for u, v in self.alive))
        return b"egeo:%d|%s" % (order[self.token], es.encode())

    def size(self):
        return len(self.alive)


def vertex_values(g: GeoGraph) -> dict:
    """Nimber of the Geography position with the token at each vertex.

    Only valid on acyclic graphs, where deleting visited vertices never
    changes what is reachable later.
    """
    values = {}
    for v in reversed(g.topological_order()):
        values[v] = mex(values[w] for w in g.successors[v])
    return values


def dag_as_geography(d: GameDag) -> GeoGraph:
    """Embed a game DAG as vertex Geography: same nodes, same moves."""
    topological_order(d.children)  # cyclic input raises ValueError
    vs = range(len(d.children))
    es = {(u, v) for u in vs for v in d.children[u]}
    return GeoGraph(frozenset(vs), frozenset(es), d.start)


# serialization ---------------------------------------------------------


def to_json_dict(g: GeoGraph) -> dict:
    return {
        "vertices": g.sorted_vertices(),
        "edges": [list(e) for e in g.sorted_edges()],
        "token": g.token,
        "labels": {str(v): g.labels[v] for v in sorted(g.labels, key=_order)},
    }


def from_json_dict(data: dict) -> GeoGraph:
    vertices = data["vertices"]
    if len(set(vertices)) != len(vertices):
        raise ValueError("duplicate vertex ids")
    by_str = {str(v): v for v in vertices}
    edges = [tuple(e) for e in data["edges"]]
    if any(len(e) != 2 for e in edges):
        raise ValueError("edges must be [u, v] pairs")
    if len(set(edges)) != len(edges):
        raise ValueError("parallel duplicate edges")
    labels = {}
    for k, tag in data.get("labels", {}).items():
        if k not in by_str:
            raise ValueError(f"label on unknown vertex {k!r}")
        labels[by_str[k]] = tag
    return GeoGraph(frozenset(vertices), frozenset(edges), data["token"], labels)


_ROLE_COLOURS = {
    "start": "gold",
    "b": "lightblue",
    "a": "lightcyan",
    "s": "palegreen",
    "t": "plum",
    "c": "orange",
    "d": "salmon",
    "payload": "lightgrey",
}


def _dot_id(v) -> str:
    return json.dumps(str(v))


def to_dot(g: GeoGraph, name: str = "geography") -> str:
    lines = [f"digraph {name} {{"]
    for v in g.sorted_vertices():
        attrs = []
        tag = g.labels.get(v)
        if tag is not None:
            attrs.append(f"label={json.dumps(tag)}")
            colour = _ROLE_COLOURS.get(tag.split("_")[0])
            if colour:
                attrs.append(f"style=filled fillcolor={colour}")
        if v == g.token:
            attrs.append("shape=doublecircle penwidth=2")
        lines.append(f"  {_dot_id(v)}" + (f" [{' '.join(attrs)}]" if attrs else "") + ";")
    for u, v in g.sorted_edges():
        lines.append(f"  {_dot_id(u)} -> {_dot_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(g: GeoGraph, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(to_json_dict(g), indent=1) + "\n").encode()
    if fmt == "dot":
        return to_dot(g).encode()
    raise ValueError(f"unknown format {fmt!r}")


def import_json(data: bytes | str) -> GeoGraph:
    return from_json_dict(json.loads(data))


# degree sweep ----------------------------------------------------------


@dataclass
class SweepReport:
    max_vertices: int
    degree_bound: int | None
    degree_mode: str
    max_nimber: int
    witness: GeoGraph | None
    graphs_checked: int
    positions_checked: int

    def as_dict(self) -> dict:
        return {
            "max_vertices": self.max_vertices,
            "degree_bound": self.degree_bound,
            "degree_mode": self.degree_mode,
            "max_nimber": self.max_nimber,
            "witness": None if self.witness is None else to_json_dict(self.witness),
            "graphs_checked": self.graphs_checked,
            "positions_checked": self.positions_checked,
        }


def _bounded_digraphs(n: int, bound: int | None, mode: str):
    """Out-neighbour bitmask tuples for every loop-free digraph on n vertices
    obeying the degree bound.  ``total``: in+out <= bound per vertex;
    ``inout``: in <= bound and out <= bound."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    big = bound is None
    outdeg = [0] * n
    indeg = [0] * n
    out = [0] * n

    def fits(u, v):
        if big:
            return True
        if mode == "total":
            return outdeg[u] + indeg[u] < bound and outdeg[v] + indeg[v] < bound
        return outdeg[u] < bound and indeg[v] < bound

    def rec(i):
        if i == len(pairs):
            yield tuple(out)
            return
        yield from rec(i + 1)
        u, v = pairs[i]
        if fits(u, v):
            outdeg[u] += 1
            indeg[v] += 1
            out[u] |= 1 << v
            yield from rec(i + 1)
            outdeg[u] -= 1
            indeg[v] -= 1
            out[u] ^= 1 << v

    yield from rec(0)


def _canonical_masks(out: tuple, perms) -> tuple:
    n = len(out)
    best = None
    for p in perms:
        img = [0] * n
        for u in range(n):
            m = out[u]
            row = 0
            for v in range(n):
                if m >> v & 1:
                    row |= 1 << p[v]
            img[p[u]] = row
        t = tuple(img)
        if best is None or t < best:
            best = t
    return best


def _bitmask_values(out: tuple) -> list[int]:
    """Nimber of vertex Geography from each token vertex (all vertices live)."""
    n = len(out)
    full = (1 << n) - 1
    memo: dict[tuple[int, int], int] = {}

    def value(alive: int, v: int) -> int:
        k = (alive, v)
        r = memo.get(k)
        if r is None:
            rest = alive & ~(1 << v)
            m = out[v] & rest
            opts = set()
            w = 0
            while m:
                if m & 1:
                    opts.add(value(rest, w))
                m >>= 1
                w += 1
            r = mex(opts)
            memo[k] = r
        return r

    return [value(full, v) for v in range(n)]


def max_nimber_sweep(
    max_vertices: int,
    degree_bound: int | None = None,
    degree_mode: str = "total",
    budget: Budget | int | None = None,
    up_to_isomorphism: bool = False,
) -> SweepReport:
    """Exhaustively evaluate every token placement on every small digraph.

    ``budget.nodes`` caps the number of graphs enumerated.
    """
    if degree_mode not in ("total", "inout"):
        raise ValueError(f"unknown degree mode {degree_mode!r}")
    budget = _budget(budget)
    best, witness = -1, None
    graphs = positions = 0
    for n in range(1, max_vertices + 1):
        perms = list(permutations(range(n))) if up_to_isomorphism else None
        seen: set = set()
        for out in _bounded_digraphs(n, degree_bound, degree_mode):
            if perms is not None:
                canon = _canonical_masks(out, perms)
                if canon in seen:
                    continue
                seen.add(canon)
            graphs += 1
            budget.check(graphs)
            values = _bitmask_values(out)
            positions += n
            top = max(values)
            if top > best:
                best = top
                edges = [(u, v) for u in range(n) for v in range(n) if out[u] >> v & 1]
                witness = GeoGraph(frozenset(range(n)), frozenset(edges), values.index(top))
    return SweepReport(max_vertices, degree_bound, degree_mode, max(best, 0), witness, graphs, positions)
