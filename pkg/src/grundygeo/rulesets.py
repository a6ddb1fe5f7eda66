"""Concrete impartial rulesets: Nim, Star(k), Node Kayles and explicit DAG
games."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import GameDag


@dataclass(frozen=True)
class Nim:
    """Multi-pile Nim.  A move takes one or more stones from a single pile.

    Options are listed pile by pile (in the given pile order), each pile
    reduced to every smaller count from high to low.  The key sorts the
    piles descending and drops empty ones, so permuted positions coincide.
    """

    piles: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "piles", tuple(int(p) for p in self.piles))
        if any(p < 0 for p in self.piles):
            raise ValueError(f"negative pile in {self.piles}")

    def options(self):
        out = []
        for i, p in enumerate(self.piles):
            for smaller in range(p - 1, -1, -1):
                out.append(Nim(self.piles[:i] + (smaller,) + self.piles[i + 1 :]))
        return out

    def is_terminal(self):
        return not any(self.piles)

    def key(self):
        return b"nim:" + ",".join(str(p) for p in sorted(self.piles, reverse=True) if p).encode()

    def size(self):
        # unary stone count; tree height equals this
        return sum(self.piles)


def nim_options(p: Nim) -> list[Nim]:
    return p.options()


def star_game(k: int) -> Nim:
    """The game ``*k``: a single Nim pile of ``k`` stones."""
    if k < 0:
        raise ValueError("star size must be non-negative")
    return Nim((k,))


@dataclass(frozen=True)
class NodeKayles:
    """Node Kayles on an undirected simple graph.

    A move picks a vertex and removes it together with its neighbours.
    Vertex labels are kept; no isomorphism canonization.
    """

    vertices: frozenset
    edges: frozenset  # of frozenset({u, v})

    @classmethod
    def from_edges(cls, vertices, edges) -> "NodeKayles":
        vs = frozenset(vertices)
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if u not in vs or v not in vs:
                raise ValueError(f"edge ({u!r}, {v!r}) leaves the vertex set")
            es.add(frozenset((u, v)))
        return cls(vs, frozenset(es))

    @classmethod
    def path(cls, n: int) -> "NodeKayles":
        return cls.from_edges(range(n), [(i, i + 1) for i in range(n - 1)])

    def neighbours(self, v):
        return {w for e in self.edges if v in e for w in e if w != v}

    def options(self):
        out = []
        for v in sorted(self.vertices, key=_vertex_order):
            gone = self.neighbours(v) | {v}
            out.append(
                NodeKayles(self.vertices - gone, frozenset(e for e in self.edges if not e & gone))
            )
        return out

    def is_terminal(self):
        return not self.vertices

    def key(self):
        vs = ",".join(repr(v) for v in sorted(self.vertices, key=_vertex_order))
        es = ",".join(
            repr(tuple(sorted(e, key=_vertex_order)))
            for e in sorted(self.edges, key=lambda e: sorted(map(_vertex_order, e)))
        )
        return f"kayles:{vs}|{es}".encode()

    def size(self):
        return len(self.vertices)

    def sorted_edges(self):
        return sorted(
            (tuple(sorted(e, key=_vertex_order)) for e in self.edges),
            key=lambda e: (_vertex_order(e[0]), _vertex_order(e[1])),
        )


def kayles_options(p: NodeKayles) -> list[NodeKayles]:
    return p.options()


def _vertex_order(v):
    # ints before strings, each in natural order
    return (isinstance(v, str), v)


@dataclass(frozen=True)
class DagGame:
    """A position in an explicit game DAG: the universal carrier format."""

    dag: GameDag
    current: int

    def __post_init__(self):
        if not 0 <= self.current < len(self.dag.children):
            raise KeyError(f"unknown node id {self.current}")

    @classmethod
    def root(cls, dag: GameDag) -> "DagGame":
        return cls(dag, dag.start)

    def options(self):
        return [DagGame(self.dag, c) for c in self.dag.children[self.current]]

    def is_terminal(self):
        return not self.dag.children[self.current]

    def key(self):
        # positions of one DAG share the object, so the node id suffices
        return b"dag:%d" % self.current

    def size(self):
        return len(self.dag)


def dag_options(p: DagGame) -> list[DagGame]:
    return p.options()


def dag_from_children(children, start: int = 0) -> GameDag:
    """Wrap a raw adjacency list (node id -> child ids) as a GameDag."""
    children = tuple(tuple(int(c) for c in cs) for cs in children)
    for cs in children:
        for c in cs:
            if not 0 <= c < len(children):
                raise ValueError(f"child id {c} out of range")
    dag = GameDag(tuple(b"node:%d" % i for i in range(len(children))), children, start)
    dag.heights  # noqa: B018 - raises on cycles
    return dag


def all_kayles_graphs(n: int):
    """Every labelled simple graph on vertices 0..n-1 (for exhaustive tests)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield NodeKayles.from_edges(range(n), [p for i, p in enumerate(pairs) if mask >> i & 1])
