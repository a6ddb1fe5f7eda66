"""Impartial-game core: mex, nim-sum, budgets, the game protocol, the
memoized Grundy solver, disjunctive sums and explicit game DAGs."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Protocol, Sequence


DEFAULT_NODES = 250_000


class BudgetExceeded(Exception):
    """Raised when an exploration outgrows its node or wall-time budget."""


@dataclass
class Budget:
    """Explicit resource limits for any recursive exploration.

    ``nodes`` caps distinct positions (or tree nodes, for expansions);
    ``seconds`` caps wall time.  ``None`` disables a limit.
    """

    nodes: int | None = DEFAULT_NODES
    seconds: float | None = None
    _deadline: float | None = field(default=None, init=False, repr=False)

    def start(self) -> "Budget":
        self._deadline = None if self.seconds is None else time.monotonic() + self.seconds
        return self

    def check(self, count: int) -> None:
        if self.nodes is not None and count > self.nodes:
            raise BudgetExceeded(f"node budget of {self.nodes} exceeded")
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise BudgetExceeded(f"time budget of {self.seconds}s exceeded")


def _budget(budget: Budget | int | None) -> Budget:
    if budget is None:
        return Budget().start()
    if isinstance(budget, int):
        return Budget(nodes=budget).start()
    return budget.start()


def mex(values: Iterable[int]) -> int:
    """Least non-negative integer missing from ``values``."""
    seen = set(values)
    k = 0
    while k in seen:
        k += 1
    return k


def nim_sum(a: int, b: int) -> int:
    return a ^ b


class Game(Protocol):
    """A position together with its ruleset.

    ``key()`` must identify the position up to ruleset-level equality and
    carry a ruleset prefix so keys of different rulesets never collide.
    """

    def options(self) -> Sequence["Game"]: ...

    def is_terminal(self) -> bool: ...

    def key(self) -> bytes: ...

    def size(self) -> int: ...


@dataclass(frozen=True)
class SumGame:
    """Disjunctive sum: a move is made in exactly one component."""

    left: Game
    right: Game

    def options(self):
        return [SumGame(x, self.right) for x in self.left.options()] + [
            SumGame(self.left, y) for y in self.right.options()
        ]

    def is_terminal(self):
        return self.left.is_terminal() and self.right.is_terminal()

    def key(self):
        a, b = self.left.key(), self.right.key()
        return b"sum(%d:" % len(a) + a + b"," + b + b")"

    def size(self):
        return self.left.size() + self.right.size()


def disjunctive_sum(g1: Game, g2: Game) -> SumGame:
    return SumGame(g1, g2)


@dataclass(frozen=True)
class GameDag:
    """Deduplicated reachable-position graph of a game.

    ``children[n]`` lists one entry per move from node ``n``; a child id may
    repeat when distinct moves lead to equal positions.  Node ids are
    0..len-1 and ``start`` is the initial position.
    """

    keys: tuple[bytes, ...]
    children: tuple[tuple[int, ...], ...]
    start: int = 0

    def __len__(self):
        return len(self.keys)

    @property
    def heights(self) -> list[int]:
        return _heights(self.children)

    @property
    def height(self) -> int:
        return self.heights[self.start]

    @property
    def max_branching(self) -> int:
        return max((len(c) for c in self.children), default=0)

    def nimbers(self) -> list[int]:
        """Grundy value of every node, computed bottom-up."""
        values: list[int | None] = [None] * len(self.children)
        for n in topological_order(self.children, self.start, reverse=True):
            values[n] = mex(values[c] for c in self.children[n])
        return values  # type: ignore[return-value]

    def nimber(self) -> int:
        return self.nimbers()[self.start]

    def edges(self):
        return [(u, v) for u, cs in enumerate(self.children) for v in cs]


def topological_order(children, start=None, reverse=False) -> list[int]:
    """Nodes reachable from ``start`` in topological order (parents first).

    ``start=None`` covers every node.  Raises ``ValueError`` on a cycle.
    """
    order: list[int] = []
    state: dict[int, int] = {}
    roots = range(len(children)) if start is None else [start]
    for root in roots:
        if root not in state:
            state[root] = 1
            _topo_from(children, root, state, order)
    if not reverse:
        order.reverse()
    return order


def _topo_from(children, root, state, order):
    stack = [(root, iter(children[root]))]
    while stack:
        node, it = stack[-1]
        for child in it:
            s = state.get(child)
            if s is None:
                state[child] = 1
                stack.append((child, iter(children[child])))
                break
            if s == 1:
                raise ValueError(f"cycle through node {child!r}")
        else:
            stack.pop()
            state[node] = 2
            order.append(node)


def _heights(children) -> list[int]:
    h = [0] * len(children)
    for n in topological_order(children, reverse=True):
        h[n] = 1 + max((h[c] for c in children[n]), default=-1)
    return h


def build_dag(game: Game, budget: Budget | int | None = None) -> GameDag:
    """Explore every reachable position of ``game`` once.

    Node ids are assigned in DFS discovery order, with options visited in
    the ruleset's order, so the result is deterministic.
    """
    budget = _budget(budget)
    index: dict[bytes, int] = {}
    keys: list[bytes] = []
    children: list[list[int] | None] = []

    def visit(g: Game) -> int:
        k = g.key()
        n = index.get(k)
        if n is None:
            n = index[k] = len(keys)
            keys.append(k)
            children.append(None)
            budget.check(len(keys))
            pending.append((n, g))
        return n

    pending: list[tuple[int, Game]] = []
    budget.check(1)
    visit(game)
    # explicit stack instead of recursion: game heights reach the thousands
    while pending:
        n, g = pending.pop()
        kids = []
        opts = list(g.options())
        for opt in opts:
            kids.append(visit(opt))
        children[n] = kids
    dag = GameDag(tuple(keys), tuple(tuple(c) for c in children), 0)  # type: ignore[arg-type]
    topological_order(dag.children, 0)  # rejects cyclic rulesets
    return dag


def nimber_of(game: Game, budget: Budget | int | None = None) -> int:
    """Grundy value by exhaustive memoized search over reachable positions.

    Raises :class:`BudgetExceeded` when the position space does not fit.
    """
    return build_dag(game, budget).nimber()


@dataclass(frozen=True)
class GameTree:
    """A rooted tree (no shared subtrees); node 0 is the root.

    ``origin[n]`` records where a node came from, e.g. the pair of factor
    nodes for a tree sum.
    """

    children: tuple[tuple[int, ...], ...]
    origin: tuple = ()
    start: int = 0

    def __len__(self):
        return len(self.children)

    @property
    def height(self) -> int:
        return _heights(self.children)[self.start]


def tree_of(dag: GameDag, budget: Budget | int | None = None) -> GameTree:
    """Tree expansion of a DAG: every shared subtree is duplicated."""
    return tree_sum_expand(dag, _LEAF_DAG, budget)


_LEAF_DAG = GameDag((b"leaf",), ((),), 0)


def tree_size(structure) -> int:
    """Number of nodes in the tree expansion of a DAG or tree."""
    children = structure.children
    size = [0] * len(children)
    for n in topological_order(children, structure.start, reverse=True):
        size[n] = 1 + sum(size[c] for c in children[n])
    return size[structure.start]


def tree_sum_expand(a, b, budget: Budget | int | None = None) -> GameTree:
    """Tree sum of two game DAGs/trees: the tree expansion of their
    Cartesian product, rooted at the pair of roots.

    The children of ``(x, y)`` are ``(x', y)`` for each child ``x'`` of
    ``x`` followed by ``(x, y')`` for each child ``y'`` of ``y``.
    """
    budget = _budget(budget)
    children: list[list[int]] = [[]]
    origin: list[tuple[int, int]] = [(a.start, b.start)]
    todo = [0]
    budget.check(1)
    while todo:
        n = todo.pop()
        x, y = origin[n]
        pairs = [(xc, y) for xc in a.children[x]] + [(x, yc) for yc in b.children[y]]
        for pair in pairs:
            children.append([])
            origin.append(pair)
            children[n].append(len(children) - 1)
            todo.append(len(children) - 1)
        budget.check(len(children))
    return GameTree(tuple(tuple(c) for c in children), tuple(origin), 0)
