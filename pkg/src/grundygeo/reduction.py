"""Compile an explicitly enumerable impartial game into one Generalized
Geography position with the same nimber.

Layout of the output graph, for ``g = min(height, root option count)``:

* one gadget per ``i`` in ``0..g``: ``b_i -> a_i -> s_i -> tail``, where the
  value at ``b_i`` is ``*`` exactly when the game equals ``*i`` and ``0``
  otherwise;
* a shared chain ``t_0..t_{g-2}`` with ``t_i -> t_j`` for all ``j < i``;
* ``c_i`` (``i >= 1``) with edges to ``b_i`` and ``t_1..t_{i-2}``;
* ``d_i`` (``i >= 2``) with edges to ``b_1`` and ``c_2..c_i``;
* ``start`` with edges to ``b_0``, ``c_1`` and every ``d_i``.

In ``product`` mode the tail after ``s_i`` is the full position graph of
``G + *i`` embedded as Geography (``s_i`` is then ``*`` iff ``G + *i`` is a
second-player win, i.e. iff ``G = *i``).  ``trusted`` mode asks the solver
for the nimber and wires ``s_i`` as a leaf or as a single edge to a leaf.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Budget, Game, GameDag, SumGame, _budget, build_dag, topological_order
from .geography import GeoGraph

MODES = ("product", "trusted")


@dataclass
class GadgetBundle:
    """A fragment of a Geography graph plus its entry vertex."""

    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    labels: dict = field(default_factory=dict)
    entry: object = None

    def add(self, v, label=None):
        self.vertices.append(v)
        if label is not None:
            self.labels[v] = label
        return v

    def merge(self, other: "GadgetBundle") -> None:
        self.vertices += other.vertices
        self.edges += other.edges
        self.labels.update(other.labels)

    def as_geography(self, token=None) -> GeoGraph:
        return GeoGraph(
            frozenset(self.vertices),
            frozenset(self.edges),
            self.entry if token is None else token,
            dict(self.labels),
        )


def grundy_bound(d: GameDag) -> int:
    """``min(height, number of moves at the root)``; bounds the nimber."""
    return min(d.height, len(d.children[d.start]))


def build_t_chain(g: int) -> GadgetBundle:
    """Vertices ``t_0..t_{g-2}`` with ``t_i -> t_j`` for every ``j < i``,
    so the token at ``t_i`` is worth ``*i``.  Empty for ``g < 2``."""
    chain = GadgetBundle()
    for i in range(g - 1):
        chain.add(f"t_{i}", f"t_{i}")
        chain.edges += [(f"t_{i}", f"t_{j}") for j in range(i)]
    chain.entry = f"t_{g - 2}" if g >= 2 else None
    return chain


def topo_nodes(d: GameDag) -> list[int]:
    """Nodes reachable from the start of ``d``."""
    return topological_order(d.children, d.start)


def product_with_star(d: GameDag, i: int, budget: Budget | int | None = None) -> GameDag:
    """Position DAG of ``G + *i`` for a game DAG ``G``, built directly.

    Node ``(x, j)`` (``x`` a reachable node of ``d`` with rank ``r`` among
    them, ``j`` stones left) gets id ``r * (i + 1) + (i - j)``; moves in ``G`` come first, then the star
    moves from the largest remaining pile down, as ``SumGame`` orders them.
    """
    budget = _budget(budget)
    w = i + 1
    reach = sorted(topo_nodes(d))
    budget.check(len(reach) * w)
    pos = {x: r for r, x in enumerate(reach)}
    keys = []
    children = []
    for x in reach:
        for j in range(i, -1, -1):
            keys.append(b"%d*%d" % (x, j))
            children.append(
                tuple(pos[c] * w + (i - j) for c in d.children[x])
                + tuple(pos[x] * w + (i - s) for s in range(j - 1, -1, -1))
            )
    return GameDag(tuple(keys), tuple(children), pos[d.start] * w)


def build_qi_gadget(
    d: GameDag,
    i: int,
    mode: str = "product",
    budget: Budget | int | None = None,
    nimber: int | None = None,
) -> GadgetBundle:
    """Gadget whose entry ``b_i`` is worth ``*`` iff the game equals ``*i``.

    ``nimber`` lets trusted mode reuse an already computed value.
    """
    if i < 0:
        raise ValueError("gadget index must be non-negative")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    q = GadgetBundle()
    b, a, s = q.add(f"b_{i}", f"b_{i}"), q.add(f"a_{i}", f"a_{i}"), q.add(f"s_{i}", f"s_{i}")
    q.edges += [(b, a), (a, s)]
    q.entry = b
    if mode == "product":
        tail = product_with_star(d, i, budget)
        ids = [q.add(f"p{i}_{n}", "payload") for n in range(len(tail))]
        q.edges.append((s, ids[tail.start]))
        q.edges += sorted({(ids[u], ids[v]) for u, v in tail.edges()})
    else:
        if nimber is None:
            nimber = d.nimber()
        if nimber == i:
            leaf = q.add(f"p{i}_0", "payload")
            q.edges.append((s, leaf))
    return q


def reduce_to_geography(
    game: Game | GameDag,
    mode: str = "product",
    budget: Budget | int | None = None,
) -> GeoGraph:
    """Geography position (token at ``start``) with the game's nimber.

    ``budget`` bounds the input DAG and every product tail separately.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    budget = _budget(budget)
    d = game if isinstance(game, GameDag) else build_dag(game, budget)
    g = grundy_bound(d)
    nimber = d.nimber() if mode == "trusted" else None

    out = GadgetBundle()
    start = out.add("start", "start")
    out.entry = start
    for i in range(g + 1):
        out.merge(build_qi_gadget(d, i, mode, budget, nimber))
    # t_1..t_{g-2} are the only chain vertices any c_i uses; t_0 is reachable
    # through t_1, so the chain is only worth adding from g = 3 on
    if g >= 3:
        out.merge(build_t_chain(g))
    for i in range(1, g + 1):
        c = out.add(f"c_{i}", f"c_{i}")
        out.edges.append((c, f"b_{i}"))
        out.edges += [(c, f"t_{j}") for j in range(1, i - 1)]
    for i in range(2, g + 1):
        dv = out.add(f"d_{i}", f"d_{i}")
        out.edges.append((dv, "b_1"))
        out.edges += [(dv, f"c_{j}") for j in range(2, i + 1)]
    out.edges.append((start, "b_0"))
    if g >= 1:
        out.edges.append((start, "c_1"))
    out.edges += [(start, f"d_{i}") for i in range(2, g + 1)]
    return out.as_geography()


def encode_xor(g1: Game, g2: Game, mode: str = "product", budget: Budget | int | None = None) -> GeoGraph:
    """Geography position worth ``nimber(g1) XOR nimber(g2)``."""
    return reduce_to_geography(SumGame(g1, g2), mode, budget)


def output_size_bound(d: GameDag, g: int | None = None) -> int:
    """A-priori vertex count bound for product-mode output.

    ``G + *i`` has exactly ``|G| * (i + 1)`` positions, so the tails sum to
    ``|G| * (g + 1) * (g + 2) / 2``.
    """
    if g is None:
        g = grundy_bound(d)
    tails = len(topo_nodes(d)) * (g + 1) * (g + 2) // 2
    return 3 * (g + 1) + tails + max(g - 1, 0) + g + max(g - 1, 0) + 1
