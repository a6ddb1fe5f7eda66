"""Self-describing JSON container for every game kind.

    {"ruleset": "nim", "payload": {"piles": [1, 2, 3]}, "metadata": {...}}

Payloads by ruleset tag:

* ``nim``:            ``{"piles": [int, ...]}``
* ``star``:           ``{"k": int}``
* ``kayles``:         ``{"vertices": [id, ...], "edges": [[u, v], ...]}``
* ``dag``:            ``{"children": [[int, ...], ...], "start": int}``
* ``geography``, ``edge-geography``:
                      ``{"vertices": [...], "edges": [[u, v], ...], "token": id, "labels": {id: tag}}``
* ``sum``:            ``{"left": GameFile, "right": GameFile}``

A bare Geography object (no ``ruleset`` key) is also accepted on input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core import GameDag, SumGame
from .geography import EdgeGeography, GeoGraph, VertexGeography, from_json_dict, to_json_dict
from .rulesets import DagGame, Nim, NodeKayles, dag_from_children

RULESETS = ("nim", "star", "kayles", "dag", "geography", "edge-geography", "sum")


class GameFileError(ValueError):
    """Malformed or schema-violating game file."""


@dataclass
class GameFile:
    ruleset: str
    payload: dict
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"ruleset": self.ruleset, "payload": self.payload}
        if self.metadata:
            d["metadata"] = self.metadata
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    def game(self):
        """Instantiate the playable position."""
        return _build(self)


def _need(payload, key, kind):
    try:
        return payload[key]
    except (KeyError, TypeError):
        raise GameFileError(f"{kind} payload needs {key!r}") from None


def _int_list(xs, what):
    if not isinstance(xs, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in xs):
        raise GameFileError(f"{what} must be a list of integers")
    return xs


def _build(f: GameFile):
    p = f.payload
    try:
        if f.ruleset == "nim":
            return Nim(tuple(_int_list(_need(p, "piles", "nim"), "piles")))
        if f.ruleset == "star":
            k = _need(p, "k", "star")
            if not isinstance(k, int) or k < 0:
                raise GameFileError("star k must be a non-negative integer")
            return Nim((k,))
        if f.ruleset == "kayles":
            edges = [tuple(e) for e in _need(p, "edges", "kayles")]
            return NodeKayles.from_edges(_need(p, "vertices", "kayles"), edges)
        if f.ruleset == "dag":
            children = _need(p, "children", "dag")
            if not isinstance(children, list):
                raise GameFileError("dag children must be a list of lists")
            dag = dag_from_children([_int_list(c, "dag children") for c in children], p.get("start", 0))
            return DagGame.root(dag)
        if f.ruleset == "geography":
            return VertexGeography.of(from_json_dict(p))
        if f.ruleset == "edge-geography":
            return EdgeGeography.of(from_json_dict(p))
        if f.ruleset == "sum":
            return SumGame(parse(_need(p, "left", "sum")).game(), parse(_need(p, "right", "sum")).game())
    except GameFileError:
        raise
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise GameFileError(f"invalid {f.ruleset} payload: {exc}") from exc
    raise GameFileError(f"unknown ruleset {f.ruleset!r}")


def parse(data) -> GameFile:
    """GameFile from a JSON string/bytes or an already decoded object."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GameFileError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise GameFileError("game file must be a JSON object")
    if "ruleset" not in data and "token" in data:
        data = {"ruleset": "geography", "payload": data}
    ruleset = data.get("ruleset")
    if ruleset not in RULESETS:
        raise GameFileError(f"unknown ruleset {ruleset!r}")
    if "payload" not in data:
        raise GameFileError("missing payload")
    f = GameFile(ruleset, data["payload"], data.get("metadata") or {})
    f.game()  # validate eagerly
    return f


def load(path) -> GameFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# encoders --------------------------------------------------------------


def nim_file(piles, **meta) -> GameFile:
    return GameFile("nim", {"piles": list(piles)}, meta)


def star_file(k: int, **meta) -> GameFile:
    return GameFile("star", {"k": k}, meta)


def kayles_file(g: NodeKayles, **meta) -> GameFile:
    return GameFile(
        "kayles",
        {"vertices": sorted(g.vertices, key=lambda v: (isinstance(v, str), v)), "edges": [list(e) for e in g.sorted_edges()]},
        meta,
    )


def dag_file(d: GameDag, **meta) -> GameFile:
    return GameFile("dag", {"children": [list(c) for c in d.children], "start": d.start}, meta)


def geography_file(g: GeoGraph, edge: bool = False, **meta) -> GameFile:
    return GameFile("edge-geography" if edge else "geography", to_json_dict(g), meta)


def sum_file(left: GameFile, right: GameFile, **meta) -> GameFile:
    return GameFile("sum", {"left": left.to_dict(), "right": right.to_dict()}, meta)


def to_file(game) -> GameFile:
    """Encode a position back into its container (inverse of ``game()``)."""
    if isinstance(game, Nim):
        return nim_file(game.piles)
    if isinstance(game, NodeKayles):
        return kayles_file(game)
    if isinstance(game, DagGame):
        return dag_file(GameDag(game.dag.keys, game.dag.children, game.current))
    if isinstance(game, VertexGeography):
        return geography_file(game.graph())
    if isinstance(game, EdgeGeography):
        g = game.board.graph
        return geography_file(GeoGraph(g.vertices, game.alive, game.token, g.labels), edge=True)
    if isinstance(game, SumGame):
        return sum_file(to_file(game.left), to_file(game.right))
    raise TypeError(f"cannot encode {type(game).__name__}")
