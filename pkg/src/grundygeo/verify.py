"""Oracle-equivalence harness for the Geography compiler.

For each instance the input nimber ``k`` is computed by exhaustive search,
the game is compiled, and every labelled vertex of the output is evaluated
and compared with the value the construction promises:

    b_i  ->  * if k == i else 0
    c_i  ->  0 if k == i else *(i-1)         (c_1: * when k != 1)
    d_i  ->  *i if k == 0 or i < k else *(k-1)
    t_j  ->  *j
    start -> *k
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .core import Budget, SumGame, build_dag, nimber_of
from .gamefile import to_file
from .generate import DEFAULT_CAPS, PAIR_CAPS, corpus, pair_corpus
from .geography import GeoGraph, VertexGeography, vertex_values
from .reduction import MODES, grundy_bound, output_size_bound, reduce_to_geography


def expected_value(label: str, k: int) -> int | None:
    """Value the construction guarantees at a labelled vertex, given the
    input nimber ``k``; None for unlabelled roles (payload, a_i, s_i)."""
    role, _, idx = label.partition("_")
    if role == "start":
        return k
    if not idx:
        return None
    i = int(idx)
    if role == "b":
        return 1 if k == i else 0
    if role == "c":
        if k == i:
            return 0
        # c_1 has the single option b_1, so it copies *(1) rather than *(0)
        return max(i - 1, 1)
    if role == "d":
        return i if k == 0 or i < k else k - 1
    if role == "t":
        return i
    return None


def check_output(geo: GeoGraph, k: int) -> dict:
    """Compare every labelled vertex of a compiled graph with its promise."""
    values = vertex_values(geo)
    checked = 0
    failures = []
    for v, label in sorted(geo.labels.items(), key=lambda kv: str(kv[0])):
        want = expected_value(label, k)
        if want is None:
            continue
        checked += 1
        if values[v] != want:
            failures.append({"vertex": label, "expected": want, "actual": values[v]})
    return {"checked": checked, "failures": failures, "values": values}


@dataclass
class VerifyReport:
    seed: int
    count: int
    modes: tuple
    records: list = field(default_factory=list)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.records if not r["pass"])

    @property
    def passed(self) -> int:
        return len(self.records) - self.failed

    def summary(self) -> dict:
        disc = 0
        for r in self.records:
            for m in r["modes"].values():
                disc = max(disc, abs(m["output_nimber"] - r["expected_nimber"]))
        return {"instances": len(self.records), "passed": self.passed, "failed": self.failed, "max_discrepancy": disc}

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "modes": list(self.modes),
            "summary": self.summary(),
            "records": self.records,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"


def verify_game(game, modes=MODES, budget: Budget | int | None = None, timings: bool = False) -> dict:
    """Compile ``game`` in each mode and check the start value and all
    per-vertex promises against exhaustive evaluation."""
    t0 = time.perf_counter()
    d = build_dag(game, budget)
    k = d.nimber()
    g = grundy_bound(d)
    rec = {"input_nimber": k, "expected_nimber": k, "g": g, "input_nodes": len(d), "height": d.height}
    rec["bound_ok"] = k <= g
    ok = rec["bound_ok"]
    rec["modes"] = {}
    for mode in modes:
        t1 = time.perf_counter()
        geo = reduce_to_geography(d, mode, budget)
        start_value = nimber_of(VertexGeography.of(geo), budget)
        checks = check_output(geo, k)
        m = {
            "output_nimber": start_value,
            "vertices": len(geo.vertices),
            "edges": len(geo.edges),
            "acyclic": geo.is_acyclic(),
            "vertex_checks": checks["checked"],
            "vertex_failures": checks["failures"],
        }
        m_ok = start_value == k and not checks["failures"] and m["acyclic"]
        if mode == "product":
            m["size_bound"] = output_size_bound(d, g)
            m_ok = m_ok and m["vertices"] <= m["size_bound"]
        if timings:
            m["seconds"] = round(time.perf_counter() - t1, 4)
        m["pass"] = m_ok
        ok = ok and m_ok
        rec["modes"][mode] = m
    starts = {m["output_nimber"] for m in rec["modes"].values()}
    rec["modes_agree"] = len(starts) <= 1
    rec["pass"] = ok and rec["modes_agree"]
    if timings:
        rec["seconds"] = round(time.perf_counter() - t0, 4)
    return rec


def run_verify(
    count: int,
    seed: int,
    caps: dict | None = None,
    modes=MODES,
    budget: Budget | int | None = None,
    timings: bool = False,
    xor: bool = False,
) -> VerifyReport:
    """Verify ``count`` seeded corpus games (or game pairs when ``xor``)."""
    report = VerifyReport(seed, count, tuple(modes))
    if xor:
        for idx, (a, b) in enumerate(pair_corpus(seed, count, caps or PAIR_CAPS)):
            rec = verify_game(SumGame(a, b), modes, budget, timings)
            ka, kb = nimber_of(a, budget), nimber_of(b, budget)
            rec["expected_nimber"] = ka ^ kb
            rec["component_nimbers"] = [ka, kb]
            rec["pass"] = rec["pass"] and all(m["output_nimber"] == ka ^ kb for m in rec["modes"].values())
            rec["index"] = idx
            rec["game"] = to_file(SumGame(a, b)).to_dict()
            report.records.append(rec)
        return report
    for idx, game in enumerate(corpus(seed, count, caps or DEFAULT_CAPS)):
        rec = verify_game(game, modes, budget, timings)
        rec["index"] = idx
        rec["game"] = to_file(game).to_dict()
        report.records.append(rec)
    return report
