"""Prime/composite classification of small game trees under the tree sum.

Trees are interned bottom-up into a :class:`TreeTable`: a node's canonical
id is determined by the sorted tuple of its children's ids, so two subtrees
are isomorphic exactly when they receive the same id.  Dictionary lookups
compare the full tuples, so no hash collision can merge distinct shapes.
Each id also carries a SHA-256 digest for display and for comparing forms
across tables.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass

from .core import Budget, BudgetExceeded, GameDag, GameTree, _budget, build_dag, topological_order, tree_size

LEAF = 0


class TreeTable:
    """Hash-consed store of unordered rooted trees."""

    def __init__(self):
        self.ids: dict[tuple[int, ...], int] = {(): LEAF}
        self.kids: list[tuple[int, ...]] = [()]
        self.height: list[int] = [0]
        self.size: list[int] = [1]
        self.digest: list[bytes] = [hashlib.sha256(b"()").digest()]
        self._sums: dict[tuple[int, int], int] = {}

    def intern(self, children) -> int:
        key = tuple(sorted(children))
        n = self.ids.get(key)
        if n is None:
            n = self.ids[key] = len(self.kids)
            self.kids.append(key)
            self.height.append(1 + max(self.height[c] for c in key))
            self.size.append(1 + sum(self.size[c] for c in key))
            h = hashlib.sha256(b"(")
            for d in sorted(self.digest[c] for c in key):
                h.update(d)
            h.update(b")")
            self.digest.append(h.digest())
        return n

    def add(self, structure) -> int:
        """Intern a GameDag or GameTree (expansion is implicit)."""
        ch = structure.children
        ids: dict[int, int] = {}
        for n in topological_order(ch, structure.start, reverse=True):
            ids[n] = self.intern([ids[c] for c in ch[n]])
        return ids[structure.start]

    def tree_sum(self, a: int, b: int) -> int:
        """Canonical id of the tree sum of two interned trees."""
        if a == LEAF:
            return b
        if b == LEAF:
            return a
        if a > b:
            a, b = b, a  # the tree sum is commutative
        r = self._sums.get((a, b))
        if r is None:
            r = self.intern(
                [self.tree_sum(x, b) for x in self.kids[a]] + [self.tree_sum(a, y) for y in self.kids[b]]
            )
            self._sums[(a, b)] = r
        return r

    def subtrees(self, root: int) -> list[int]:
        seen = {root}
        stack = [root]
        while stack:
            for c in self.kids[stack.pop()]:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return sorted(seen)

    def expand(self, root: int) -> GameTree:
        """Materialize an interned tree as a GameTree (children in id order)."""
        children: list[list[int]] = [[]]
        origin = [root]
        stack = [0]
        while stack:
            n = stack.pop()
            for c in self.kids[origin[n]]:
                children.append([])
                origin.append(c)
                children[n].append(len(children) - 1)
                stack.append(len(children) - 1)
        return GameTree(tuple(tuple(c) for c in children), tuple(origin), 0)

    def same(self, a: int, other: "TreeTable", b: int) -> bool:
        """Structural isomorphism test across two tables."""
        if self.digest[a] != other.digest[b]:
            return False
        ka = sorted(self.kids[a], key=lambda c: self.digest[c])
        kb = sorted(other.kids[b], key=lambda c: other.digest[c])
        return len(ka) == len(kb) and all(self.same(x, other, y) for x, y in zip(ka, kb))


@dataclass(frozen=True, eq=False)
class CanonicalTreeHash:
    table: TreeTable
    root: int

    @property
    def digest(self) -> str:
        return self.table.digest[self.root].hex()

    @property
    def height(self) -> int:
        return self.table.height[self.root]

    @property
    def size(self) -> int:
        return self.table.size[self.root]

    def __eq__(self, other):
        if not isinstance(other, CanonicalTreeHash):
            return NotImplemented
        if self.table is other.table:
            return self.root == other.root
        return self.table.same(self.root, other.table, other.root)

    def __hash__(self):
        return hash(self.digest)


def _structure(game, budget):
    if isinstance(game, (GameDag, GameTree)):
        return game
    return build_dag(game, budget)


def canonical_form(game, budget: Budget | int | None = None, table: TreeTable | None = None) -> CanonicalTreeHash:
    """Canonical form of the game tree of a game, GameDag or GameTree.

    ``budget.nodes`` bounds the size of the tree expansion.
    """
    budget = _budget(budget)
    s = _structure(game, budget)
    budget.check(tree_size(s))
    table = TreeTable() if table is None else table
    return CanonicalTreeHash(table, table.add(s))


@dataclass
class PrimeVerdict:
    kind: str  # "prime" | "composite" | "budget-exceeded"
    witness: tuple[GameTree, GameTree] | None = None
    detail: str = ""

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"


class _Divider:
    """Finds ``A`` with ``A ■ B ≅ T`` for interned trees ``T`` and ``B``."""

    def __init__(self, table: TreeTable, budget: Budget):
        self.t = table
        self.budget = budget
        self.memo: dict[tuple[int, int], int | None] = {}
        self.steps = 0

    def divide(self, t: int, b: int) -> int | None:
        if b == LEAF:
            return t
        key = (t, b)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = r = self._divide(t, b)
        return r

    def _divide(self, t: int, b: int) -> int | None:
        tab = self.t
        ha = tab.height[t] - tab.height[b]
        if ha < 0:
            return None
        kids_b = tab.kids[b]
        if ha == 0:
            return LEAF if t == b else None
        # A-moves lead to A' ■ B, B-moves to A ■ B'; the B-moves must have
        # heights exactly ha + h(B') for the children B' of B
        classes = sorted(Counter(tab.kids[t]).items())
        quotients = [self.divide(c, b) for c, _ in classes]
        want = Counter(ha + tab.height[y] for y in kids_b)
        picks = [0] * len(classes)

        def search(i: int, left: Counter) -> int | None:
            self.steps += 1
            self.budget.check(self.steps)
            if i == len(classes):
                if +left:
                    return None
                return self._try(classes, quotients, picks, ha, kids_b)
            c, count = classes[i]
            hc = tab.height[c]
            lo = count if quotients[i] is None else 0
            for k in range(min(count, left[hc]), lo - 1, -1):
                picks[i] = k
                nxt = left.copy()
                nxt[hc] -= k
                r = search(i + 1, nxt)
                if r is not None:
                    return r
            return None

        return search(0, want)

    def _try(self, classes, quotients, picks, ha, kids_b) -> int | None:
        tab = self.t
        b_moves = Counter({c: k for (c, _), k in zip(classes, picks) if k})
        a_kids = []
        for (_, count), q, k in zip(classes, quotients, picks):
            a_kids += [q] * (count - k)
        a = tab.intern(a_kids)
        if tab.height[a] != ha:
            return None
        if Counter(tab.tree_sum(a, y) for y in kids_b) == b_moves:
            return a
        return None


def factorize(table: TreeTable, root: int, budget: Budget) -> tuple[int, int] | None:
    """Some ``(A, B)``, both of height >= 1, with ``A ■ B ≅ root``; or None."""
    h = table.height[root]
    if h < 2 or len(table.kids[root]) < 2:
        return None
    divider = _Divider(table, budget)
    # A ■ B ≅ B ■ A, so the shorter factor can be taken as B
    candidates = [s for s in table.subtrees(root) if 1 <= table.height[s] <= h // 2]
    candidates.sort(key=lambda s: (table.height[s], table.size[s], table.digest[s]))
    for b in candidates:
        a = divider.divide(root, b)
        if a is not None and table.height[a] >= 1:
            return a, b
    return None


def is_prime_game(game, budget: Budget | int | None = None) -> PrimeVerdict:
    """Decide whether a game (or GameDag/GameTree) is a tree sum of two
    games of height at least 1.

    ``budget.nodes`` bounds the tree expansion size and, separately, the
    number of factor-search steps.  Composite verdicts are re-verified by
    expanding the witness and comparing canonical forms in a fresh table.
    """
    budget = _budget(budget)
    try:
        form = canonical_form(game, budget)
        table = form.table
        found = factorize(table, form.root, budget)
    except BudgetExceeded as exc:
        return PrimeVerdict("budget-exceeded", detail=str(exc))
    if found is None:
        return PrimeVerdict("prime")
    a, b = (table.expand(x) for x in found)
    if not verify_witness(form, a, b):
        raise AssertionError("factor search produced an invalid witness")
    return PrimeVerdict("composite", (a, b))


def verify_witness(form: CanonicalTreeHash, a: GameTree, b: GameTree) -> bool:
    from .core import tree_sum_expand

    if a.height < 1 or b.height < 1:
        return False
    expanded = tree_sum_expand(a, b, budget=Budget(nodes=None))
    return canonical_form(expanded, Budget(nodes=None)) == form
