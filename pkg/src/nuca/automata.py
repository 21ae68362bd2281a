"""Finite automata over arbitrary hashable symbols.

Besides the usual constructions (subset construction, complement,
relabeling, Hopcroft minimization) this module answers two questions about
an eventually periodic bi-infinite word ``w``, presented as a
:class:`LayeredWordGraph`:

* does some finite factor of ``w`` belong to a regular language
  (:func:`layered_product_reach`), and
* does an edge-labeled graph carry a bi-infinite path spelling ``w`` through
  a flagged vertex (:func:`biinfinite_flagged_path`).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

Symbol = Hashable


class ResourceLimitError(RuntimeError):
    """Raised when a construction exceeds its state budget."""


def _dot_quote(text) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


@dataclass(frozen=True)
class Nfa:
    n_states: int
    alphabet: tuple
    transitions: frozenset  # of (state, symbol, state)
    initial: frozenset
    accepting: frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        symbols = set(self.alphabet)
        states = range(self.n_states)
        for p, a, q in self.transitions:
            if p not in states or q not in states:
                raise ValueError(f"transition ({p}, {a!r}, {q}) uses an unknown state")
            if a not in symbols:
                raise ValueError(f"transition symbol {a!r} not in alphabet")
        if not (self.initial <= set(states) and self.accepting <= set(states)):
            raise ValueError("initial/accepting states out of range")

    @cached_property
    def successors(self) -> dict:
        """``(state, symbol) -> sorted tuple of targets``."""
        out: dict = {}
        for p, a, q in self.transitions:
            out.setdefault((p, a), []).append(q)
        return {k: tuple(sorted(v)) for k, v in out.items()}

    @cached_property
    def predecessors(self) -> dict:
        out: dict = {}
        for p, a, q in self.transitions:
            out.setdefault((q, a), []).append(p)
        return {k: tuple(sorted(v)) for k, v in out.items()}

    def post(self, states: Iterable[int], symbol) -> frozenset:
        succ = self.successors
        return frozenset(q for p in states for q in succ.get((p, symbol), ()))

    def accepts(self, word: Sequence) -> bool:
        current = self.initial
        for a in word:
            current = self.post(current, a)
            if not current:
                return False
        return bool(current & self.accepting)

    def to_dot(self, name: str = "nfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for q in range(self.n_states):
            shape = "doublecircle" if q in self.accepting else "circle"
            style = ", style=bold" if q in self.initial else ""
            lines.append(f"  {q} [shape={shape}{style}];")
        lines.extend(_collapsed_edges(self.transitions))
        lines.append("}")
        return "\n".join(lines) + "\n"


def _collapsed_edges(transitions) -> list[str]:
    grouped: dict = {}
    for p, a, q in transitions:
        grouped.setdefault((p, q), []).append(str(a))
    return [
        f"  {p} -> {q} [label={_dot_quote(','.join(sorted(labels)))}];"
        for (p, q), labels in sorted(grouped.items())
    ]


@dataclass(frozen=True)
class Dfa:
    """Complete DFA; ``delta[q][k]`` is the target of state ``q`` on ``alphabet[k]``."""

    alphabet: tuple
    delta: tuple
    start: int
    accepting: frozenset
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        n, k = len(self.delta), len(self.alphabet)
        if len(set(self.alphabet)) != k:
            raise ValueError("duplicate alphabet symbols")
        if not 0 <= self.start < n:
            raise ValueError("start state out of range")
        for row in self.delta:
            if len(row) != k or any(not 0 <= q < n for q in row):
                raise ValueError("transition function must be total and in range")
        if any(not 0 <= q < n for q in self.accepting):
            raise ValueError("accepting state out of range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @cached_property
    def symbol_index(self) -> dict:
        return {a: k for k, a in enumerate(self.alphabet)}

    def step(self, q: int, symbol) -> int:
        return self.delta[q][self.symbol_index[symbol]]

    def run(self, word: Sequence, q: int | None = None) -> int:
        q = self.start if q is None else q
        idx = self.symbol_index
        for a in word:
            q = self.delta[q][idx[a]]
        return q

    def accepts(self, word: Sequence) -> bool:
        return self.run(word) in self.accepting

    @cached_property
    def live(self) -> frozenset:
        """States from which an accepting state is reachable."""
        rev: dict[int, set[int]] = {q: set() for q in range(self.n_states)}
        for p, row in enumerate(self.delta):
            for q in row:
                rev[q].add(p)
        seen = set(self.accepting)
        queue = deque(self.accepting)
        while queue:
            q = queue.popleft()
            for p in rev[q]:
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        return frozenset(seen)

    def is_empty(self) -> bool:
        return self.start not in self.live

    def shortest_accepted(self) -> tuple | None:
        parent = {self.start: None}
        queue = deque([self.start])
        while queue:
            q = queue.popleft()
            if q in self.accepting:
                word = []
                while parent[q] is not None:
                    q, a = parent[q]
                    word.append(a)
                return tuple(reversed(word))
            for k, t in enumerate(self.delta[q]):
                if t not in parent:
                    parent[t] = (q, self.alphabet[k])
                    queue.append(t)
        return None

    def complement(self) -> "Dfa":
        return complement(self)

    def minimize(self) -> "Dfa":
        return minimize(self)

    def to_nfa(self) -> Nfa:
        transitions = {
            (p, self.alphabet[k], q)
            for p, row in enumerate(self.delta)
            for k, q in enumerate(row)
        }
        return Nfa(self.n_states, self.alphabet, transitions, {self.start}, self.accepting)

    def to_dot(self, name: str = "dfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", "  __start [shape=point];"]
        for q in range(self.n_states):
            shape = "doublecircle" if q in self.accepting else "circle"
            lines.append(f"  {q} [shape={shape}];")
        lines.append(f"  __start -> {self.start};")
        lines.extend(_collapsed_edges(self.to_nfa().transitions))
        lines.append("}")
        return "\n".join(lines) + "\n"


def determinize(nfa: Nfa, max_states: int | None = None) -> Dfa:
    """Subset construction over reachable subsets.

    The empty subset, when reachable, is the dead state.  ``labels`` on the
    result holds the subset (sorted tuple) behind each DFA state.
    """
    start = tuple(sorted(nfa.initial))
    index = {start: 0}
    subsets = [start]
    delta: list[list[int]] = []
    succ = nfa.successors
    i = 0
    while i < len(subsets):
        current = subsets[i]
        row = []
        for a in nfa.alphabet:
            target = tuple(sorted({q for p in current for q in succ.get((p, a), ())}))
            if target not in index:
                if max_states is not None and len(subsets) >= max_states:
                    raise ResourceLimitError(
                        f"subset construction exceeded {max_states} states"
                    )
                index[target] = len(subsets)
                subsets.append(target)
            row.append(index[target])
        delta.append(row)
        i += 1
    accepting = {k for k, sub in enumerate(subsets) if nfa.accepting.intersection(sub)}
    return Dfa(nfa.alphabet, delta, 0, accepting, tuple(subsets))


def complement(dfa: Dfa) -> Dfa:
    flipped = frozenset(range(dfa.n_states)) - dfa.accepting
    return Dfa(dfa.alphabet, dfa.delta, dfa.start, flipped, dfa.labels)


def project(nfa: Nfa, symbol_map: Callable | dict) -> Nfa:
    """Relabel every transition through ``symbol_map``."""
    f = symbol_map.__getitem__ if isinstance(symbol_map, dict) else symbol_map
    alphabet = list(dict.fromkeys(f(a) for a in nfa.alphabet))
    transitions = {(p, f(a), q) for p, a, q in nfa.transitions}
    return Nfa(nfa.n_states, alphabet, transitions, nfa.initial, nfa.accepting)


def _reachable(dfa: Dfa) -> list[int]:
    seen = {dfa.start}
    order = [dfa.start]
    i = 0
    while i < len(order):
        for q in dfa.delta[order[i]]:
            if q not in seen:
                seen.add(q)
                order.append(q)
        i += 1
    return order


def minimize(dfa: Dfa) -> Dfa:
    """Hopcroft partition refinement on the reachable part.

    States of the result are numbered in breadth-first order from the start
    state, so equal languages give identical DFAs.
    """
    states = _reachable(dfa)
    k = len(dfa.alphabet)
    inverse = [dict() for _ in range(k)]
    for p in states:
        for c in range(k):
            inverse[c].setdefault(dfa.delta[p][c], set()).add(p)
    acc = frozenset(q for q in states if q in dfa.accepting)
    rej = frozenset(states) - acc
    partition = {b for b in (acc, rej) if b}
    work = {min(partition, key=len)} if len(partition) == 2 else set(partition)
    while work:
        splitter = work.pop()
        for c in range(k):
            x = set()
            for q in splitter:
                x |= inverse[c].get(q, set())
            if not x:
                continue
            for block in list(partition):
                inter = block & x
                if not inter or inter == block:
                    continue
                diff = block - inter
                inter, diff = frozenset(inter), frozenset(diff)
                partition.remove(block)
                partition.update((inter, diff))
                if block in work:
                    work.remove(block)
                    work.update((inter, diff))
                else:
                    work.add(min(inter, diff, key=len))
    block_of = {q: b for b in partition for q in b}
    # canonical BFS numbering
    numbering = {block_of[dfa.start]: 0}
    order = [block_of[dfa.start]]
    i = 0
    while i < len(order):
        rep = min(order[i])
        for c in range(k):
            b = block_of[dfa.delta[rep][c]]
            if b not in numbering:
                numbering[b] = len(order)
                order.append(b)
        i += 1
    delta = [[numbering[block_of[dfa.delta[min(b)][c]]] for c in range(k)] for b in order]
    accepting = {numbering[b] for b in order if b & acc}
    return Dfa(dfa.alphabet, delta, 0, accepting)


def factor_scanner(dfa: Dfa) -> Dfa:
    """DFA for ``Σ* L(dfa) Σ*``; its accepting state is absorbing."""
    wait = dfa.n_states
    transitions = set()
    for p, row in enumerate(dfa.delta):
        for c, q in enumerate(row):
            a = dfa.alphabet[c]
            if p in dfa.accepting:
                transitions.add((p, a, p))
            else:
                transitions.add((p, a, q))
    for c, a in enumerate(dfa.alphabet):
        transitions.add((wait, a, wait))
        transitions.add((wait, a, dfa.delta[dfa.start][c]))
    nfa = Nfa(dfa.n_states + 1, dfa.alphabet, transitions, {wait, dfa.start}, dfa.accepting)
    return minimize(determinize(nfa))


def accepts_some_factor(dfa: Dfa, word: Sequence) -> bool:
    """Brute-force check used to validate :func:`factor_scanner`."""
    n = len(word)
    return any(dfa.accepts(word[i:j]) for i in range(n + 1) for j in range(i, n + 1))


# -- eventually periodic bi-infinite words ------------------------------------


@dataclass(frozen=True)
class LayeredWordGraph:
    """Finite graph whose walks spell the factors of ``^w(left) middle (right)^w``.

    Node ids: ``0..pL-1`` are the left-period phases, then the middle cells,
    then the right-period phases.
    """

    left: tuple
    middle: tuple
    right: tuple
    anchor: int = 0

    def __post_init__(self):
        if not self.left or not self.right:
            raise ValueError("periods must be non-empty")

    @classmethod
    def from_word(cls, word) -> "LayeredWordGraph":
        return cls(tuple(word.left), tuple(word.middle), tuple(word.right), word.anchor)

    @property
    def p_left(self) -> int:
        return len(self.left)

    @property
    def p_right(self) -> int:
        return len(self.right)

    @property
    def n_nodes(self) -> int:
        return len(self.left) + len(self.middle) + len(self.right)

    def kind(self, node: int) -> str:
        if node < self.p_left:
            return "left"
        if node < self.p_left + len(self.middle):
            return "middle"
        return "right"

    def left_node(self, phase: int) -> int:
        return phase % self.p_left

    def right_node(self, phase: int) -> int:
        return self.p_left + len(self.middle) + phase % self.p_right

    @cached_property
    def symbols(self) -> tuple:
        return self.left + self.middle + self.right

    def symbol(self, node: int) -> Symbol:
        return self.symbols[node]

    @cached_property
    def successors(self) -> tuple:
        pl, m = self.p_left, len(self.middle)
        exit_node = pl  # first middle cell, or right phase 0 when there is no middle
        out = []
        for v in range(self.n_nodes):
            if v < pl - 1:
                out.append((v + 1,))
            elif v == pl - 1:
                out.append((0, exit_node))
            elif v < pl + m - 1:
                out.append((v + 1,))
            elif v == pl + m - 1 and m:
                out.append((pl + m,))
            else:
                out.append((self.right_node(v - pl - m + 1),))
        return tuple(out)

    @cached_property
    def predecessors(self) -> tuple:
        pred: list[list[int]] = [[] for _ in range(self.n_nodes)]
        for v, targets in enumerate(self.successors):
            for w in targets:
                pred[w].append(v)
        return tuple(tuple(sorted(p)) for p in pred)

    def walk_positions(self, walk: Sequence[int]) -> list[int]:
        """Absolute positions for a walk, pinned at the first cell outside the left tail."""
        if not walk:
            return []
        pl, m = self.p_left, len(self.middle)
        for t, v in enumerate(walk):
            if v >= pl:
                if t > 0:
                    origin = self.anchor
                elif v < pl + m:
                    origin = self.anchor + (v - pl)
                else:
                    origin = self.anchor + m + (v - pl - m)
                return [origin + (k - t) for k in range(len(walk))]
        last = walk[-1]
        origin = self.anchor - pl + last
        t = len(walk) - 1
        return [origin + (k - t) for k in range(len(walk))]

    def unrolling(self, k: int) -> tuple[tuple, int]:
        """``left^k middle right^k`` and the position of its first letter."""
        return self.left * k + self.middle + self.right * k, self.anchor - k * self.p_left

    def to_dot(self, name: str = "word") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for v in range(self.n_nodes):
            lines.append(
                f"  {v} [label={_dot_quote(f'{self.kind(v)[0]}{v}:{self.symbol(v)}')}];"
            )
        for v, targets in enumerate(self.successors):
            for w in targets:
                lines.append(f"  {v} -> {w};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ReachReport:
    found: bool
    factor: tuple | None = None
    start: int | None = None  # position of the first letter of ``factor``

    @property
    def window(self) -> tuple[int, int] | None:
        if not self.found:
            return None
        return self.start, self.start + len(self.factor) - 1


def layered_product_reach(g: LayeredWordGraph, dfa: Dfa) -> ReachReport:
    """Decide whether a non-empty factor of the word of ``g`` is accepted by ``dfa``.

    Breadth-first search over ``(word node, dfa state)`` pairs seeded at
    every node with the start state; the first hit is a shortest factor.
    """
    live = dfa.live
    if dfa.start not in live:
        return ReachReport(False)
    parent: dict = {}
    queue = deque()
    for v in range(g.n_nodes):
        key = (v, dfa.start)
        parent[key] = None
        queue.append(key)
    while queue:
        v, q = queue.popleft()
        q2 = dfa.step(q, g.symbol(v))
        if q2 in dfa.accepting:
            walk = [v]
            key = (v, q)
            while parent[key] is not None:
                key = parent[key]
                walk.append(key[0])
            walk.reverse()
            pos = g.walk_positions(walk)
            return ReachReport(True, tuple(g.symbol(u) for u in walk), pos[0])
        if q2 not in live:
            continue
        for w in g.successors[v]:
            key = (w, q2)
            if key not in parent:
                parent[key] = (v, q)
                queue.append(key)
    return ReachReport(False)


def scan_unrolling(g: LayeredWordGraph, dfa: Dfa, k: int | None = None) -> bool:
    """Reference answer for :func:`layered_product_reach` from a finite unrolling."""
    k = dfa.n_states + 1 if k is None else k
    word, _ = g.unrolling(k)
    n = len(word)
    for i in range(n):
        q = dfa.start
        for j in range(i, n):
            q = dfa.step(q, word[j])
            if q in dfa.accepting:
                return True
    return False


@dataclass(frozen=True)
class FlaggedPath:
    """Eventually periodic bi-infinite path: ``^w(left) middle (right)^w``.

    Entries are vertices of the labeled graph; ``anchor`` is the position of
    ``middle[0]`` (or of ``right[0]`` when ``middle`` is empty).  The vertex
    at position ``i`` is the one entered just before reading symbol ``i``.
    """

    left: tuple
    middle: tuple
    right: tuple
    anchor: int


@dataclass(frozen=True)
class FlaggedPathReport:
    found: bool
    path: FlaggedPath | None
    left_fixpoint: tuple  # per left phase: vertices with an infinite past
    right_fixpoint: tuple  # per right phase: vertices with an infinite future


def _left_fixpoint(g: LayeredWordGraph, p: Nfa) -> list[set[int]]:
    pl = g.p_left
    sets = [set(range(p.n_states)) for _ in range(pl)]
    changed = True
    while changed:
        changed = False
        for k in range(pl):
            prev = (k - 1) % pl
            image = p.post(sets[prev], g.left[prev])
            new = sets[k] & image
            if new != sets[k]:
                sets[k] = new
                changed = True
    return sets


def _right_fixpoint(g: LayeredWordGraph, p: Nfa) -> list[set[int]]:
    pr = g.p_right
    sets = [set(range(p.n_states)) for _ in range(pr)]
    succ = p.successors
    changed = True
    while changed:
        changed = False
        for k in range(pr):
            nxt = sets[(k + 1) % pr]
            new = {u for u in sets[k] if any(v in nxt for v in succ.get((u, g.right[k]), ()))}
            if new != sets[k]:
                sets[k] = new
                changed = True
    return sets


def biinfinite_flagged_path(
    g: LayeredWordGraph, p: Nfa, flagged: Iterable[int]
) -> FlaggedPathReport:
    """Is there a bi-infinite path of ``p`` labeled by the word of ``g`` through ``flagged``?

    ``p`` is used as an edge-labeled graph (its initial/accepting sets are
    ignored).  A vertex at a left-tail position has an infinite past iff it
    lies in the greatest fixpoint of "has a predecessor"; symmetrically for
    infinite futures in the right tail.  The answer is yes iff a flagged
    product vertex is reachable from the former and reaches the latter.
    """
    flagged = frozenset(flagged)
    lfix = _left_fixpoint(g, p)
    rfix = _right_fixpoint(g, p)
    report = FlaggedPathReport(
        False, None, tuple(frozenset(s) for s in lfix), tuple(frozenset(s) for s in rfix)
    )
    if not flagged:
        return report
    succ, pred = p.successors, p.predecessors

    def forward(node):
        v, u = node
        targets = succ.get((u, g.symbol(v)), ())
        return [(w, t) for w in g.successors[v] for t in targets]

    def backward(node):
        w, t = node
        return [
            (v, u)
            for v in g.predecessors[w]
            for u in pred.get((t, g.symbol(v)), ())
        ]

    def closure(seeds, step):
        seen = set(seeds)
        queue = deque(sorted(seen))
        while queue:
            node = queue.popleft()
            for nxt in step(node):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen

    left_seeds = {(g.left_node(k), u) for k in range(g.p_left) for u in lfix[k]}
    right_seeds = {(g.right_node(k), u) for k in range(g.p_right) for u in rfix[k]}
    fwd = closure(left_seeds, forward)
    bwd = closure(right_seeds, backward)
    hits = sorted(node for node in fwd & bwd if node[1] in flagged)
    if not hits:
        return report
    target = hits[0]

    def bfs_path(start, step, goal, allowed):
        parent = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            if goal(node):
                path = [node]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            for nxt in sorted(step(node)):
                if nxt in allowed and nxt not in parent:
                    parent[nxt] = node
                    queue.append(nxt)
        raise AssertionError("closure promised a path")

    # b: target back to a vertex with infinite past (listed target-first)
    back = bfs_path(target, backward, lambda n: n in left_seeds, fwd)
    # f: target forward to a vertex with infinite future (listed target-first)
    ahead = bfs_path(target, forward, lambda n: n in right_seeds, bwd)

    # cycle through the left fixpoint, walking backward from back[-1]
    chain = [back[-1]]
    seen = {back[-1]: 0}
    while True:
        v, u = chain[-1]
        k = v  # left node id equals its phase
        prev = (k - 1) % g.p_left
        options = [t for t in pred.get((u, g.left[prev]), ()) if t in lfix[prev]]
        node = (g.left_node(prev), min(options))
        if node in seen:
            i, j = seen[node], len(chain)
            break
        seen[node] = len(chain)
        chain.append(node)
    # forward order of the loop is chain[j-1] -> ... -> chain[i] -> chain[j-1]
    left_block = chain[i:j][::-1]
    lead_in = chain[:i][::-1]

    # cycle through the right fixpoint, walking forward from ahead[-1]
    run = [ahead[-1]]
    seen = {ahead[-1]: 0}
    while True:
        v, u = run[-1]
        k = v - g.p_left - len(g.middle)
        options = [t for t in succ.get((u, g.right[k]), ()) if t in rfix[(k + 1) % g.p_right]]
        node = (g.right_node(k + 1), min(options))
        if node in seen:
            i2 = seen[node]
            break
        seen[node] = len(run)
        run.append(node)
    right_block = run[i2:]

    # the prefix ends at the target; ahead[-1] == run[0]
    walk = left_block + lead_in + back[::-1][1:] + ahead[1:] + run[1:]
    nl, nr = len(left_block), len(right_block)
    positions = g.walk_positions([v for v, _ in walk])
    states = [u for _, u in walk]
    path = FlaggedPath(
        tuple(states[:nl]),
        tuple(states[nl : len(states) - nr]),
        tuple(states[len(states) - nr :]),
        positions[nl],
    )
    return FlaggedPathReport(True, path, report.left_fixpoint, report.right_fixpoint)
