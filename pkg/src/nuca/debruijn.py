"""DeBruijn graph of a rule set and its product graph.

Vertices of the DeBruijn graph are the words of length ``2r``, encoded as
base-``s`` integers (leftmost letter most significant).  For every letter
pair ``a, b``, word ``w`` of length ``2r-1`` and rule ``f`` there is an edge
``aw -> wb`` labeled ``(f, f(awb))``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property

from .automata import Nfa
from .rules import RuleSet, index_word


def _ensure_radius(rule_set: RuleSet) -> RuleSet:
    return rule_set.padded(1) if rule_set.radius == 0 else rule_set


@dataclass(frozen=True)
class DeBruijnGraph:
    rule_set: RuleSet
    edges: tuple  # sorted (source, target, rule, letter)

    @property
    def s(self) -> int:
        return self.rule_set.s

    @property
    def radius(self) -> int:
        return self.rule_set.radius

    @property
    def n_nodes(self) -> int:
        return self.s ** (2 * self.radius)

    def node_word(self, node: int) -> tuple[int, ...]:
        return index_word(node, self.s, 2 * self.radius)

    def node_label(self, node: int) -> str:
        return "".join(map(str, self.node_word(node)))

    def center_letter(self, node: int) -> int:
        """The ``(r+1)``-th letter of the vertex word."""
        return self.node_word(node)[self.radius]

    def as_nfa(self) -> Nfa:
        """Automaton over ``(rule, letter)`` with every state initial and final."""
        alphabet = [(f, a) for f in range(len(self.rule_set)) for a in range(self.s)]
        transitions = {(u, (f, a), v) for u, v, f, a in self.edges}
        every = range(self.n_nodes)
        return Nfa(self.n_nodes, alphabet, transitions, every, every)

    def to_dot(self) -> str:
        return _dot(
            "debruijn",
            [(v, self.node_label(v)) for v in range(self.n_nodes)],
            self.edges,
            self.rule_set,
        )

    def to_csv(self) -> str:
        return _csv(self.edges, self.rule_set, self.node_label)


def build_debruijn(rule_set: RuleSet) -> DeBruijnGraph:
    """DeBruijn graph of ``rule_set``; radius-0 sets are first padded to radius 1."""
    rule_set = _ensure_radius(rule_set)
    s, r = rule_set.s, rule_set.radius
    n = s ** (2 * r)
    edges = []
    for u in range(n):
        for b in range(s):
            window = u * s + b
            v = window % n
            for f, rule in enumerate(rule_set.rules):
                edges.append((u, v, f, rule.table[window]))
    return DeBruijnGraph(rule_set, tuple(sorted(edges)))


@dataclass(frozen=True)
class ProductGraph:
    """Pairs of DeBruijn vertices moving under identical ``(rule, letter)`` labels.

    Vertex ``(u, u')`` is encoded as ``u * N + u'`` with ``N`` DeBruijn vertices.
    """

    debruijn: DeBruijnGraph
    edges: tuple  # sorted (source, target, rule, letter)

    @property
    def rule_set(self) -> RuleSet:
        return self.debruijn.rule_set

    @property
    def n_nodes(self) -> int:
        return self.debruijn.n_nodes**2

    def pair(self, node: int) -> tuple[int, int]:
        return divmod(node, self.debruijn.n_nodes)

    def node_label(self, node: int) -> str:
        u, v = self.pair(node)
        return f"({self.debruijn.node_label(u)},{self.debruijn.node_label(v)})"

    @cached_property
    def off_diagonal(self) -> frozenset:
        n = self.debruijn.n_nodes
        return frozenset(v for v in range(self.n_nodes) if v // n != v % n)

    def diagonal_node(self, u: int) -> int:
        return u * self.debruijn.n_nodes + u

    def as_nfa(self, project: bool = True) -> Nfa:
        """Edge-labeled graph; with ``project`` the letter component is dropped."""
        if project:
            alphabet = list(range(len(self.rule_set)))
            transitions = {(u, f, v) for u, v, f, _ in self.edges}
        else:
            alphabet = [(f, a) for f in range(len(self.rule_set)) for a in range(self.debruijn.s)]
            transitions = {(u, (f, a), v) for u, v, f, a in self.edges}
        every = range(self.n_nodes)
        return Nfa(self.n_nodes, alphabet, transitions, every, self.off_diagonal)

    def to_dot(self) -> str:
        return _dot(
            "product",
            [(v, self.node_label(v)) for v in range(self.n_nodes)],
            self.edges,
            self.rule_set,
            flagged=self.off_diagonal,
        )

    def to_csv(self) -> str:
        return _csv(self.edges, self.rule_set, self.node_label)


def build_product(rule_set: RuleSet) -> ProductGraph:
    g = build_debruijn(rule_set)
    n = g.n_nodes
    by_label: dict = {}
    for u, v, f, a in g.edges:
        by_label.setdefault((f, a), []).append((u, v))
    edges = []
    for (f, a), pairs in by_label.items():
        for u, v in pairs:
            for u2, v2 in pairs:
                edges.append((u * n + u2, v * n + v2, f, a))
    return ProductGraph(g, tuple(sorted(edges)))


def _dot(name, nodes, edges, rule_set, flagged=frozenset()) -> str:
    lines = [f"digraph {name} {{"]
    for v, label in nodes:
        extra = ", style=filled, fillcolor=lightgray" if v in flagged else ""
        lines.append(f'  {v} [label="{label}"{extra}];')
    grouped: dict = {}
    for u, v, f, a in edges:
        grouped.setdefault((u, v), []).append(f"({rule_set[f].name},{a})")
    for (u, v), labels in sorted(grouped.items()):
        lines.append(f'  {u} -> {v} [label="{"".join(labels)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _csv(edges, rule_set, node_label) -> str:
    buf = io.StringIO()
    buf.write("source,target,rule_name,output_letter\n")
    for u, v, f, a in edges:
        buf.write(f"{node_label(u)},{node_label(v)},{rule_set[f].name},{a}\n")
    return buf.getvalue()
