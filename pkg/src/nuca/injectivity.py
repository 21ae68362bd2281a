"""Injectivity of distributions via bi-infinite paths in the product graph."""

from __future__ import annotations

from dataclasses import dataclass

from .automata import LayeredWordGraph, biinfinite_flagged_path
from .debruijn import _ensure_radius, build_product
from .simulation import step
from .words import Configuration, Distribution


@dataclass(frozen=True)
class InjectivityReport:
    injective: bool
    witness: tuple[Configuration, Configuration] | None = None

    @property
    def verdict(self) -> str:
        return "injective" if self.injective else "not-injective"

    def as_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            x, y = self.witness
            witness = {"x": x.as_dict(), "y": y.as_dict()}
        return {"verdict": self.verdict, "witness": witness}


def is_distribution_injective(theta: Distribution) -> InjectivityReport:
    """Not injective iff the product graph has a bi-infinite path labeled ``theta``
    through a vertex ``(u, u')`` with ``u != u'``.

    The returned witness pair is read off the path: cell ``i`` of each
    configuration is the middle letter of the corresponding vertex word.
    """
    rule_set = _ensure_radius(theta.rule_set)
    product = build_product(rule_set)
    graph = LayeredWordGraph.from_word(theta)
    report = biinfinite_flagged_path(graph, product.as_nfa(), product.off_diagonal)
    if not report.found:
        return InjectivityReport(True)
    path = report.path
    db = product.debruijn

    def letters(states, side):
        return tuple(db.center_letter(product.pair(v)[side]) for v in states)

    x, y = (
        Configuration(
            letters(path.left, side),
            letters(path.middle, side),
            letters(path.right, side),
            path.anchor,
            rule_set.s,
        )
        for side in (0, 1)
    )
    return InjectivityReport(False, (x, y))


def verify_witness(theta: Distribution, x: Configuration, y: Configuration) -> bool:
    """``x != y`` and both have the same image."""
    return x != y and step(theta, x) == step(theta, y)
