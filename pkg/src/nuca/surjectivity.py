"""Surjectivity of partial transition functions and of distributions.

``F_R`` is the set of rule words ``psi`` whose partial transition function
misses some output word.  A distribution is surjective iff none of its
finite factors lies in ``F_R``, and ``F_R`` is regular: read the DeBruijn
graph as an automaton over ``(rule, letter)`` pairs, determinize, take the
complement (pairs ``(psi, u)`` with no preimage), forget the letters and
determinize again.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .automata import (
    Dfa,
    LayeredWordGraph,
    ResourceLimitError,
    complement,
    determinize,
    layered_product_reach,
    minimize,
    project,
)
from .debruijn import _ensure_radius, build_debruijn
from .rules import RuleSet, preimage_counts
from .words import Distribution

DEFAULT_MAX_STATES = 10**6
DEFAULT_ENUMERATION_CAP = 2**20


@lru_cache(maxsize=64)
def preimage_language_dfa(rule_set: RuleSet) -> Dfa:
    """Minimal DFA over ``(rule, letter)`` accepting ``(psi, u)`` iff ``u`` has a preimage under ``h_psi``."""
    nfa = build_debruijn(rule_set).as_nfa()
    return minimize(determinize(nfa))


@lru_cache(maxsize=64)
def forbidden_pattern_dfa(rule_set: RuleSet, max_states: int = DEFAULT_MAX_STATES) -> Dfa:
    """Minimal DFA over rule indices recognizing the non-surjective rule words."""
    no_preimage = complement(preimage_language_dfa(rule_set))
    projected = project(no_preimage.to_nfa(), lambda label: label[0])
    return minimize(determinize(projected, max_states=max_states))


def unreachable_word(rule_set: RuleSet, psi: Sequence[int]) -> tuple[int, ...] | None:
    """Lexicographically least output word of ``h_psi`` without a preimage."""
    dfa = preimage_language_dfa(rule_set)
    s = rule_set.s
    n = len(psi)
    # bad[i]: states from which some continuation along psi[i:] is rejected
    bad = [set() for _ in range(n + 1)]
    bad[n] = set(range(dfa.n_states)) - dfa.accepting
    for i in range(n - 1, -1, -1):
        bad[i] = {
            q
            for q in range(dfa.n_states)
            if any(dfa.step(q, (psi[i], a)) in bad[i + 1] for a in range(s))
        }
    if dfa.start not in bad[0]:
        return None
    q, word = dfa.start, []
    for i in range(n):
        for a in range(s):
            t = dfa.step(q, (psi[i], a))
            if t in bad[i + 1]:
                word.append(a)
                q = t
                break
    return tuple(word)


def is_pattern_surjective(rule_set: RuleSet, psi: Sequence[int]) -> bool:
    return not forbidden_pattern_dfa(rule_set).accepts(tuple(psi))


def brute_force_pattern_surjective(
    rule_set: RuleSet, psi: Sequence[int], cap: int = DEFAULT_ENUMERATION_CAP
) -> bool:
    """Enumerate every input of ``h_psi`` and check that all outputs are hit."""
    size = rule_set.s ** (len(psi) + 2 * rule_set.radius)
    if size > cap:
        raise ResourceLimitError(f"{size} inputs exceed the enumeration cap {cap}")
    return bool((preimage_counts(rule_set, psi) > 0).all())


@dataclass(frozen=True)
class SurjectivityReport:
    surjective: bool
    window: tuple[int, int] | None = None
    pattern: tuple[int, ...] | None = None
    unreachable: tuple[int, ...] | None = None
    rule_set: RuleSet | None = None

    @property
    def verdict(self) -> str:
        return "surjective" if self.surjective else "not-surjective"

    def as_dict(self) -> dict:
        names = None
        if self.pattern is not None:
            names = [self.rule_set[f].name for f in self.pattern]
        return {
            "verdict": self.verdict,
            "witness_window": list(self.window) if self.window else None,
            "witness_pattern": names,
            "unreachable_word": list(self.unreachable) if self.unreachable else None,
        }


def is_distribution_surjective(
    theta: Distribution, max_states: int = DEFAULT_MAX_STATES
) -> SurjectivityReport:
    """Exact verdict for an eventually periodic distribution, with a checkable witness."""
    rule_set = _ensure_radius(theta.rule_set)
    dfa = forbidden_pattern_dfa(rule_set, max_states)
    hit = layered_product_reach(LayeredWordGraph.from_word(theta), dfa)
    if not hit.found:
        return SurjectivityReport(True, rule_set=rule_set)
    return SurjectivityReport(
        False,
        hit.window,
        hit.factor,
        unreachable_word(rule_set, hit.factor),
        rule_set,
    )
