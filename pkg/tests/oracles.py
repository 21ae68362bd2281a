"""Slow reference implementations used only by the tests.

Nothing here calls into the code paths it checks: configurations are plain
functions of the position, images are computed cell by cell, and
preimages are found by enumerating inputs with itertools.
"""

import itertools
import random

from nuca.rules import RuleSet
from nuca.words import Configuration, Distribution


def rule_value(rule, letters):
    idx = 0
    for a in letters:
        idx = idx * rule.s + a
    return rule.table[idx]


def naive_letter(left, middle, right, anchor, i):
    if i < anchor:
        return left[(i - anchor) % len(left)]
    if i < anchor + len(middle):
        return middle[i - anchor]
    return right[(i - anchor - len(middle)) % len(right)]


def naive_image(rule_set: RuleSet, theta: Distribution, x: Configuration, i: int) -> int:
    r = rule_set.radius
    f = rule_set[theta[i]]
    return rule_value(f, [x[j] for j in range(i - r, i + r + 1)])


def image_set(rule_set: RuleSet, psi):
    r = rule_set.radius
    out = set()
    for w in itertools.product(range(rule_set.s), repeat=len(psi) + 2 * r):
        out.add(tuple(rule_value(rule_set[f], w[i : i + 2 * r + 1]) for i, f in enumerate(psi)))
    return out


def pattern_surjective(rule_set: RuleSet, psi) -> bool:
    return len(image_set(rule_set, psi)) == rule_set.s ** len(psi)


def random_word(rng: random.Random, alphabet, lo, hi):
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(lo, hi)))


def nfa_accepts_by_paths(nfa, word) -> bool:
    """Depth-first search over explicit paths."""

    def go(state, k):
        if k == len(word):
            return state in nfa.accepting
        return any(
            go(q, k + 1)
            for p, a, q in nfa.transitions
            if p == state and a == word[k]
        )

    return any(go(q, 0) for q in nfa.initial)


def words_up_to(alphabet, n):
    for k in range(n + 1):
        yield from itertools.product(alphabet, repeat=k)


def flagged_path_exists(nfa, word, flagged) -> bool:
    """Bi-infinite path through a flagged vertex, decided on a long finite window.

    ``word`` is an EventuallyPeriodic-like object.  Deep in a tail the
    sets of vertices with a long past (or future) settle within ``n`` periods,
    and a flagged vertex far out in a tail can be pulled closer by cutting a
    repeated (phase, vertex) pair, so a margin of ``(n + 2)`` periods is exact.
    """
    n = nfa.n_states
    p = max(len(word.left), len(word.right))
    margin = (n + 2) * p
    lo, hi = word.anchor - margin, word.anchor + len(word.middle) + margin
    a, b = lo - margin, hi + margin
    past = {a: set(range(n))}
    for i in range(a, b):
        past[i + 1] = {q for u in past[i] for q in nfa.successors.get((u, word[i]), ())}
    future = {b: set(range(n))}
    for i in range(b - 1, a - 1, -1):
        future[i] = {
            u for u in range(n)
            if any(q in future[i + 1] for q in nfa.successors.get((u, word[i]), ()))
        }
    return any(u in flagged for i in range(lo, hi + 1) for u in past[i] & future[i])


def check_flagged_path(nfa, word, flagged, path, span=40) -> bool:
    """Consecutive vertices of ``path`` are joined by an edge labeled ``word[i]``."""

    def vertex(i):
        return naive_letter(path.left, path.middle, path.right, path.anchor, i)

    lo = path.anchor - span
    hi = path.anchor + len(path.middle) + span
    for i in range(lo, hi):
        if (vertex(i), word[i], vertex(i + 1)) not in nfa.transitions:
            return False
    return any(vertex(i) in flagged for i in range(lo, hi))
