"""Number conservation for distributions over a finite rule set.

Letters are read as the integers ``0..s-1`` and all charge arithmetic is
done over the integers.  A distribution is number-conserving iff every
window ``theta[j-2r..j]`` satisfies, for all ``u`` of length ``2r+1``::

    psi[2r](u) == u[0] + sum_{i<2r} psi[i+1](0^(2r-i) u[1..i+1]) - psi[i](0^(2r-i) u[0..i])

with ``psi = theta[j-2r..j]``.  The windows violating it form a finite
forbidden set, so the conserving distributions are a subshift of finite type.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .rules import RuleSet, all_words, word_index
from .simulation import global_charge, step
from .words import Configuration, Distribution


def nc_violation(rule_set: RuleSet, psi: Sequence[int]) -> tuple[int, ...] | None:
    """First input ``u`` (in index order) breaking the window identity, or None."""
    r, s = rule_set.radius, rule_set.s
    if len(psi) != 2 * r + 1:
        raise ValueError(f"window must have {2 * r + 1} rules, got {len(psi)}")
    tables = [rule_set[f].table for f in psi]

    def ev(k, word):
        return tables[k][word_index(word, s)]

    for u in all_words(s, 2 * r + 1):
        rhs = u[0]
        for i in range(2 * r):
            pad = (0,) * (2 * r - i)
            rhs += ev(i + 1, pad + u[1 : i + 2]) - ev(i, pad + u[0 : i + 1])
        if ev(2 * r, u) != rhs:
            return u
    return None


def is_nc_window(rule_set: RuleSet, psi: Sequence[int]) -> bool:
    return nc_violation(rule_set, psi) is None


@dataclass(frozen=True)
class NcForbiddenSet:
    rule_set: RuleSet
    windows: dict  # psi -> violating u

    def __contains__(self, psi) -> bool:
        return tuple(psi) in self.windows

    def __len__(self) -> int:
        return len(self.windows)

    def as_list(self) -> list[dict]:
        return [
            {"window": [self.rule_set[f].name for f in psi], "violating_u": list(u)}
            for psi, u in sorted(self.windows.items())
        ]


def forbidden_nc_windows(rule_set: RuleSet) -> NcForbiddenSet:
    width = 2 * rule_set.radius + 1
    found = {}
    for psi in itertools.product(range(len(rule_set)), repeat=width):
        u = nc_violation(rule_set, psi)
        if u is not None:
            found[psi] = u
    return NcForbiddenSet(rule_set, found)


@dataclass(frozen=True)
class NcReport:
    conserving: bool
    window: tuple[int, int] | None = None
    pattern: tuple[int, ...] | None = None
    violating_u: tuple[int, ...] | None = None
    rule_set: RuleSet | None = None

    @property
    def verdict(self) -> str:
        return "number-conserving" if self.conserving else "not-number-conserving"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness_window": list(self.window) if self.window else None,
            "witness_pattern": (
                [self.rule_set[f].name for f in self.pattern] if self.pattern else None
            ),
            "violating_u": list(self.violating_u) if self.violating_u else None,
        }


def distribution_windows(theta: Distribution):
    """Every distinct window position class of length ``2r+1``: yields ``(start, psi)``.

    Tail windows repeat periodically, so one period's worth on each side
    covers them.
    """
    width = 2 * theta.radius + 1
    first = theta.anchor - len(theta.left) - width + 1
    last = theta.end + len(theta.right) - 1
    for start in range(first, last + 1):
        yield start, theta.window(start, start + width - 1)


def is_distribution_nc(theta: Distribution) -> NcReport:
    """Check every window of ``theta``; report the leftmost forbidden one."""
    cache: dict = {}
    for start, psi in distribution_windows(theta):
        if psi not in cache:
            cache[psi] = nc_violation(theta.rule_set, psi)
        u = cache[psi]
        if u is not None:
            end = start + len(psi) - 1
            return NcReport(False, (start, end), psi, u, theta.rule_set)
    return NcReport(True, rule_set=theta.rule_set)


@dataclass(frozen=True)
class NcSft:
    """Edge shift: vertices are rule words of length ``2r``, edges the allowed windows."""

    rule_set: RuleSet
    vertices: tuple
    edges: tuple  # (prefix, suffix, window)

    @property
    def is_empty(self) -> bool:
        """True iff no bi-infinite path exists, i.e. no distribution is conserving."""
        return not self.recurrent_vertices()

    def recurrent_vertices(self) -> frozenset:
        """Vertices lying on a bi-infinite path (repeatedly drop sources and sinks)."""
        alive = set(self.vertices)
        edges = list(self.edges)
        while True:
            live_edges = [e for e in edges if e[0] in alive and e[1] in alive]
            has_out = {e[0] for e in live_edges}
            has_in = {e[1] for e in live_edges}
            keep = alive & has_out & has_in
            if keep == alive:
                return frozenset(alive)
            alive, edges = keep, live_edges

    def to_dot(self) -> str:
        name = lambda word: " ".join(self.rule_set[f].name for f in word)  # noqa: E731
        ids = {v: k for k, v in enumerate(self.vertices)}
        lines = ["digraph nc_sft {"]
        for v in self.vertices:
            lines.append(f'  {ids[v]} [label="{name(v)}"];')
        for a, b, w in self.edges:
            lines.append(f'  {ids[a]} -> {ids[b]} [label="{name(w)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def nc_sft(rule_set: RuleSet, forbidden: NcForbiddenSet | None = None) -> NcSft:
    forbidden = forbidden or forbidden_nc_windows(rule_set)
    r, n = rule_set.radius, len(rule_set)
    vertices = tuple(itertools.product(range(n), repeat=2 * r))
    edges = tuple(
        (w[:-1], w[1:], w)
        for w in itertools.product(range(n), repeat=2 * r + 1)
        if w not in forbidden
    )
    return NcSft(rule_set, vertices, edges)


@dataclass(frozen=True)
class ChargeCheck:
    confirmed: bool
    checked: int
    violation: Configuration | None = None
    charge_before: int | None = None
    charge_after: object = None  # int or math.inf


def charge_oracle(
    theta: Distribution,
    width: int | None = None,
    mode: str = "exhaustive",
    samples: int = 1000,
    seed: int = 0,
) -> ChargeCheck:
    """Compare the charge of finite configurations supported in ``[-width, width]``
    with the charge of their image, by simulation.

    ``mode`` is ``"exhaustive"`` (every such configuration) or ``"random"``
    (``samples`` draws from ``random.Random(seed)``).
    """
    r, s = theta.radius, theta.rule_set.s
    width = 2 * r + 2 if width is None else width
    zero = Configuration.zero(s)
    used = theta.letters()
    if any(theta.rule_set[f].table[0] != 0 for f in used):
        image = step(theta, zero)
        return ChargeCheck(False, 1, zero, 0, global_charge(image))
    n = 2 * width + 1
    if mode == "exhaustive":
        blocks = itertools.product(range(s), repeat=n)
    elif mode == "random":
        rng = random.Random(seed)
        blocks = (tuple(rng.randrange(s) for _ in range(n)) for _ in range(samples))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    checked = 0
    for block in blocks:
        x = Configuration.finite(block, s, anchor=-width)
        before, after = global_charge(x), global_charge(step(theta, x))
        checked += 1
        if before != after:
            return ChargeCheck(False, checked, x, before, after)
    return ChargeCheck(True, checked)
