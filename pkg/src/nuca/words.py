"""Eventually periodic bi-infinite words: configurations and distributions.

A word is stored as ``left``, ``middle``, ``right`` and ``anchor``: the
middle occupies ``[anchor, anchor + len(middle))``, positions to its left
read ``left`` cyclically leftward (``anchor - 1`` holds ``left[-1]``), and
positions to its right read ``right`` cyclically rightward.

Representations are normalized on construction (primitive periods, middle
absorbed into the tails as far as possible, fully periodic words anchored
at 0), so two instances are equal exactly when they spell the same word.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence

from .rules import RuleSet

Word = tuple[int, ...]


def _primitive_root(w: Word) -> Word:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w == w[:d] * (n // d):
            return w[:d]
    return w


def normalize(left: Word, middle: Word, right: Word, anchor: int):
    """Canonical ``(left, middle, right, anchor)`` for the same bi-infinite word."""
    if not left or not right:
        raise ValueError("both periods must be non-empty")
    left = _primitive_root(tuple(left))
    right = _primitive_root(tuple(right))
    middle = list(middle)
    lo = 0
    while lo < len(middle) and middle[lo] == left[0]:
        left = left[1:] + left[:1]
        lo += 1
    anchor += lo
    middle = middle[lo:]
    while middle and middle[-1] == right[-1]:
        right = right[-1:] + right[:-1]
        middle.pop()
    if not middle:
        if left == right:
            # fully periodic: re-anchor at 0
            p = len(right)
            k = (-anchor) % p
            right = right[k:] + right[:k]
            return right, (), right, 0
        limit = math.lcm(len(left), len(right))
        steps = 0
        while right[0] == left[0] and steps < limit:
            left = left[1:] + left[:1]
            right = right[1:] + right[:1]
            anchor += 1
            steps += 1
    return left, tuple(middle), right, anchor


@dataclass(frozen=True)
class EventuallyPeriodic:
    left: Word
    middle: Word
    right: Word
    anchor: int = 0

    def __post_init__(self):
        left, middle, right, anchor = normalize(
            tuple(int(a) for a in self.left),
            tuple(int(a) for a in self.middle),
            tuple(int(a) for a in self.right),
            int(self.anchor),
        )
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "middle", middle)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "anchor", anchor)

    @property
    def end(self) -> int:
        """First position of the right tail."""
        return self.anchor + len(self.middle)

    def __getitem__(self, i: int) -> int:
        if i < self.anchor:
            return self.left[(i - self.anchor) % len(self.left)]
        if i < self.end:
            return self.middle[i - self.anchor]
        return self.right[(i - self.end) % len(self.right)]

    def window(self, i: int, j: int) -> Word:
        """Letters at positions ``i..j`` inclusive."""
        if i > j:
            raise ValueError(f"empty window [{i}, {j}]")
        return tuple(self[k] for k in range(i, j + 1))

    def _replace(self, **changes):
        fields = dict(left=self.left, middle=self.middle, right=self.right, anchor=self.anchor)
        fields.update(changes)
        return self._rebuild(**fields)

    def _rebuild(self, **fields):
        raise NotImplementedError

    def shifted(self, k: int):
        """The word ``w'`` with ``w'[i] = w[i + k]``."""
        return self._replace(anchor=self.anchor - k)

    def letters(self) -> frozenset[int]:
        return frozenset(self.left + self.middle + self.right)

    def as_dict(self) -> dict:
        return {
            "left": list(self.left),
            "mid": list(self.middle),
            "right": list(self.right),
            "anchor": self.anchor,
        }


@dataclass(frozen=True)
class Configuration(EventuallyPeriodic):
    s: int = 2

    def __post_init__(self):
        super().__post_init__()
        if self.s < 2:
            raise ValueError("alphabet size must be at least 2")
        if any(not 0 <= a < self.s for a in self.letters()):
            raise ValueError(f"letter outside alphabet of size {self.s}")

    def _rebuild(self, **fields):
        return Configuration(s=self.s, **fields)

    @classmethod
    def zero(cls, s: int = 2) -> "Configuration":
        return cls((0,), (), (0,), 0, s)

    @classmethod
    def constant(cls, letter: int, s: int = 2) -> "Configuration":
        return cls((letter,), (), (letter,), 0, s)

    @classmethod
    def finite(cls, letters: dict[int, int] | Sequence[int], s: int = 2, anchor: int = 0):
        """Finite-support configuration, from ``{position: letter}`` or a block at ``anchor``."""
        if isinstance(letters, dict):
            if not letters:
                return cls.zero(s)
            lo, hi = min(letters), max(letters)
            block = tuple(letters.get(i, 0) for i in range(lo, hi + 1))
            return cls((0,), block, (0,), lo, s)
        return cls((0,), tuple(letters), (0,), anchor, s)

    @classmethod
    def single(cls, letter: int, position: int = 0, s: int = 2) -> "Configuration":
        return cls.finite({position: letter}, s)

    @property
    def is_finite(self) -> bool:
        return self.left == (0,) and self.right == (0,)

    def support(self) -> list[int]:
        if not self.is_finite:
            raise ValueError("support of a non-finite configuration is infinite")
        return [self.anchor + k for k, a in enumerate(self.middle) if a]


@dataclass(frozen=True)
class Distribution(EventuallyPeriodic):
    """An eventually periodic assignment of rule indices to cells."""

    rule_set: RuleSet | None = None

    def __post_init__(self):
        super().__post_init__()
        if self.rule_set is None:
            raise ValueError("a distribution needs a rule set")
        n = len(self.rule_set)
        if any(not 0 <= f < n for f in self.letters()):
            raise ValueError("rule index out of range")

    def _rebuild(self, **fields):
        return Distribution(rule_set=self.rule_set, **fields)

    @classmethod
    def uniform(cls, rule_set: RuleSet, rule: str | int) -> "Distribution":
        f = rule_set.index(rule) if isinstance(rule, str) else rule
        return cls((f,), (), (f,), 0, rule_set)

    @classmethod
    def from_names(
        cls,
        rule_set: RuleSet,
        left: Sequence[str],
        middle: Sequence[str],
        right: Sequence[str],
        anchor: int = 0,
    ) -> "Distribution":
        idx = rule_set.index
        return cls(
            tuple(idx(n) for n in left),
            tuple(idx(n) for n in middle),
            tuple(idx(n) for n in right),
            anchor,
            rule_set,
        )

    def rule_at(self, i: int) -> int:
        return self[i]

    @property
    def radius(self) -> int:
        return self.rule_set.radius

    def names(self, word: Sequence[int]) -> list[str]:
        return [self.rule_set[f].name for f in word]

    def as_dict(self) -> dict:
        return {
            "left": self.names(self.left),
            "mid": self.names(self.middle),
            "right": self.names(self.right),
            "anchor": self.anchor,
        }


# -- literals ---------------------------------------------------------------

_FIELD = re.compile(r"(left|mid|right)\s*=\s*\(([^)]*)\)|anchor\s*=\s*(-?\d+)")


def _parse_fields(text: str) -> dict:
    fields: dict = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _FIELD.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse literal near {text[pos:]!r}")
        key = m.group(1) or "anchor"
        if key in fields:
            raise ValueError(f"duplicate field {key!r}")
        fields[key] = m.group(2).split() if m.group(1) else int(m.group(3))
        pos = m.end()
    for key in ("left", "right"):
        if key not in fields:
            raise ValueError(f"literal is missing {key}=(...)")
    fields.setdefault("mid", [])
    fields.setdefault("anchor", 0)
    return fields


def parse_distribution(text: str, rule_set: RuleSet) -> Distribution:
    """Parse ``uniform=<name>`` or ``left=(..) mid=(..) right=(..) anchor=<i>``."""
    text = text.strip()
    if text.startswith("uniform="):
        return Distribution.uniform(rule_set, text[len("uniform=") :].strip())
    fields = _parse_fields(text)
    return Distribution.from_names(
        rule_set, fields["left"], fields["mid"], fields["right"], fields["anchor"]
    )


def parse_configuration(text: str, s: int) -> Configuration:
    """Parse ``zero``, ``single:<letter>@<pos>`` or a full periodic literal."""
    text = text.strip()
    if text == "zero":
        return Configuration.zero(s)
    m = re.fullmatch(r"single:(\d+)@(-?\d+)", text)
    if m:
        return Configuration.single(int(m.group(1)), int(m.group(2)), s)
    fields = _parse_fields(text)
    return Configuration(
        tuple(int(a) for a in fields["left"]),
        tuple(int(a) for a in fields["mid"]),
        tuple(int(a) for a in fields["right"]),
        fields["anchor"],
        s,
    )


def format_literal(word: EventuallyPeriodic) -> str:
    d = word.as_dict()
    join = lambda xs: " ".join(map(str, xs))  # noqa: E731
    return f"left=({join(d['left'])}) mid=({join(d['mid'])}) right=({join(d['right'])}) anchor={d['anchor']}"
