"""Local rules, rule sets and partial transition functions.

Words over the alphabet ``{0, ..., s-1}`` are plain tuples of ints.  A rule
table of radius ``r`` is indexed by the base-``s`` value of its input word,
leftmost letter most significant, so the table of an elementary rule is its
Wolfram code read bit by bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

Word = tuple[int, ...]


class RuleFileError(ValueError):
    """Malformed rule-set text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class NotLinearError(ValueError):
    pass


def word_index(word: Sequence[int], s: int) -> int:
    idx = 0
    for a in word:
        idx = idx * s + a
    return idx


def index_word(idx: int, s: int, length: int) -> Word:
    out = [0] * length
    for j in range(length - 1, -1, -1):
        idx, out[j] = divmod(idx, s)
    return tuple(out)


def all_words(s: int, length: int) -> Iterable[Word]:
    """All words of ``length`` letters in table-index order."""
    return itertools.product(range(s), repeat=length)


def all_words_array(s: int, length: int) -> np.ndarray:
    """Every word of the given length as a row, in table-index order."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((s,) * length).reshape(length, -1)
    return grids.T.astype(np.int64)


@dataclass(frozen=True)
class LocalRule:
    """A radius-``r`` local rule given by its full truth table.

    ``linear_coeffs`` is set when the rule is known to be the map
    ``u -> sum(coeffs[i] * u[i]) mod s``.
    """

    name: str
    s: int
    radius: int
    table: tuple[int, ...]
    linear_coeffs: tuple[int, ...] | None = None
    original_radius: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.s < 2:
            raise ValueError("alphabet size must be at least 2")
        if self.radius < 0:
            raise ValueError("radius must be non-negative")
        width = 2 * self.radius + 1
        if len(self.table) != self.s**width:
            raise ValueError(
                f"rule {self.name!r}: table needs {self.s ** width} entries, "
                f"got {len(self.table)}"
            )
        if any(not 0 <= a < self.s for a in self.table):
            raise ValueError(f"rule {self.name!r}: table letter out of range")
        if self.linear_coeffs is not None:
            if len(self.linear_coeffs) != width:
                raise ValueError(f"rule {self.name!r}: needs {width} coefficients")
            if any(not 0 <= c < self.s for c in self.linear_coeffs):
                raise ValueError(f"rule {self.name!r}: coefficient out of range")
        if self.original_radius is None:
            object.__setattr__(self, "original_radius", self.radius)

    @property
    def width(self) -> int:
        return 2 * self.radius + 1

    @property
    def is_linear(self) -> bool:
        return self.linear_coeffs is not None

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)

    def __call__(self, word: Sequence[int]) -> int:
        if len(word) != self.width:
            raise ValueError(f"rule {self.name!r} reads {self.width} letters")
        return self.table[word_index(word, self.s)]

    @classmethod
    def from_function(
        cls, name: str, s: int, radius: int, func: Callable[..., int]
    ) -> "LocalRule":
        """Tabulate ``func(u_0, ..., u_2r)``."""
        table = tuple(int(func(*u)) % s for u in all_words(s, 2 * radius + 1))
        return cls(name, s, radius, table)

    @classmethod
    def linear(cls, name: str, s: int, coeffs: Sequence[int]) -> "LocalRule":
        coeffs = tuple(int(c) % s for c in coeffs)
        if len(coeffs) % 2 == 0:
            raise ValueError("a linear rule needs an odd number of coefficients")
        radius = (len(coeffs) - 1) // 2
        table = tuple(
            sum(c * a for c, a in zip(coeffs, u)) % s
            for u in all_words(s, len(coeffs))
        )
        return cls(name, s, radius, table, coeffs)

    @classmethod
    def elementary(cls, number: int, name: str | None = None) -> "LocalRule":
        """Binary radius-1 rule from its Wolfram number."""
        if not 0 <= number < 256:
            raise ValueError("elementary rule number must be in [0, 255]")
        table = tuple((number >> idx) & 1 for idx in range(8))
        return cls(name or f"eca{number}", 2, 1, table)

    def inferred_linear(self) -> "LocalRule":
        """Return this rule with coefficients attached, if its table is linear.

        Raises NotLinearError otherwise.
        """
        if self.linear_coeffs is not None:
            return self
        width = self.width
        coeffs = []
        for j in range(width):
            unit = [0] * width
            unit[j] = 1
            coeffs.append(self(unit))
        candidate = LocalRule.linear(self.name, self.s, coeffs)
        if candidate.table != self.table:
            raise NotLinearError(f"rule {self.name!r} is not linear over Z_{self.s}")
        return LocalRule(
            self.name, self.s, self.radius, self.table, candidate.linear_coeffs,
            self.original_radius,
        )


def pad_rule(rule: LocalRule, radius: int) -> LocalRule:
    """Extend ``rule`` to read ``radius`` cells on each side.

    The padded rule ignores the outer letters and applies ``rule`` to the
    centered window of its own width.
    """
    if radius < rule.radius:
        raise ValueError(
            f"cannot pad rule {rule.name!r} of radius {rule.radius} down to {radius}"
        )
    if radius == rule.radius:
        return rule
    off = radius - rule.radius
    width = 2 * radius + 1
    words = all_words_array(rule.s, width)[:, off : off + rule.width]
    weights = rule.s ** np.arange(rule.width - 1, -1, -1, dtype=np.int64)
    table = tuple(int(v) for v in rule.array[words @ weights])
    coeffs = None
    if rule.linear_coeffs is not None:
        coeffs = (0,) * off + rule.linear_coeffs + (0,) * off
    return LocalRule(rule.name, rule.s, radius, table, coeffs, rule.original_radius)


@dataclass(frozen=True)
class RuleSet:
    """An ordered, finite set of rules sharing alphabet and radius."""

    s: int
    radius: int
    rules: tuple[LocalRule, ...]

    def __post_init__(self):
        if not self.rules:
            raise ValueError("a rule set needs at least one rule")
        names = [f.name for f in self.rules]
        if len(set(names)) != len(names):
            raise ValueError("rule names must be unique")
        for f in self.rules:
            if f.s != self.s or f.radius != self.radius:
                raise ValueError(
                    f"rule {f.name!r} does not match alphabet {self.s} / radius {self.radius}"
                )

    @classmethod
    def of(cls, rules: Iterable[LocalRule], radius: int | None = None) -> "RuleSet":
        """Build a rule set, padding every rule to the common radius."""
        rules = list(rules)
        if not rules:
            raise ValueError("a rule set needs at least one rule")
        sizes = {f.s for f in rules}
        if len(sizes) != 1:
            raise ValueError("rules use different alphabets")
        r = max(f.radius for f in rules)
        if radius is not None:
            if radius < r:
                raise ValueError(f"radius {radius} is below the largest rule radius {r}")
            r = radius
        return cls(sizes.pop(), r, tuple(pad_rule(f, r) for f in rules))

    def __len__(self) -> int:
        return len(self.rules)

    def __getitem__(self, idx: int) -> LocalRule:
        return self.rules[idx]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.rules)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown rule {name!r}") from None

    def padded(self, radius: int) -> "RuleSet":
        return RuleSet.of(self.rules, radius)

    def linearized(self) -> "RuleSet":
        """Same rule set with coefficients attached to every rule."""
        return RuleSet(self.s, self.radius, tuple(f.inferred_linear() for f in self.rules))

    @property
    def tables(self) -> np.ndarray:
        return np.stack([f.array for f in self.rules])


def apply_partial(
    rule_set: RuleSet, psi: Sequence[int], word: Sequence[int]
) -> Word:
    """Partial transition function: cell ``i`` applies ``psi[i]`` to ``word[i:i+2r+1]``."""
    r = rule_set.radius
    n = len(psi)
    if len(word) != n + 2 * r:
        raise ValueError(f"input must have {n + 2 * r} letters, got {len(word)}")
    return tuple(rule_set[psi[i]](word[i : i + 2 * r + 1]) for i in range(n))


def apply_partial_all(rule_set: RuleSet, psi: Sequence[int]) -> np.ndarray:
    """Images of every input word under ``h_psi``, one row per input (index order)."""
    s, r = rule_set.s, rule_set.radius
    n = len(psi)
    inputs = all_words_array(s, n + 2 * r)
    width = 2 * r + 1
    weights = s ** np.arange(width - 1, -1, -1, dtype=np.int64)
    tables = rule_set.tables
    out = np.empty((inputs.shape[0], n), dtype=np.int64)
    for i, f in enumerate(psi):
        out[:, i] = tables[f][inputs[:, i : i + width] @ weights]
    return out


def preimage_counts(rule_set: RuleSet, psi: Sequence[int]) -> np.ndarray:
    """Number of preimages of each output word (indexed by its table index)."""
    s = rule_set.s
    n = len(psi)
    images = apply_partial_all(rule_set, psi)
    weights = s ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return np.bincount(images @ weights, minlength=s**n)


def parse_rule_set(text: str) -> RuleSet:
    """Parse the line-oriented rule-set format.

    Recognised lines are ``alphabet <s>``, ``radius <r>`` (applies to the
    rule lines that follow it), ``rule <name> table <ints...>`` and
    ``rule <name> linear <ints...>``.  ``#`` starts a comment line.
    """
    s: int | None = None
    radius: int | None = None
    rules: list[LocalRule] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key == "alphabet":
                if len(parts) != 2:
                    raise RuleFileError("expected 'alphabet <s>'", lineno)
                if s is not None:
                    raise RuleFileError("alphabet declared twice", lineno)
                s = int(parts[1])
                if s < 2:
                    raise RuleFileError("alphabet size must be at least 2", lineno)
            elif key == "radius":
                if len(parts) != 2:
                    raise RuleFileError("expected 'radius <r>'", lineno)
                radius = int(parts[1])
                if radius < 0:
                    raise RuleFileError("radius must be non-negative", lineno)
            elif key == "rule":
                if len(parts) < 3 or parts[2] not in ("table", "linear"):
                    raise RuleFileError(
                        "expected 'rule <name> table|linear <integers>'", lineno
                    )
                if s is None:
                    raise RuleFileError("rule before 'alphabet' line", lineno)
                name, kind = parts[1], parts[2]
                values = [int(v) for v in parts[3:]]
                if kind == "linear":
                    if radius is not None and len(values) != 2 * radius + 1:
                        raise RuleFileError(
                            f"linear rule needs {2 * radius + 1} coefficients", lineno
                        )
                    if any(not 0 <= v < s for v in values):
                        raise RuleFileError("coefficient out of range", lineno)
                    rules.append(LocalRule.linear(name, s, values))
                else:
                    if radius is None:
                        raise RuleFileError("table rule before 'radius' line", lineno)
                    rules.append(LocalRule(name, s, radius, tuple(values)))
            else:
                raise RuleFileError(f"unknown directive {key!r}", lineno)
        except RuleFileError:
            raise
        except ValueError as exc:
            raise RuleFileError(str(exc), lineno) from None
    if s is None:
        raise RuleFileError("missing 'alphabet' line")
    if not rules:
        raise RuleFileError("no rules defined")
    try:
        return RuleSet.of(rules)
    except ValueError as exc:
        raise RuleFileError(str(exc)) from None


def load_rule_set(path) -> RuleSet:
    with open(path, encoding="utf-8") as fh:
        return parse_rule_set(fh.read())


def format_rule_set(rule_set: RuleSet) -> str:
    lines = [f"alphabet {rule_set.s}", f"radius {rule_set.radius}"]
    for f in rule_set.rules:
        if f.linear_coeffs is not None:
            lines.append(f"rule {f.name} linear " + " ".join(map(str, f.linear_coeffs)))
        else:
            lines.append(f"rule {f.name} table " + " ".join(map(str, f.table)))
    return "\n".join(lines) + "\n"
