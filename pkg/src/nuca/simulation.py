"""Exact simulation of non-uniform CA on eventually periodic configurations."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rules import word_index
from .words import Configuration, Distribution

INFINITE = math.inf


def _check(theta: Distribution, x: Configuration) -> None:
    if theta.rule_set.s != x.s:
        raise ValueError(
            f"distribution alphabet {theta.rule_set.s} does not match configuration alphabet {x.s}"
        )


def cell_image(theta: Distribution, x: Configuration, i: int) -> int:
    """``H(x)_i`` by direct evaluation of ``theta_i`` on ``x[i-r..i+r]``."""
    r = theta.radius
    f = theta.rule_set[theta[i]]
    return f.table[word_index(x.window(i - r, i + r), x.s)]


def step(theta: Distribution, x: Configuration) -> Configuration:
    """One application of the global map, returned in normalized form."""
    _check(theta, x)
    r = theta.radius
    lo = min(theta.anchor, x.anchor) - r
    hi = max(theta.end, x.end) + r
    p_left = math.lcm(len(theta.left), len(x.left))
    p_right = math.lcm(len(theta.right), len(x.right))
    start, stop = lo - p_left, hi + p_right
    # read each needed letter once, then slide
    xs = x.window(start - r, stop - 1 + r)
    tables = [f.table for f in theta.rule_set.rules]
    s = x.s
    width = 2 * r + 1
    out = []
    for k, i in enumerate(range(start, stop)):
        idx = 0
        for a in xs[k : k + width]:
            idx = idx * s + a
        out.append(tables[theta[i]][idx])
    left = tuple(out[:p_left])
    middle = tuple(out[p_left : p_left + hi - lo])
    right = tuple(out[p_left + hi - lo :])
    return Configuration(left, middle, right, lo, s)


def iterate(theta: Distribution, x: Configuration, t: int) -> Configuration:
    if t < 0:
        raise ValueError("number of steps must be non-negative")
    for _ in range(t):
        x = step(theta, x)
    return x


def orbit(theta: Distribution, x: Configuration, t: int) -> list[Configuration]:
    """``[x, H(x), ..., H^t(x)]``."""
    out = [x]
    for _ in range(t):
        out.append(step(theta, out[-1]))
    return out


def first_difference(x: Configuration, y: Configuration) -> int | None:
    """Smallest ``k >= 0`` with ``x[-k..k] != y[-k..k]``, or None if ``x == y``."""
    if x == y:
        return None
    bound = (
        max(abs(x.anchor), abs(x.end), abs(y.anchor), abs(y.end))
        + math.lcm(len(x.left), len(y.left))
        + math.lcm(len(x.right), len(y.right))
    )
    for k in range(bound + 1):
        if x[k] != y[k] or x[-k] != y[-k]:
            return k
    raise AssertionError("unequal configurations agree on the whole search range")


def cantor_distance(x: Configuration, y: Configuration) -> Fraction:
    """``0`` if equal, else ``2**-k`` for the first radius ``k`` where they differ."""
    if x.s != y.s:
        raise ValueError("configurations use different alphabets")
    k = first_difference(x, y)
    return Fraction(0) if k is None else Fraction(1, 2**k)


def partial_charge(x: Configuration, n: int) -> int:
    """Sum of the letters of ``x`` on ``[-n, n]``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum(x.window(-n, n))


def global_charge(x: Configuration):
    """Total charge of a finite configuration, ``math.inf`` otherwise."""
    if any(x.left) or any(x.right):
        return INFINITE
    return sum(x.middle)


@dataclass(frozen=True)
class ChargeSeries:
    n: np.ndarray
    charge: np.ndarray
    image_charge: np.ndarray
    ratio: np.ndarray  # nan where charge(x) is 0

    @property
    def tail_min(self) -> float | None:
        """Minimum ratio over the last half of the series (a finite stand-in for liminf)."""
        tail = self._tail()
        return float(tail.min()) if tail.size else None

    @property
    def tail_max(self) -> float | None:
        tail = self._tail()
        return float(tail.max()) if tail.size else None

    def _tail(self) -> np.ndarray:
        half = self.ratio[len(self.ratio) // 2 :]
        return half[~np.isnan(half)]


def charge_ratio_series(theta: Distribution, x: Configuration, n_max: int) -> ChargeSeries:
    """Partial charges of ``x`` and ``H(x)`` on ``[-n, n]`` for ``n = 0..n_max``."""
    y = step(theta, x)
    ns = np.arange(n_max + 1)
    xs = np.asarray(x.window(-n_max, n_max), dtype=np.int64)
    ys = np.asarray(y.window(-n_max, n_max), dtype=np.int64)
    c = n_max
    charge = np.array([xs[c - n : c + n + 1].sum() for n in ns])
    image = np.array([ys[c - n : c + n + 1].sum() for n in ns])
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(charge != 0, image / np.where(charge == 0, 1, charge), np.nan)
    return ChargeSeries(ns, charge, image, ratio)


@dataclass(frozen=True)
class SpaceTimeDiagram:
    rows: np.ndarray  # shape (T + 1, b - a + 1)
    a: int
    b: int
    s: int

    @property
    def steps(self) -> int:
        return self.rows.shape[0] - 1

    def to_pgm(self) -> str:
        """Plain PGM (P2), letter 0 white through letter s-1 black."""
        h, w = self.rows.shape
        gray = np.rint(255 * (self.s - 1 - self.rows) / (self.s - 1)).astype(int)
        buf = io.StringIO()
        buf.write(f"P2\n{w} {h}\n255\n")
        for row in gray:
            buf.write(" ".join(map(str, row)) + "\n")
        return buf.getvalue()

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("t," + ",".join(str(i) for i in range(self.a, self.b + 1)) + "\n")
        for t, row in enumerate(self.rows):
            buf.write(f"{t}," + ",".join(map(str, row)) + "\n")
        return buf.getvalue()


def space_time(
    theta: Distribution, x: Configuration, a: int, b: int, steps: int
) -> SpaceTimeDiagram:
    if a > b:
        raise ValueError("window must satisfy a <= b")
    if steps < 0:
        raise ValueError("number of steps must be non-negative")
    rows = [x.window(a, b) for x in orbit(theta, x, steps)]
    return SpaceTimeDiagram(np.array(rows, dtype=np.int64), a, b, x.s)


@dataclass(frozen=True)
class PerturbationCone:
    """Difference masks between the orbits of ``x`` and ``x`` with cell ``p`` bumped."""

    position: int
    a: int
    b: int
    masks: np.ndarray  # shape (T + 1, b - a + 1), bool

    def spread(self, t: int) -> list[int]:
        return [self.a + int(k) for k in np.flatnonzero(self.masks[t])]

    def max_distance(self) -> int:
        """Farthest a difference got from the perturbed cell, over all steps."""
        hit = np.flatnonzero(self.masks.any(axis=0))
        if hit.size == 0:
            return 0
        cells = self.a + hit
        return int(np.abs(cells - self.position).max())


def perturbed(x: Configuration, p: int) -> Configuration:
    """``x`` with the letter at ``p`` cycled by +1 mod s."""
    block = list(x.window(min(p, x.anchor), max(p, x.end - 1)))
    lo = min(p, x.anchor)
    block[p - lo] = (block[p - lo] + 1) % x.s
    # re-express around the edited block; tails keep their phase
    left_shift = x.anchor - lo
    k = left_shift % len(x.left)
    left = x.left[-k:] + x.left[:-k] if k else x.left
    return Configuration(left, tuple(block), _right_after(x, lo + len(block)), lo, x.s)


def _right_after(x: Configuration, pos: int):
    if pos <= x.end:
        return x.right
    k = (pos - x.end) % len(x.right)
    return x.right[k:] + x.right[:k]


def perturbation_cone(
    theta: Distribution, x: Configuration, p: int, steps: int
) -> PerturbationCone:
    if steps < 0:
        raise ValueError("number of steps must be non-negative")
    r = theta.radius
    a, b = p - r * steps - 1, p + r * steps + 1
    y = perturbed(x, p)
    masks = []
    for t in range(steps + 1):
        masks.append(np.not_equal(x.window(a, b), y.window(a, b)))
        if t < steps:
            x, y = step(theta, x), step(theta, y)
    return PerturbationCone(p, a, b, np.array(masks, dtype=bool))
