"""Walls, propagation radii and sensitivity for linear distributions over Z_s.

A rule word ``psi`` of length ``n >= r`` is a right-wall when a signal
injected just right of it never reaches its first ``r`` cells: starting
from ``u_1 = h_psi(0^r 0^n v)`` and iterating ``u_{k+1} = h_psi(0^r u_k 0^r)``,
every ``u_k`` begins with ``0^r`` for every ``v`` of length ``r``.  Left-walls
mirror this.  The set of admissible ``v`` is a submodule of ``Z_s^r``, so
checking the unit vectors is enough.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .rules import RuleSet, apply_partial
from .simulation import perturbation_cone
from .words import Configuration, Distribution

EQUICONTINUOUS = "equicontinuous"
SENSITIVE = "sensitive-bounded-evidence"


@dataclass(frozen=True)
class OrbitSummary:
    v: tuple[int, ...]
    entry: int  # index of the first repeated state
    cycle_length: int
    ok: bool


@dataclass(frozen=True)
class WallCertificate:
    pattern: tuple[int, ...]
    side: str  # "left" or "right"
    is_wall: bool
    orbits: tuple[OrbitSummary, ...]
    exhaustive: bool = False


def _check_linear(rule_set: RuleSet) -> RuleSet:
    return rule_set.linearized()


def _wall(rule_set: RuleSet, psi: Sequence[int], side: str, exhaustive: bool) -> WallCertificate:
    rule_set = _check_linear(rule_set)
    r, s, n = rule_set.radius, rule_set.s, len(psi)
    if n < r or n == 0:
        raise ValueError(f"a wall needs at least max(r, 1) = {max(r, 1)} rules, got {n}")
    pad = (0,) * r
    if exhaustive:
        vectors = list(itertools.product(range(s), repeat=r))
    else:
        vectors = [tuple(int(k == j) for k in range(r)) for j in range(r)]
    watched = slice(0, r) if side == "right" else slice(n - r, n)
    orbits = []
    for v in vectors:
        inject = pad + (0,) * n + v if side == "right" else v + (0,) * n + pad
        u = apply_partial(rule_set, psi, inject)
        seen = {}
        ok = True
        k = 1
        while u not in seen:
            if any(u[watched]):
                ok = False
                break
            seen[u] = k
            u = apply_partial(rule_set, psi, pad + u + pad)
            k += 1
        entry = seen.get(u, k)
        orbits.append(OrbitSummary(v, entry, k - entry if ok else 0, ok))
        if not ok:
            break
    return WallCertificate(tuple(psi), side, all(o.ok for o in orbits), tuple(orbits), exhaustive)


def is_right_wall(rule_set: RuleSet, psi: Sequence[int], exhaustive: bool = False) -> WallCertificate:
    return _wall(rule_set, psi, "right", exhaustive)


def is_left_wall(rule_set: RuleSet, psi: Sequence[int], exhaustive: bool = False) -> WallCertificate:
    return _wall(rule_set, psi, "left", exhaustive)


def _coefficient_rows(theta: Distribution, i: int, steps: int):
    """Yield the coefficient rows of ``H^0 .. H^steps`` at cell ``i`` (absolute positions)."""
    rule_set = _check_linear(theta.rule_set)
    r, s = rule_set.radius, rule_set.s
    row = {i: 1}
    yield row
    for _ in range(steps):
        nxt: dict[int, int] = {}
        for j, c in row.items():
            for k, a in enumerate(rule_set[theta[j]].linear_coeffs):
                if a:
                    pos = j - r + k
                    nxt[pos] = (nxt.get(pos, 0) + c * a) % s
        row = {j: c for j, c in nxt.items() if c}
        yield row


def coefficient_row(theta: Distribution, i: int, n: int) -> dict[int, int]:
    """Nonzero coefficients ``{offset: c}`` with ``H^n(x)_i = sum c * x_{i+offset}`` (mod s)."""
    *_, row = _coefficient_rows(theta, i, n)
    return {j - i: c for j, c in sorted(row.items())}


def propagation_radii(theta: Distribution, i: int, steps: int) -> list[int]:
    """Largest offset with a nonzero coefficient in ``H^n`` at cell ``i``, for ``n = 0..steps``."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    return [max((abs(j - i) for j in row), default=0) for row in _coefficient_rows(theta, i, steps)]


@dataclass(frozen=True)
class WallHit:
    side: str
    phase: int
    length: int
    start: int  # one concrete occurrence inside the periodic tail
    certificate: WallCertificate

    def as_dict(self, rule_set: RuleSet) -> dict:
        return {
            "side": self.side,
            "phase": self.phase,
            "length": self.length,
            "start": self.start,
            "pattern": [rule_set[f].name for f in self.certificate.pattern],
        }


@dataclass(frozen=True)
class EmpiricalSummary:
    escaped: bool
    max_distance: int
    positions: tuple[int, ...]
    steps: int
    window: int

    def as_dict(self) -> dict:
        return {
            "escaped": self.escaped,
            "max_distance": self.max_distance,
            "positions": list(self.positions),
            "steps": self.steps,
            "window": self.window,
        }


@dataclass(frozen=True)
class DynamicsReport:
    verdict: str
    left_wall: WallHit | None
    right_wall: WallHit | None
    n_max: int
    rule_set: RuleSet = field(repr=False, default=None)
    empirical: EmpiricalSummary | None = None

    @property
    def equicontinuous(self) -> bool:
        return self.verdict == EQUICONTINUOUS

    @property
    def bounded(self) -> bool:
        return self.verdict == SENSITIVE

    @property
    def certificates(self) -> list[WallHit]:
        return [h for h in (self.left_wall, self.right_wall) if h is not None]

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "certificates": [h.as_dict(self.rule_set) for h in self.certificates],
            "bounded": self.bounded,
            "n_max": self.n_max,
            "empirical": self.empirical.as_dict() if self.empirical else None,
        }


def default_n_max(theta: Distribution) -> int:
    return max(4 * len(theta.left), 4 * len(theta.right), 8 * theta.radius)


def _tail_factors(period: Sequence[int], length: int):
    p = len(period)
    seen = set()
    for phase in range(p):
        word = tuple(period[(phase + t) % p] for t in range(length))
        if word not in seen:
            seen.add(word)
            yield phase, word


def find_tail_wall(theta: Distribution, side: str, n_max: int) -> WallHit | None:
    """Shortest wall (ties: smallest phase) among factors of one periodic tail."""
    rule_set = _check_linear(theta.rule_set)
    r = rule_set.radius
    period = theta.left if side == "left" else theta.right
    p = len(period)
    check = is_left_wall if side == "left" else is_right_wall
    for length in range(max(r, 1), n_max + 1):
        for phase, word in _tail_factors(period, length):
            cert = check(rule_set, word)
            if cert.is_wall:
                if side == "left":
                    start = theta.anchor - length - ((-length - phase) % p)
                else:
                    start = theta.end + phase
                return WallHit(side, phase, length, start, cert)
    return None


def empirical_classify(
    theta: Distribution,
    trials: int = 8,
    steps: int = 64,
    window: int = 16,
    seed: int = 0,
    positions: Sequence[int] | None = None,
    background: Configuration | None = None,
) -> EmpiricalSummary:
    """Perturb single cells and watch how far the difference travels in ``steps`` steps."""
    if positions is None:
        rng = random.Random(seed)
        lo = theta.anchor - 2 * len(theta.left) - 8
        hi = theta.end + 2 * len(theta.right) + 8
        positions = sorted(rng.randint(lo, hi) for _ in range(trials))
    x = background if background is not None else Configuration.zero(theta.rule_set.s)
    far = 0
    for p in positions:
        far = max(far, perturbation_cone(theta, x, p, steps).max_distance())
    return EmpiricalSummary(far > window, far, tuple(positions), steps, window)


def classify(
    theta: Distribution,
    n_max: int | None = None,
    empirical_steps: int | None = None,
    empirical_window: int = 16,
) -> DynamicsReport:
    """Equicontinuous when both tails carry a wall (left-wall on the left, right-wall
    on the right); each such wall recurs with the period, so it blocks information
    at infinitely many places.  Otherwise the verdict is sensitivity, backed only by
    the absence of walls up to length ``n_max``.
    """
    rule_set = _check_linear(theta.rule_set)
    n_max = default_n_max(theta) if n_max is None else n_max
    if n_max < max(rule_set.radius, 1):
        raise ValueError("n_max must be at least the radius")
    left = find_tail_wall(theta, "left", n_max)
    right = find_tail_wall(theta, "right", n_max)
    verdict = EQUICONTINUOUS if left and right else SENSITIVE
    emp = None
    if empirical_steps is not None:
        emp = empirical_classify(theta, steps=empirical_steps, window=empirical_window)
    return DynamicsReport(verdict, left, right, n_max, rule_set, emp)
