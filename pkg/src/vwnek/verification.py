"""Shared report structure and seeded sampling for verification commands.

Every verify_* function returns a VerificationReport: a named, countable
record of exact checks with human-readable failure strings.  Sampling of
rational evaluation points is deterministic in the seed; singular draws
(a tangent weight evaluating to 1, or a zero coordinate) are discarded and
redrawn, with a hard attempt bound so misconfigured inputs fail loudly
instead of spinning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import SingularPoint
from .scalars import QQ
from .weights import EvalPoint


@dataclass
class VerificationReport:
    name: str
    passed: bool = True
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def record(self, ok: bool, message: str = "") -> None:
        self.checks += 1
        if not ok:
            self.passed = False
            self.failures.append(message or f"check {self.checks} failed")

    def merge(self, other: "VerificationReport") -> None:
        self.checks += other.checks
        if not other.passed:
            self.passed = False
            self.failures.extend(f"{other.name}: {m}" for m in other.failures)
        if other.details:
            self.details[other.name] = other.details

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures,
            "details": self.details,
        }

    def render_lines(self) -> list[str]:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"[{status}] {self.name}: {self.checks} exact checks"]
        lines.extend(f"    failure: {m}" for m in self.failures)
        return lines


_SAMPLE_NUMERATORS = [v for v in range(-7, 8) if v not in (0,)]
_SAMPLE_DENOMINATORS = [1, 2, 3, 4, 5, 7]


def sample_rational(rng: random.Random):
    """A small nonzero rational, kept away from 0 so powers stay tame."""
    return QQ(rng.choice(_SAMPLE_NUMERATORS), rng.choice(_SAMPLE_DENOMINATORS))


def sample_point(rank: int, rng: random.Random) -> EvalPoint:
    """A random exact evaluation point with generic-looking coordinates."""
    while True:
        t1 = sample_rational(rng)
        t2 = sample_rational(rng)
        e = tuple(sample_rational(rng) for _ in range(rank))
        y_half = sample_rational(rng)
        if t1 == t2 or abs(y_half) == 1 or abs(t1) == 1 or abs(t2) == 1:
            continue
        if len(set(e)) != rank:
            continue
        return EvalPoint(t1, t2, e, y_half)


def with_resampling(fn, rank: int, seed: int, trials: int, max_attempts: int = 100):
    """Run fn(point) at `trials` seeded points, redrawing singular ones.

    Every draw uses its own RNG seeded by a deterministic increment of the
    base seed (one increment per draw, singular or not), so runs are exactly
    reproducible and a singular draw advances the sequence.  Raises
    SingularPoint if a single trial cannot find a regular point within
    max_attempts draws.
    """
    draw_seed = seed
    results = []
    for _ in range(trials):
        for _attempt in range(max_attempts):
            point = sample_point(rank, random.Random(draw_seed))
            draw_seed += 1
            try:
                results.append(fn(point))
                break
            except SingularPoint:
                continue
        else:
            raise SingularPoint(
                f"no regular evaluation point found in {max_attempts} draws"
            )
    return results
