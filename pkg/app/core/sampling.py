"""
Seeded rational samplers and the per-check tally used by every verifier
"""
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .config import MAX_REDRAWS, SAMPLE_BOUND
from .errors import BoundarySampleError
from .rational import Vector, combine, format_rat

logger = logging.getLogger(__name__)


class RationalSampler:
    """Draws p/q with p uniform in [-N, N] and q uniform in [1, N]"""

    def __init__(self, seed: int, bound: int = SAMPLE_BOUND):
        self.rng = random.Random(seed)
        self.bound = bound

    def rat(self) -> Fraction:
        return Fraction(self.rng.randint(-self.bound, self.bound), self.rng.randint(1, self.bound))

    def positive(self) -> Fraction:
        return Fraction(self.rng.randint(1, self.bound), self.rng.randint(1, self.bound))

    def nonpositive(self) -> Fraction:
        return -Fraction(self.rng.randint(0, self.bound), self.rng.randint(1, self.bound))

    def unit(self) -> Fraction:
        """k/N with k uniform in [1, N]"""
        return Fraction(self.rng.randint(1, self.bound), self.bound)

    def nonzero(self) -> Fraction:
        while True:
            x = self.rat()
            if x:
                return x

    def rats(self, n: int) -> list[Fraction]:
        return [self.rat() for _ in range(n)]

    def combination(self, vectors: Sequence[Vector], dim: int, kind: str = "any") -> Vector:
        draw = {"any": self.rat, "positive": self.positive, "nonpositive": self.nonpositive}[kind]
        return combine([draw() for _ in vectors], vectors, dim)

    def alpha_point(self, rs) -> Vector:
        """H ∈ 𝔞₀^G with random α_i(H)"""
        return rs.from_alpha_values(self.rats(rs.rank))

    def regular_point(self, rs) -> Vector:
        return rs.from_alpha_values([self.positive() for _ in range(rs.rank)])

    def choice(self, items: Sequence):
        return items[self.rng.randrange(len(items))]

    def fork(self) -> "RationalSampler":
        return RationalSampler(self.rng.getrandbits(63), self.bound)


def jsonable(value: Any) -> Any:
    """Render witnesses with "p/q" rationals and sorted sets"""
    if isinstance(value, Fraction):
        return format_rat(value)
    if isinstance(value, (frozenset, set)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


@dataclass
class SampleTally:
    checked: int = 0
    skipped_boundary: int = 0
    failed: int = 0
    witnesses: list[dict] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)
    max_witnesses: int = 5

    def record(self, ok: bool, **witness) -> bool:
        self.checked += 1
        if not ok:
            self.failed += 1
            if len(self.witnesses) < self.max_witnesses:
                self.witnesses.append({k: jsonable(v) for k, v in witness.items()})
        return ok

    def skip(self, count: int = 1) -> None:
        self.skipped_boundary += count

    def merge(self, other: "SampleTally") -> "SampleTally":
        self.checked += other.checked
        self.skipped_boundary += other.skipped_boundary
        self.failed += other.failed
        room = self.max_witnesses - len(self.witnesses)
        self.witnesses.extend(other.witnesses[:max(room, 0)])
        for key, value in other.notes.items():
            if key in self.notes and isinstance(value, Fraction) and isinstance(self.notes[key], Fraction):
                self.notes[key] = max(self.notes[key], value)
            else:
                self.notes.setdefault(key, value)
        return self

    @property
    def passed(self) -> bool:
        return self.failed == 0


def run_samples(
    check: Callable[[RationalSampler, SampleTally], None],
    n_samples: int,
    sampler: RationalSampler,
    tally: SampleTally | None = None,
) -> SampleTally:
    """
    Drive one sampled check n_samples times.

    A check raising BoundarySampleError is redrawn with fresh randomness, up to
    MAX_REDRAWS attempts per sample, and every redraw is counted as skipped.
    """
    tally = tally if tally is not None else SampleTally()
    for index in range(n_samples):
        for _ in range(MAX_REDRAWS):
            try:
                check(sampler, tally)
                break
            except BoundarySampleError as exc:
                tally.skip()
                logger.debug("sample %d redrawn: %s", index, exc)
        else:
            logger.warning("sample %d abandoned after %d redraws", index, MAX_REDRAWS)
    return tally
