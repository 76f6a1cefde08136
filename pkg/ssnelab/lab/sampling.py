"""
-------------------------------------------------
SSNELab - Seeded, chunked sampling
-------------------------------------------------

Trials are split into fixed-size chunks; chunk i draws from the i-th child of
`SeedSequence(seed)`. The outcome therefore depends on the seed and the chunk
size only, never on the number of workers.
"""

from typing import Callable, List, Optional, Tuple, TypeVar
from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor
from ssnelab.core.Error import PreconditionError
from ssnelab.hilbert.Vector import batch_norm
import numpy as np

T = TypeVar('T')

DEFAULT_TRIALS = 10_000
DEFAULT_SEED = 0
DEFAULT_BOX = (-10.0, 10.0)
CHUNK_SIZE = 10_000

# heavy-tail distances are 10^U(-3, 3)
HEAVY_TAIL_DECADES = (-3.0, 3.0)


def log_grid(low: float = 1e-3, high: float = 1e2, per_decade: int = 20) -> np.ndarray:
    """Log-spaced sweep grid including both end points."""
    if not (0 < low < high and per_decade >= 1):
        raise PreconditionError(f"Invalid sweep grid [{low}, {high}] with {per_decade} points per decade.")
    decades = np.log10(high) - np.log10(low)
    return np.logspace(np.log10(low), np.log10(high), int(round(decades * per_decade)) + 1)

SWEEP_GRID = log_grid()


def unit_directions(rng: np.random.Generator, k: int, n: int) -> np.ndarray:
    u = rng.standard_normal((k, n))
    nrm = batch_norm(u)
    # a zero draw has probability 0; map it to e_1 anyway
    u[nrm == 0, 0] = 1.0
    return u / np.maximum(batch_norm(u), 1e-300)[:, None]


@dataclass(frozen=True)
class SamplingBox:
    """
    Points are drawn uniformly from [low, high]^n. With `heavy_tail`, half of the
    pairs are replaced by y = x + r·u with a random direction u and r = 10^U(-3, 3).
    """
    low: float = DEFAULT_BOX[0]
    high: float = DEFAULT_BOX[1]
    heavy_tail: bool = True

    def __post_init__(self) -> None:
        if not (np.isfinite(self.low) and np.isfinite(self.high) and self.low < self.high):
            raise PreconditionError(f"Sampling box needs finite low < high, got [{self.low}, {self.high}].")

    @property
    def bounds(self) -> Tuple[float, float]:
        return (float(self.low), float(self.high))

    def points(self, rng: np.random.Generator, k: int, n: int) -> np.ndarray:
        return rng.uniform(self.low, self.high, size=(k, n))

    def pairs(self, rng: np.random.Generator, k: int, n: int) -> Tuple[np.ndarray, np.ndarray]:
        x = self.points(rng, k, n)
        y = self.points(rng, k, n)

        # drawn unconditionally so that both modes consume the generator alike
        far = rng.random(k) < 0.5
        u = unit_directions(rng, k, n)
        r = 10 ** rng.uniform(*HEAVY_TAIL_DECADES, size=k)

        if self.heavy_tail:
            y = np.where(far[:, None], x + r[:, None] * u, y)
        return x, y

    def to_dict(self) -> dict:
        return {'low': self.low, 'high': self.high, 'heavy_tail': self.heavy_tail}


@dataclass(frozen=True)
class SamplingPlan:
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    chunk_size: int = CHUNK_SIZE
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.trials >= 1:
            raise PreconditionError(f"Number of trials must be at least 1, got {self.trials}.")
        if not self.seed >= 0:
            raise PreconditionError(f"Seed must be a nonnegative integer, got {self.seed}.")
        if not (self.chunk_size >= 1 and self.workers >= 1):
            raise PreconditionError("Chunk size and number of workers must be at least 1.")

    def chunks(self) -> List[Tuple[np.random.SeedSequence, int]]:
        """One (child seed, chunk length) per chunk, in trial order."""
        n = -(-self.trials // self.chunk_size)
        sizes = [self.chunk_size] * (n - 1) + [self.trials - self.chunk_size * (n - 1)]
        return list(zip(np.random.SeedSequence(self.seed).spawn(n), sizes))


def run_chunks(plan: SamplingPlan, work: Callable[[np.random.Generator, int], Optional[T]]) -> Optional[T]:
    """
    Run `work(rng, size)` per chunk and return the first non-None result in chunk order.

    Serial runs stop at the first hit; parallel runs evaluate every chunk and reduce in
    the same order, so both return the same result.
    """
    chunks = plan.chunks()

    def one(chunk: Tuple[np.random.SeedSequence, int]) -> Optional[T]:
        seed_seq, size = chunk
        return work(np.random.default_rng(seed_seq), size)

    if plan.workers == 1 or len(chunks) == 1:
        for chunk in chunks:
            result = one(chunk)
            if result is not None:
                return result
        return None

    with ThreadPoolExecutor(max_workers=plan.workers) as pool:
        for result in pool.map(one, chunks):
            if result is not None:
                return result
    return None
