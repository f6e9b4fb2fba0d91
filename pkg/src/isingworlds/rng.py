"""Seeded, splittable randomness for reproducible simulation runs.

A stream is identified by ``(seed, stream)``; the same pair always
replays the same draw sequence, and distinct stream ids are well
separated (stream ids are fed to ``numpy.random.SeedSequence`` as spawn
keys, which also makes nested substreams cheap).  ``draws`` counts the
entropy-consuming calls, which is how reductions report their Bernoulli
budgets; degenerate Bernoulli draws (success probability 0 or 1) are
answered without consuming randomness.
"""

from __future__ import annotations

import math
import random as _random

import numpy as np

from .errors import InvalidParameterError


class RngStream:
    """Reproducible uniform/Bernoulli source with draw counting."""

    def __init__(self, seed: int, stream: int | tuple[int, ...] = 0):
        seed = int(seed)
        if seed < 0:
            raise InvalidParameterError("seed must be a nonnegative integer")
        self.seed = seed
        self.stream: tuple[int, ...] = (stream,) if isinstance(stream, int) else tuple(stream)
        key = np.random.SeedSequence(entropy=self.seed, spawn_key=self.stream)
        state = int.from_bytes(key.generate_state(4, np.uint32).tobytes(), "little")
        self._rng = _random.Random(state)
        self.draws = 0

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream={self.stream}, draws={self.draws})"

    def uniform(self) -> float:
        """One uniform draw in [0, 1)."""
        self.draws += 1
        return self._rng.random()

    def bernoulli(self, q: float) -> bool:
        """Bernoulli(q) draw; q outside (0, 1) is answered deterministically
        without consuming randomness."""
        if math.isnan(q) or q < 0.0 or q > 1.0:
            raise InvalidParameterError(f"Bernoulli parameter must lie in [0, 1], got {q}")
        if q <= 0.0:
            return False
        if q >= 1.0:
            return True
        return self.uniform() < q

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n); counts as one draw."""
        if n <= 0:
            raise InvalidParameterError("randrange needs a positive bound")
        self.draws += 1
        return self._rng.randrange(n)

    def substream(self, index: int) -> "RngStream":
        """Independent child stream; deterministic in (seed, stream, index)."""
        return RngStream(self.seed, self.stream + (int(index),))
