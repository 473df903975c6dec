"""Schedule-independent random streams.

A stream is a root seed plus a derivation path (row id, augmentation index,
...). Each augmentation stage draws from its own generator seeded from
(seed, path, stage), so results never depend on which thread ran first or in
what order rows were visited.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np


class Stage(int, Enum):
    """Augmentation stages with separate random streams."""
    ELASTIC = 1
    BRANCH = 2
    SE_DILATE = 3
    SE_ERODE = 4


@dataclass(frozen=True)
class RngStream:
    seed: int
    path: Tuple[int, ...] = ()

    def child(self, *keys: int) -> "RngStream":
        """Stream one level deeper, e.g. `root.child(row, aug)`."""
        return RngStream(seed=self.seed, path=self.path + tuple(int(k) for k in keys))

    def generator(self, stage: Stage) -> np.random.Generator:
        """Fresh generator for `stage`; identical on every call."""
        sequence = np.random.SeedSequence(
            entropy=self.seed, spawn_key=self.path + (int(stage),)
        )
        return np.random.default_rng(sequence)
