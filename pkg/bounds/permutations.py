#!/usr/bin/env python
"""
User orderings for the permutation-enhanced feedback outer bound.
"""

from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import permutations

from channel.channel_model import MAX_USERS


@dataclass(frozen=True)
class PermutationSet:
    K: int
    """Number of users; every ordering of range(K) is enumerated."""
    perms: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        if not 1 <= self.K <= MAX_USERS:
            raise ValueError(f"K must be in [1, {MAX_USERS}], got {self.K}")
        object.__setattr__(self, "perms", tuple(permutations(range(self.K))))

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.perms)

    def __len__(self) -> int:
        return len(self.perms)
