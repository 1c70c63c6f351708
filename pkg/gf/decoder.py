#!/usr/bin/env python
"""
Incremental Gaussian elimination over GF(2^8).

The decoder keeps the equations it cannot resolve yet in reduced row echelon
form over a small set of "active" unknowns. A row that reduces to a single
unit entry determines its unknown; that unknown moves to the solved table and
its column leaves the active set. Equations that touch solved unknowns have
those terms cancelled on arrival, so the elimination cost depends on how many
unknowns are in flight rather than on the total number of unknowns.
"""

import logging
from collections.abc import Sequence

import numpy as np

from .equation import CodedEquation
from .exceptions import ProtocolIntegrityError
from .field import as_field, combine

logger = logging.getLogger(__name__)


class IncrementalDecoder:
    """RREF system whose unknown set can grow while equations arrive."""

    def __init__(self, unknown_count: int = 0, payload_size: int | None = None):
        if unknown_count < 0:
            raise ValueError(f"unknown_count must be >= 0, got {unknown_count}")
        self._unknowns = unknown_count
        self._payload_size = payload_size
        self._solved: dict[int, np.ndarray] = {}
        self._fresh: list[int] = []
        # Active columns (unknown ids) and the unresolved rows over them.
        self._columns: list[int] = []
        self._index: dict[int, int] = {}
        self._pivots: list[int] = []
        self._matrix = np.zeros((0, 0), dtype=np.uint8)
        self._payloads = np.zeros((0, payload_size or 0), dtype=np.uint8)

    @property
    def rank(self) -> int:
        return len(self._solved) + len(self._pivots)

    @property
    def unknown_count(self) -> int:
        return self._unknowns

    @property
    def active_count(self) -> int:
        """Unknowns that appear in unresolved equations."""
        return len(self._columns)

    @property
    def is_complete(self) -> bool:
        return len(self._solved) == self._unknowns

    def is_solved(self, unknown: int) -> bool:
        return unknown in self._solved

    def drain_solved(self) -> list[int]:
        """Unknowns determined since the previous call, in the order they were solved."""
        fresh, self._fresh = self._fresh, []
        return fresh

    def add_unknowns(self, count: int = 1) -> None:
        if count < 0:
            raise ValueError(f"count must be >= 0, got {count}")
        self._unknowns += count

    def _check_payload(self, payload: np.ndarray) -> None:
        if self._payload_size is None:
            self._payload_size = int(payload.size)
            self._payloads = np.zeros((0, self._payload_size), dtype=np.uint8)
        elif payload.size != self._payload_size:
            raise ValueError(f"payload of {payload.size} symbols, decoder expects {self._payload_size}")

    def _columns_of(self, equation: CodedEquation, columns: Sequence[int] | np.ndarray | None) -> np.ndarray:
        if columns is None:
            if equation.width > self._unknowns:
                raise ValueError(f"equation spans {equation.width} unknowns, decoder has {self._unknowns}")
            return np.arange(equation.width)
        cols = np.asarray(columns, dtype=np.int64).reshape(-1)
        if cols.size != equation.width:
            raise ValueError(f"{cols.size} columns for an equation of width {equation.width}")
        if cols.size and (cols.min() < 0 or cols.max() >= self._unknowns):
            raise ValueError(f"columns outside 0..{self._unknowns - 1}")
        return cols

    def _activate(self, unknowns: list[int]) -> None:
        new = [u for u in unknowns if u not in self._index]
        if not new:
            return
        self._columns.extend(new)
        self._matrix = np.hstack([self._matrix, np.zeros((self._matrix.shape[0], len(new)), dtype=np.uint8)])
        self._index = {u: i for i, u in enumerate(self._columns)}

    def add(self, equation: CodedEquation, columns: Sequence[int] | np.ndarray | None = None) -> bool:
        """Insert an equation over `columns` (default 0..width-1); True when it raised the rank."""
        cols = self._columns_of(equation, columns)
        self._check_payload(equation.payload)

        payload = as_field(equation.payload.copy())
        terms: dict[int, int] = {}
        known: list[tuple[int, int]] = []
        for unknown, c in zip(cols.tolist(), equation.coeffs.tolist()):
            if not c:
                continue
            if unknown in self._solved:
                known.append((c, unknown))
            else:
                terms[unknown] = terms.get(unknown, 0) ^ c
        terms = {u: c for u, c in terms.items() if c}
        if known:
            coeffs, unknowns = zip(*known)
            payload = payload - as_field(combine(coeffs, np.stack([self._solved[u] for u in unknowns])))

        self._activate(list(terms))
        row = np.zeros(len(self._columns), dtype=np.uint8)
        for unknown, c in terms.items():
            row[self._index[unknown]] = c
        row = as_field(row)

        if self._pivots:
            factors = row[self._pivots].copy()
            if np.any(factors.view(np.ndarray)):
                row = row - (factors[np.newaxis, :] @ as_field(self._matrix))[0]
                payload = payload - (factors[np.newaxis, :] @ as_field(self._payloads))[0]

        nonzero = np.flatnonzero(row.view(np.ndarray))
        if nonzero.size == 0:
            if np.any(payload.view(np.ndarray)):
                raise ProtocolIntegrityError()
            self._compact()
            return False

        j = int(nonzero[0])
        lead = row[j]
        row = row / lead
        payload = payload / lead

        if self._pivots:
            column = as_field(self._matrix[:, j].copy())
            if np.any(column.view(np.ndarray)):
                matrix = as_field(self._matrix) - column[:, np.newaxis] * row[np.newaxis, :]
                payloads = as_field(self._payloads) - column[:, np.newaxis] * payload[np.newaxis, :]
                self._matrix = matrix.view(np.ndarray)
                self._payloads = payloads.view(np.ndarray)

        self._matrix = np.vstack([self._matrix, row.view(np.ndarray)[np.newaxis, :]])
        self._payloads = np.vstack([self._payloads, payload.view(np.ndarray)[np.newaxis, :]])
        self._pivots.append(j)
        self._harvest()
        return True

    def _harvest(self) -> None:
        """Move rows with a single nonzero entry to the solved table."""
        units = np.flatnonzero(np.count_nonzero(self._matrix, axis=1) == 1)
        for i in units.tolist():
            unknown = self._columns[self._pivots[i]]
            self._solved[unknown] = self._payloads[i].copy()
            self._fresh.append(unknown)
        if units.size:
            keep = np.ones(len(self._pivots), dtype=bool)
            keep[units] = False
            self._matrix = self._matrix[keep]
            self._payloads = self._payloads[keep]
            self._pivots = [p for p, k in zip(self._pivots, keep.tolist()) if k]
        self._compact()

    def _compact(self) -> None:
        """Drop active columns that no unresolved row uses."""
        used = self._matrix.any(axis=0)
        if used.all():
            return
        remap = np.cumsum(used) - 1
        self._pivots = [int(remap[p]) for p in self._pivots]
        self._columns = [u for u, k in zip(self._columns, used.tolist()) if k]
        self._matrix = self._matrix[:, used]
        self._index = {u: i for i, u in enumerate(self._columns)}

    def solve(self) -> np.ndarray | None:
        """Unknown payloads in index order, or None while the rank is deficient."""
        if not self.is_complete:
            return None
        solution = np.zeros((self._unknowns, self._payload_size or 0), dtype=np.uint8)
        for unknown, payload in self._solved.items():
            solution[unknown] = payload
        return solution

    def __str__(self) -> str:
        return f"IncrementalDecoder(rank={self.rank}/{self._unknowns}, active={self.active_count})"


def rank_and_solve(
    rows: Sequence[CodedEquation], unknown_count: int
) -> tuple[int, list[np.ndarray] | None]:
    """Rank of the system and, when it is full, the payload of every unknown."""
    decoder = IncrementalDecoder(unknown_count)
    for index, row in enumerate(rows):
        if row.width != unknown_count:
            raise ValueError(f"row {index} has {row.width} coefficients, expected {unknown_count}")
        decoder.add(row)
    solution = decoder.solve()
    logger.debug(f"rank {decoder.rank} of {unknown_count} from {len(rows)} rows")
    return decoder.rank, (list(solution) if solution is not None else None)
