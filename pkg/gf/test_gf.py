#!/usr/bin/env python

# Checks for the GF(2^8) field, the incremental decoder and batch rank

import numpy as np
import pytest

from .decoder import IncrementalDecoder, rank_and_solve
from .equation import CodedEquation
from .exceptions import FieldArithmeticError, ProtocolIntegrityError
from .field import GF256, add, as_field, combine, field_ops, inv, mul, random_coefficients
from .rank import batch_rank, full_rank_probability


def _random_equations(rng, count, unknowns, payloads):
    rows = []
    for _ in range(count):
        coeffs = random_coefficients(rng, unknowns)
        rows.append(CodedEquation(coeffs, combine(coeffs, payloads)))
    return rows


def test_check_vectors():
    assert add(0x57, 0x83) == 0xD4
    assert mul(0x57, 0x83) == 0xC1
    assert mul(0x02, 0x80) == 0x1B
    assert field_ops(0x57, 0x83) == {"add": 0xD4, "mul": 0xC1, "inv": inv(0x57)}


def test_all_inverses():
    for a in range(1, 256):
        assert mul(a, inv(a)) == 0x01
    with pytest.raises(FieldArithmeticError):
        inv(0)
    assert "inv" not in field_ops(0, 5)


def test_field_axioms_on_random_triples():
    rng = np.random.default_rng(11)
    a, b, c = (as_field(rng.integers(0, 256, 100_000, dtype=np.uint8)) for _ in range(3))
    assert np.array_equal((a * b) * c, a * (b * c))
    assert np.array_equal((a + b) + c, a + (b + c))
    assert np.array_equal(a * (b + c), a * b + a * c)


def test_multiplicative_group_order():
    nonzero = GF256(np.arange(1, 256))
    assert np.all(nonzero**255 == 1)


def test_identity_rows_solve_to_payloads():
    n = 5
    payloads = np.arange(n * 4, dtype=np.uint8).reshape(n, 4)
    rows = [CodedEquation(np.eye(n, dtype=np.uint8)[i], payloads[i]) for i in range(n)]
    rank, solution = rank_and_solve(rows, n)
    assert rank == n
    assert np.array_equal(np.stack(solution), payloads)


def test_duplicated_row_has_no_solution():
    row = CodedEquation([3, 7], [1, 2])
    rank, solution = rank_and_solve([row, row], 2)
    assert rank == 1
    assert solution is None


def test_inconsistent_system_is_integrity_failure():
    rows = [CodedEquation([1, 1], [5]), CodedEquation([1, 1], [6])]
    with pytest.raises(ProtocolIntegrityError):
        rank_and_solve(rows, 2)


def test_row_width_must_match():
    with pytest.raises(ValueError):
        rank_and_solve([CodedEquation([1, 2, 3], [0])], 2)


def test_rank_invariant_under_permutation_and_scaling():
    rng = np.random.default_rng(3)
    matrix = rng.integers(0, 256, (6, 8), dtype=np.uint8)
    matrix[5] = (as_field(matrix[0]) + as_field(matrix[1])).view(np.ndarray)
    payloads = np.zeros((6, 1), dtype=np.uint8)
    base, _ = rank_and_solve([CodedEquation(r, p) for r, p in zip(matrix, payloads)], 8)

    order = rng.permutation(6)
    scales = rng.integers(1, 256, 6, dtype=np.uint8)
    scaled = (as_field(matrix[order]) * as_field(scales)[:, np.newaxis]).view(np.ndarray)
    moved, _ = rank_and_solve([CodedEquation(r, p) for r, p in zip(scaled, payloads)], 8)
    assert base == moved == 5


def test_encode_then_solve_reproduces_payloads():
    rng = np.random.default_rng(5)
    n = 24
    payloads = rng.integers(0, 256, (n, 16), dtype=np.uint8)
    decoder = IncrementalDecoder(n)
    while not decoder.is_complete:
        (row,) = _random_equations(rng, 1, n, payloads)
        decoder.add(row)
    assert np.array_equal(decoder.solve(), payloads)


def test_decoder_grows_with_the_pool():
    rng = np.random.default_rng(9)
    payloads = rng.integers(0, 256, (10, 3), dtype=np.uint8)
    decoder = IncrementalDecoder()
    innovative = 0
    for size in range(1, 11):
        decoder.add_unknowns(1)
        for row in _random_equations(rng, 1, size, payloads[:size]):
            innovative += decoder.add(row)
    assert decoder.rank == innovative <= 10
    while not decoder.is_complete:
        decoder.add(_random_equations(rng, 1, 10, payloads)[0])
    assert np.array_equal(decoder.solve(), payloads)


def test_dependent_equation_is_discarded():
    decoder = IncrementalDecoder(2)
    assert decoder.add(CodedEquation([1, 2], [9]))
    assert not decoder.add(CodedEquation([7, mul(7, 2)], [mul(7, 9)]))
    assert decoder.rank == 1


def test_batch_rank_matches_galois():
    rng = np.random.default_rng(21)
    stack = rng.integers(0, 4, (50, 6, 5), dtype=np.uint8)
    stack[::7, 3] = 0
    expected = [np.linalg.matrix_rank(GF256(m)) for m in stack]
    assert batch_rank(stack).tolist() == expected


def test_random_square_full_rank_frequency():
    rng = np.random.default_rng(7)
    trials, n = 10_000, 64
    ranks = np.concatenate(
        [batch_rank(rng.integers(0, 256, (1000, n, n), dtype=np.uint8)) for _ in range(trials // 1000)]
    )
    expected = full_rank_probability(n)
    assert expected == pytest.approx(0.99608, abs=1e-5)
    assert abs(np.mean(ranks == n) - expected) <= 0.002
    print("✓ Full-rank frequency test passed")


def test_windowed_equations_keep_the_active_set_small():
    rng = np.random.default_rng(13)
    n, window = 200, 8
    payloads = rng.integers(0, 256, (n, 4), dtype=np.uint8)
    decoder = IncrementalDecoder(n)
    solved = []
    while not decoder.is_complete:
        columns = [u for u in range(n) if not decoder.is_solved(u)][:window]
        coeffs = random_coefficients(rng, len(columns))
        decoder.add(CodedEquation(coeffs, combine(coeffs, payloads[columns])), columns)
        assert decoder.active_count <= window
        solved.extend(decoder.drain_solved())
    assert sorted(solved) == list(range(n))
    assert decoder.drain_solved() == []
    assert np.array_equal(decoder.solve(), payloads)


def test_solved_unknowns_are_cancelled_on_arrival():
    decoder = IncrementalDecoder(3)
    assert decoder.add(CodedEquation([5], [mul(5, 7)]), columns=[2])
    assert decoder.drain_solved() == [2]
    assert decoder.add(CodedEquation([1, 1], [add(3, 7)]), columns=[0, 2])
    assert decoder.is_solved(0) and not decoder.is_solved(1)
    assert not decoder.add(CodedEquation([4], [mul(4, 7)]), columns=[2])
    assert decoder.rank == 2
    with pytest.raises(ValueError):
        decoder.add(CodedEquation([1], [0]), columns=[3])
    with pytest.raises(ValueError):
        decoder.add(CodedEquation([1, 1], [0]), columns=[1])
