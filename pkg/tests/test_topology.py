import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import bruteforce_necklace_classes
from ringspectra.errors import InvalidNecklaceError, InvalidSizeError, ResourceLimitError
from ringspectra.topology import (
    RingTopology,
    build_ring,
    canonical_necklace,
    classify,
    count_simple_rings,
    enumerate_simple_rings,
    has_spanning_converging_tree,
    minimal_period,
)

KNOWN_COUNTS = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335, 630, 1161, 2182,
                4080, 7710, 14532, 27594, 52377]


class TestCounting:
    def test_known_values(self):
        assert [count_simple_rings(n) for n in range(1, 21)] == KNOWN_COUNTS

    def test_prime_closed_form(self):
        for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
            assert count_simple_rings(p) == (2 ** p - 2) // p

    def test_power_of_two_closed_form(self):
        for N in (2, 4, 8, 16, 32):
            assert count_simple_rings(N) == (2 ** N - 2 ** (N // 2)) // N

    def test_exact_at_64(self):
        # 2^64 overflows fixed-width integers; this must still be exact
        N = 64
        total = 2 ** N - sum(n * count_simple_rings(n) for n in range(1, N) if N % n == 0)
        assert count_simple_rings(N) == total // N

    def test_rejects_nonpositive(self):
        with pytest.raises(InvalidSizeError):
            count_simple_rings(0)


class TestEnumeration:
    def test_small_cases(self):
        assert enumerate_simple_rings(1) == [(1,), (2,)]
        assert enumerate_simple_rings(2) == [(2, 1)]
        assert len(enumerate_simple_rings(3)) == 2

    def test_matches_recurrence(self):
        for n in range(1, 15):
            assert len(enumerate_simple_rings(n)) == count_simple_rings(n)

    def test_matches_bruteforce_classes(self):
        for n in range(2, 11):
            ours = {min(tuple(v[i:] + v[:i]) for i in range(n))
                    for v in enumerate_simple_rings(n)}
            assert ours == set(bruteforce_necklace_classes(n))

    def test_representatives_are_buildable(self):
        for n in range(2, 9):
            for rep in enumerate_simple_rings(n):
                assert rep[-1] == 1
                build_ring(rep, 1)

    def test_guard(self):
        with pytest.raises(ResourceLimitError):
            enumerate_simple_rings(25)

    @given(st.lists(st.sampled_from([1, 2]), min_size=2, max_size=10))
    def test_canonical_is_rotation_invariant(self, entries):
        if 1 not in entries:
            return  # all-2 vectors have no buildable rotation
        reps = {canonical_necklace(entries[i:] + entries[:i]) for i in range(len(entries))}
        assert len(reps) == 1
        assert reps.pop()[-1] == 1


class TestBuildRing:
    def test_pure_pursuit_matrix(self):
        L = build_ring((1,), 4).laplacian()
        expected = np.array([
            [1, 0, 0, -1],
            [-1, 1, 0, 0],
            [0, -1, 1, 0],
            [0, 0, -1, 1],
        ])
        assert np.array_equal(L, expected)

    def test_alternating_ring_matrix(self):
        L = build_ring((2, 1), 4).laplacian()
        assert np.array_equal(np.diag(L), [2, 1, 2, 1, 2, 1, 2, 1])
        assert L[0, 1] == -1 and L[0, 7] == -1 and L[1, 0] == -1
        # multigraph case at m=1: the reverse arc and the ring arc coincide
        L1 = build_ring((2, 1), 1).laplacian()
        assert np.array_equal(L1, [[2, -2], [-1, 1]])

    def test_single_node(self):
        # the self-loop cancels: diagonal counts arcs to *other* nodes only
        assert np.array_equal(build_ring((1,), 1).laplacian(), [[0]])
        assert np.array_equal(build_ring((2,), 1).laplacian(), [[0]])

    def test_row_sums_zero_and_sign_pattern(self):
        for necklace in [(1,), (2, 1), (2, 2, 1), (1, 2, 1), (2, 1, 2, 1)]:
            for m in (1, 2, 3):
                L = build_ring(necklace, m).laplacian()
                assert np.all(L.sum(axis=1) == 0)
                off = L - np.diag(np.diag(L))
                assert np.all(off <= 0)
                assert np.all(np.diag(L) >= 0)

    def test_spanning_converging_tree(self):
        for necklace in [(1,), (2, 1), (1, 2, 1), (2, 2, 1)]:
            for m in (1, 2, 4):
                A = build_ring(necklace, m).adjacency()
                assert has_spanning_converging_tree(A)

    def test_block_structure_matches_single_macro(self):
        # diagonal blocks repeat the m=1 block with the ring arc moved out;
        # couplings are single -1 arcs into the previous macro-vertex
        for necklace in [(1,), (2, 1), (1, 2, 1), (2, 2, 1)]:
            n = len(necklace)
            for m in (2, 3, 4):
                L = build_ring(necklace, m).laplacian()
                single = build_ring(necklace, 1).laplacian()
                block = single.copy()
                block[0, n - 1] += 1  # ring arc leaves the block for m >= 2
                coupling = np.zeros((n, n), dtype=int)
                coupling[0, n - 1] = -1
                expected = np.kron(np.eye(m, dtype=int), block)
                for i in range(m):
                    j = (i - 1) % m
                    expected[i * n:(i + 1) * n, j * n:(j + 1) * n] += coupling
                assert np.array_equal(L, expected)

    def test_periodic_necklace_equals_replication(self):
        a = build_ring((2, 1, 2, 1), 1).laplacian()
        b = build_ring((2, 1), 2).laplacian()
        assert np.array_equal(a, b)

    def test_bad_inputs(self):
        with pytest.raises(InvalidNecklaceError):
            build_ring((3, 1), 1)
        with pytest.raises(InvalidNecklaceError):
            build_ring((1, 2), 1)  # last entry must be 1
        with pytest.raises(InvalidSizeError):
            build_ring((1,), 0)
        with pytest.raises(InvalidSizeError):
            build_ring((), 2)


class TestClassify:
    @pytest.mark.parametrize("necklace,m,expected", [
        ((2, 1), 4, "complex"),
        ((2, 1), 1, "simple"),
        ((2, 1, 2, 1), 1, "complex"),
        ((1,), 1, "simple"),
        ((1, 1, 1), 1, "complex"),
        ((2, 2, 1), 1, "simple"),
    ])
    def test_examples(self, necklace, m, expected):
        assert classify(RingTopology(necklace, m)) == expected

    def test_minimal_period(self):
        assert minimal_period((2, 1, 2, 1)) == 2
        assert minimal_period((1, 1, 1)) == 1
        assert minimal_period((2, 1, 1)) == 3


class TestJson:
    def test_round_trip(self):
        t = RingTopology((2, 1), 4)
        assert RingTopology.from_json(t.to_json()) == t
        assert json.loads(t.to_json()) == {"necklace": [2, 1], "m": 4}

    def test_accepts_plain_json_string(self):
        t = RingTopology.from_json('{"necklace":[2,1],"m":4}')
        assert t.necklace == (2, 1) and t.m == 4

    def test_rejects_malformed(self):
        with pytest.raises(InvalidNecklaceError):
            RingTopology.from_json('{"m": 4}')
