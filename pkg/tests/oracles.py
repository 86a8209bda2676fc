"""Independent oracles the test suite checks the library against.

These deliberately avoid the code paths they validate: the
characteristic polynomial comes from a Faddeev-LeVerrier trace
recursion over exact integers, and necklace classes come from a plain
scan of all 2^n vectors.
"""

from __future__ import annotations

import itertools

import numpy as np


def charpoly_faddeev_leverrier(matrix) -> tuple[int, ...]:
    """Exact ascending coefficients of det(lambda*I - M) for an integer matrix.

    M_1 = I; c_{N-k} = -tr(M M_k)/k; M_{k+1} = M M_k + c_{N-k} I.  All
    intermediate values stay integers, so the divisions are exact.
    """
    M = [[int(v) for v in row] for row in np.asarray(matrix)]
    N = len(M)

    def matmul(A, B):
        return [
            [sum(A[i][k] * B[k][j] for k in range(N)) for j in range(N)]
            for i in range(N)
        ]

    coeffs = [0] * (N + 1)
    coeffs[N] = 1
    aux = [[1 if i == j else 0 for j in range(N)] for i in range(N)]
    prod = matmul(M, aux)
    for k in range(1, N + 1):
        trace = sum(prod[i][i] for i in range(N))
        assert trace % k == 0
        ck = -trace // k
        coeffs[N - k] = ck
        if k < N:
            aux = [[prod[i][j] + (ck if i == j else 0) for j in range(N)] for i in range(N)]
            prod = matmul(M, aux)
    return tuple(coeffs)


def bruteforce_necklace_classes(n: int) -> list[tuple[int, ...]]:
    """All cyclic-shift classes of non-periodic {1,2}-vectors of length n,
    each represented by its plain lexicographic minimum."""

    def min_period(v):
        for p in range(1, n + 1):
            if n % p == 0 and v == v[p:] + v[:p]:
                return p
        return n

    out = set()
    for v in itertools.product((1, 2), repeat=n):
        if min_period(v) < n:
            continue
        out.add(min(v[i:] + v[:i] for i in range(n)))
    return sorted(out)


def match_multisets(a, b, tol: float) -> float:
    """Greedy nearest-point matching of two complex multisets; returns the
    worst matched distance (inf when sizes differ)."""
    a = list(np.asarray(a, dtype=complex).ravel())
    b = list(np.asarray(b, dtype=complex).ravel())
    if len(a) != len(b):
        return float("inf")
    worst = 0.0
    for p in a:
        dists = [abs(p - q) for q in b]
        i = int(np.argmin(dists))
        worst = max(worst, dists[i])
        b.pop(i)
    return worst
