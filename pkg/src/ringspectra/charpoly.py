"""Characteristic polynomials of ring Laplacians and locus sampling.

The Laplacian characteristic polynomial of an m-fold replication of a
simple ring on n nodes has the product form

    Delta(lambda) = P_n(lambda)^m - (-1)^N,   N = m*n,

where P_n is a product of modified Chebyshev polynomials Z_k over the
segment lengths obtained by cutting the pursuit cycle at its
indegree-1 nodes.  The eigenvalues are therefore the solutions of
P_n(lambda) = sigma over the m-th roots sigma of (-1)^N.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import InvalidNecklaceError, ResourceLimitError
from .polynomials import MAX_DEGREE, IntPoly, roots_at_targets
from .topology import RingTopology, _as_entries


@lru_cache(maxsize=None)
def chebyshev_Z(k: int) -> IntPoly:
    """Modified Chebyshev polynomial: Z_0 = 1, Z_1 = x - 1,
    Z_k = (x - 2) Z_{k-1} - Z_{k-2}."""
    k = int(k)
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if k == 0:
        return IntPoly((1,))
    if k == 1:
        return IntPoly((-1, 1))
    step = IntPoly((-2, 1))
    prev, cur = chebyshev_Z(0), chebyshev_Z(1)
    for _ in range(k - 1):
        prev, cur = cur, step * cur - prev
    return cur


def segment_lengths(necklace) -> tuple[int, ...]:
    """Arc counts of the pursuit-cycle segments between consecutive
    indegree-1 nodes of the single-macro-vertex ring.

    Node k >= 2 has indegree 1 + [entry k-1 == 2]; node 1 always has
    indegree 1 (the reverse of the closing ring arc is dropped), so the
    decomposition exists.  The cycle visits 1, n, n-1, ..., 2.
    """
    entries = _as_entries(necklace)
    n = len(entries)
    if n == 1:
        return (1,)
    if entries[-1] != 1:
        raise InvalidNecklaceError("simple-ring necklace must end in 1")
    indegree = {1: 1}
    for k in range(2, n + 1):
        indegree[k] = 1 + (1 if entries[k - 2] == 2 else 0)
    order = [1] + list(range(n, 1, -1))
    cuts = [pos for pos, node in enumerate(order) if indegree[node] == 1]
    lengths = [b - a for a, b in zip(cuts, cuts[1:])]
    lengths.append(n - cuts[-1] + cuts[0])
    return tuple(lengths)


def macro_polynomial(necklace) -> IntPoly:
    """P_n for one macro-vertex: the product of Z over the segment lengths."""
    P = IntPoly((1,))
    for length in segment_lengths(necklace):
        P = P * chebyshev_Z(length)
    return P


def char_poly(topology: RingTopology) -> IntPoly:
    """Exact characteristic polynomial P_n^m - (-1)^N of the Laplacian."""
    N = topology.N
    if N > MAX_DEGREE:
        raise ResourceLimitError(
            f"characteristic polynomial degree {N} exceeds the {MAX_DEGREE} guard"
        )
    P = macro_polynomial(topology.necklace)
    return P ** topology.m - IntPoly(((-1) ** N,))


def unity_targets(m: int, odd_total: bool) -> np.ndarray:
    """The m-th roots of (-1)^N: e^{2*pi*i*k/m}, shifted by pi/m when N is odd."""
    m = int(m)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    k = np.arange(m)
    phase = 2.0 * np.pi * k / m
    if odd_total:
        phase = phase + np.pi / m
    return np.exp(1j * phase)


def locus_points(P: IntPoly, m: int, odd_total: bool | None = None) -> np.ndarray:
    """All Laplacian eigenvalues of the m-fold replication whose macro
    polynomial is P: the n roots of P(lambda) = sigma for each m-th root
    sigma of (-1)^N.

    The parity of N = m * deg(P) is inferred unless odd_total overrides it.
    """
    if odd_total is None:
        odd_total = (int(m) * P.degree) % 2 == 1
    targets = unity_targets(m, odd_total)
    return roots_at_targets(P, targets).ravel()
