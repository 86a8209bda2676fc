"""Ring digraphs: necklace encoding, construction, counting, classification.

A ring digraph on N = m*n nodes is m identical macro-vertices (chains of
n nodes with a main-direction path and an optional subset of reverse
arcs) joined by ring arcs so that the main directions close into a
Hamiltonian pursuit cycle.  The necklace vector over {1, 2} records, for
each consecutive pair, whether the reverse arc is present (2) or not (1);
the last entry is 1 by the dropped-arc convention, so every vector here
is directly buildable.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidNecklaceError, InvalidSizeError, ResourceLimitError

#: 2^n candidate vectors are scanned during enumeration; keep that tractable.
ENUMERATION_LIMIT = 24


def _as_entries(necklace) -> tuple[int, ...]:
    try:
        entries = tuple(int(e) for e in necklace)
    except TypeError:
        raise InvalidNecklaceError(f"necklace must be a sequence, got {necklace!r}")
    if not entries:
        raise InvalidSizeError("necklace must have length >= 1")
    bad = [e for e in entries if e not in (1, 2)]
    if bad:
        raise InvalidNecklaceError(f"necklace entries must be 1 or 2, got {bad}")
    return entries


def minimal_period(seq) -> int:
    """Smallest p dividing len(seq) such that seq is the p-prefix repeated."""
    seq = tuple(seq)
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and seq == seq[p:] + seq[:p]:
            return p
    return n


def cyclic_rotations(seq) -> list[tuple]:
    seq = tuple(seq)
    return [seq[i:] + seq[:i] for i in range(len(seq))]


def canonical_necklace(necklace) -> tuple[int, ...]:
    """Canonical class representative: the lexicographically smallest
    rotation whose last entry is 1, so the result satisfies the
    dropped-arc convention and is directly buildable.  Length-1 vectors
    are their own representatives."""
    entries = _as_entries(necklace)
    if len(entries) == 1:
        return entries
    candidates = [r for r in cyclic_rotations(entries) if r[-1] == 1]
    if not candidates:
        raise InvalidNecklaceError(
            "all-2 necklace has no rotation ending in 1; not a simple-ring class"
        )
    return min(candidates)


@dataclass(frozen=True)
class RingTopology:
    """A ring digraph: necklace vector of length n, replicated m times (N = m*n)."""

    necklace: tuple[int, ...]
    m: int

    def __post_init__(self):
        entries = _as_entries(self.necklace)
        object.__setattr__(self, "necklace", entries)
        if int(self.m) < 1:
            raise InvalidSizeError(f"replication count m must be >= 1, got {self.m}")
        object.__setattr__(self, "m", int(self.m))
        if len(entries) >= 2 and entries[-1] != 1:
            raise InvalidNecklaceError(
                "last necklace entry must be 1 (the reverse of the closing ring "
                "arc is dropped); rotate the vector, e.g. via canonical_necklace"
            )

    @property
    def n(self) -> int:
        return len(self.necklace)

    @property
    def N(self) -> int:
        return self.n * self.m

    def adjacency(self) -> np.ndarray:
        """N x N multigraph adjacency: entry (i, k) counts arcs i -> k.

        Arcs: the main-direction path inside each macro-vertex, the reverse
        arcs selected by necklace entries, and one ring arc from the first
        node of each macro-vertex into the last node of the previous one.
        For n = 1 the macro-vertex has no internal arcs and the ring arcs
        alone form the pursuit cycle (the 2-loop variant at n = 1 is
        enumeration bookkeeping and builds the same digraph).
        """
        n, m, N = self.n, self.m, self.N
        A = np.zeros((N, N), dtype=np.int64)
        for i in range(m):
            base = n * i
            for k in range(n - 1):
                A[base + k + 1, base + k] += 1
                if self.necklace[k] == 2:
                    A[base + k, base + k + 1] += 1
            A[(n * (i + 1)) % N, base + n - 1] += 1
        return A

    def laplacian(self) -> np.ndarray:
        """N x N Laplacian: diagonal holds each node's arc count to others;
        self-loops cancel (the diagonal sum runs over k != i only)."""
        A = self.adjacency()
        off = A.copy()
        np.fill_diagonal(off, 0)
        return np.diag(off.sum(axis=1)) - off

    def to_json(self) -> str:
        return json.dumps({"necklace": list(self.necklace), "m": self.m})

    @classmethod
    def from_json(cls, payload) -> "RingTopology":
        if isinstance(payload, (str, bytes)):
            payload = json.loads(payload)
        if not isinstance(payload, dict) or "necklace" not in payload or "m" not in payload:
            raise InvalidNecklaceError(
                'topology JSON must look like {"necklace": [2, 1], "m": 4}'
            )
        return cls(tuple(payload["necklace"]), int(payload["m"]))


def build_ring(necklace, m: int) -> RingTopology:
    """Validated constructor; the Laplacian is available as .laplacian()."""
    return RingTopology(tuple(_as_entries(necklace)), m)


def classify(topology: RingTopology) -> str:
    """'complex' if the digraph is a Hamiltonian cycle on >= 2 macro-vertices
    (m >= 2, or the necklace itself is periodic), else 'simple'."""
    if topology.m >= 2:
        return "complex"
    if minimal_period(topology.necklace) < topology.n:
        return "complex"
    return "simple"


@lru_cache(maxsize=None)
def count_simple_rings(N: int) -> int:
    """Number of non-isomorphic simple rings on N nodes.

    Recurrence: Y(1) = 2 and N*Y(N) = 2^N - sum over proper divisors n of
    N of n*Y(n).  Exact integers throughout (2^64 overflows fixed-width
    arithmetic well before N = 64).
    """
    N = int(N)
    if N < 1:
        raise InvalidSizeError(f"N must be >= 1, got {N}")
    if N == 1:
        return 2
    acc = 2 ** N
    for n in range(1, N):
        if N % n == 0:
            acc -= n * count_simple_rings(n)
    assert acc % N == 0
    return acc // N


def enumerate_simple_rings(n: int) -> list[tuple[int, ...]]:
    """Canonical representatives of all simple-ring classes on n nodes.

    Brute force over the 2^n vectors: drop periodic ones, merge cyclic
    rotations, return one representative per class (sorted).  Cardinality
    equals count_simple_rings(n).
    """
    n = int(n)
    if n < 1:
        raise InvalidSizeError(f"n must be >= 1, got {n}")
    if n > ENUMERATION_LIMIT:
        raise ResourceLimitError(
            f"enumeration scans 2^n vectors; n = {n} exceeds the {ENUMERATION_LIMIT} guard"
        )
    if n == 1:
        return [(1,), (2,)]
    out = set()
    for v in itertools.product((1, 2), repeat=n):
        if minimal_period(v) < n:
            continue
        out.add(canonical_necklace(v))
    return sorted(out)


def has_spanning_converging_tree(adjacency) -> bool:
    """True iff some node is reachable from every node along the arcs."""
    A = np.asarray(adjacency)
    N = A.shape[0]
    for root in range(N):
        seen = {root}
        stack = [root]
        while stack:
            k = stack.pop()
            for i in np.nonzero(A[:, k])[0]:
                i = int(i)
                if i not in seen:
                    seen.add(i)
                    stack.append(i)
        if len(seen) == N:
            return True
    return False
