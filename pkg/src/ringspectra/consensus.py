"""Frequency-domain consensus region and locus-based criteria.

For agents a(s) x = u with coupling u = b(s) (-L x), consensus is
governed by the generalized frequency variable phi(s) = a(s)/b(s): the
network reaches consensus iff every nonzero eigenvalue of -L lies in
the region Omega where phi(s) - lambda has no zeros with Re(s) >= 0.
Scaling the Laplacian by r > 0 moves the spectrum to -r * lambda; one
mapping function owns that sign convention.  Testing the whole spectrum
locus instead of one spectrum decides consensus for every replication
count at once.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .curves import trace_curve
from .errors import BracketError, DomainError, NoSpanningTreeError
from .polynomials import IntPoly

#: boundary tolerance for the closed-right-half-plane exclusion
EPS = 1e-9
#: origin exemption: |lambda| below this is treated as the structural zero eigenvalue
ZERO_TOL = 1e-8


def _strip(coeffs) -> tuple[float, ...]:
    cs = [float(c) for c in coeffs]
    while cs and cs[-1] == 0.0:
        cs.pop()
    return tuple(cs)


def _polyval(coeffs, s):
    acc = 0.0 * s
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


@dataclass(frozen=True)
class FrequencyVariable:
    """The pair (a, b) of agent polynomials, ascending coefficients.

    a is monic of degree d, b has degree q < d, and the two share no
    roots, so phi(s) = a(s)/b(s) is well defined.
    """

    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self):
        a = _strip(self.a)
        b = _strip(self.b)
        if len(a) < 2:
            raise DomainError("a(s) must have degree >= 1")
        if not b:
            raise DomainError("b(s) must be nonzero")
        if abs(a[-1] - 1.0) > 1e-12:
            raise DomainError(f"a(s) must be monic, got leading coefficient {a[-1]}")
        if len(b) >= len(a):
            raise DomainError("deg b must be strictly less than deg a")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if len(b) >= 2:
            b_roots = np.roots(b[::-1])
            scale = max(1.0, max(abs(c) for c in a))
            if np.any(np.abs(_polyval(a, b_roots)) < 1e-9 * scale):
                raise DomainError("a(s) and b(s) share a root; phi(s) is ill defined")

    @property
    def d(self) -> int:
        return len(self.a) - 1

    @property
    def q(self) -> int:
        return len(self.b) - 1

    @classmethod
    def from_ratio(cls, numerator, denominator) -> "FrequencyVariable":
        """Build phi = numerator/denominator, scaling both so a is monic."""
        num = _strip(numerator)
        den = _strip(denominator)
        if not num:
            raise DomainError("numerator must be nonzero")
        lead = num[-1]
        return cls(tuple(c / lead for c in num), tuple(c / lead for c in den))

    def phi(self, s: complex) -> complex:
        return _polyval(self.a, s) / _polyval(self.b, s)


def first_order() -> FrequencyVariable:
    """Integrator agents: phi(s) = s, Omega is the open left half-plane."""
    return FrequencyVariable((0.0, 1.0), (1.0,))


def absolute_velocity(gamma: float) -> FrequencyVariable:
    """Double integrator with absolute velocity damping: phi(s) = s^2 + gamma*s;
    Omega is the interior of the parabola y^2 = -gamma^2 x."""
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    return FrequencyVariable((0.0, float(gamma), 1.0), (1.0,))


def relative_velocity(gamma: float) -> FrequencyVariable:
    """Position plus relative-velocity coupling: phi(s) = s^2 / (1 + gamma*s)."""
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    return FrequencyVariable((0.0, 0.0, 1.0), (1.0, float(gamma)))


def nonminimum_phase(gamma: float) -> FrequencyVariable:
    """Coupling with a right-half-plane zero: phi(s) = (s + gamma*s^2)/(1 - gamma*s),
    entered in monic form a = s^2 + s/gamma, b = 1/gamma - s."""
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    return FrequencyVariable.from_ratio((0.0, 1.0, float(gamma)), (1.0, -float(gamma)))


@dataclass(frozen=True)
class OmegaVerdict:
    """Membership verdict for one point: inside iff every root of
    a(s) - lambda*b(s) has real part below -eps."""

    point: complex
    inside: bool
    max_root_real_part: float
    eps: float = EPS

    @property
    def on_boundary(self) -> bool:
        return abs(self.max_root_real_part) <= self.eps


def closed_loop_root_sets(fv: FrequencyVariable, lambdas) -> np.ndarray:
    """Roots of a(s) - lambda*b(s) for each lambda; shape (len(lambdas), d).

    The family stays monic of degree d because deg b < d, so the batched
    companion eigenvalues are exact up to LAPACK accuracy; small systems
    need no polish here.
    """
    lams = np.asarray(lambdas, dtype=complex).ravel()
    d = fv.d
    a = np.asarray(fv.a, dtype=complex)
    b = np.zeros(d + 1, dtype=complex)
    b[: len(fv.b)] = fv.b
    comp = np.zeros((len(lams), d, d), dtype=complex)
    comp[:, :-1, 1:] = np.eye(d - 1)
    comp[:, -1, :] = -(a[:-1][None, :] - lams[:, None] * b[:-1][None, :])
    return np.linalg.eigvals(comp)


def max_root_real_parts(fv: FrequencyVariable, lambdas) -> np.ndarray:
    return closed_loop_root_sets(fv, lambdas).real.max(axis=1)


def in_omega(fv: FrequencyVariable, lam: complex, eps: float = EPS) -> OmegaVerdict:
    """Omega membership for a single point of the spectrum of -L (or -rL)."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    worst = float(max_root_real_parts(fv, [complex(lam)])[0])
    return OmegaVerdict(point=complex(lam), inside=worst < -eps,
                        max_root_real_part=worst, eps=eps)


def omega_boundary(fv: FrequencyVariable, omega_grid) -> np.ndarray:
    """phi(i*omega) over the grid; grid points where b(i*omega) = 0 are
    skipped with a warning."""
    out = []
    for w in np.asarray(omega_grid, dtype=float).ravel():
        s = 1j * w
        den = _polyval(fv.b, s)
        if den == 0:
            warnings.warn(f"b(i*omega) vanishes at omega = {w}; point skipped")
            continue
        out.append(_polyval(fv.a, s) / den)
    return np.asarray(out, dtype=complex)


def reflect_scale(points, r: float) -> np.ndarray:
    """Map Laplacian eigenvalues to the tested spectrum of -rL: lambda -> -r*lambda.

    This is the single place the reflect-and-scale sign convention lives.
    """
    if r <= 0:
        raise DomainError("r must be positive")
    return -float(r) * np.asarray(points, dtype=complex)


def criterion_spectrum(fv: FrequencyVariable, eigenvalues, eps: float = EPS,
                       zero_tol: float = ZERO_TOL) -> bool:
    """Consensus criterion over one spectrum of -rL.

    The list must contain the structural zero eigenvalue; exactly one
    eigenvalue may fall within zero_tol of the origin (multiplicity > 1
    means no spanning converging tree and raises).  True iff every other
    eigenvalue is strictly inside Omega.
    """
    lams = np.asarray(eigenvalues, dtype=complex).ravel()
    near_zero = np.abs(lams) <= zero_tol
    n_zero = int(near_zero.sum())
    if n_zero == 0:
        raise DomainError("spectrum must include the zero eigenvalue of the Laplacian")
    if n_zero > 1:
        raise NoSpanningTreeError(
            f"{n_zero} eigenvalues within {zero_tol} of 0: no spanning converging tree"
        )
    rest = lams[~near_zero]
    if rest.size == 0:
        return True
    return bool(np.all(max_root_real_parts(fv, rest) < -eps))


def criterion_points(fv: FrequencyVariable, points, eps: float = EPS,
                     zero_tol: float = ZERO_TOL) -> bool:
    """True iff every sampled point with |point| > zero_tol is inside Omega.

    Points within zero_tol of the origin are exempt: the locus shares
    exactly the origin with the region boundary, and near-origin samples
    sit inside that exemption band rather than counting as violations.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    pts = pts[np.abs(pts) > zero_tol]
    if pts.size == 0:
        return True
    return bool(np.all(max_root_real_parts(fv, pts) < -eps))


def criterion_curve(fv: FrequencyVariable, P: IntPoly, r: float,
                    samples: int = 1024, eps: float = EPS,
                    zero_tol: float = ZERO_TOL, workers: int = 1) -> bool:
    """Consensus for every replication count at once: trace the locus of
    the macro polynomial P, reflect and r-scale it, and require every
    nonzero sample inside Omega.

    Near the origin the locus is tangent to the region boundary at the
    critical gain, and the strict -eps test turns samples at angle
    ~2*pi/samples into a detection dead band of width ~eps*(samples/2pi)^2;
    the default keeps that band around 1e-4 while still resolving genuine
    violations just above threshold.
    """
    if samples < 360:
        raise DomainError(f"samples must be >= 360, got {samples}")
    pts = reflect_scale(trace_curve(P, samples, workers=workers), r)
    return criterion_points(fv, pts, eps=eps, zero_tol=zero_tol)


def critical_gain(fv: FrequencyVariable, P: IntPoly, r_lo: float, r_hi: float,
                  tol: float = 1e-4, samples: int = 1024, eps: float = EPS,
                  zero_tol: float = ZERO_TOL) -> float:
    """Bisect r between r_lo and r_hi to the gain where criterion_curve flips."""
    if not 0 < r_lo < r_hi:
        raise DomainError("need 0 < r_lo < r_hi")
    lo_ok = criterion_curve(fv, P, r_lo, samples, eps, zero_tol)
    hi_ok = criterion_curve(fv, P, r_hi, samples, eps, zero_tol)
    if lo_ok == hi_ok:
        raise BracketError(
            f"criterion_curve is {lo_ok} at both bracket ends ({r_lo}, {r_hi})"
        )
    lo, hi = r_lo, r_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if criterion_curve(fv, P, mid, samples, eps, zero_tol) == lo_ok:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def pursuit_spectrum(N: int, r: float = 1.0) -> np.ndarray:
    """Spectrum of -rL for the pure pursuit cycle: -r(1 - e^{2*pi*i*k/N})."""
    if N < 2:
        raise DomainError("pursuit spectrum needs N >= 2")
    return reflect_scale(1.0 - np.exp(2j * np.pi * np.arange(N) / N), r)


def max_consensus_N(fv: FrequencyVariable, r: float, n_max: int = 64,
                    eps: float = EPS, zero_tol: float = ZERO_TOL) -> int:
    """Largest pursuit-cycle size N <= n_max passing criterion_spectrum.

    Verifies that failure is monotone over the scanned range (consensus
    for N = 2..K, failure beyond); returns n_max when nothing fails.
    """
    outcomes = {N: criterion_spectrum(fv, pursuit_spectrum(N, r), eps, zero_tol)
                for N in range(2, n_max + 1)}
    passing = [N for N, ok in outcomes.items() if ok]
    if not passing:
        return 1
    K = max(passing)
    ragged = [N for N in range(2, K) if not outcomes[N]]
    if ragged:
        raise DomainError(
            f"consensus is not monotone in N over the scanned range: failures at {ragged} below {K}"
        )
    return K
