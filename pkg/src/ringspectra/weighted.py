"""The two-cycle weighted necklace digraph: ellipse spectra and the drop region.

With forward arcs of weight 1 and reverse arcs of weight c in [0, 1], the
Laplacian is (1+c) I - P - c P^{N-1} for the cyclic permutation P, so its
eigenvalues are (1+c) - e^{i theta} - c e^{-i theta} and fill the ellipse
with center (1+c, 0) and semi-axes (1+c, 1-c).  The union of these
ellipses over c is a drop-shaped region whose boundary is the circle arc
up to x = 1.5 and an envelope branch beyond it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEllipseError, DomainError, InvalidSizeError

#: golden-section search shrink factor
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class WeightedRing:
    """Bidirectional cycle with forward weight 1 and reverse weight c."""

    N: int
    c: float

    def __post_init__(self):
        if int(self.N) < 2:
            raise InvalidSizeError(f"weighted ring needs N >= 2, got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        if not 0.0 <= float(self.c) <= 1.0:
            raise DomainError(f"reverse weight must lie in [0, 1], got {self.c}")
        object.__setattr__(self, "c", float(self.c))

    def laplacian(self) -> np.ndarray:
        N, c = self.N, self.c
        P = np.zeros((N, N))
        P[np.arange(1, N), np.arange(N - 1)] = 1.0
        P[0, N - 1] = 1.0
        return (1.0 + c) * np.eye(N) - P - c * np.linalg.matrix_power(P, N - 1)


def weighted_spectrum(ring: WeightedRing) -> np.ndarray:
    """Closed-form eigenvalues (1+c) - e^{i theta_k} - c e^{-i theta_k},
    theta_k = 2 pi k / N."""
    theta = 2.0 * np.pi * np.arange(ring.N) / ring.N
    w = np.exp(1j * theta)
    return (1.0 + ring.c) - w - ring.c * np.conj(w)


def ellipse_residual(c: float, point: complex) -> float:
    """LHS - 1 of (x-(1+c))^2/(1+c)^2 + y^2/(1-c)^2 = 1; zero on the ellipse."""
    c = float(c)
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"reverse weight must lie in [0, 1], got {c}")
    if c == 1.0:
        raise DegenerateEllipseError(
            "c = 1 collapses the ellipse to the segment [0, 4]; test |y| and x directly"
        )
    z = complex(point)
    return ((z.real - (1.0 + c)) / (1.0 + c)) ** 2 + (z.imag / (1.0 - c)) ** 2 - 1.0


def ellipse_point(c: float, theta: float) -> complex:
    """Parametric ellipse point (1+c)(1 - cos theta) - i (1-c) sin theta,
    which is the spectrum formula with theta in place of 2 pi k / N."""
    return (1.0 + c) - np.exp(1j * theta) - c * np.exp(-1j * theta)


def drop_boundary(x: float) -> float:
    """Upper boundary of the drop region on [0, 4]; the lower boundary is
    its negative.

    Circle piece sqrt(1 - (x-1)^2) on [0, 1.5]; envelope piece
    (1/sqrt(2)) (3 - s) sqrt(s - x + 1) with s = sqrt(1 + 2x) on (1.5, 4].
    Both pieces give sqrt(3)/2 at x = 1.5.
    """
    x = float(x)
    if not 0.0 <= x <= 4.0:
        raise DomainError(f"drop boundary is defined on [0, 4], got x = {x}")
    if x <= 1.5:
        return math.sqrt(max(0.0, 1.0 - (x - 1.0) ** 2))
    s = math.sqrt(1.0 + 2.0 * x)
    return (3.0 - s) * math.sqrt(max(0.0, s - x + 1.0)) / math.sqrt(2.0)


def intersection_x(c: float, z: float) -> float:
    """Positive abscissa where the ellipses with weights c and z intersect:

        x_cz = 2 [ (1-z)^2/(1+z) - (1-c)^2/(1+c) ]
                 / [ ((1-z)/(1+z))^2 - ((1-c)/(1+c))^2 ].

    Symmetric in (c, z); as z -> c it tends to the tangency abscissa
    (1+c)(3+c)/2.
    """
    c, z = float(c), float(z)
    if not (0.0 < c < 1.0 and 0.0 < z < 1.0):
        raise DomainError("intersection_x needs weights strictly inside (0, 1)")
    if c == z:
        raise DomainError("equal weights: the intersection degenerates (use the tangency limit)")
    num = (1.0 - z) ** 2 / (1.0 + z) - (1.0 - c) ** 2 / (1.0 + c)
    den = ((1.0 - z) / (1.0 + z)) ** 2 - ((1.0 - c) / (1.0 + c)) ** 2
    return 2.0 * num / den


def tangency_x(c: float) -> float:
    """Abscissa where the c-ellipse touches the drop boundary: (1+c)(3+c)/2."""
    return (1.0 + float(c)) * (3.0 + float(c)) / 2.0


def tangency_height(c: float) -> float:
    """Boundary height at the tangency abscissa: (1-c)/2 * sqrt((1-c)(3+c))."""
    c = float(c)
    return 0.5 * (1.0 - c) * math.sqrt((1.0 - c) * (3.0 + c))


def in_drop_region(point: complex, tol: float = 0.0) -> bool:
    """True iff the point lies in the drop region within tolerance tol."""
    if tol < 0:
        raise DomainError(f"tolerance must be >= 0, got {tol}")
    z = complex(point)
    if not -tol <= z.real <= 4.0 + tol:
        return False
    x = min(max(z.real, 0.0), 4.0)
    return abs(z.imag) <= drop_boundary(x) + tol


def golden_section_max(func, lo: float, hi: float, tol: float = 1e-10) -> tuple[float, float]:
    """Golden-section maximization of a unimodal function; returns (argmax, max)."""
    a, b = float(lo), float(hi)
    c1 = b - _INVPHI * (b - a)
    c2 = a + _INVPHI * (b - a)
    f1, f2 = func(c1), func(c2)
    while b - a > tol:
        if f1 < f2:
            a, c1, f1 = c1, c2, f2
            c2 = a + _INVPHI * (b - a)
            f2 = func(c2)
        else:
            b, c2, f2 = c2, c1, f1
            c1 = b - _INVPHI * (b - a)
            f1 = func(c1)
    xm = 0.5 * (a + b)
    return xm, func(xm)


def ellipse_drop_clearance(c: float, grid: int = 512) -> tuple[float, float]:
    """Maximum of |y| - drop_boundary(x) over the upper c-ellipse, and the
    abscissa where it is attained.

    A coarse grid pre-scan brackets the best angle before a golden-section
    refinement; the clearance is <= 0 everywhere (the ellipse stays inside
    the drop) and vanishes at the tangency abscissa (1+c)(3+c)/2.  The
    theta = pi endpoint (the shared origin point) is excluded from the
    search window.
    """
    c = float(c)
    if not 0.0 < c < 1.0:
        raise DomainError("clearance search needs 0 < c < 1 (endpoints degenerate)")

    def clearance(theta: float) -> float:
        p = ellipse_point(c, theta)
        x = min(max(p.real, 0.0), 4.0)
        return abs(p.imag) - drop_boundary(x)

    thetas = np.linspace(0.02, np.pi - 0.02, grid)
    values = [clearance(t) for t in thetas]
    best = int(np.argmax(values))
    lo = thetas[max(best - 1, 0)]
    hi = thetas[min(best + 1, grid - 1)]
    theta_star, value = golden_section_max(clearance, lo, hi)
    x_star = min(max(ellipse_point(c, theta_star).real, 0.0), 4.0)
    return value, x_star
