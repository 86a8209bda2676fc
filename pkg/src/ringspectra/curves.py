"""Spectrum-locus algebraic curves: derivation, membership, tracing.

Writing lambda = x + iy and splitting the macro polynomial into real and
imaginary parts P(x + iy) = R(x, y) + i I(x, y), every eigenvalue of
every replication satisfies |P(lambda)| = 1, i.e. lies on the order-2n
curve R^2 + I^2 - 1 = 0.  Tracing P(lambda) = e^{i theta} over a theta
grid fills the same curve densely.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .polynomials import BivariatePoly, IntPoly, roots_at_targets


def real_imag_parts(P: IntPoly) -> tuple[BivariatePoly, BivariatePoly]:
    """Exact real and imaginary bivariate parts of P(x + iy)."""
    R = BivariatePoly()
    I = BivariatePoly()
    # power_r + i power_i tracks (x + iy)^k incrementally
    power_r = BivariatePoly.constant(1)
    power_i = BivariatePoly()
    x = BivariatePoly.x()
    y = BivariatePoly.y()
    for k, c in enumerate(P.coeffs):
        if k > 0:
            power_r, power_i = power_r * x - power_i * y, power_r * y + power_i * x
        if c:
            R = R + power_r * c
            I = I + power_i * c
    return R, I


def derive_curve(P: IntPoly) -> BivariatePoly:
    """Canonical integer form of R^2 + I^2 - 1; total degree is exactly 2*deg(P)."""
    if P.degree < 1:
        raise ValueError("curve derivation needs deg(P) >= 1")
    R, I = real_imag_parts(P)
    return (R * R + I * I - 1).canonical()


def curve_residual(f: BivariatePoly, point: complex) -> float:
    """f evaluated at (re, im); zero means the point is on the curve."""
    z = complex(point)
    return f.evaluate(z.real, z.imag)


def locus_radius_bound(P: IntPoly) -> float:
    """Radius h such that |lambda| > h forces |P(lambda)| > 1: Cauchy-style
    bound on the roots of P(lambda) = w over all |w| <= 1."""
    cs = P.coeffs
    bound = abs(cs[0]) + 1.0
    for c in cs[1:-1]:
        bound = max(bound, float(abs(c)))
    return 1.0 + bound


def trace_curve(P: IntPoly, samples: int, workers: int = 1) -> np.ndarray:
    """Dense parametric trace: all roots of P(lambda) = e^{i theta} on a
    uniform theta grid over [0, 2*pi).

    Ordered by theta, then by root (real, imag).  Every returned point
    satisfies the derived curve equation to root-polish accuracy.
    """
    samples = int(samples)
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    thetas = 2.0 * np.pi * np.arange(samples) / samples
    targets = np.exp(1j * thetas)

    def solve(chunk: np.ndarray) -> np.ndarray:
        roots = roots_at_targets(P, chunk)
        order = np.lexsort((roots.imag, roots.real), axis=-1)
        return np.take_along_axis(roots, order, axis=-1)

    if workers > 1 and samples >= 2 * workers:
        chunks = np.array_split(targets, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(solve, chunks))
        return np.concatenate([p.ravel() for p in parts])
    return solve(targets).ravel()
