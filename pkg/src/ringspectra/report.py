"""Per-eigenvalue spectrum reports: locus residuals and region verdicts.

Bundles, for one replicated topology and one agent model, the Laplacian
eigenvalues, each eigenvalue's residual on the derived locus curve, and
the consensus-region verdict of its reflected r-scaled image.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charpoly import locus_points, macro_polynomial
from .consensus import (
    EPS,
    ZERO_TOL,
    FrequencyVariable,
    OmegaVerdict,
    max_root_real_parts,
    reflect_scale,
)
from .curves import curve_residual, derive_curve
from .topology import RingTopology


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues with their curve residuals and region verdicts."""

    topology: RingTopology
    r: float
    eigenvalues: np.ndarray
    curve_residuals: np.ndarray
    verdicts: tuple[OmegaVerdict, ...]
    consensus: bool

    def rows(self) -> list[tuple[float, float, float, bool, float]]:
        """(re, im, curve_residual, inside, max_root_real_part) per eigenvalue."""
        return [
            (lam.real, lam.imag, float(res), v.inside, v.max_root_real_part)
            for lam, res, v in zip(self.eigenvalues, self.curve_residuals, self.verdicts)
        ]


def spectrum_report(topology: RingTopology, fv: FrequencyVariable, r: float = 1.0,
                    eps: float = EPS, zero_tol: float = ZERO_TOL) -> SpectrumReport:
    """Evaluate every eigenvalue of the topology against its locus curve and
    the consensus region of fv.

    Eigenvalues come from the locus sampler (roots of the macro polynomial
    at roots of unity), so they carry the exact-curve pedigree; verdicts
    apply to the reflected r-scaled points, with near-origin points inside
    zero_tol reported as boundary rather than violations.
    """
    P = macro_polynomial(topology.necklace)
    curve = derive_curve(P)
    eigenvalues = locus_points(P, topology.m, odd_total=topology.N % 2 == 1)
    order = np.lexsort((eigenvalues.imag, eigenvalues.real))
    eigenvalues = eigenvalues[order]
    residuals = np.array([curve_residual(curve, lam) for lam in eigenvalues])

    reflected = reflect_scale(eigenvalues, r)
    worst = max_root_real_parts(fv, reflected)
    verdicts = tuple(
        OmegaVerdict(point=complex(p), inside=bool(w < -eps),
                     max_root_real_part=float(w), eps=eps)
        for p, w in zip(reflected, worst)
    )
    nonzero = np.abs(reflected) > zero_tol
    consensus = bool(np.all(worst[nonzero] < -eps))
    return SpectrumReport(topology=topology, r=float(r), eigenvalues=eigenvalues,
                          curve_residuals=residuals, verdicts=verdicts,
                          consensus=consensus)
