"""Exact polynomial arithmetic and complex root extraction.

``IntPoly`` is a univariate polynomial over the integers (ascending
coefficients, arbitrary precision); ``BivariatePoly`` is its sparse
two-variable counterpart used for the spectrum-locus curves.  Root
extraction for monic families p(z) = target runs through batched
companion-matrix eigenvalues (LAPACK balances internally) followed by
a vectorized Newton polish.
"""

from __future__ import annotations

import math
import operator
from typing import Iterable, Mapping

import numpy as np

from .errors import NumericFailureError, ResourceLimitError

MAX_DEGREE = 64

# Polish targets: iterate until |p(z) - t| <= _POLISH_TOL * (1 + |z|)^deg,
# fail hard only beyond _POLISH_FAIL on the same scale.
_POLISH_TOL = 1e-13
_POLISH_FAIL = 1e-10


def _as_int(value) -> int:
    return operator.index(value)


class IntPoly:
    """Univariate polynomial with exact integer coefficients, ascending degree."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [_as_int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) - 1 > MAX_DEGREE:
            raise ResourceLimitError(
                f"polynomial degree {len(cs) - 1} exceeds the {MAX_DEGREE} guard"
            )
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, value: int) -> "IntPoly":
        return cls((value,))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def leading(self) -> int:
        return self._coeffs[-1] if self._coeffs else 0

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, int):
            return self == IntPoly((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self._coeffs))

    def __add__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self._coeffs))
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPoly()
        a, b = self._coeffs, other._coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPoly":
        k = _as_int(exponent)
        if k < 0:
            raise ValueError("negative exponents are not defined for IntPoly")
        result = IntPoly((1,))
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        """Horner evaluation; exact for int arguments, vectorized for arrays."""
        if not self._coeffs:
            return 0 * x
        acc = self._coeffs[-1] + 0 * x
        for c in reversed(self._coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(k * c for k, c in enumerate(self._coeffs) if k >= 1))

    def __repr__(self) -> str:
        return f"IntPoly({self._coeffs!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self._coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "x" if k == 1 else f"x^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append(f"{sign}{body}" if not parts else f" {sign} {body}")
        return "".join(parts)


#: the monomial x, for building polynomials expressively
X = IntPoly((0, 1))


def companion_matrix(monic_ascending) -> np.ndarray:
    """Companion matrix (ones on the superdiagonal, -coefficients in the last row)."""
    c = np.asarray(monic_ascending)
    d = len(c) - 1
    if d < 1:
        raise ValueError("companion matrix needs degree >= 1")
    A = np.zeros((d, d), dtype=complex)
    A[:-1, 1:] = np.eye(d - 1)
    A[-1, :] = -c[:-1]
    return A


def _horner_many(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.full_like(z, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def roots_at_targets(poly: IntPoly, targets) -> np.ndarray:
    """Roots of poly(z) = t for every t in targets, shape (len(targets), degree).

    The polynomial must be monic of degree >= 1.  Eigenvalues of the
    shifted companion matrices seed a Newton polish; a residual beyond
    the failure threshold raises NumericFailureError with the residual
    report attached.
    """
    if poly.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if poly.leading != 1:
        raise ValueError("root extraction expects a monic polynomial")
    targets = np.asarray(targets, dtype=complex).ravel()
    d = poly.degree
    base = np.asarray(poly.coeffs, dtype=complex)

    comp = np.zeros((len(targets), d, d), dtype=complex)
    comp[:, :-1, 1:] = np.eye(d - 1)
    comp[:, -1, :] = -base[:-1]
    comp[:, -1, 0] += targets
    roots = np.linalg.eigvals(comp)

    dcoeffs = np.asarray(poly.derivative().coeffs, dtype=complex)
    for _ in range(6):
        f = _horner_many(base, roots) - targets[:, None]
        scale = (1.0 + np.abs(roots)) ** d
        if np.all(np.abs(f) <= _POLISH_TOL * scale):
            break
        df = _horner_many(dcoeffs, roots)
        safe = np.abs(df) > 0
        step = np.where(safe, f / np.where(safe, df, 1.0), 0.0)
        roots = roots - step

    residuals = np.abs(_horner_many(base, roots) - targets[:, None])
    scale = (1.0 + np.abs(roots)) ** d
    worst = float(np.max(residuals / scale))
    if worst > _POLISH_FAIL:
        raise NumericFailureError(
            f"root polish did not converge (worst scaled residual {worst:.3e})",
            residuals=residuals,
        )
    return roots


class BivariatePoly:
    """Sparse bivariate polynomial over the integers: {(i, j): coeff} for x^i y^j."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] = ()):
        data = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (i, j), c in items:
            i, j, c = _as_int(i), _as_int(j), _as_int(c)
            if i < 0 or j < 0:
                raise ValueError("exponents must be nonnegative")
            if c:
                data[(i, j)] = data.get((i, j), 0) + c
        self._terms = {k: v for k, v in data.items() if v}

    @classmethod
    def constant(cls, value: int) -> "BivariatePoly":
        return cls({(0, 0): value})

    @classmethod
    def x(cls) -> "BivariatePoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivariatePoly":
        return cls({(0, 1): 1})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        """(i, j, coeff) triples in ascending lexicographic (i, j) order."""
        return [(i, j, self._terms[(i, j)]) for i, j in sorted(self._terms)]

    @property
    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, BivariatePoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly({k: -v for k, v in self._terms.items()})

    def __add__(self, other) -> "BivariatePoly":
        if isinstance(other, int):
            other = BivariatePoly.constant(other)
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return BivariatePoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "BivariatePoly":
        if isinstance(other, int):
            other = BivariatePoly.constant(other)
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BivariatePoly":
        return (-self) + other

    def __mul__(self, other) -> "BivariatePoly":
        if isinstance(other, int):
            return BivariatePoly({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), v1 in self._terms.items():
            for (i2, j2), v2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + v1 * v2
        return BivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BivariatePoly":
        k = _as_int(exponent)
        if k < 0:
            raise ValueError("negative exponents are not defined for BivariatePoly")
        result = BivariatePoly.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def content(self) -> int:
        """GCD of all coefficients (0 for the zero polynomial)."""
        g = 0
        for v in self._terms.values():
            g = math.gcd(g, abs(v))
        return g

    def canonical(self) -> "BivariatePoly":
        """Divide out the integer content and make the highest lex monomial positive."""
        if not self._terms:
            return BivariatePoly()
        g = self.content()
        terms = {k: v // g for k, v in self._terms.items()}
        if terms[max(terms)] < 0:
            terms = {k: -v for k, v in terms.items()}
        return BivariatePoly(terms)

    def transform(self, x_scale: int = 1, x_shift: int = 0,
                  y_scale: int = 1, y_shift: int = 0) -> "BivariatePoly":
        """Exact substitution x -> x_scale*x + x_shift, y -> y_scale*y + y_shift."""
        out: dict[tuple[int, int], int] = {}
        for (i, j), c in self._terms.items():
            for p in range(i + 1):
                cx = math.comb(i, p) * x_scale ** p * x_shift ** (i - p)
                if cx == 0:
                    continue
                for q in range(j + 1):
                    cy = math.comb(j, q) * y_scale ** q * y_shift ** (j - q)
                    if cy == 0:
                        continue
                    k = (p, q)
                    out[k] = out.get(k, 0) + c * cx * cy
        return BivariatePoly(out)

    def evaluate(self, x: float, y: float) -> float:
        """Value at (x, y) with Kahan-compensated summation over sorted terms."""
        total = 0.0
        comp = 0.0
        for i, j, c in self.sorted_terms():
            term = float(c) * x ** i * y ** j
            delta = term - comp
            t = total + delta
            comp = (t - total) - delta
            total = t
        return total

    def __repr__(self) -> str:
        return f"BivariatePoly({self._terms!r})"
