"""Polynomial algebra: the computational substrate for filter manipulation.

Polynomials carry either complex floating-point coefficients (default) or
exact Gaussian-rational ones; arithmetic between the two silently promotes to
complex. Derivatives are always computed by coefficient manipulation, never
finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exact
from .errors import InterpolationError, ValidationError
from .exact import GaussianRational
from .tolerances import Tolerances, resolve


def _is_exact(x) -> bool:
    return isinstance(x, (GaussianRational, Fraction, int, np.integer))


class Polynomial:
    """Complex-coefficient polynomial, ascending degree; () is the zero polynomial."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = (), trim_tol: float | None = None):
        coeffs = list(np.asarray(coeffs, dtype=object).reshape(-1)) if not isinstance(coeffs, (list, tuple)) else list(coeffs)
        if coeffs and all(_is_exact(c) for c in coeffs):
            vals = [exact.as_exact_scalar(c) for c in coeffs]
            while vals and vals[-1].is_zero:
                vals.pop()
        else:
            tol = resolve(None).trim if trim_tol is None else trim_tol
            vals = [complex(c) for c in coeffs]
            for v in vals:
                if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                    raise ValidationError("polynomial coefficients must be finite")
            while vals and abs(vals[-1]) <= tol:
                vals.pop()
        object.__setattr__(self, "coeffs", tuple(vals))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- basic structure -----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return bool(self.coeffs) and isinstance(self.coeffs[0], GaussianRational)

    def coeffs_complex(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=np.complex128)

    def to_complex(self) -> "Polynomial":
        return Polynomial(self.coeffs_complex()) if self.is_exact else self

    def padded(self, length: int) -> list:
        zero = GaussianRational(0) if self.is_exact else 0j
        return list(self.coeffs) + [zero] * (length - len(self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(complex(c) for c in self.coeffs))

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    # -- arithmetic ----------------------------------------------------------
    @staticmethod
    def _unify(a: "Polynomial", b: "Polynomial"):
        """Common-backend coefficient lists and the matching zero scalar."""
        if (a.is_exact or a.is_zero) and (b.is_exact or b.is_zero):
            return list(a.coeffs), list(b.coeffs), GaussianRational(0)
        return list(a.coeffs_complex()), list(b.coeffs_complex()), 0j

    def __add__(self, other):
        other = _as_poly(other)
        ca, cb, zero = Polynomial._unify(self, other)
        n = max(len(ca), len(cb))
        ca += [zero] * (n - len(ca))
        cb += [zero] * (n - len(cb))
        return Polynomial([x + y for x, y in zip(ca, cb)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        ca, cb, zero = Polynomial._unify(self, _as_poly(other))
        if not ca or not cb:
            return Polynomial()
        out = [zero] * (len(ca) + len(cb) - 1)
        for i, x in enumerate(ca):
            for j, y in enumerate(cb):
                out[i + j] = out[i + j] + x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero:
            raise ValidationError("polynomial division by the zero polynomial")
        rem, cb, zero = Polynomial._unify(self, other)
        quot = [zero] * max(1, len(rem) - len(cb) + 1)
        lead = cb[-1]
        db = len(cb) - 1
        for k in range(len(rem) - 1, db - 1, -1):
            factor = rem[k] / lead
            quot[k - db] = factor
            for j in range(db + 1):
                rem[k - db + j] = rem[k - db + j] - factor * cb[j]
        return Polynomial(quot), Polynomial(rem[:db] if db > 0 else [])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def derivative(self, order: int = 1) -> "Polynomial":
        if order < 0:
            raise ValidationError("derivative order must be nonnegative")
        coeffs = list(self.coeffs)
        for _ in range(order):
            coeffs = [k * coeffs[k] for k in range(1, len(coeffs))]
        return Polynomial(coeffs)

    def __call__(self, x):
        """Horner evaluation; x may be complex, exact, or a square ndarray."""
        if isinstance(x, np.ndarray) and x.ndim == 2:
            return evaluate_on_matrix(self, x)
        if not self.coeffs:
            return GaussianRational(0) if _is_exact(x) else 0j
        use_exact = self.is_exact and _is_exact(x)
        coeffs = self.coeffs if use_exact else self.coeffs_complex()
        xx = exact.as_exact_scalar(x) if use_exact else complex(x)
        acc = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = acc * xx + c
        return acc

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """self(inner(x)) via Horner over polynomial arithmetic."""
        result = Polynomial()
        for c in reversed(self.coeffs):
            result = result * inner + Polynomial([c])
        return result

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ValidationError("the zero polynomial has no monic form")
        lead = self.coeffs[-1]
        one = GaussianRational(1) if self.is_exact else 1.0 + 0j
        return Polynomial([c * (one / lead) for c in self.coeffs])


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial([x])


def evaluate_on_matrix(p: Polynomial, a: np.ndarray) -> np.ndarray:
    """h(A) by Horner; supports complex and exact object matrices."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValidationError("matrix polynomial evaluation requires a square matrix")
    if a.dtype == object:
        ident = exact.exact_eye(n)
        acc = exact.exact_zeros((n, n))
        coeffs = [exact.as_exact_scalar(complex(c)) if not _is_exact(c) else exact.as_exact_scalar(c) for c in p.coeffs]
    else:
        a = np.asarray(a, dtype=np.complex128)
        ident = np.eye(n, dtype=np.complex128)
        acc = np.zeros((n, n), dtype=np.complex128)
        coeffs = list(p.coeffs_complex())
    for c in reversed(coeffs):
        acc = a.dot(acc) + c * ident
    return acc


def poly_eval(p: Polynomial, x, deriv_order: int = 0):
    """Evaluate p^(deriv_order)(x); derivatives via coefficient manipulation."""
    if deriv_order < 0:
        raise ValidationError("deriv_order must be nonnegative")
    return p.derivative(deriv_order)(x)


def poly_mod_mul(a: Polynomial, b: Polynomial, m: Polynomial) -> Polynomial:
    """(a * b) mod m — multiplication in the filter algebra."""
    if m.is_zero:
        raise ValidationError("zero modulus in poly_mod_mul")
    return (a * b) % m


def poly_from_roots(roots: Sequence) -> Polynomial:
    """Monic polynomial with the given roots (repeats encode multiplicity)."""
    acc = Polynomial([1] if all(_is_exact(r) for r in roots) else [1.0 + 0j])
    for r in roots:
        acc = acc * Polynomial([-r, GaussianRational(1) if _is_exact(r) else 1.0 + 0j])
    return acc


def char_poly(a, backend: str = "auto") -> Polynomial:
    """Characteristic polynomial, monic of degree N.

    Numeric path expands prod(x - lambda_i) over the eigenvalues; the exact
    path runs Faddeev-LeVerrier over Gaussian rationals, which requires no
    eigenvalue knowledge at all.
    """
    arr = np.asarray(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError("char_poly requires a square matrix")
    if backend == "auto":
        backend = "exact" if arr.dtype == object or np.issubdtype(arr.dtype, np.integer) else "numeric"
    if backend == "exact":
        return _char_poly_exact(exact.exact_matrix(arr) if arr.dtype != object else arr)
    arr = np.asarray(arr, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("char_poly requires finite entries")
    return poly_from_roots(np.linalg.eigvals(arr))


def _char_poly_exact(a: np.ndarray) -> Polynomial:
    n = a.shape[0]
    ident = exact.exact_eye(n)
    m = exact.exact_zeros((n, n))
    c = GaussianRational(1)
    coeffs = {n: c}
    for k in range(1, n + 1):
        m = a.dot(m) + c * ident
        am = a.dot(m)
        c = -np.trace(am) / Fraction(k)
        coeffs[n - k] = c
    return Polynomial([coeffs[i] for i in range(n + 1)])


def min_poly(basis) -> Polynomial:
    """Minimal polynomial prod (x - lambda_m)^{R_m}, R_m the longest chain.

    ``basis`` is a spectral basis (anything exposing ``eigenvalues``,
    ``chains`` and optionally ``eigenvalues_exact``).
    """
    eigs = getattr(basis, "eigenvalues_exact", None) or basis.eigenvalues
    roots = []
    for lam, chain_lengths in zip(eigs, basis.chains):
        roots.extend([lam] * max(chain_lengths))
    return poly_from_roots(roots)


def eval_on_jordan_block(h: Polynomial, lam, size: int) -> np.ndarray:
    """h applied to a Jordan block: entry (i, j) = h^(j-i)(lambda) / (j-i)!.

    Returns an exact object matrix when both h and lambda are exact,
    complex128 otherwise.
    """
    if size < 1:
        raise ValidationError("Jordan block size must be >= 1")
    use_exact = h.is_exact and _is_exact(lam)
    derivs = []
    d = h
    for k in range(size):
        val = d(lam if use_exact else complex(lam))
        fact = math.factorial(k)
        derivs.append(val / fact if use_exact else complex(val) / fact)
        d = d.derivative()
    if use_exact:
        out = exact.exact_zeros((size, size))
    else:
        out = np.zeros((size, size), dtype=np.complex128)
    for i in range(size):
        for j in range(i, size):
            out[i, j] = derivs[j - i]
    return out


@dataclass(frozen=True)
class HermiteConstraint:
    """Prescribes p(point) = values[0], p'(point) = values[1], ..."""

    point: object
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise ValidationError("a Hermite constraint needs at least one value")


def hermite_interpolate(
    constraints: Sequence[HermiteConstraint],
    tol: Tolerances | None = None,
) -> Polynomial:
    """Unique polynomial of degree < sum(r_i) meeting all derivative constraints.

    Solves the confluent Vandermonde system; runs exactly when every point and
    value is exact, otherwise in floating point with a condition estimate and
    a residual check.
    """
    tol = resolve(tol)
    if not constraints:
        raise ValidationError("hermite_interpolate needs at least one constraint")
    points = [c.point for c in constraints]
    scale = max(1.0, max(abs(complex(p)) for p in points))
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if abs(complex(points[i]) - complex(points[j])) <= tol.lambda_sep * scale:
                raise ValidationError(
                    f"interpolation points {points[i]!r} and {points[j]!r} are not distinct"
                )
    size = sum(len(c.values) for c in constraints)
    use_exact = all(
        _is_exact(c.point) and all(_is_exact(v) for v in c.values) for c in constraints
    )
    if use_exact:
        return _hermite_exact(constraints, size)
    return _hermite_numeric(constraints, size, tol)


def _vandermonde_row(point, order: int, size: int, one):
    """Row of d^order/dx^order [1, x, x^2, ...] evaluated at point."""
    row = [one * 0] * size
    powers = [one]
    for _ in range(size - 1):
        powers.append(powers[-1] * point)
    for j in range(order, size):
        fact = math.factorial(j) // math.factorial(j - order)
        row[j] = fact * powers[j - order]
    return row


def _hermite_exact(constraints, size) -> Polynomial:
    mat = exact.exact_zeros((size, size))
    rhs = exact.exact_zeros(size)
    r = 0
    for c in constraints:
        pt = exact.as_exact_scalar(c.point)
        for order, val in enumerate(c.values):
            mat[r] = _vandermonde_row(pt, order, size, GaussianRational(1))
            rhs[r] = exact.as_exact_scalar(val)
            r += 1
    coeffs = exact.solve(mat, rhs)
    return Polynomial(list(coeffs))


def _hermite_numeric(constraints, size, tol: Tolerances) -> Polynomial:
    mat = np.zeros((size, size), dtype=np.complex128)
    rhs = np.zeros(size, dtype=np.complex128)
    r = 0
    for c in constraints:
        pt = complex(c.point)
        for order, val in enumerate(c.values):
            mat[r] = _vandermonde_row(pt, order, size, 1.0 + 0j)
            rhs[r] = complex(val)
            r += 1
    cond = np.linalg.cond(mat)
    if not np.isfinite(cond) or cond > tol.cond_limit:
        raise InterpolationError(
            f"confluent Vandermonde system is ill-conditioned (cond ~ {cond:.3e}); "
            "consider the exact backend"
        )
    coeffs = np.linalg.solve(mat, rhs)
    residual = np.linalg.norm(mat @ coeffs - rhs)
    if residual > tol.solve * max(1.0, float(np.linalg.norm(rhs))):
        raise InterpolationError(
            f"interpolation residual {residual:.3e} exceeds tolerance; "
            "consider the exact backend"
        )
    return Polynomial(coeffs)
