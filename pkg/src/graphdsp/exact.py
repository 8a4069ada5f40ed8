"""Exact Gaussian-rational arithmetic and linear algebra.

Jordan structure is discontinuous in floating point, so the decomposition
engine can run over the field Q(i): complex numbers whose real and imaginary
parts are ``fractions.Fraction``. Floats convert losslessly (every float is a
binary rational); genuinely irrational eigenvalues are out of reach of this
backend by design.

Exact matrices are numpy object arrays of :class:`GaussianRational`, so the
usual ``@`` / ``.dot`` operations work unchanged.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import ValidationError

_HASH_IMAG = sys.hash_info.imag
_HASH_MOD = 2 * sys.hash_info.modulus  # only used to keep hashes bounded


class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def from_complex(cls, z) -> "GaussianRational":
        z = complex(z)
        return cls(Fraction(z.real), Fraction(z.imag))

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        den = other.re * other.re + other.im * other.im
        if den == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / den,
            (self.im * other.re - self.re * other.im) / den,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, (int, np.integer)) or n < 0:
            return NotImplemented
        result = GaussianRational(1)
        base = self
        n = int(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- predicates / conversions -------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero

    def __abs__(self) -> float:
        return abs(complex(self))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction, np.integer)):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex, np.floating, np.complexfloating)):
            other = complex(other)
            return self.re == Fraction(other.real) and self.im == Fraction(other.imag)
        return NotImplemented

    def __hash__(self):
        # mirror CPython's complex hashing so GaussianRational(3) hashes like 3
        h = hash(self.re) + _HASH_IMAG * hash(self.im)
        h = (h + _HASH_MOD) if h < -_HASH_MOD else h
        return -2 if h == -1 else h

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re!s})"
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def sort_key(self):
        return (self.re, self.im)


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, (float, np.floating)):
        return Fraction(float(x))
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction, np.integer)):
        return GaussianRational(x)
    if isinstance(x, (float, np.floating)):
        return GaussianRational(Fraction(float(x)))
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        return GaussianRational(Fraction(z.real), Fraction(z.imag))
    return NotImplemented


def as_exact_scalar(x) -> GaussianRational:
    """Coerce a number to a GaussianRational, raising on unsupported types."""
    g = _coerce(x)
    if g is NotImplemented:
        raise ValidationError(f"cannot convert {x!r} to an exact scalar")
    return g


def is_exact_scalar(x) -> bool:
    return isinstance(x, (GaussianRational, Fraction, int, np.integer))


# -- exact matrices ----------------------------------------------------------

def exact_matrix(data) -> np.ndarray:
    """Object ndarray of GaussianRational from nested sequences or an ndarray."""
    arr = np.asarray(data)
    out = np.empty(arr.shape, dtype=object)
    flat_out = out.reshape(-1)
    for i, v in enumerate(np.asarray(arr, dtype=object).reshape(-1)):
        flat_out[i] = as_exact_scalar(v)
    return out


def exact_zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out[...] = GaussianRational(0)
    return out.copy()


def exact_eye(n: int) -> np.ndarray:
    out = exact_zeros((n, n))
    for i in range(n):
        out[i, i] = GaussianRational(1)
    return out


def to_complex_matrix(m: np.ndarray) -> np.ndarray:
    out = np.empty(m.shape, dtype=np.complex128)
    flat_in = m.reshape(-1)
    flat_out = out.reshape(-1)
    for i, v in enumerate(flat_in):
        flat_out[i] = complex(v)
    return out


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over Q(i); returns (R, pivot column list)."""
    r = m.copy()
    rows, cols = r.shape
    pivots: list[int] = []
    lead = 0
    for col in range(cols):
        pivot_row = next((i for i in range(lead, rows) if r[i, col]), None)
        if pivot_row is None:
            continue
        if pivot_row != lead:
            r[[lead, pivot_row]] = r[[pivot_row, lead]]
        r[lead] = r[lead] * (GaussianRational(1) / r[lead, col])
        for i in range(rows):
            if i != lead and r[i, col]:
                r[i] = r[i] - r[i, col] * r[lead]
        pivots.append(col)
        lead += 1
        if lead == rows:
            break
    return r, pivots


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    """Canonical basis of the kernel (free variable set to 1, pivots solved)."""
    r, pivots = rref(m)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = exact_zeros(cols)
        v[f] = GaussianRational(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(v)
    return basis


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact solve A X = B by Gauss-Jordan elimination; raises if singular."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValidationError("exact solve requires a square matrix")
    b2 = b if b.ndim == 2 else b.reshape(-1, 1)
    aug = np.concatenate([a.copy(), b2.copy()], axis=1)
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if aug[i, col]), None)
        if pivot_row is None:
            raise ValidationError("singular matrix in exact solve")
        if pivot_row != col:
            aug[[col, pivot_row]] = aug[[pivot_row, col]]
        aug[col] = aug[col] * (GaussianRational(1) / aug[col, col])
        for i in range(n):
            if i != col and aug[i, col]:
                aug[i] = aug[i] - aug[i, col] * aug[col]
    x = aug[:, n:]
    return x if b.ndim == 2 else x.reshape(-1)


def inverse(a: np.ndarray) -> np.ndarray:
    return solve(a, exact_eye(a.shape[0]))


class IndependenceTracker:
    """Incrementally decides linear independence over Q(i).

    Holds vectors in row-echelon form; ``add`` reduces a candidate against
    the current span and keeps it when a nonzero remainder survives.
    """

    def __init__(self, dim: int, seed: Iterable[np.ndarray] = ()):  # noqa: D401
        self.dim = dim
        self._rows: list[np.ndarray] = []
        self._pivots: list[int] = []
        for v in seed:
            self.add(v)

    def __len__(self):
        return len(self._rows)

    def _reduce(self, v: np.ndarray) -> np.ndarray:
        v = v.copy()
        for row, piv in zip(self._rows, self._pivots):
            if v[piv]:
                v = v - v[piv] * row
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not any(self._reduce(v))

    def add(self, v: np.ndarray) -> bool:
        """Insert v's reduction; returns True when v was independent."""
        red = self._reduce(v)
        piv = next((i for i in range(self.dim) if red[i]), None)
        if piv is None:
            return False
        red = red * (GaussianRational(1) / red[piv])
        self._rows.append(red)
        self._pivots.append(piv)
        return True


def rationalize(value: float, max_denominator: int = 10**6) -> Fraction:
    """Nearest small-denominator rational (used to snap numeric eigenvalues)."""
    return Fraction(value).limit_denominator(max_denominator)
