"""Exact rational linear algebra.

Matrices are numpy object arrays holding ``fractions.Fraction`` entries, so the
usual ``@``, ``.T`` and slicing work unchanged. Elimination routines are written
out here because numpy's LAPACK paths only handle floating dtypes.
"""

from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import gcd
from typing import Any

import numpy as np

RationalLike = int | Fraction | tuple[int, int] | list[int]


def to_fraction(value: Any) -> Fraction:
    """Convert an int, Fraction, numeric string or ``[num, den]`` pair to a Fraction.

    Floats are converted exactly (binary expansion), which callers use only when
    they deliberately promote a floating value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int | np.integer):
        return Fraction(int(value))
    if isinstance(value, tuple | list) and len(value) == 2:
        num, den = value
        return Fraction(int(num), int(den))
    if isinstance(value, float | np.floating | str):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def fraction_array(values: Any) -> np.ndarray:
    """Build an object array of Fractions with the shape of ``values``."""
    arr = np.asarray(values, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = to_fraction(arr[idx])
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(Fraction(0))
    return out


def is_exact(arr: np.ndarray) -> bool:
    """True when ``arr`` is an object array of rationals."""
    return arr.dtype == object


def is_integral(arr: np.ndarray) -> bool:
    return all(to_fraction(x).denominator == 1 for x in np.asarray(arr).flat)


def to_int_matrix(arr: np.ndarray) -> list[list[int]]:
    """Integral Fraction matrix as nested Python ints.

    Raises:
        ValueError: If an entry is not an integer
    """
    rows = []
    for row in arr:
        out = []
        for x in row:
            q = to_fraction(x)
            if q.denominator != 1:
                raise ValueError(f"entry {q} is not an integer")
            out.append(q.numerator)
        rows.append(out)
    return rows


def to_float(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return np.vectorize(float, otypes=[float])(arr) if arr.size else arr.astype(float)
    return np.asarray(arr, dtype=float)


def _row_echelon(a: np.ndarray) -> tuple[np.ndarray, list[int], int]:
    """Gauss-Jordan reduction; returns (reduced matrix, pivot columns, row swaps)."""
    m = a.copy()
    rows, cols = m.shape
    pivots: list[int] = []
    swaps = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
            swaps += 1
        inv = 1 / m[r, c]
        m[r] = m[r] * inv
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = m[i] - m[i, c] * m[r]
        pivots.append(c)
        r += 1
    return m, pivots, swaps


def rank(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    _, pivots, _ = _row_echelon(fraction_array(a))
    return len(pivots)


def det(a: np.ndarray) -> Fraction:
    """Exact determinant by fraction-preserving elimination."""
    m = fraction_array(a)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i, c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[[c, pivot]] = m[[pivot, c]]
            result = -result
        result *= m[c, c]
        for i in range(c + 1, n):
            if m[i, c] != 0:
                m[i] = m[i] - (m[i, c] / m[c, c]) * m[c]
    return result


def inverse(a: np.ndarray) -> np.ndarray:
    """Exact inverse.

    Raises:
        ZeroDivisionError: If ``a`` is singular
    """
    m = fraction_array(a)
    n = m.shape[0]
    reduced, pivots, _ = _row_echelon(np.hstack([m, identity(n)]))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return reduced[:, n:]


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a x = b`` exactly for square invertible ``a``."""
    b = fraction_array(b)
    vector = b.ndim == 1
    rhs = b.reshape(-1, 1) if vector else b
    n = a.shape[0]
    reduced, pivots, _ = _row_echelon(np.hstack([fraction_array(a), rhs]))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    x = reduced[:, n:]
    return x.reshape(-1) if vector else x


def column_space_contains(span: np.ndarray, vectors: np.ndarray) -> bool:
    """True when every column of ``vectors`` lies in the rational column span of ``span``."""
    if vectors.size == 0:
        return True
    return rank(np.hstack([span, vectors])) == rank(span)


def rational_gcd(values: Iterable[Fraction]) -> Fraction:
    """Generator of the additive group ``sum Z * v``; zero when all values vanish."""
    values = [to_fraction(v) for v in values]
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    g = 0
    for v in values:
        g = gcd(g, v.numerator * (den // v.denominator))
    return Fraction(g, den)


def matrix_to_pairs(arr: np.ndarray) -> list[list[list[int]]]:
    """Fraction matrix as nested ``[num, den]`` pairs for JSON output."""
    return [[[to_fraction(x).numerator, to_fraction(x).denominator] for x in row] for row in arr]


def block_diagonal(blocks: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = zeros(n, n)
    offset = 0
    for b in blocks:
        k = b.shape[0]
        out[offset:offset + k, offset:offset + k] = fraction_array(b)
        offset += k
    return out
