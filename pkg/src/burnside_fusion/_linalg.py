"""Exact triangular matrix helpers on numpy object arrays."""
from __future__ import annotations

from fractions import Fraction

import numpy as np


def zeros(n: int, m: int | None = None) -> np.ndarray:
    return np.zeros((n, n if m is None else m), dtype=object)


def identity(n: int) -> np.ndarray:
    out = zeros(n)
    for i in range(n):
        out[i, i] = 1
    return out


def normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def normalized(m: np.ndarray) -> np.ndarray:
    out = np.empty(m.shape, dtype=object)
    for idx, v in np.ndenumerate(m):
        out[idx] = normalize(v)
    return out


def is_upper_triangular(m: np.ndarray) -> bool:
    n = m.shape[0]
    return all(m[i, j] == 0 for i in range(n) for j in range(i))


def invert_upper(m: np.ndarray) -> np.ndarray:
    """Exact inverse of an upper triangular matrix by back-substitution.

    Unit diagonals keep everything in the integers; other diagonals produce
    Fractions (collapsed back to ints where integral).
    """
    n = m.shape[0]
    if not is_upper_triangular(m):
        raise ValueError("matrix is not upper triangular")
    if any(m[i, i] == 0 for i in range(n)):
        raise ZeroDivisionError("singular triangular matrix")
    unit = all(m[i, i] == 1 for i in range(n))
    inv = zeros(n)
    for j in range(n):
        inv[j, j] = 1 if unit else Fraction(1, 1) / m[j, j]
        for i in range(j - 1, -1, -1):
            acc = 0
            for k in range(i + 1, j + 1):
                if m[i, k]:
                    acc += m[i, k] * inv[k, j]
            inv[i, j] = -acc if unit else -Fraction(acc) / m[i, i]
    return normalized(inv)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return normalized(np.dot(a, b))
