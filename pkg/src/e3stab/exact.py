"""Exact complex-rational scalars and matrices.

Scalars are sympy's Gaussian rationals (``QQ_I`` elements, gmpy2-backed);
linear algebra goes through ``DomainMatrix`` over the same domain.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np
from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

CQ = type(QQ_I.one)
ZERO = QQ_I.zero
ONE = QQ_I.one
I = QQ_I(0, 1)


def _q(x) -> object:
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, Rational):
        return QQ(int(x.numerator), int(x.denominator))
    if isinstance(x, float):
        if not float(x).is_integer():
            raise TypeError(f"refusing to convert float {x!r} to an exact rational")
        return QQ(int(x))
    raise TypeError(f"cannot convert {x!r} to a rational")


def cq(re=0, im=0):
    """Build an exact complex rational from ints, Fractions or "p/q" strings."""
    if isinstance(re, CQ):
        if im:
            raise TypeError("imaginary part given twice")
        return re
    return QQ_I(_q(re), _q(im))


def conj(z):
    return QQ_I(z.x, -z.y)


def frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def re_part(z) -> Fraction:
    return frac(z.x)


def im_part(z) -> Fraction:
    return frac(z.y)


def to_complex(z) -> complex:
    return complex(float(frac(z.x)), float(frac(z.y)))


def is_real(z) -> bool:
    return not z.y


def fmt_q(x) -> str:
    f = frac(x)
    return f"{f.numerator}/{f.denominator}"


def dump(z) -> list[str]:
    """[re, im] as "p/q" strings."""
    return [fmt_q(z.x), fmt_q(z.y)]


def load(pair: Sequence) -> object:
    re, im = pair
    return cq(re, im)


# --- matrices -------------------------------------------------------------

def matrix(rows: Iterable[Iterable]) -> DomainMatrix:
    rows = [[cq(x) for x in r] for r in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (n, m), QQ_I)


def identity(n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ_I).to_dense()


def zeros(n: int, m: int) -> DomainMatrix:
    return DomainMatrix.zeros((n, m), QQ_I).to_dense()


def entries(M: DomainMatrix) -> list[list]:
    return M.to_list()


def column(M: DomainMatrix, j: int) -> list:
    return [row[j] for row in M.to_list()]


def from_columns(cols: Sequence[Sequence]) -> DomainMatrix:
    n = len(cols[0])
    return matrix([[c[i] for c in cols] for i in range(n)])


def to_numpy(M: DomainMatrix) -> np.ndarray:
    return np.array([[to_complex(z) for z in row] for row in M.to_list()], dtype=complex)


def same(A: DomainMatrix, B: DomainMatrix) -> bool:
    return A.shape == B.shape and A.to_list() == B.to_list()


def is_zero_matrix(M: DomainMatrix) -> bool:
    return all(not z for row in M.to_list() for z in row)


def conj_matrix(M: DomainMatrix) -> DomainMatrix:
    return matrix([[conj(z) for z in row] for row in M.to_list()])
