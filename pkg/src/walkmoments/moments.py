"""Even moments of uniform random walks.

Two independent routes compute W_n(nu; 2k):

* :func:`moment_direct` sums the multinomial formula over all compositions
  of ``k`` into ``n`` parts;
* :func:`row_sums_of_power` reads the moments off the row sums of
  ``A(nu)**(n-1)``, where ``A(nu)`` is the lower-triangular matrix built by
  :func:`build_matrix`.

``nu = d/2 - 1`` is the dimension parameter; only integer ``nu >= 0`` (even
dimension) is supported.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import DomainError
from .numtheory import binomial


@dataclass(frozen=True)
class WalkParams:
    nu: int
    n: int
    k: int

    def __post_init__(self):
        if self.nu < 0 or self.n < 1 or self.k < 0:
            raise DomainError(f"invalid walk parameters {self}")


def a_entry_factorial(nu: int, k: int, j: int) -> Fraction:
    """C(k,j) (k+nu)! nu! / ((k-j+nu)! (j+nu)!)."""
    _check_entry(nu, k, j)
    f = math.factorial
    return Fraction(binomial(k, j) * f(k + nu) * f(nu), f(k - j + nu) * f(j + nu))


def a_entry_binomial(nu: int, k: int, j: int) -> Fraction:
    """C(k,j) C(k+nu,j) / C(j+nu,j)."""
    _check_entry(nu, k, j)
    return Fraction(binomial(k, j) * binomial(k + nu, j), binomial(j + nu, j))


def a_entry_shifted(nu: int, k: int, j: int) -> Fraction:
    """C(k+nu,j) C(k+nu,j+nu) / C(k+nu,nu)."""
    _check_entry(nu, k, j)
    return Fraction(binomial(k + nu, j) * binomial(k + nu, j + nu), binomial(k + nu, nu))


def _check_entry(nu: int, k: int, j: int) -> None:
    if nu < 0:
        raise DomainError(f"nu must be >= 0, got {nu}")
    if not 0 <= j <= k:
        raise DomainError(f"entry ({k}, {j}) is outside the lower triangle")


def a_entry(nu: int, k: int, j: int) -> Fraction:
    """Entry A_{k,j}(nu) of the moment matrix, in lowest terms."""
    return a_entry_binomial(nu, k, j)


@dataclass(frozen=True)
class AMatrix:
    """Leading ``size x size`` corner of a lower-triangular matrix.

    ``rows[k]`` holds entries ``0..k``; everything above the diagonal is 0.
    Because the matrix is lower triangular, products and powers of corners
    are exactly the corners of the products and powers.
    """

    nu: int
    size: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        k, j = index
        if j > k:
            return Fraction(0)
        return self.rows[k][j]

    def __matmul__(self, other: "AMatrix") -> "AMatrix":
        if self.size != other.size:
            raise DomainError("matrix sizes differ")
        rows = []
        for k in range(self.size):
            left = self.rows[k]
            rows.append(
                tuple(
                    sum((left[i] * other.rows[i][j] for i in range(j, k + 1)), Fraction(0))
                    for j in range(k + 1)
                )
            )
        return AMatrix(self.nu, self.size, tuple(rows))

    def row_sums(self) -> list[Fraction]:
        return [sum(row, Fraction(0)) for row in self.rows]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.rows]


def identity_matrix(nu: int, size: int) -> AMatrix:
    rows = tuple(tuple(Fraction(int(i == k)) for i in range(k + 1)) for k in range(size))
    return AMatrix(nu, size, rows)


def build_matrix(nu: int, size: int) -> AMatrix:
    if size < 1:
        raise DomainError(f"size must be >= 1, got {size}")
    rows = tuple(tuple(a_entry(nu, k, j) for j in range(k + 1)) for k in range(size))
    return AMatrix(nu, size, rows)


def matrix_power(matrix: AMatrix, n: int) -> AMatrix:
    """``matrix**n`` by iterated multiplication."""
    if n < 0:
        raise DomainError(f"power must be >= 0, got {n}")
    result = identity_matrix(matrix.nu, matrix.size)
    for _ in range(n):
        result = result @ matrix
    return result


def row_sums_of_power(nu: int, n: int, size: int) -> list[Fraction]:
    """Row sums of ``A(nu)**n``; entry k is W_{n+1}(nu; 2k)."""
    return matrix_power(build_matrix(nu, size), n).row_sums()


def compositions(k: int, n: int) -> Iterator[tuple[int, ...]]:
    """Every length-n tuple of non-negative integers summing to k.

    Order is colexicographic: tuples compare by their last part first, so
    ``compositions(2, 2)`` yields ``(2, 0), (1, 1), (0, 2)``.
    """
    if n < 1:
        raise DomainError(f"need at least one part, got n={n}")
    if k < 0:
        return
    if n == 1:
        yield (k,)
        return
    for last in range(k + 1):
        for head in compositions(k - last, n - 1):
            yield head + (last,)


def count_compositions(k: int, n: int) -> int:
    return binomial(k + n - 1, n - 1)


def moment_direct(nu: int, n: int, k: int) -> Fraction:
    """W_n(nu; 2k) from the multinomial sum over compositions of k."""
    WalkParams(nu, n, k)
    f = math.factorial
    prefactor = Fraction(f(k + nu) * f(nu) ** (n - 1), f(k + n * nu))
    # Each summand C(k; k_i) C(k+n*nu; k_i+nu) is an integer; sum them exactly.
    numerator = f(k) * f(k + n * nu)
    weights = [f(m) * f(m + nu) for m in range(k + 1)]
    total = 0
    for parts in compositions(k, n):
        denominator = 1
        for q in parts:
            denominator *= weights[q]
        total += numerator // denominator
    return prefactor * total


def moment_matrix(nu: int, n: int, k: int) -> Fraction:
    """W_n(nu; 2k) via row k of ``A(nu)**(n-1)``."""
    WalkParams(nu, n, k)
    return row_sums_of_power(nu, n - 1, k + 1)[k]
