"""Denominators of the entries of A(nu).

``r_nu`` is the least positive r with ``r * A_{k,j}(nu)`` integral for every
entry.  It is known to divide ``(2nu-1)!/nu!`` and to be a multiple of
``C(2nu-1, nu)``; equality with the latter is open.  Everything here works
on finite corners, so a scan only ever reports a truncated LCM.
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ArithmeticIntegrityError, DomainError
from .moments import a_entry
from .numtheory import (
    Factorization,
    binomial,
    factorial_valuation,
    factorize,
    is_prime,
    kummer_carries,
    lcm_of,
    primes_up_to,
    star_bound,
    star_exponent,
)


def conjectured_r(nu: int) -> int:
    """C(2nu-1, nu), the conjectured value of r_nu (1 for nu = 0)."""
    if nu == 0:
        return 1
    return binomial(2 * nu - 1, nu)


def upper_bound(nu: int) -> int:
    """(2nu-1)!/nu!, a proven multiple of r_nu."""
    if nu < 1:
        raise DomainError(f"upper_bound needs nu >= 1, got {nu}")
    return math.factorial(2 * nu - 1) // math.factorial(nu)


def _integrity_bound(nu: int) -> int:
    # A(0) entries are squared binomials, hence integers.
    return 1 if nu == 0 else upper_bound(nu)


def reduced_denominator(nu: int, k: int, j: int) -> int:
    """Denominator of A_{k,j}(nu) without forming the numerator product."""
    den = binomial(j + nu, j)
    den //= math.gcd(den, binomial(k, j))
    den //= math.gcd(den, binomial(k + nu, j))
    return den


def denominator_valuation(nu: int, k: int, j: int, p: int) -> int:
    """v_p of the reduced denominator of A_{k,j}(nu), via Kummer carry counts."""
    top = kummer_carries(k, j, p) + kummer_carries(k + nu, j, p)
    return max(0, kummer_carries(j + nu, j, p) - top)


def denominator_by_valuations(nu: int, k: int, j: int) -> int:
    """Same value as :func:`reduced_denominator`, assembled prime by prime."""
    den = 1
    for p in primes_up_to(j + nu):
        den *= p ** denominator_valuation(nu, k, j, p)
    return den


def _pascal_row(n: int) -> list[int]:
    row = [1] * (n + 1)
    for i in range(1, n):
        row[i] = row[i - 1] * (n - i + 1) // i
    return row


def _scan_rows(nu: int, start: int, stop: int) -> list[tuple[int, int, int]]:
    # Pascal rows k and k + nu are carried forward by addition instead of
    # calling comb() per entry.
    window = [_pascal_row(n) for n in range(start, start + nu + 1)]
    small = [binomial(j + nu, j) for j in range(stop)]
    cells = []
    for k in range(start, stop):
        row_k, row_knu = window[0], window[-1]
        for j in range(1, k):
            den = small[j]
            den //= math.gcd(den, row_k[j] % den)
            if den > 1:
                den //= math.gcd(den, row_knu[j] % den)
                if den > 1:
                    cells.append((k, j, den))
        last = window[-1]
        window.append([1] + [last[i - 1] + last[i] for i in range(1, len(last))] + [1])
        window.pop(0)
    return cells


def scan_denominators(
    nu: int,
    rows: int,
    threads: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> list[tuple[int, int, int]]:
    """``(k, j, den)`` for every non-integer entry with ``k < rows``, sorted by (k, j).

    Work is split into row blocks; with ``threads > 1`` the blocks run in
    worker processes.  Output does not depend on ``threads``.
    """
    if rows <= 0:
        return []
    block = max(1, min(64, rows // max(1, 4 * threads)))
    bounds = [(s, min(s + block, rows)) for s in range(0, rows, block)]
    cells: list[tuple[int, int, int]] = []
    if threads > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_scan_rows, nu, s, e) for s, e in bounds]
            for (_, e), fut in zip(bounds, futures):
                cells.extend(fut.result())
                if progress:
                    progress(e, rows)
    else:
        for s, e in bounds:
            cells.extend(_scan_rows(nu, s, e))
            if progress:
                progress(e, rows)
    bound = _integrity_bound(nu)
    for k, j, den in cells:
        if bound % den:
            raise ArithmeticIntegrityError(
                f"A_{{{k},{j}}}({nu}) has denominator {den}, which does not divide {bound}"
            )
    return cells


def truncated_r(nu: int, K: int, threads: int = 1) -> int:
    """LCM of the denominators of A_{k,j}(nu) over 0 <= j <= k <= K."""
    if nu < 0 or K < 0:
        raise DomainError(f"need nu >= 0 and K >= 0, got nu={nu}, K={K}")
    return lcm_of(den for _, _, den in scan_denominators(nu, K + 1, threads))


def tightened_bound(nu: int) -> Factorization:
    """Per-nu refinement of (2nu-1)!/nu! combining both cases of the divisibility argument.

    Entries with j < nu have denominators dividing C(j+nu, nu); entries with
    j >= nu have p-part at most ``star_exponent - v_p(nu!)``.  The exponent
    of each prime is the larger of the two.
    """
    if nu < 1:
        raise DomainError(f"tightened_bound needs nu >= 1, got {nu}")
    small_j = factorize(lcm_of(binomial(j + nu, nu) for j in range(nu))).as_dict()
    exponents = {}
    for p in primes_up_to(2 * nu):
        star_part = max(0, star_exponent(nu, p) - factorial_valuation(nu, p))
        exponents[p] = max(small_j.get(p, 0), star_part)
    return Factorization.from_exponents(exponents)


class Status(enum.Enum):
    MATCHES_CONJECTURE = "MatchesConjecture"
    BELOW_CONJECTURE = "BelowConjecture"
    EXCEEDS_CONJECTURE = "ExceedsConjecture"
    EXCEEDS_UPPER_BOUND = "ExceedsUpperBound"


@dataclass(frozen=True)
class RnuReport:
    nu: int
    K: int
    truncated_r: int
    conjectured: int
    upper: int
    tightened: Factorization
    status: Status
    violation: tuple[int, int, Fraction] | None = None

    @property
    def passed(self) -> bool:
        return self.status is Status.MATCHES_CONJECTURE


def verify_conjecture(nu: int, K: int, threads: int = 1) -> RnuReport:
    """Scan the ``K+1`` row corner of A(nu) and compare its LCM to C(2nu-1, nu).

    ``BelowConjecture`` means the corner is too small to contain the
    witnesses; ``ExceedsConjecture`` would be a counterexample and carries
    the first offending entry.
    """
    if nu < 1:
        raise DomainError(f"verify_conjecture needs nu >= 1, got {nu}")
    conj = conjectured_r(nu)
    cells = scan_denominators(nu, K + 1, threads)
    r = lcm_of(den for _, _, den in cells)
    violation = None
    for k, j, den in cells:
        if conj % den:
            violation = (k, j, a_entry(nu, k, j))
            break
    if violation is not None:
        status = Status.EXCEEDS_CONJECTURE
    elif r == conj:
        status = Status.MATCHES_CONJECTURE
    else:
        status = Status.BELOW_CONJECTURE
    return RnuReport(nu, K, r, conj, upper_bound(nu), tightened_bound(nu), status, violation)


@dataclass(frozen=True)
class WitnessResult:
    nu: int
    p: int
    alpha: int
    r: int
    minimal_r: int
    entry_index: tuple[int, int]
    denominator: int
    verified: bool

    @property
    def red_flag(self) -> bool:
        """True when the smallest admissible exponent did not already certify."""
        return self.r != self.minimal_r or not self.verified


def minimal_witness_exponent(nu: int, p: int, alpha: int) -> int:
    """Least r with p**r >= p**alpha and p**r > nu."""
    r = alpha
    while p**r <= nu:
        r += 1
    return r


def backwards_witness(nu: int, p: int, alpha: int, r_cap: int = 12) -> WitnessResult:
    """Check that A_{p^r-1, nu-1}(nu) has p**alpha in its denominator.

    Starts at the smallest admissible r and walks up to ``r_cap``; any r
    beyond the first is reported through :attr:`WitnessResult.red_flag`.
    """
    if nu < 1 or alpha < 1 or not is_prime(p):
        raise DomainError(f"invalid witness request nu={nu}, p={p}, alpha={alpha}")
    if conjectured_r(nu) % p**alpha:
        raise DomainError(f"{p}^{alpha} does not divide C({2 * nu - 1}, {nu})")
    r0 = minimal_witness_exponent(nu, p, alpha)
    r = r0
    while True:
        k = p**r - 1
        den = reduced_denominator(nu, k, nu - 1)
        verified = den % p**alpha == 0
        if verified or r >= r_cap:
            return WitnessResult(nu, p, alpha, r, r0, (k, nu - 1), den, verified)
        r += 1


def witnesses(nu: int, r_cap: int = 12) -> list[WitnessResult]:
    """Run :func:`backwards_witness` for each maximal prime power of C(2nu-1, nu)."""
    return [backwards_witness(nu, p, e, r_cap) for p, e in factorize(conjectured_r(nu))]


def witnessed_r(nu: int, K: int, threads: int = 1) -> tuple[RnuReport, int]:
    """Corner report plus the LCM of the corner and every witness entry.

    For large nu the witness rows p^r - 1 lie far below row K, so the
    corner alone cannot reach C(2nu-1, nu).  Adding the witness entries
    gives a lower bound; together with a clean corner (no entry outside
    ``(1/C) Z``) an LCM equal to C(2nu-1, nu) is the strongest finite
    statement available.
    """
    report = verify_conjecture(nu, K, threads)
    dens = [w.denominator for w in witnesses(nu)]
    return report, lcm_of([report.truncated_r, *dens])


def small_j_closed_form(nu: int, j: int, k: int) -> Fraction:
    """Polynomial closed form of C(2nu-1, nu) * A_{k,j}(nu) for nu in {3, 4} and small j."""
    if k < j:
        raise DomainError(f"need k >= j, got k={k}, j={j}")
    if nu == 3:
        forms = {
            0: lambda k: Fraction(10),
            1: lambda k: Fraction(5 * (k + 3) * k, 2),
            2: lambda k: Fraction((k - 1) * (k + 2) * (k + 3) * k, 4),
        }
    elif nu == 4:
        forms = {
            0: lambda k: Fraction(35),
            1: lambda k: Fraction(7 * k * (k + 4)),
            2: lambda k: Fraction(7 * (k - 1) * k * (k + 3) * (k + 4), 12),
            3: lambda k: Fraction((k - 2) * (k - 1) * k * (k + 2) * (k + 3) * (k + 4), 36),
        }
    else:
        raise DomainError(f"no closed form for nu={nu}")
    if j not in forms:
        raise DomainError(f"no closed form for nu={nu}, j={j}")
    return forms[j](k)


@dataclass(frozen=True)
class TableRow:
    nu: int
    star: Factorization
    factorial: Factorization


def table_compare(nu_max: int) -> list[TableRow]:
    """Rows nu = 1..nu_max of the run-product bound against (2nu-1)!."""
    if nu_max < 1:
        raise DomainError(f"nu_max must be >= 1, got {nu_max}")
    return [
        TableRow(nu, star_bound(nu), factorize(math.factorial(2 * nu - 1)))
        for nu in range(1, nu_max + 1)
    ]


def default_threads() -> int:
    env = os.environ.get("WALKMOMENTS_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1
