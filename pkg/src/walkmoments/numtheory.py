"""Integer and rational primitives.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`,
which is always held in lowest terms with a positive denominator.  On top of
those this module provides valuations, factorization over small primes,
Kummer carry counts, and the per-prime bound on the gcd of two adjacent
runs of consecutive integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import ArithmeticIntegrityError, DomainError

Rational = Fraction


def binomial(n: int, k: int) -> int:
    """C(n, k), with C(n, k) = 0 for k < 0 or k > n."""
    if n < 0:
        raise DomainError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def multinomial(k: int, parts: Iterable[int]) -> int:
    """k! / prod(part!) for non-negative parts summing to k."""
    parts = list(parts)
    if any(q < 0 for q in parts):
        raise DomainError(f"multinomial parts must be >= 0, got {parts}")
    if sum(parts) != k:
        raise DomainError(f"parts {parts} do not sum to {k}")
    result = 1
    remaining = k
    for q in parts:
        result *= math.comb(remaining, q)
        remaining -= q
    return result


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0 or p % 3 == 0:
        return False
    d = 5
    while d * d <= p:
        if p % d == 0 or p % (d + 2) == 0:
            return False
        d += 6
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def p_adic_valuation(x: int, p: int) -> int:
    """Largest e with p**e dividing x."""
    _require_prime(p)
    if x == 0:
        raise DomainError("valuation of 0 is undefined")
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula."""
    _require_prime(p)
    if n < 0:
        raise DomainError(f"factorial of negative {n}")
    total = 0
    while n:
        n //= p
        total += n
    return total


def kummer_carries(n: int, k: int, p: int) -> int:
    """Number of carries when adding k and n - k in base p.

    By Kummer's theorem this is v_p(C(n, k)).
    """
    _require_prime(p)
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    a, b = k, n - k
    carry = carries = 0
    while a or b or carry:
        digit_sum = a % p + b % p + carry
        carry = 1 if digit_sum >= p else 0
        carries += carry
        a //= p
        b //= p
    return carries


@dataclass(frozen=True)
class Factorization:
    """A positive integer as ascending ``(prime, exponent)`` pairs."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        factors = tuple((int(p), int(e)) for p, e in self.factors)
        last = 1
        for p, e in factors:
            if p <= last or not is_prime(p):
                raise DomainError(f"bad prime sequence in {factors}")
            if e < 1:
                raise DomainError(f"exponent of {p} must be >= 1")
            last = p
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_exponents(cls, exponents: dict[int, int]) -> "Factorization":
        return cls(tuple(sorted((p, e) for p, e in exponents.items() if e > 0)))

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def divides(self, n: int) -> bool:
        return n % self.value == 0

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "·".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)


def factorize(n: int) -> Factorization:
    """Trial-division factorization with a 2/3 wheel."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    exponents: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            exponents[p] = exponents.get(p, 0) + 1
            n //= p
    d, step = 5, 2
    while d * d <= n:
        while n % d == 0:
            exponents[d] = exponents.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    if n > 1:
        exponents[n] = exponents.get(n, 0) + 1
    return Factorization.from_exponents(exponents)


def factorize_smooth(n: int, bound: int) -> Factorization:
    """Factor n over the primes <= bound.

    A leftover cofactor means n has a prime factor the caller has proven
    impossible, so it raises :class:`ArithmeticIntegrityError` instead of
    factoring further.
    """
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    exponents = {}
    for p in primes_up_to(bound):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            exponents[p] = e
    if n != 1:
        raise ArithmeticIntegrityError(f"cofactor {n} has a prime factor above {bound}")
    return Factorization.from_exponents(exponents)


def run_product_gcd(j: int, nu: int) -> int:
    """gcd((j-nu+1)...j, (j+1)...(j+nu))."""
    if not 1 <= nu <= j:
        raise DomainError(f"need 1 <= nu <= j, got nu={nu}, j={j}")
    lower = math.prod(range(j - nu + 1, j + 1))
    upper = math.prod(range(j + 1, j + nu + 1))
    return math.gcd(lower, upper)


def star_exponent(nu: int, p: int) -> int:
    """Upper bound on v_p(run_product_gcd(j, nu)) over all j."""
    total = 0
    pb = p
    while pb <= 2 * nu:
        if pb <= nu:
            total += -(-nu // pb)
        else:
            total += -(-2 * nu // pb) - 1
        pb *= p
    return total


def star_bound(nu: int) -> Factorization:
    """Per-prime bound on the run-product gcd for fixed nu, as a factorization."""
    if nu < 1:
        raise DomainError(f"star_bound needs nu >= 1, got {nu}")
    return Factorization.from_exponents({p: star_exponent(nu, p) for p in primes_up_to(2 * nu)})


def star_attainment(nu: int, p: int, j_max: int) -> int | None:
    """Smallest j <= j_max at which v_p(run_product_gcd(j, nu)) reaches the bound.

    Best effort only: no bound on where equality first happens is known,
    so ``None`` means "not found in range", not "never attained".
    """
    target = star_exponent(nu, p)
    for j in range(nu, j_max + 1):
        g = run_product_gcd(j, nu)
        if p_adic_valuation(g, p) == target:
            return j
    return None


def lcm_of(values: Iterable[int]) -> int:
    result = 1
    for v in values:
        result = math.lcm(result, v)
    return result


def format_rational(x: Fraction) -> str:
    """``num/den``, or just ``num`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
