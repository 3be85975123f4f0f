"""Congruences W_n(nu; 2k) = n modulo primes and prime squares.

The moment is computed exactly and reduced once; no term-by-term modular
shortcut is taken.  :func:`scan_residues` tabulates residues outside the
proven cases without judging them.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NonIntegralResidue
from .moments import WalkParams, moment_direct, moment_matrix
from .numtheory import format_rational, is_prime


def rational_residue(x: Fraction, m: int) -> int:
    """num * den^-1 mod m, in [0, m)."""
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}")
    x = Fraction(x)
    if math.gcd(x.denominator, m) != 1:
        raise NonIntegralResidue(x, m)
    return x.numerator * pow(x.denominator, -1, m) % m


class CaseKind(enum.Enum):
    PRIME_K = "PrimeK"
    PRIME_K_PLUS_NU = "PrimeKPlusNu"
    PRIME_SQUARE = "PrimeSquare"
    CRT_PRODUCT = "CrtProduct"


@dataclass(frozen=True)
class CongruenceCase:
    """A parameter choice covered by one of the proven congruences.

    Side conditions are checked on construction:

    ========================  ===================================  ===========
    kind                      condition                            modulus
    ========================  ===================================  ===========
    ``PRIME_K``               k prime, 2 nu < k                    k
    ``PRIME_K_PLUS_NU``       k + nu prime, nu < k + nu, k >= 1    k + nu
    ``PRIME_SQUARE``          k = p^2 with p prime, nu = 0         k
    ``CRT_PRODUCT``           k, k + nu prime, 1 <= nu, 2 nu < k   k (k + nu)
    ========================  ===================================  ===========
    """

    kind: CaseKind
    nu: int
    k: int

    def __post_init__(self):
        nu, k = self.nu, self.k
        if nu < 0 or k < 1:
            raise DomainError(f"invalid parameters nu={nu}, k={k}")
        kind = self.kind
        if kind is CaseKind.PRIME_K:
            ok = is_prime(k) and 2 * nu < k
        elif kind is CaseKind.PRIME_K_PLUS_NU:
            ok = is_prime(k + nu) and nu < k + nu
        elif kind is CaseKind.PRIME_SQUARE:
            p = math.isqrt(k)
            ok = nu == 0 and p * p == k and is_prime(p)
        else:
            ok = nu >= 1 and is_prime(k) and is_prime(k + nu) and 2 * nu < k
        if not ok:
            raise DomainError(f"{kind.value} hypotheses fail for nu={nu}, k={k}")

    @property
    def p(self) -> int:
        if self.kind is CaseKind.PRIME_K_PLUS_NU:
            return self.k + self.nu
        if self.kind is CaseKind.PRIME_SQUARE:
            return math.isqrt(self.k)
        return self.k

    @property
    def modulus(self) -> int:
        if self.kind is CaseKind.PRIME_SQUARE:
            return self.k
        if self.kind is CaseKind.CRT_PRODUCT:
            return self.k * (self.k + self.nu)
        return self.p

    def params(self, n: int) -> WalkParams:
        return WalkParams(self.nu, n, self.k)


def matching_case(nu: int, k: int, modulus: int) -> CongruenceCase | None:
    """The proven case whose modulus is ``modulus`` for these parameters, if any."""
    for kind in CaseKind:
        try:
            case = CongruenceCase(kind, nu, k)
        except DomainError:
            continue
        if case.modulus == modulus:
            return case
    return None


@dataclass(frozen=True)
class ResidueReport:
    """Residue of one moment.

    ``passed`` is ``None`` in exploration mode (no proven case applies) and
    ``residue`` is ``None`` when the moment has no residue.
    """

    nu: int
    k: int
    n: int
    modulus: int
    moment: Fraction
    residue: int | None
    expected: int
    passed: bool | None
    case: CongruenceCase | None = None
    error: str | None = None

    @property
    def exploratory(self) -> bool:
        return self.case is None


def _moment(nu: int, n: int, k: int, method: str) -> Fraction:
    if method == "direct":
        return moment_direct(nu, n, k)
    if method == "matrix":
        return moment_matrix(nu, n, k)
    raise DomainError(f"unknown method {method!r}")


def check_theorem_mod(case: CongruenceCase, n: int, method: str = "direct") -> ResidueReport:
    """Reduce W_n exactly and compare to n mod the case modulus.

    :class:`NonIntegralResidue` propagates: a moment that is not integral
    at the modulus contradicts the congruence outright.
    """
    case.params(n)
    value = _moment(case.nu, n, case.k, method)
    residue = rational_residue(value, case.modulus)
    expected = n % case.modulus
    return ResidueReport(
        case.nu, case.k, n, case.modulus, value, residue, expected, residue == expected, case
    )


def scan_residues(
    nu: int, k: int, modulus: int, n_max: int, method: str = "direct"
) -> list[ResidueReport]:
    """Residues of W_n(nu; 2k) mod ``modulus`` for n = 1..n_max.

    When the parameters fall under a proven case the rows carry a verdict;
    otherwise they are exploratory.  Non-invertible denominators are
    recorded per row.
    """
    WalkParams(nu, 1, k)
    if modulus < 2:
        raise DomainError(f"modulus must be >= 2, got {modulus}")
    case = matching_case(nu, k, modulus)
    reports = []
    for n in range(1, n_max + 1):
        value = _moment(nu, n, k, method)
        expected = n % modulus
        try:
            residue = rational_residue(value, modulus)
        except NonIntegralResidue as exc:
            reports.append(
                ResidueReport(nu, k, n, modulus, value, None, expected, None if case is None else False, case, str(exc))
            )
            continue
        passed = None if case is None else residue == expected
        reports.append(ResidueReport(nu, k, n, modulus, value, residue, expected, passed, case))
    return reports


def residues_csv(reports: list[ResidueReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["nu", "k", "n", "modulus", "moment", "residue", "expected", "pass"])
    for r in reports:
        writer.writerow(
            [
                r.nu,
                r.k,
                r.n,
                r.modulus,
                format_rational(r.moment),
                "" if r.residue is None else r.residue,
                r.expected,
                "" if r.passed is None else str(r.passed).lower(),
            ]
        )
    return buf.getvalue()
