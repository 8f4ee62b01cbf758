"""Exact number-theoretic kernels.

Divisor sums, representation numbers, Kronecker symbols, Dedekind sums,
and evaluation of the multiplier systems used by the modular form
constructors.  Everything here is pure and works in exact arithmetic
(arbitrary precision integers, Fraction rationals); only multiplier
values are complex numbers of modulus one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class IntegerMatrix2:
    """A 2x2 integer matrix of determinant one."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix must have determinant 1")

    def __matmul__(self, other: "IntegerMatrix2") -> "IntegerMatrix2":
        return IntegerMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def act(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def automorphy(self, tau: complex) -> complex:
        return self.c * tau + self.d


@dataclass(frozen=True)
class MultiplierSystem:
    """Identifier for one of the supported multiplier systems.

    kind is one of "theta_power", "eta", "dirichlet_extension", "trivial".
    For theta_power the field k holds the power of the theta multiplier;
    for dirichlet_extension, level is an odd prime and fricke_sign the
    declared value of the character on the Fricke involution.
    """

    kind: str
    k: int = 1
    level: int = 1
    fricke_sign: complex = 1

    def __post_init__(self):
        if self.kind not in ("theta_power", "eta", "dirichlet_extension", "trivial"):
            raise ValueError("unknown multiplier kind: %r" % (self.kind,))
        if self.kind == "theta_power":
            if self.k < 1:
                raise ValueError("theta_power needs k >= 1")
            if self.level % 4 != 0:
                raise ValueError("theta_power multiplier lives on level divisible by 4")


def theta_power(k: int) -> MultiplierSystem:
    return MultiplierSystem("theta_power", k=k, level=4)


def eta_multiplier() -> MultiplierSystem:
    return MultiplierSystem("eta", level=1)


def dirichlet_extension(N: int, fricke_sign: complex) -> MultiplierSystem:
    if N < 3 or not _is_prime(N) or N % 2 == 0:
        raise ValueError("dirichlet_extension needs an odd prime level")
    return MultiplierSystem("dirichlet_extension", level=N, fricke_sign=fricke_sign)


def trivial_multiplier(level: int = 1) -> MultiplierSystem:
    return MultiplierSystem("trivial", level=level)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def divisor_sigma(s: int, m: int) -> int:
    """Sum of d**s over the positive divisors d of m."""
    if m < 1:
        raise ValueError("divisor_sigma needs m >= 1")
    total = 0
    d = 1
    while d * d <= m:
        if m % d == 0:
            total += d**s
            if d != m // d:
                total += (m // d) ** s
        d += 1
    return total


def rep_numbers(k: int, limit: int) -> list[int]:
    """Representation numbers r_k(0..limit) for sums of k integer squares.

    Computed by k-fold convolution of the one-dimensional sequence
    r_1(0) = 1, r_1(n^2) = 2.
    """
    if k < 1:
        raise ValueError("rep_numbers needs k >= 1")
    r1 = [0] * (limit + 1)
    r1[0] = 1
    n = 1
    while n * n <= limit:
        r1[n * n] = 2
        n += 1
    out = r1[:]
    for _ in range(k - 1):
        new = [0] * (limit + 1)
        for i, ci in enumerate(out):
            if ci == 0:
                continue
            n = 0
            while i + n * n <= limit:
                new[i + n * n] += ci * (2 if n else 1)
                n += 1
        out = new
    return out


def kronecker_symbol(c: int, d: int) -> int:
    """Extended Kronecker symbol (c/d).

    Conventions: (c/0) = 1 iff c = +-1 else 0; (c/-1) = 1 for c >= 0 and
    -1 for c < 0; (c/2) = 0 for even c, 1 for c = +-1 mod 8 and -1 for
    c = +-3 mod 8.
    """
    if d == 0:
        return 1 if c in (1, -1) else 0
    result = 1
    if d < 0:
        d = -d
        if c < 0:
            result = -result
    while d % 2 == 0:
        d //= 2
        if c % 2 == 0:
            return 0
        if c % 8 in (3, 5):
            result = -result
    # d is now odd and positive; run the Jacobi symbol with reciprocity
    c %= d
    while c != 0:
        while c % 2 == 0:
            c //= 2
            if d % 8 in (3, 5):
                result = -result
        c, d = d, c
        if c % 4 == 3 and d % 4 == 3:
            result = -result
        c %= d
    return result if d == 1 else 0


def dedekind_sum(d: int, c: int) -> Fraction:
    """The Dedekind sum s(d, c) as an exact rational, c > 0."""
    if c <= 0:
        raise ValueError("dedekind_sum needs c > 0")
    total = Fraction(0)
    for n in range(1, c):
        x = Fraction(d * n, c)
        saw = x - math.floor(x) - Fraction(1, 2)
        total += Fraction(n, c) * saw
    return total


def _epsilon_d(d: int) -> complex:
    # the standard quarter phase attached to an odd integer d
    if d % 4 == 1:
        return 1
    if d % 4 == 3:
        return 1j
    raise ValueError("epsilon_d needs odd d")


def theta_multiplier_value(M: IntegerMatrix2) -> complex:
    """Theta multiplier (c/d) * eps_d^{-1} on the level four group."""
    if M.c % 4 != 0:
        raise ValueError("theta multiplier needs c divisible by 4")
    return kronecker_symbol(M.c, M.d) / _epsilon_d(M.d)


def eta_multiplier_value(M: IntegerMatrix2) -> complex:
    """Eta multiplier on the full modular group, via Dedekind sums."""
    a, b, c, d = M.a, M.b, M.c, M.d
    if c == 0:
        if d == 1:
            return cmath.exp(1j * math.pi * b / 12)
        # c = 0, d = -1: pull out the central element, which costs -i
        return -1j * cmath.exp(-1j * math.pi * b / 12)
    if c < 0:
        return 1j * eta_multiplier_value(IntegerMatrix2(-a, -b, -c, -d))
    phase = Fraction(a + d, 12 * c) - dedekind_sum(d, c) - Fraction(1, 4)
    return cmath.exp(1j * math.pi * float(phase))


def evaluate_multiplier(v: MultiplierSystem, M: IntegerMatrix2) -> complex:
    """Evaluate the multiplier system v on a group element M.

    The matrix must lie in the domain group: level-N lower-left entry for
    theta_power and dirichlet_extension, anything unimodular for eta and
    trivial.  The Fricke involution is not an integer matrix; its value
    is exposed separately via fricke_value.
    """
    if v.kind == "trivial":
        return 1
    if v.kind == "eta":
        return eta_multiplier_value(M)
    if M.c % v.level != 0:
        raise ValueError("matrix is not in the level %d group" % v.level)
    if v.kind == "theta_power":
        return theta_multiplier_value(M) ** v.k
    # dirichlet_extension: the Legendre character of the lower right entry
    return kronecker_symbol(M.d, v.level)


def fricke_value(v: MultiplierSystem) -> complex:
    """Value of v on the Fricke involution of its level.

    For theta_power the generator value is exp(-i pi/4) per theta factor,
    fixed by the square root identity relating sqrt(-i tau) and sqrt(tau).
    """
    if v.kind == "theta_power":
        return cmath.exp(-1j * math.pi * v.k / 4)
    if v.kind == "dirichlet_extension":
        return v.fricke_sign
    if v.kind == "trivial":
        return 1
    raise ValueError("Fricke value is not defined for multiplier %r" % (v.kind,))


def dim_theta_space(k: Fraction) -> int:
    """Dimension of the weight-k space attached to the theta multiplier.

    Only half-integral k is admitted.
    """
    k = Fraction(k)
    if (2 * k).denominator != 1 or (2 * k).numerator % 2 == 0:
        raise ValueError("dim_theta_space needs half-integral weight")
    if k < 0:
        return 0
    return 1 + math.floor(k / 2)
