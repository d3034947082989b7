"""Evaluators for the coefficients h_{m,k}(n) of higher-level half Appell sums.

The series H_{m,k}(q) = sum_{n>=1} (-1)^{n-1} q^{k*C(n,2)+m*n} / (1-q^n),
for m >= 0 and odd k >= 1, has three independent evaluation routes:

* ``h_series_direct``   - expand the defining sum term by term;
* ``h_series_identity`` - the divisor double sum, adding q^{j*l} for every
  l >= 1 and every integer j in an l-dependent window;
* ``h_divisor``         - count divisors l of n whose cofactor j = n/l lies
  in that window.

For (m, k) = (1, 1) the classical j,r double-sum form is available as
``h_series_legacy``.  ``doubling_difference`` decomposes h(2^{r+1} n) -
h(2^r n) for odd n into two explicit divisor counts.

Everything is computed in exact integer arithmetic.  The window condition
also has a radical form u_{m,k}(n) < 2*k*l <= 2*u_{m,k}(n) with
u_{m,k}(n) = sqrt(2kn + (m - k/2)^2) - (m - k/2); floating square roots
misclassify boundary divisors (u_{1,1}(6) is exactly 3), so comparisons
against u are cleared of radicals by sign-checked squaring instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import EvenInput, InvalidParams
from .series import TruncSeries


@dataclass(frozen=True)
class Params:
    """Validated parameter pair: m >= 0 and odd k >= 1."""

    m: int
    k: int

    def __post_init__(self):
        if self.m < 0:
            raise InvalidParams(f"m must be >= 0, got {self.m}")
        if self.k < 1 or self.k % 2 == 0:
            raise InvalidParams(f"k must be odd and >= 1, got {self.k}")


@dataclass(frozen=True)
class WindowBounds:
    """The integer j-window attached to a divisor l.

    ``lo2`` is twice the inclusive lower bound (the true bound m+k(l-1)/2 is
    a half-integer), ``hi`` the exclusive upper bound: a cofactor j is
    admissible iff 2*j >= lo2 and j < hi.
    """

    params: Params
    ell: int
    lo2: int
    hi: int

    @classmethod
    def of(cls, p: Params, ell: int) -> "WindowBounds":
        if ell < 1:
            raise InvalidParams(f"ell must be >= 1, got {ell}")
        return cls(p, ell, 2 * p.m + p.k * (ell - 1), 2 * p.m + p.k * (2 * ell - 1))

    def contains(self, j: int) -> bool:
        return 2 * j >= self.lo2 and j < self.hi

    def j_min(self) -> int:
        return (self.lo2 + 1) // 2


def window_contains(p: Params, ell: int, j: int) -> bool:
    """True iff the pair (j, ell) contributes q^{j*ell} to H_{m,k}."""
    return WindowBounds.of(p, ell).contains(j)


def u_less_than(p: Params, x: int, t: int) -> bool:
    """Exact test u_{m,k}(x) < t for integers x >= 1 and t >= 1.

    With c = 2m - k the condition reads sqrt(8kx + c^2) < 2t + c; the
    radicand is positive for x >= 1, so the comparison may be squared once
    the right side is known positive.
    """
    c = 2 * p.m - p.k
    rhs = 2 * t + c
    if rhs <= 0:
        return False
    return 8 * p.k * x + c * c < rhs * rhs


def divisor_in_uwindow(p: Params, n: int, ell: int) -> bool:
    """The radical-form window test u < 2*k*ell <= 2*u, radical-free.

    Equivalent to ``window_contains(p, ell, n // ell)`` for divisors ell of
    n; the equivalence is asserted by tests rather than assumed.
    """
    t = p.k * ell
    return u_less_than(p, n, 2 * t) and not u_less_than(p, n, t)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def h_divisor(p: Params, n: int) -> int:
    """h_{m,k}(n) as a restricted divisor count, by trial division.

    n = 0 is the l = 1, j = 0 cell of the double sum: present exactly when
    m = 0.  Single queries cost O(sqrt(n)); bulk queries belong in the
    table builder.
    """
    if n < 0:
        raise InvalidParams(f"n must be >= 0, got {n}")
    if n == 0:
        return 1 if p.m == 0 else 0
    count = 0
    for ell in _divisors(n):
        if window_contains(p, ell, n // ell):
            count += 1
    return count


def divisors_from_factors(factors: dict[int, int]) -> list[int]:
    """All divisors of prod p^e, ascending."""
    divs = [1]
    for prime, exp in factors.items():
        divs = [d * prime**i for d in divs for i in range(exp + 1)]
    return sorted(divs)


def h_from_factors(p: Params, factors: dict[int, int]) -> int:
    """h_{m,k}(n) for n given by its prime factorization.

    Same divisor-window count as ``h_divisor`` but enumerating divisors from
    the factorization, which keeps witness verification exact for n far
    beyond trial-division range (n ~ 10^15 in the paired-prime family).
    """
    n = 1
    for prime, exp in factors.items():
        if prime < 2 or exp < 0:
            raise InvalidParams(f"bad factorization entry {prime}^{exp}")
        n *= prime**exp
    count = 0
    for ell in divisors_from_factors(factors):
        if window_contains(p, ell, n // ell):
            count += 1
    return count


def h_series_direct(p: Params, order: int) -> TruncSeries:
    """H_{m,k} to the given order from the defining alternating sum.

    Outer terms are summed while k*n(n-1)/2 + m*n <= order, each expanded
    as a truncated geometric series.
    """
    c = [0] * (order + 1)
    n = 1
    while True:
        e = p.k * n * (n - 1) // 2 + p.m * n
        if e > order:
            break
        s = 1 if n % 2 == 1 else -1
        for x in range(e, order + 1, n):
            c[x] += s
        n += 1
    return TruncSeries(order, tuple(c))


def h_series_identity(p: Params, order: int) -> TruncSeries:
    """H_{m,k} to the given order from the divisor-window double sum."""
    c = [0] * (order + 1)
    ell = 1
    while True:
        w = WindowBounds.of(p, ell)
        jmin = w.j_min()
        if jmin * ell > order:
            break
        for j in range(jmin, w.hi):
            e = j * ell
            if e > order:
                break
            c[e] += 1
        ell += 1
    return TruncSeries(order, tuple(c))


def h_series_legacy(order: int) -> TruncSeries:
    """H_{1,1} to the given order via the classical j,r double sum.

    H_{1,1}(q) = sum over j >= 1, 0 <= r < j of q^{j(j+r)} (1 + q^j).
    """
    c = [0] * (order + 1)
    j = 1
    while j * j <= order:
        for r in range(j):
            e = j * (j + r)
            if e > order:
                break
            c[e] += 1
            if e + j <= order:
                c[e + j] += 1
        j += 1
    return TruncSeries(order, tuple(c))


def doubling_difference(p: Params, n: int, r: int) -> tuple[int, int]:
    """The two divisor counts whose sum is h(2^{r+1} n) - h(2^r n), n odd.

    Set A counts divisors l of n with
        2^{-1-r} u(2^{r+1} n) < 2kl <= 2^{-r} u(2^r n),
    set B those with
        2 u(2^r n) < 2kl <= 2 u(2^{r+1} n).
    Both inequalities are cleared of the power-of-two denominators and then
    of radicals, so the counts are exact.
    """
    if n < 1 or n % 2 == 0:
        raise EvenInput(f"n must be odd and >= 1, got {n}")
    if r < 0:
        raise InvalidParams(f"r must be >= 0, got {r}")
    x_lo = (1 << r) * n
    x_hi = (1 << (r + 1)) * n
    count_a = 0
    count_b = 0
    for ell in _divisors(n):
        t = p.k * ell
        # A: u(x_hi) < 2^{r+2} k l  and  2^{r+1} k l <= u(x_lo)
        if u_less_than(p, x_hi, (1 << (r + 2)) * t) and not u_less_than(
            p, x_lo, (1 << (r + 1)) * t
        ):
            count_a += 1
        # B: u(x_lo) < k l  and  k l <= u(x_hi)
        if u_less_than(p, x_lo, t) and not u_less_than(p, x_hi, t):
            count_b += 1
    return count_a, count_b
