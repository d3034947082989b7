"""Prime-family witnesses: explicit n with a predicted value of h_{m,k}(n).

Three constructions, each valid under exact integer preconditions:

* ``lemma22_witness``: n = k*p with prime p >= 3k^2 and k*p >= 10|k - 2m|
  gives h = 0;
* ``lemma23_witness``: n = k*p^2 with prime p >= 2k and k*p >= 10|k - 2m|
  gives h = 1;
* ``lemma24_witness``: n = k*p^t*q^t with primes q > p >= 2k,
  k*p >= 10|k - 2m| and (q/p)^t <= 1.8432 gives h = 1 + t.

The ratio bound is the squared form of (q/p)^{t/2} <= 0.96*sqrt(2) and is
checked exactly as 10000*q^t <= 18432*p^t; the construction is sharp enough
that floating slop could admit false witnesses.

``witnesses_for_value`` realizes any target value: the constructions cover
targets 0 and 1 outright and target >= 2 via prime pairs, with a table scan
filling in whatever the constructions cannot reach inside the budget.
Search order is smallest n first, so output is reproducible.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .coeffs import Params, h_divisor, h_from_factors
from .errors import BudgetExhausted, InvalidParams, PreconditionUnmet
from .sieve import HTable, build_table

LEMMA22 = "Lemma22"
LEMMA23 = "Lemma23"
LEMMA24 = "Lemma24"
SEARCH = "Search"


@dataclass(frozen=True)
class WitnessReport:
    tag: str
    params: Params
    p: int | None
    q: int | None
    t: int | None
    n: int
    predicted: int
    verified: int

    @property
    def passed(self) -> bool:
        return self.predicted == self.verified

    def to_json_dict(self) -> dict:
        return {
            "tag": self.tag,
            "m": self.params.m,
            "k": self.params.k,
            "p": self.p,
            "q": self.q,
            "t": self.t,
            "n": self.n,
            "predicted": self.predicted,
            "verified": self.verified,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def primes_in(lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi], ascending (empty when the range is)."""
    if hi < 2 or lo > hi:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(hi) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(range(p * p, hi + 1, p))
    return [n for n in range(max(lo, 2), hi + 1) if sieve[n]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _factor_small(k: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= k:
        while k % d == 0:
            factors[d] = factors.get(d, 0) + 1
            k //= d
        d += 1
    if k > 1:
        factors[k] = factors.get(k, 0) + 1
    return factors


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionUnmet(message)


def _verify(p0: Params, extra: dict[int, int]) -> tuple[int, int]:
    """n and h(n) for n = k * prod(extra), via factored divisor enumeration."""
    factors = _factor_small(p0.k)
    for prime, exp in extra.items():
        assert prime not in factors, "witness primes must be coprime to k"
        factors[prime] = exp
    n = 1
    for prime, exp in factors.items():
        n *= prime**exp
    return n, h_from_factors(p0, factors)


def lemma22_witness(p0: Params, p: int) -> WitnessReport:
    """Witness n = k*p with predicted value 0."""
    _require(is_prime(p), f"p = {p} is not prime")
    _require(p >= 3 * p0.k**2, f"need p >= 3k^2 = {3 * p0.k**2}, got p = {p}")
    bound = 10 * abs(p0.k - 2 * p0.m)
    _require(p0.k * p >= bound, f"need k*p >= 10|k-2m| = {bound}, got k*p = {p0.k * p}")
    n, verified = _verify(p0, {p: 1})
    return WitnessReport(LEMMA22, p0, p, None, None, n, 0, verified)


def lemma23_witness(p0: Params, p: int) -> WitnessReport:
    """Witness n = k*p^2 with predicted value 1."""
    _require(is_prime(p), f"p = {p} is not prime")
    _require(p >= 2 * p0.k, f"need p >= 2k = {2 * p0.k}, got p = {p}")
    bound = 10 * abs(p0.k - 2 * p0.m)
    _require(p0.k * p >= bound, f"need k*p >= 10|k-2m| = {bound}, got k*p = {p0.k * p}")
    n, verified = _verify(p0, {p: 2})
    return WitnessReport(LEMMA23, p0, p, None, None, n, 1, verified)


def _ratio_ok(p: int, q: int, t: int) -> bool:
    return 10_000 * q**t <= 18_432 * p**t


def lemma24_witness(p0: Params, p: int, q: int, t: int) -> WitnessReport:
    """Witness n = k*p^t*q^t with predicted value 1 + t."""
    _require(t >= 1, f"need t >= 1, got {t}")
    _require(is_prime(p), f"p = {p} is not prime")
    _require(is_prime(q), f"q = {q} is not prime")
    _require(q > p, f"need q > p, got p = {p}, q = {q}")
    _require(p >= 2 * p0.k, f"need p >= 2k = {2 * p0.k}, got p = {p}")
    bound = 10 * abs(p0.k - 2 * p0.m)
    _require(p0.k * p >= bound, f"need k*p >= 10|k-2m| = {bound}, got k*p = {p0.k * p}")
    _require(
        _ratio_ok(p, q, t),
        f"ratio bound fails: 10000*{q}^{t} > 18432*{p}^{t}",
    )
    n, verified = _verify(p0, {p: t, q: t})
    return WitnessReport(LEMMA24, p0, p, q, t, n, 1 + t, verified)


def _admissible_primes(p0: Params, lemma: str, n_cap: int, want: int) -> list[int]:
    """First ``want`` primes satisfying the lemma bounds, with n <= n_cap."""
    if lemma == LEMMA22:
        p_min = 3 * p0.k**2
        p_cap = n_cap // p0.k
    else:
        p_min = 2 * p0.k
        p_cap = math.isqrt(n_cap // p0.k)
    bound = 10 * abs(p0.k - 2 * p0.m)
    p_min = max(p_min, -(-bound // p0.k), 2)
    out: list[int] = []
    lo, window = p_min, max(1000, 20 * want)
    while len(out) < want and lo <= p_cap:
        hi = min(lo + window, p_cap)
        out.extend(primes_in(lo, hi))
        lo = hi + 1
        window *= 2
    return out[:want]


def _lemma24_candidates(p0: Params, t: int, n_cap: int) -> list[tuple[int, int, int]]:
    """All admissible (n, p, q) with n = k*p^t*q^t <= n_cap, sorted by n."""
    pq_cap = n_cap // p0.k
    if pq_cap < 1:
        return []
    # p^t * q^t <= pq_cap and q > p  =>  p^{2t} < pq_cap.
    p_hi = math.isqrt(math.isqrt(pq_cap) if t == 2 else int(round(pq_cap ** (1 / t))))
    while (p_hi + 1) ** (2 * t) <= pq_cap:
        p_hi += 1
    while p_hi >= 2 and p_hi ** (2 * t) > pq_cap:
        p_hi -= 1
    bound = 10 * abs(p0.k - 2 * p0.m)
    p_min = max(2 * p0.k, -(-bound // p0.k), 2)
    out = []
    for p in primes_in(p_min, p_hi):
        q_hi = (18_432 * p**t) // 10_000
        q_hi = min(q_hi, _int_root(pq_cap // p**t, t))
        for q in primes_in(p + 1, q_hi):
            if _ratio_ok(p, q, t) and p0.k * (p * q) ** t <= n_cap:
                out.append((p0.k * (p * q) ** t, p, q))
    out.sort()
    return out


def _int_root(v: int, t: int) -> int:
    """floor(v ** (1/t)) computed exactly."""
    if v < 0:
        return 0
    if t == 1:
        return v
    r = int(round(v ** (1.0 / t)))
    while r > 0 and r**t > v:
        r -= 1
    while (r + 1) ** t <= v:
        r += 1
    return r


def witnesses_for_value(
    p0: Params,
    target: int,
    count: int,
    budget: int,
    table: HTable | None = None,
) -> list[WitnessReport]:
    """Up to ``count`` distinct witnesses n <= budget with h(n) == target.

    Lemma constructions are used first (smallest n first); a table scan
    over [0, budget] fills the remainder, each hit re-verified by the
    independent trial-division count.  Raises ``BudgetExhausted`` carrying
    the partial list if fewer than ``count`` witnesses exist in range.
    """
    if target < 0 or count < 0 or budget < 0:
        raise InvalidParams("target, count and budget must all be >= 0")
    reports: list[WitnessReport] = []
    seen: set[int] = set()

    def take(report: WitnessReport) -> None:
        if report.n not in seen and report.passed:
            seen.add(report.n)
            reports.append(report)

    if target == 0:
        for p in _admissible_primes(p0, LEMMA22, budget, count):
            take(lemma22_witness(p0, p))
    elif target == 1:
        for p in _admissible_primes(p0, LEMMA23, budget, count):
            take(lemma23_witness(p0, p))
    else:
        t = target - 1
        for _, p, q in _lemma24_candidates(p0, t, budget):
            if len(reports) >= count:
                break
            take(lemma24_witness(p0, p, q, t))

    if len(reports) < count:
        if table is None or table.limit < budget:
            table = build_table(p0, budget)
        hits = np.nonzero(table.counts[: budget + 1] == target)[0]
        for n in hits:
            if len(reports) >= count:
                break
            n = int(n)
            if n in seen:
                continue
            take(WitnessReport(SEARCH, p0, None, None, None, n, target, h_divisor(p0, n)))

    if len(reports) < count:
        raise BudgetExhausted(
            f"found {len(reports)} of {count} witnesses for value {target} "
            f"within budget {budget}",
            reports,
        )
    return reports
