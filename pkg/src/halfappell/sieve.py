"""Bulk tabulation of h_{m,k}(n) and divisor-interval counting.

``build_table`` fills a dense array counts[0..x] with h_{m,k}(n) in
near-linear total work by walking the divisor double sum: for each l >= 1
the admissible cofactors j form a contiguous window, so the exponents j*l
are an arithmetic progression that can be bumped with one strided slice.

The table is built in contiguous segments.  Segments are independent (each
l's progression is clamped to the segment), which bounds memory for large x
and lets segments run on worker threads; the result is bit-identical to the
sequential build because workers write disjoint slices.

``ford_H`` counts integers up to x with a divisor in the rational interval
(y, z]; endpoints stay exact rationals so half-integer interval ends are
never misclassified.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import floor

import numpy as np

from .coeffs import Params, WindowBounds
from .errors import (
    CapacityExceeded,
    CounterOverflow,
    Error,
    InvalidInterval,
    InvalidParams,
)

_CAP_ENV = "HALFAPPELL_TABLE_CAP"
_DEFAULT_CAP = 200_000_000
_SEGMENT = 1 << 20

# h(n) is the number of divisors of n in a window of fixed ratio 2, so it is
# bounded by d(n), which stays far below 2^16 - 1 for any n within the
# capacity bound; a saturated counter therefore always signals corruption.
_SATURATED = np.iinfo(np.uint16).max


def table_capacity() -> int:
    raw = os.environ.get(_CAP_ENV)
    if raw is None:
        return _DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise CapacityExceeded(f"{_CAP_ENV} must be an integer, got {raw!r}") from exc
    return cap


@dataclass
class HTable:
    """Dense table counts[n] = h_{m,k}(n) for 0 <= n <= limit."""

    params: Params
    limit: int
    counts: np.ndarray

    def write_csv(self, fh) -> None:
        """Lines "n,h", ascending n.  ``fh`` is a binary stream."""
        step = 1 << 18
        for lo in range(0, self.limit + 1, step):
            hi = min(lo + step, self.limit + 1)
            chunk = self.counts[lo:hi].tolist()
            fh.write(
                ("\n".join(map("%d,%d".__mod__, zip(range(lo, hi), chunk))) + "\n").encode()
            )

    def to_bytes(self) -> bytes:
        """Raw little-endian uint16 dump of the counters."""
        return self.counts.astype("<u2", copy=False).tobytes()


@dataclass
class CountReport:
    """Value-distribution histogram: hist[l] = #{0 <= n <= limit: h(n) = l}."""

    params: Params
    limit: int
    hist: dict[int, int]
    total: int

    def __post_init__(self):
        if self.total != self.limit + 1:
            raise Error(f"histogram sums to {self.total}, expected {self.limit + 1}")

    def to_csv(self) -> str:
        return "\n".join(f"{ell},{count}" for ell, count in sorted(self.hist.items()))

    def to_json_dict(self) -> dict:
        return {
            "m": self.params.m,
            "k": self.params.k,
            "limit": self.limit,
            "counts": {str(ell): c for ell, c in sorted(self.hist.items())},
            "total": self.total,
        }


def _fill_segment(p: Params, seg: np.ndarray, lo: int, hi: int) -> None:
    """Add every window contribution j*l in [lo, hi] to seg (offset lo)."""
    m, k = p.m, p.k
    ell = 1
    while True:
        w = WindowBounds.of(p, ell)
        jmin = w.j_min()
        if jmin * ell > hi:
            break
        ja = max(jmin, -(-lo // ell))
        jb = min(w.hi - 1, hi // ell)
        if ja <= jb:
            seg[ja * ell - lo : jb * ell - lo + 1 : ell] += 1
        ell += 1
    if seg.max() >= _SATURATED:
        raise CounterOverflow("16-bit counter saturated; table aborted")


def build_table(
    p: Params, x: int, threads: int = 1, segment_size: int = _SEGMENT
) -> HTable:
    """Tabulate h_{m,k}(n) for all 0 <= n <= x."""
    if x < 0:
        raise InvalidParams(f"limit must be >= 0, got {x}")
    cap = table_capacity()
    if x > cap:
        raise CapacityExceeded(f"limit {x} exceeds capacity {cap} (set {_CAP_ENV})")
    counts = np.zeros(x + 1, dtype=np.uint16)
    bounds = [(lo, min(lo + segment_size - 1, x)) for lo in range(0, x + 1, segment_size)]
    if threads <= 1 or len(bounds) <= 1:
        for lo, hi in bounds:
            _fill_segment(p, counts[lo : hi + 1], lo, hi)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_fill_segment, p, counts[lo : hi + 1], lo, hi)
                for lo, hi in bounds
            ]
            for f in futures:
                f.result()
    return HTable(p, x, counts)


def count_values(t: HTable) -> CountReport:
    """Histogram of table values, including the zero class."""
    binned = np.bincount(t.counts)
    hist = {ell: int(c) for ell, c in enumerate(binned) if c}
    return CountReport(t.params, t.limit, hist, int(binned.sum()))


def ford_H(x: int, y, z) -> int:
    """#{1 <= n <= x : some divisor d of n satisfies y < d <= z}.

    ``y`` and ``z`` may be ints, Fractions, or "p/q" strings; comparisons
    against the half-open interval are exact.
    """
    y = Fraction(y)
    z = Fraction(z)
    if y < 0 or y > z:
        raise InvalidInterval(f"need 0 <= y <= z, got ({y}, {z})")
    if x < 0:
        raise InvalidParams(f"limit must be >= 0, got {x}")
    d_lo = max(1, floor(y) + 1)
    d_hi = min(floor(z), x)
    if d_lo > d_hi:
        return 0
    marked = np.zeros(x + 1, dtype=bool)
    for d in range(d_lo, d_hi + 1):
        marked[d::d] = True
    return int(np.count_nonzero(marked))


def zero_density_scan(p: Params, checkpoints: list[int]) -> list[tuple[int, int, float]]:
    """Empirical (x, S_{m,k}(0;x), S/x) rows from a single table pass.

    Only self-consistency and regression goldens are claimed for these
    densities; the true asymptotic is too slowly varying to be observed at
    table scale.
    """
    if not checkpoints:
        return []
    if sorted(checkpoints) != list(checkpoints):
        raise InvalidParams("checkpoints must be ascending")
    table = build_table(p, checkpoints[-1])
    out = []
    for x in checkpoints:
        zeros = int(np.count_nonzero(table.counts[: x + 1] == 0))
        ratio = zeros / x if x > 0 else float(zeros)
        out.append((x, zeros, ratio))
    return out
