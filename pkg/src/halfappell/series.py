"""Exact truncated power series in q, and bivariate Laurent triangles in z and q.

Coefficients are unbounded Python integers throughout: the series handled
here (reciprocal eta-type products, partition generating functions) have
coefficients that grow super-polynomially, and every identity check in the
package depends on them being exact.

Every value carries its truncation order explicitly.  Binary operations
truncate to the minimum of the operand orders, so series built with
different safety margins can be compared directly.  All values are treated
as immutable; nothing here keeps internal mutable state, so concurrent use
on shared inputs is safe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidExponent, NonUnitConstantTerm


@dataclass(frozen=True)
class TruncSeries:
    """A power series in q known exactly for exponents 0..order."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coeffs length must equal order + 1")

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        return add(self, other)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return add(self, scale(other, -1))

    def __neg__(self) -> "TruncSeries":
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def agrees_with(self, other: "TruncSeries") -> bool:
        """Coefficientwise equality up to the shared (minimum) order."""
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def dump(self) -> str:
        """Debug/golden text format: one line "n:coeff" per exponent."""
        return "\n".join(f"{n}:{c}" for n, c in enumerate(self.coeffs))


def from_coeffs(values, order: int | None = None) -> TruncSeries:
    """Build a series from a coefficient sequence, zero-padded to ``order``."""
    values = list(values)
    if order is None:
        order = len(values) - 1
    if len(values) < order + 1:
        values += [0] * (order + 1 - len(values))
    return TruncSeries(order, tuple(values[: order + 1]))


def zero(order: int) -> TruncSeries:
    return TruncSeries(order, (0,) * (order + 1))


def one(order: int) -> TruncSeries:
    return from_coeffs([1], order)


def monomial(exponent: int, order: int, coeff: int = 1) -> TruncSeries:
    c = [0] * (order + 1)
    if 0 <= exponent <= order:
        c[exponent] = coeff
    return TruncSeries(order, tuple(c))


def add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    n = min(a.order, b.order)
    return TruncSeries(n, tuple(a.coeffs[i] + b.coeffs[i] for i in range(n + 1)))


def scale(a: TruncSeries, c: int) -> TruncSeries:
    return TruncSeries(a.order, tuple(c * x for x in a.coeffs))


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the minimum operand order."""
    n = min(a.order, b.order)
    out = [0] * (n + 1)
    for i in range(n + 1):
        ai = a.coeffs[i]
        if ai:
            bi = b.coeffs
            for j in range(n + 1 - i):
                if bi[j]:
                    out[i + j] += ai * bi[j]
    return TruncSeries(n, tuple(out))


def invert_unit(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse of a series with constant term +1 or -1."""
    a0 = a.coeffs[0]
    if a0 not in (1, -1):
        raise NonUnitConstantTerm(f"constant term must be +1 or -1, got {a0}")
    n = a.order
    b = [0] * (n + 1)
    b[0] = a0
    for r in range(1, n + 1):
        s = 0
        for i in range(1, r + 1):
            if a.coeffs[i]:
                s += a.coeffs[i] * b[r - i]
        b[r] = -a0 * s
    return TruncSeries(n, tuple(b))


def pochhammer(a_exp: int, step: int, order: int) -> TruncSeries:
    """Truncated infinite product (q^a_exp; q^step)_inf.

    Includes every factor (1 - q^{a_exp + j*step}) whose leading exponent is
    at most ``order``; later factors cannot change coefficients below it.
    """
    if a_exp < 1 or step < 1:
        raise InvalidExponent(f"need a_exp >= 1 and step >= 1, got ({a_exp}, {step})")
    c = [0] * (order + 1)
    c[0] = 1
    e = a_exp
    while e <= order:
        for i in range(order, e - 1, -1):
            c[i] -= c[i - e]
        e += step
    return TruncSeries(order, tuple(c))


def dilate(a: TruncSeries, d: int) -> TruncSeries:
    """Substitute q -> q^d, keeping the same truncation order."""
    if d < 1:
        raise InvalidExponent(f"need d >= 1, got {d}")
    c = [0] * (a.order + 1)
    for n in range(a.order // d + 1):
        c[d * n] = a.coeffs[n]
    return TruncSeries(a.order, tuple(c))


# ---------------------------------------------------------------------------
# Bivariate triangles: for each q-exponent n, a sparse map z-exponent -> int.
# Every series built here puts at least one unit of q-degree behind each unit
# of z-degree, so row n only holds z-exponents e with |e| <= n.
# ---------------------------------------------------------------------------


@dataclass
class BivarTriangle:
    """Truncated bivariate expansion: rows[n][e] is the z^e q^n coefficient."""

    order: int
    rows: list[dict[int, int]]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if len(self.rows) != self.order + 1:
            raise ValueError("rows length must equal order + 1")

    def coefficient(self, n: int, e: int) -> int:
        if not 0 <= n <= self.order:
            return 0
        return self.rows[n].get(e, 0)

    def z_slice(self, e: int) -> TruncSeries:
        """The univariate series of z^e coefficients."""
        return TruncSeries(self.order, tuple(r.get(e, 0) for r in self.rows))

    def zrange_ok(self) -> bool:
        return all(
            all(abs(e) <= n for e in row) for n, row in enumerate(self.rows)
        )

    def copy(self) -> "BivarTriangle":
        return BivarTriangle(self.order, [dict(r) for r in self.rows])


def bivar_zero(order: int) -> BivarTriangle:
    return BivarTriangle(order, [{} for _ in range(order + 1)])


def bivar_one(order: int) -> BivarTriangle:
    t = bivar_zero(order)
    t.rows[0][0] = 1
    return t


def bivar_from_series(a: TruncSeries) -> BivarTriangle:
    rows: list[dict[int, int]] = [{} for _ in range(a.order + 1)]
    for n, c in enumerate(a.coeffs):
        if c:
            rows[n][0] = c
    return BivarTriangle(a.order, rows)


def _merge(dst: dict[int, int], e: int, c: int) -> None:
    v = dst.get(e, 0) + c
    if v:
        dst[e] = v
    elif e in dst:
        del dst[e]


def bivar_add(a: BivarTriangle, b: BivarTriangle) -> BivarTriangle:
    n = min(a.order, b.order)
    rows = [dict(a.rows[r]) for r in range(n + 1)]
    for r in range(n + 1):
        for e, c in b.rows[r].items():
            _merge(rows[r], e, c)
    return BivarTriangle(n, rows)


def bivar_mul(a: BivarTriangle, b: BivarTriangle) -> BivarTriangle:
    """Exact product truncated at the minimum q-order."""
    n = min(a.order, b.order)
    rows: list[dict[int, int]] = [{} for _ in range(n + 1)]
    for ra in range(n + 1):
        rowa = a.rows[ra]
        if not rowa:
            continue
        for rb in range(n + 1 - ra):
            rowb = b.rows[rb]
            if not rowb:
                continue
            dst = rows[ra + rb]
            for ea, ca in rowa.items():
                for eb, cb in rowb.items():
                    _merge(dst, ea + eb, ca * cb)
    return BivarTriangle(n, rows)


def bivar_mul_series(t: BivarTriangle, a: TruncSeries) -> BivarTriangle:
    """Multiply a triangle by a univariate series (z-degree unchanged)."""
    n = min(t.order, a.order)
    rows: list[dict[int, int]] = [{} for _ in range(n + 1)]
    for s, cs in enumerate(a.coeffs[: n + 1]):
        if not cs:
            continue
        for r in range(n + 1 - s):
            for e, c in t.rows[r].items():
                _merge(rows[r + s], e, c * cs)
    return BivarTriangle(n, rows)


def bivar_mul_binomial(t: BivarTriangle, zexp: int, qexp: int) -> BivarTriangle:
    """Multiply by (1 - z^zexp q^qexp).  Requires qexp >= max(1, |zexp|)."""
    if qexp < 1 or qexp < abs(zexp):
        raise InvalidExponent(f"binomial ({zexp}, {qexp}) would break the z-range bound")
    rows = [dict(r) for r in t.rows]
    for r in range(t.order, qexp - 1, -1):
        for e, c in t.rows[r - qexp].items():
            _merge(rows[r], e + zexp, -c)
    return BivarTriangle(t.order, rows)


def bivar_div_one_minus_q(t: BivarTriangle, a: int) -> BivarTriangle:
    """Multiply by the geometric series 1/(1 - q^a), a >= 1."""
    if a < 1:
        raise InvalidExponent(f"need a >= 1, got {a}")
    rows = [dict(r) for r in t.rows]
    for r in range(a, t.order + 1):
        for e, c in rows[r - a].items():
            _merge(rows[r], e, c)
    return BivarTriangle(t.order, rows)


def bivar_shift_q(t: BivarTriangle, c: int) -> BivarTriangle:
    """Multiply by q^c (rows shifted up, truncation order kept)."""
    if c < 0:
        raise InvalidExponent(f"need c >= 0, got {c}")
    rows = [{} for _ in range(c)] + [dict(r) for r in t.rows[: t.order + 1 - c]]
    return BivarTriangle(t.order, rows)


def bivar_geom_factor(zsign: int, base_q: int, step: int, order: int) -> BivarTriangle:
    """Reciprocal Pochhammer 1/(z^zsign q^base_q; q^step)_inf as a triangle.

    Each factor is expanded as 1/(1 - z^s q^j) = sum_i z^{s i} q^{i j}; the
    product over j = base_q, base_q + step, ... keeps factors with leading
    exponent <= order.
    """
    if zsign not in (1, -1):
        raise InvalidExponent(f"zsign must be +1 or -1, got {zsign}")
    if base_q < 1 or step < 1:
        raise InvalidExponent(f"need base_q >= 1 and step >= 1, got ({base_q}, {step})")
    t = bivar_one(order)
    j = base_q
    while j <= order:
        # In-place geometric recurrence: row r += z^zsign * row (r - j).
        for r in range(j, order + 1):
            src = t.rows[r - j]
            if src:
                dst = t.rows[r]
                for e, c in src.items():
                    _merge(dst, e + zsign, c)
        j += step
    return t
