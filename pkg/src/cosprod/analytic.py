"""Error-bounded numerical verification of the cosine product identity.

Everything here evaluates one of the three routes to the same number,

    product route:  P(n) = prod_{k>=1} (1 - 1/((2k-1)^2 n^2)), truncated,
                    with a rigorous bound on the logarithm of the omitted
                    factors;
    series route:   exp(-L(x)) with L(x) = sum_m c_m x^(2m) / m evaluated at
                    x = pi/(2n), truncated with a geometric tail bound;
    cosine route:   the Maclaurin series of cos at pi/(2n) with the
                    alternating-series remainder,

or one of their ingredients (the odd-reciprocal power sums lambda(2m), the
elementary functions exp/log needed to move between routes).  All heavy
summations run in scaled-integer arithmetic with floor divisions, so every
intermediate is exact and the accumulated rounding is counted in ulps;
every tail is bounded by an integral or geometric comparison that is stated
at the point of use.  Results are :class:`~cosprod.arith.BoundedReal`
values whose intervals are sound by construction.

Tail-bound inventory (N terms kept, all terms positive and decreasing):

    sum_{j>=N} (2j+1)^(-2m)
        <= (2N+1)^(-2m) + integral_N^inf (2u+1)^(-2m) du
        =  (2N+1)^(-2m) + (2N+1)^(1-2m) / (2(2m-1))

(the first omitted term plus the integral comparison for the rest), and
for the coefficient series, lambda(2m) <= lambda(2) = pi^2/8 < 5/4 because
pi^2 < 10, giving c_m x^(2m) <= (5/4) * (2x/pi)^(2m).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .arith import (
    BoundedReal,
    DomainError,
    _err_up,
    _floor_log2,
    _pow2,
    _round_sig,
    pi_constant,
    real_from_rational,
)
from .recurrence import lambda_coefficients

_RationalLike = Union[Fraction, int]

_GUARD_BITS = 32
_MAX_SERIES_TERMS = 100_000

# lambda(2m) <= lambda(2) = pi^2/8 < 5/4 (since pi^2 < 10); used by every
# geometric tail over the coefficient series
_LAMBDA_CAP = Fraction(5, 4)


# ----------------------------------------------------------------------
# result records
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LambdaEstimate:
    """Truncated lambda(2m) = sum over odd d of d^(-2m), with tail bound.

    ``value`` carries the summation/quantization rounding; ``tail_bound``
    bounds the omitted positive terms, so lambda(2m) lies in
    [value.lower(), value.upper() + tail_bound].  The scaled-integer kernel
    rounds downward, so ``value.value`` itself never exceeds lambda(2m).
    """

    m: int
    num_terms: int
    value: BoundedReal
    tail_bound: Fraction

    def bracket(self) -> tuple[Fraction, Fraction]:
        return self.value.lower(), self.value.upper() + self.tail_bound

    def contains(self, r: _RationalLike) -> bool:
        lo, hi = self.bracket()
        return lo <= Fraction(r) <= hi


@dataclass(frozen=True)
class PartialProductResult:
    """A truncated product value plus a bound on the log of its tail.

    ``log_tail_bound`` dominates |log(true product) - log(partial)|; it is
    None only for n = 1, where the first factor (and the true value) is
    exactly zero and no logarithm exists.
    """

    n: Fraction
    num_factors: int
    value: BoundedReal
    log_tail_bound: Optional[Fraction]

    def total_bound(self) -> Fraction:
        """Bound on |value - true infinite product|.

        The true product is partial * exp(-tau) with 0 <= tau <=
        log_tail_bound, and 1 - exp(-tau) <= tau, so the tail contributes
        at most (partial upper bound) * log_tail_bound.
        """
        if self.log_tail_bound is None:
            return self.value.abs_error
        return self.value.abs_error + self.value.upper() * self.log_tail_bound

    def interval(self) -> tuple[Fraction, Fraction]:
        b = self.total_bound()
        return self.value.value - b, self.value.value + b

    def contains(self, r: _RationalLike) -> bool:
        lo, hi = self.interval()
        return lo <= Fraction(r) <= hi


@dataclass(frozen=True)
class RearrangementReport:
    """Row-order and column-order evaluations of the same double sum."""

    n: Fraction
    num_rows: int
    series_order: int
    precision_bits: int
    row_sum: BoundedReal
    column_sum: BoundedReal
    overlap: bool


@dataclass(frozen=True)
class IdentityReport:
    """Three bound-carrying estimates of the same value, plus the verdict."""

    n: Fraction
    num_factors: int
    order: int
    precision_bits: int
    product: BoundedReal
    log_series: BoundedReal
    cosine: BoundedReal
    product_detail: PartialProductResult
    verdict: bool

    def estimates(self) -> list[tuple[str, BoundedReal]]:
        return [("product", self.product),
                ("log_series", self.log_series),
                ("cosine", self.cosine)]


# ----------------------------------------------------------------------
# odd-reciprocal power sums
# ----------------------------------------------------------------------

def _odd_tail_bound(num_terms: int, power: int) -> Fraction:
    """Bound on sum_{j>=N} (2j+1)^(-p): first omitted term + integral rest."""
    odd = 2 * num_terms + 1
    return Fraction(1, odd**power) + Fraction(1, 2 * (power - 1) * odd ** (power - 1))


def lambda_direct(m: int, num_terms: int, precision_bits: int) -> LambdaEstimate:
    """Sum the first `num_terms` terms of lambda(2m) in scaled integers.

    Each term is floor(2**shift / (2k-1)**2m), so the accumulated value
    undershoots the exact partial sum by less than num_terms ulps; the
    final quantization also rounds down.  The reported interval
    [value - abs_error, value + abs_error + tail_bound] therefore contains
    lambda(2m), and value itself is a certified lower bound.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if num_terms < 1:
        raise ValueError("num_terms must be at least 1")
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    shift = precision_bits + _GUARD_BITS
    one = 1 << shift
    power = 2 * m
    total = 0
    for k in range(1, num_terms + 1):
        term = one // (2 * k - 1) ** power
        if not term:
            break  # terms are decreasing; the rest floor to zero as well
        total += term
    partial = Fraction(total, one)
    value, qcap = _round_sig(partial, precision_bits, mode="floor")
    rounding = Fraction(num_terms, one) + qcap
    return LambdaEstimate(
        m=m,
        num_terms=num_terms,
        value=BoundedReal(value, _err_up(rounding), precision_bits),
        tail_bound=_odd_tail_bound(num_terms, power),
    )


# ----------------------------------------------------------------------
# the truncated product
# ----------------------------------------------------------------------

def _product_log_tail(n: Fraction, num_factors: int) -> Fraction:
    """Bound on sum_{k>N} -log(1 - a_k) with a_k = 1/((2k-1)^2 n^2).

    Uses -log(1-a) <= a/(1-a) <= a/(1 - a_first) and the odd-power tail
    bound for sum a_k.  Requires n > 1 so that a_first < 1.
    """
    pn, qn = n.numerator, n.denominator
    odd = 2 * num_factors + 1
    sum_a = Fraction(qn * qn, pn * pn) * _odd_tail_bound(num_factors, 2)
    a_first = Fraction(qn * qn, (odd * pn) ** 2)
    return sum_a / (1 - a_first)


def _package_product(n: Fraction, num_factors: int, acc: int, shift: int,
                     precision_bits: int) -> PartialProductResult:
    partial = Fraction(acc, 1 << shift)
    value, qcap = _round_sig(partial, precision_bits, mode="floor")
    rounding = Fraction(num_factors, 1 << shift) + qcap
    return PartialProductResult(
        n=n,
        num_factors=num_factors,
        value=BoundedReal(value, _err_up(rounding), precision_bits),
        log_tail_bound=_product_log_tail(n, num_factors),
    )


def product_trace(n: _RationalLike, num_factors: int, precision_bits: int,
                  checkpoints: Optional[list[int]] = None) -> list[PartialProductResult]:
    """One left-to-right product pass, snapshotted at each checkpoint.

    Factors 1 - 1/((2k-1)^2 n^2) are applied as exact integer ratios with a
    single floor division per step, so the running value undershoots the
    exact partial product by at most k ulps after k factors (each factor is
    at most 1, so floor errors never amplify).  Default checkpoints double
    from 1 up to num_factors.
    """
    n = Fraction(n)
    if n < 1:
        raise DomainError("the product requires n >= 1")
    if num_factors < 1:
        raise ValueError("num_factors must be at least 1")
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    if checkpoints is None:
        checkpoints = []
        c = 1
        while c < num_factors:
            checkpoints.append(c)
            c *= 2
        checkpoints.append(num_factors)
    marks = sorted(set(checkpoints))
    if not marks or marks[0] < 1 or marks[-1] > num_factors:
        raise ValueError("checkpoints must lie in 1..num_factors")

    if n == 1:
        # first factor is exactly zero; every partial product is exactly 0
        zero = BoundedReal(Fraction(0), Fraction(0), precision_bits)
        return [PartialProductResult(n, mark, zero, None) for mark in marks]

    shift = precision_bits + _GUARD_BITS
    pn, qn = n.numerator, n.denominator
    qn2 = qn * qn
    acc = 1 << shift
    results = []
    k = 0
    for mark in marks:
        while k < mark:
            k += 1
            den = ((2 * k - 1) * pn) ** 2
            acc = acc * (den - qn2) // den
        results.append(_package_product(n, mark, acc, shift, precision_bits))
    return results


def partial_product(n: _RationalLike, num_factors: int,
                    precision_bits: int) -> PartialProductResult:
    """Truncated product over the first `num_factors` odd squares."""
    return product_trace(n, num_factors, precision_bits,
                         checkpoints=[num_factors])[0]


# ----------------------------------------------------------------------
# the coefficient series for -log of the product
# ----------------------------------------------------------------------

def neg_log_product_series(x: BoundedReal, order: int,
                           precision_bits: int) -> BoundedReal:
    """Evaluate sum_{m=1..order} c_m x^(2m) / m with a rigorous tail.

    This is the series whose exact sum is -log cos x for |x| < pi/2; the
    domain check is performed against a certified lower bound on pi.  The
    truncation tail uses c_m x^(2m) <= (5/4) (2x/pi)^(2m); when x carries
    its own uncertainty, the derivative bound
    |d/dx sum| <= 10 x_up / (pi^2 (1 - r)) converts it into output error.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    work = precision_bits + 16
    pi_low = pi_constant(work).lower()
    x_up = abs(x.value) + x.abs_error
    if 2 * x_up >= pi_low:
        raise DomainError("the series requires |x| strictly below pi/2")

    table = lambda_coefficients(order)
    x0 = BoundedReal(x.value, Fraction(0), work)
    x2 = x0 * x0
    power = BoundedReal.exact(1, work)
    total = BoundedReal.exact(0, work)
    for m in range(1, order + 1):
        power = power * x2
        total = total + power * (table.c(m) / m)

    r_up = Fraction(4) * x_up * x_up / (pi_low * pi_low)
    tail = _LAMBDA_CAP * r_up ** (order + 1) / ((order + 1) * (1 - r_up))
    input_err = Fraction(0)
    if x.abs_error:
        lipschitz = 10 * x_up / (pi_low * pi_low * (1 - r_up))
        input_err = lipschitz * x.abs_error

    value, qcap = _round_sig(total.value, precision_bits)
    err = total.abs_error + tail + input_err + qcap
    return BoundedReal(value, _err_up(err), precision_bits)


# ----------------------------------------------------------------------
# elementary functions (cos, exp, log) with explicit remainders
# ----------------------------------------------------------------------

def cos_approx(x: BoundedReal, precision_bits: int) -> BoundedReal:
    """Maclaurin cosine with the alternating-series remainder.

    Terms are accumulated until the next one is below the working cutoff
    and the term ratio x^2 / ((2k+1)(2k+2)) has dropped below 1, at which
    point the first omitted term bounds the rest.  Input uncertainty is
    folded in via the Lipschitz bound |cos'| <= 1.
    """
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    work = precision_bits + 16
    x0 = BoundedReal(x.value, Fraction(0), work)
    x2 = x0 * x0
    x2_up = x2.upper()
    cutoff = _pow2(-(precision_bits + 8))
    total = BoundedReal.exact(1, work)
    term = BoundedReal.exact(1, work)
    k = 0
    while True:
        k += 1
        if k > _MAX_SERIES_TERMS:
            raise AssertionError("cosine series failed to converge")
        term = term * x2 / ((2 * k - 1) * (2 * k))
        total = total - term if k % 2 else total + term
        ratio_den = (2 * k + 1) * (2 * k + 2)
        if x2_up < ratio_den and term.magnitude_upper() <= cutoff:
            break
    remainder = term.magnitude_upper() * x2_up / ratio_den
    value, qcap = _round_sig(total.value, precision_bits)
    err = total.abs_error + remainder + x.abs_error + qcap
    return BoundedReal(value, _err_up(err), precision_bits)


def exp_approx(y: BoundedReal, precision_bits: int) -> BoundedReal:
    """exp with halving reduction, Taylor remainder, and input-error factor.

    The argument value is halved until |z| <= 1/2, the series is summed
    with remainder bound 2 * (first omitted term), and the result is
    squared back up.  Input uncertainty e contributes a relative factor
    exp(e) - 1 <= e / (1 - e), applied to the upper value.
    """
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    work = precision_bits + 16
    halvings = 0
    v = y.value
    while abs(v) * 2 > _pow2(halvings):
        halvings += 1
    z = BoundedReal(v / _pow2(halvings), Fraction(0), work + 2 * halvings)
    z_up = abs(z.value)

    total = BoundedReal.exact(1, work + 2 * halvings)
    term = BoundedReal.exact(1, work + 2 * halvings)
    cutoff = _pow2(-(work + 2 * halvings + 8))
    k = 0
    while term.magnitude_upper() > cutoff:
        k += 1
        if k > _MAX_SERIES_TERMS:
            raise AssertionError("exponential series failed to converge")
        term = term * z / k
        total = total + term
    # |z| <= 1/2 and k >= 1 make the omitted-terms ratio at most 1/2
    remainder = 2 * term.magnitude_upper() * z_up / (k + 1)
    total = BoundedReal(total.value, total.abs_error + remainder,
                        total.precision_bits)
    for _ in range(halvings):
        total = total * total

    input_err = Fraction(0)
    if y.abs_error:
        if y.abs_error >= 1:
            raise DomainError("exp input uncertainty must be below 1")
        input_err = total.magnitude_upper() * y.abs_error / (1 - y.abs_error)
    value, qcap = _round_sig(total.value, precision_bits)
    err = total.abs_error + input_err + qcap
    return BoundedReal(value, _err_up(err), precision_bits)


def _atanh_series(u: Fraction, bits: int) -> BoundedReal:
    """atanh(u) for |u| <= 1/3, geometric tail over odd powers."""
    if abs(u) > Fraction(1, 3):
        raise ValueError("atanh reduction expects |u| <= 1/3")
    ub = real_from_rational(u, bits) if u else BoundedReal.exact(0, bits)
    u2 = ub * ub
    u2_up = u2.upper()
    total = ub
    power = ub
    cutoff = _pow2(-(bits + 8))
    k = 0
    while True:
        k += 1
        if k > _MAX_SERIES_TERMS:
            raise AssertionError("atanh series failed to converge")
        power = power * u2
        total = total + power / (2 * k + 1)
        nxt = power.magnitude_upper() * u2_up / (2 * k + 3)
        if nxt <= cutoff:
            break
    tail = nxt / (1 - u2_up) if u2_up < 1 else nxt * 2
    return BoundedReal(total.value, _err_up(total.abs_error + tail), bits)


@lru_cache(maxsize=None)
def _ln2_constant(bits: int) -> BoundedReal:
    """log 2 = 2 atanh(1/3)."""
    return _atanh_series(Fraction(1, 3), bits) * 2


def log_approx(y: BoundedReal, precision_bits: int) -> BoundedReal:
    """Natural log via dyadic reduction and the atanh series.

    y is reduced to a in [2/3, 4/3) by an exact power of two, then
    log a = 2 atanh((a-1)/(a+1)) with |(a-1)/(a+1)| <= 1/5.  Requires the
    whole input interval to be positive; input uncertainty e contributes
    e / lower(y) via the mean value theorem.
    """
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")
    if y.lower() <= 0:
        raise DomainError("log requires a strictly positive interval")
    work = precision_bits + 16
    v = y.value
    exponent = _floor_log2(3 * v / 2)
    a = v / _pow2(exponent)
    u = (a - 1) / (a + 1)
    total = _atanh_series(u, work) * 2
    if exponent:
        total = total + _ln2_constant(work) * exponent
    input_err = y.abs_error / y.lower() if y.abs_error else Fraction(0)
    value, qcap = _round_sig(total.value, precision_bits)
    return BoundedReal(value, _err_up(total.abs_error + input_err + qcap),
                       precision_bits)


# ----------------------------------------------------------------------
# rearrangement of the double sum
# ----------------------------------------------------------------------

def rearrangement_check(n: _RationalLike, num_rows: int, series_order: int,
                        precision_bits: int) -> RearrangementReport:
    """Sum the double array 1/(j ((2k-1)^2 n^2)^j) both ways, with bounds.

    Row order runs the inner geometric-log series per k (closed tail per
    row, plus a log-tail bound for the omitted rows); column order sums
    lambda estimates against powers of 1/n^2 (per-column tails from
    lambda_direct, plus a geometric bound over the omitted columns).  Both
    intervals must contain -log of the true product, so they must overlap.
    """
    n = Fraction(n)
    if n <= 1:
        raise DomainError("rearrangement requires n > 1")
    if num_rows < 1 or series_order < 1:
        raise ValueError("num_rows and series_order must be at least 1")
    if precision_bits < 8:
        raise ValueError("precision_bits must be at least 8")

    shift = precision_bits + _GUARD_BITS
    one = 1 << shift
    pn, qn = n.numerator, n.denominator
    qn2 = qn * qn

    # --- row order: k-th row is -log(1 - 1/x_k) summed explicitly -------
    total = 0
    err_ulps = 0
    row_tails = Fraction(0)
    for k in range(1, num_rows + 1):
        den = ((2 * k - 1) * pn) ** 2   # x_k = den / qn2 > 1
        drift = den // (den - qn2) + 1  # floor-chain drift cap x/(x-1)
        pw = one * qn2 // den
        j = 1
        while pw:
            total += pw // j
            err_ulps += drift + 1
            pw = pw * qn2 // den
            j += 1
        # at exit x_k^-j < drift ulps; geometric rest of the row
        row_tails += Fraction(drift * den, j * (den - qn2) * one)
    rows_tail = _product_log_tail(n, num_rows)
    row_partial = Fraction(total, one)
    row_value, row_qcap = _round_sig(row_partial, precision_bits)
    row_err = Fraction(err_ulps, one) + row_tails + rows_tail + row_qcap
    row_sum = BoundedReal(row_value, _err_up(row_err), precision_bits)

    # --- column order: m-th column is lambda(2m) / (m n^2m) -------------
    work = precision_bits + 16
    col = BoundedReal.exact(0, work)
    n_pow = Fraction(1)
    n_sq = Fraction(pn * pn, qn2)
    for m in range(1, series_order + 1):
        n_pow *= n_sq
        est = lambda_direct(m, num_rows, work)
        widened = BoundedReal(est.value.value,
                              est.value.abs_error + est.tail_bound, work)
        col = col + widened * Fraction(1, m) / n_pow
    s = 1 / n_sq
    col_tail = _LAMBDA_CAP * s ** (series_order + 1) / ((series_order + 1) * (1 - s))
    col_value, col_qcap = _round_sig(col.value, precision_bits)
    col_sum = BoundedReal(col_value,
                          _err_up(col.abs_error + col_tail + col_qcap),
                          precision_bits)

    return RearrangementReport(
        n=n,
        num_rows=num_rows,
        series_order=series_order,
        precision_bits=precision_bits,
        row_sum=row_sum,
        column_sum=col_sum,
        overlap=row_sum.overlaps(col_sum),
    )


# ----------------------------------------------------------------------
# the end-to-end identity
# ----------------------------------------------------------------------

def verify_identity(n: _RationalLike, num_factors: int, order: int,
                    precision_bits: int) -> IdentityReport:
    """Compare the product, series, and cosine routes at x = pi/(2n).

    Returns the three bound-carrying estimates and the verdict that all
    pairwise intervals overlap.  Requires n > 1: at n = 1 the product is
    exactly zero (equal to cos(pi/2)) but the logarithmic route is
    undefined, so callers must handle that boundary separately.
    """
    n = Fraction(n)
    if n <= 1:
        raise DomainError(
            "identity verification requires n > 1; at n = 1 the product is "
            "exactly 0 = cos(pi/2) but the log-based route is undefined")
    detail = partial_product(n, num_factors, precision_bits)
    product = BoundedReal(detail.value.value, _err_up(detail.total_bound()),
                          precision_bits)
    x = pi_constant(precision_bits + 16) * Fraction(n.denominator,
                                                    2 * n.numerator)
    neg_log = neg_log_product_series(x, order, precision_bits + 8)
    log_series = exp_approx(-neg_log, precision_bits)
    cosine = cos_approx(x, precision_bits)
    verdict = (product.overlaps(log_series)
               and product.overlaps(cosine)
               and log_series.overlaps(cosine))
    return IdentityReport(
        n=n,
        num_factors=num_factors,
        order=order,
        precision_bits=precision_bits,
        product=product,
        log_series=log_series,
        cosine=cosine,
        product_detail=detail,
        verdict=verdict,
    )
