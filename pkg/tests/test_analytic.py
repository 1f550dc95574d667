import random
from fractions import Fraction as F

import pytest

from cosprod.analytic import (
    DomainError,
    cos_approx,
    exp_approx,
    lambda_direct,
    log_approx,
    neg_log_product_series,
    partial_product,
    product_trace,
    rearrangement_check,
    verify_identity,
)
from cosprod.arith import BoundedReal, pi_constant
from cosprod.recurrence import lambda_closed_form
from conftest import ln_bracket, sqrt_bracket

E_40 = F("2.7182818284590452353602874713526624977572")
LN2_40 = F("0.6931471805599453094172321214581765680755")


def pi_over(denom: int, bits: int = 192) -> BoundedReal:
    return pi_constant(bits) * F(1, denom)


def pi_power_bracket(power: int, bits: int = 256) -> tuple[F, F]:
    p = pi_constant(bits)
    return p.lower() ** power, p.upper() ** power


class TestLambdaDirect:
    def test_m1_brackets_pi_squared_over_eight(self):
        est = lambda_direct(1, 10_000, 128)
        lo, hi = pi_power_bracket(2)
        q = lambda_closed_form(1)
        assert est.bracket()[0] <= q * lo and q * hi <= est.bracket()[1]
        assert abs(est.value.value - F("1.2337005")) < F(1, 10**3)

    def test_m2_contains_pi4_over_96(self):
        est = lambda_direct(2, 1_000, 128)
        lo, hi = pi_power_bracket(4)
        q = lambda_closed_form(2)
        assert est.bracket()[0] <= q * lo and q * hi <= est.bracket()[1]

    def test_large_m_single_term(self):
        est = lambda_direct(20, 1, 128)
        assert est.value.value == 1
        assert est.tail_bound < F(1, 10**18)
        # the bracket still covers at least the next two true terms
        assert est.contains(1 + F(1, 3**40) + F(1, 5**40))

    def test_lower_upper_bracketing(self):
        # all omitted terms are positive: value <= lambda(2m) <= value + err + tail
        for m, n in ((1, 50), (2, 200), (3, 31)):
            est = lambda_direct(m, n, 96)
            refined = lambda_direct(m, n * 20, 384)
            assert est.value.value <= refined.value.value + refined.value.abs_error
            assert refined.value.value <= est.bracket()[1]

    def test_tail_decreases_with_terms(self):
        a = lambda_direct(1, 100, 64)
        b = lambda_direct(1, 1_000, 64)
        assert b.tail_bound < a.tail_bound

    def test_lower_precision_widens_interval(self):
        coarse = lambda_direct(2, 500, 32)
        fine = lambda_direct(2, 500, 256)
        assert coarse.value.abs_error > fine.value.abs_error

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            lambda_direct(0, 10, 64)
        with pytest.raises(ValueError):
            lambda_direct(1, 0, 64)


class TestPartialProduct:
    def test_n_one_is_exactly_zero(self):
        for n_factors in (1, 7, 500):
            res = partial_product(1, n_factors, 64)
            assert res.value.value == 0
            assert res.value.abs_error == 0
            assert res.log_tail_bound is None

    def test_n2_contains_cos_quarter_pi(self):
        res = partial_product(2, 20_000, 128)
        lo, hi = sqrt_bracket(F(1, 2))
        ilo, ihi = res.interval()
        assert ilo <= lo and hi <= ihi

    def test_n3_contains_cos_sixth_pi(self):
        res = partial_product(3, 20_000, 128)
        lo, hi = sqrt_bracket(F(3, 4))
        ilo, ihi = res.interval()
        assert ilo <= lo and hi <= ihi

    def test_non_integer_n_contains_half(self):
        res = partial_product(F(3, 2), 20_000, 128)
        assert res.contains(F(1, 2))

    def test_trace_monotone_decreasing_above_target(self):
        trace = product_trace(3, 4096, 128)
        lo, _ = sqrt_bracket(F(3, 4))
        values = [snap.value.value for snap in trace]
        assert values == sorted(values, reverse=True)
        for snap in trace:
            assert snap.value.value >= lo - snap.value.abs_error
            assert 0 < snap.value.value <= 1

    def test_log_tail_decreases_with_factors(self):
        a = partial_product(3, 100, 64)
        b = partial_product(3, 1_000, 64)
        assert b.log_tail_bound < a.log_tail_bound

    def test_rejects_n_below_one(self):
        with pytest.raises(DomainError):
            partial_product(F(1, 2), 10, 64)


class TestNegLogProductSeries:
    def test_zero_argument_is_exact_zero(self):
        res = neg_log_product_series(BoundedReal.exact(0, 128), 10, 128)
        assert res.value == 0
        assert res.abs_error == 0

    def test_pi_sixth_matches_half_ln_four_thirds(self):
        # -ln cos(pi/6) = -ln(sqrt(3)/2) = (1/2) ln(4/3)
        res = neg_log_product_series(pi_over(6), 30, 128)
        lo, hi = ln_bracket(F(4, 3))
        assert res.lower() <= lo / 2 and hi / 2 <= res.upper()
        assert res.abs_error <= F(1, 10**8)

    def test_pi_quarter_matches_half_ln_two(self):
        res = neg_log_product_series(pi_over(4), 60, 128)
        lo, hi = ln_bracket(F(2))
        assert res.lower() <= lo / 2 and hi / 2 <= res.upper()

    def test_rejects_at_and_beyond_half_pi(self):
        with pytest.raises(DomainError):
            neg_log_product_series(pi_over(2), 10, 128)
        with pytest.raises(DomainError):
            neg_log_product_series(BoundedReal.exact(F(8, 5), 128), 10, 128)

    def test_accepts_just_inside_domain(self):
        x = pi_constant(192) * F(49, 100)
        res = neg_log_product_series(x, 200, 64)
        assert res.value > 0

    def test_input_uncertainty_propagates(self):
        x = pi_over(6)
        wide = BoundedReal(x.value, x.abs_error + F(1, 10**6), x.precision_bits)
        narrow = neg_log_product_series(x, 30, 128)
        blurred = neg_log_product_series(wide, 30, 128)
        assert blurred.abs_error > F(1, 10**7)
        assert blurred.contains(narrow.value)


class TestCosApprox:
    def test_zero(self):
        res = cos_approx(BoundedReal.exact(0, 128), 128)
        assert res.value == 1
        assert res.abs_error == 0

    def test_half_pi_contains_zero(self):
        res = cos_approx(pi_over(2), 128)
        assert res.contains(0)
        assert res.abs_error < F(1, 10**30)

    def test_sixth_pi_squares_to_three_quarters(self):
        res = cos_approx(pi_over(6), 128)
        assert (res * res).contains(F(3, 4))
        lo, hi = sqrt_bracket(F(3, 4))
        assert res.lower() <= lo and hi <= res.upper()

    def test_third_pi_is_half(self):
        res = cos_approx(pi_over(3), 128)
        assert res.contains(F(1, 2))

    def test_moderately_large_argument(self):
        # series still converges with a valid remainder beyond the identity range
        res = cos_approx(BoundedReal.exact(5, 128), 128)
        cos5 = F("0.2836621854632262644666391715135573083344")
        assert abs(res.value - cos5) <= res.abs_error + F(1, 10**39)


class TestExpLog:
    def test_exp_zero(self):
        res = exp_approx(BoundedReal.exact(0, 128), 128)
        assert res.value == 1

    def test_exp_one_against_digits(self):
        res = exp_approx(BoundedReal.exact(1, 192), 192)
        assert abs(res.value - E_40) <= res.abs_error + F(1, 10**39)

    def test_log_one_is_zero(self):
        res = log_approx(BoundedReal.exact(1, 128), 128)
        assert res.value == 0

    def test_log_two_against_digits(self):
        res = log_approx(BoundedReal.exact(2, 192), 192)
        assert abs(res.value - LN2_40) <= res.abs_error + F(1, 10**39)

    def test_log_rejects_nonpositive_interval(self):
        with pytest.raises(DomainError):
            log_approx(BoundedReal.exact(0, 64), 64)
        with pytest.raises(DomainError):
            log_approx(BoundedReal(F(1, 100), F(1, 10), 64), 64)

    def test_round_trip(self):
        rng = random.Random(99)
        for _ in range(25):
            y = F(rng.randint(1, 2500), rng.randint(1, 50))
            logged = log_approx(BoundedReal.exact(y, 128), 128)
            back = exp_approx(logged, 128)
            assert back.contains(y)

    def test_log_against_oracle_brackets(self):
        for y in (F(4, 3), F(3), F(10), F(1, 7)):
            res = log_approx(BoundedReal.exact(y, 160), 160)
            lo, hi = ln_bracket(y, terms=120)
            assert res.lower() <= hi and lo <= res.upper()


class TestRearrangement:
    def test_n3_overlaps_and_contains_truth(self):
        rep = rearrangement_check(3, 1_000, 20, 128)
        assert rep.overlap
        lo, hi = ln_bracket(F(4, 3))
        for est in (rep.row_sum, rep.column_sum):
            assert est.lower() <= lo / 2 and hi / 2 <= est.upper()

    def test_n10_overlaps_near_known_window(self):
        rep = rearrangement_check(10, 1_000, 10, 128)
        assert rep.overlap
        # -ln cos(pi/20) = 0.0123880757...
        for est in (rep.row_sum, rep.column_sum):
            assert est.lower() <= F("0.0123881")
            assert est.upper() >= F("0.0123880")

    def test_huge_n_leading_order(self):
        n = 10**6
        rep = rearrangement_check(n, 10, 3, 128)
        assert rep.overlap
        target = lambda_closed_form(1) * pi_constant(256).value ** 2 / n**2
        assert rep.row_sum.contains(target)
        assert rep.column_sum.contains(target)

    def test_non_integer_n(self):
        # x = pi/3, so the target is -ln cos(pi/3) = ln 2 itself
        rep = rearrangement_check(F(3, 2), 500, 25, 128)
        assert rep.overlap
        lo, hi = ln_bracket(F(2))
        assert rep.row_sum.lower() <= hi and lo <= rep.row_sum.upper()
        assert rep.column_sum.lower() <= hi and lo <= rep.column_sum.upper()

    def test_rejects_n_at_or_below_one(self):
        with pytest.raises(DomainError):
            rearrangement_check(1, 10, 3, 64)
        with pytest.raises(DomainError):
            rearrangement_check(F(2, 3), 10, 3, 64)


class TestExtremeParameters:
    """Soundness holds at the edges: minimum precision, n barely above 1.

    Target literals were computed to 50 digits with an independent
    arbitrary-precision tool and carry a 1e-45 slack for their own
    truncation.
    """

    SLACK = F(1, 10**45)

    def test_product_minimum_precision_near_one(self):
        cos_target = F("0.01555181192035087401015544673879955583168043875309")
        res = partial_product(F(101, 100), 5_000, 8)
        lo, hi = res.interval()
        assert lo - self.SLACK <= cos_target <= hi + self.SLACK

    def test_lambda_minimum_precision(self):
        est = lambda_direct(3, 17, 8)
        q = lambda_closed_form(3)
        pi_ref = pi_constant(256)
        lo, hi = est.bracket()
        assert lo <= q * pi_ref.lower() ** 6 and q * pi_ref.upper() ** 6 <= hi

    def test_neg_log_series_near_domain_edge(self):
        target = F("3.46060479895733132454982463431309068033470981210")
        x = pi_constant(80) * F(49, 100)
        res = neg_log_product_series(x, 120, 64)
        assert res.lower() - self.SLACK <= target <= res.upper() + self.SLACK

    def test_cos_beyond_half_pi(self):
        target = F("-0.80901699437494742410229341718281905886015458990")
        res = cos_approx(pi_constant(80) * F(12, 10), 64)
        assert res.lower() - self.SLACK <= target <= res.upper() + self.SLACK

    def test_rearrangement_near_one(self):
        target = F("4.16357812493601978035167932997590356560778217170")
        rep = rearrangement_check(F(101, 100), 50, 30, 64)
        assert rep.overlap
        for est in (rep.row_sum, rep.column_sum):
            assert est.lower() - self.SLACK <= target <= est.upper() + self.SLACK

    def test_exp_large_negative_argument(self):
        target = F("9.3576229688401746049158322233787067449583226889359e-14")
        res = exp_approx(BoundedReal.exact(-30, 32), 32)
        assert res.lower() - self.SLACK <= target <= res.upper() + self.SLACK

    def test_log_large_argument_minimum_precision(self):
        target = F("9.42100640177927987790587753559409148830162487428")
        res = log_approx(BoundedReal.exact(12345, 8), 8)
        assert res.lower() - self.SLACK <= target <= res.upper() + self.SLACK

    def test_verify_identity_near_one(self):
        rep = verify_identity(F(101, 100), 3_000, 200, 32)
        assert rep.verdict


class TestVerifyIdentity:
    def test_n3(self):
        rep = verify_identity(3, 20_000, 30, 128)
        assert rep.verdict
        lo, hi = sqrt_bracket(F(3, 4))
        assert rep.cosine.lower() <= lo and hi <= rep.cosine.upper()
        assert rep.log_series.lower() <= lo and hi <= rep.log_series.upper()

    def test_n2(self):
        rep = verify_identity(2, 20_000, 60, 128)
        assert rep.verdict
        lo, hi = sqrt_bracket(F(1, 2))
        assert rep.log_series.lower() <= lo and hi <= rep.log_series.upper()

    def test_non_integer_n_exact_target(self):
        rep = verify_identity(F(3, 2), 20_000, 40, 128)
        assert rep.verdict
        assert rep.product_detail.contains(F(1, 2))
        assert rep.cosine.contains(F(1, 2))
        assert rep.log_series.contains(F(1, 2))

    def test_consistency_chain(self):
        # the series route and the product route must agree within bounds
        for n, factors, order in ((3, 500, 20), (F(5, 2), 2_000, 25), (10, 100, 10)):
            rep = verify_identity(n, factors, order, 96)
            gap = abs(rep.log_series.value - rep.product.value)
            assert gap <= rep.log_series.abs_error + rep.product.abs_error

    def test_rejects_n_at_or_below_one(self):
        with pytest.raises(DomainError):
            verify_identity(1, 10, 5, 64)
        with pytest.raises(DomainError):
            verify_identity(F(1, 2), 10, 5, 64)
