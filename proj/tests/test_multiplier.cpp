#include "doctest.h"
#include "helpers.hpp"

#include "lindisk/errors.hpp"
#include "lindisk/linearization.hpp"
#include "lindisk/multiplier.hpp"
#include "lindisk/parser.hpp"

using namespace lindisk;
using lindisk::testing::Q;

namespace {

struct Sample {
    std::string name;
    FieldPtr field;
    std::string lambda_expr;
};

std::vector<Sample> sample_multipliers(long prec = 96) {
    return {
        {"1+3^(1/4)", Field::eisenstein_pure(3, 4, prec), "1+pi"},
        {"1+3^(3/4)", Field::eisenstein_pure(3, 4, prec), "1+pi^3"},
        {"1+3^(1/10)", Field::eisenstein_pure(3, 10, prec), "1+pi"},
        {"gamma+3", Field::cyclotomic(3, 9, prec), "1+pi+3"},
        {"1+3", Field::q_p(3, prec), "1+3"},
        {"2+5", Field::q_p(5, prec), "2+5"},
        {"1+5^(1/2)", Field::eisenstein_pure(5, 2, prec), "1+pi"},
    };
}

} // namespace

TEST_CASE("nu_R") {
    CHECK(nu_R(1, 3).value() == Q(1, 2));
    CHECK(nu_R(2, 3).value() == Q(1, 6));
    CHECK(nu_R(0, 3).is_infinite());
    CHECK(nu_R(0, 7).is_infinite());
    CHECK(nu_R(3, 3).value() == Q(1, 18));
}

TEST_CASE("compute_invariants fixtures") {
    SUBCASE("lambda* = gamma + 3 in the cyclotomic-9 field") {
        auto f = Field::cyclotomic(3, 9, 96);
        auto inv = compute_invariants(parse_element("1+pi+3", f));
        CHECK(inv.m == 1);
        CHECK(inv.s == 2);
        CHECK(inv.t == 0);
        CHECK(inv.nu1m == Q(1, 6));
        CHECK(inv.nuG == Q(1));
    }

    SUBCASE("lambda = 1+3^{1/10}") {
        auto f = Field::eisenstein_pure(3, 10, 120);
        auto inv = compute_invariants(parse_element("1+pi", f));
        CHECK(inv.m == 1);
        CHECK(inv.s == 2);
        CHECK(inv.t == 2);
        CHECK(inv.nu1m == Q(1, 10));
        CHECK(inv.nuG == Q(1, 10));
    }

    SUBCASE("lambda = 1+3^{1/4}") {
        auto f = Field::eisenstein_pure(3, 4, 96);
        auto inv = compute_invariants(parse_element("1+pi", f));
        CHECK(inv.m == 1);
        CHECK(inv.s == 1);
        CHECK(inv.t == 1);
        CHECK(inv.nu1m == Q(1, 4));
        CHECK(inv.nuG == Q(1, 4));
    }

    SUBCASE("lambda = 2+5 in Q_5 has residue order 4") {
        auto f = Field::q_p(5, 96);
        auto inv = compute_invariants(parse_element("2+5", f));
        CHECK(inv.m == 4);
        CHECK(inv.s == 0);
        CHECK(inv.t == 0);
        CHECK(inv.nu1m == Q(2));
        CHECK(inv.nuG == Q(2));
    }

    SUBCASE("root of unity is rejected") {
        auto f = Field::cyclotomic(3, 3, 96);
        CHECK_THROWS_AS(compute_invariants(parse_element("1+pi", f)),
                        IndistinguishableFromRootOfUnity);
    }

    SUBCASE("non-unit multiplier is rejected") {
        auto f = Field::q_p(3, 96);
        CHECK_THROWS_AS(compute_invariants(parse_element("3", f)), HypothesisViolated);
    }

    SUBCASE("stability under precision doubling") {
        for (const auto& sample : sample_multipliers()) {
            auto lo = compute_invariants(parse_element(sample.lambda_expr, sample.field));
            auto hi = compute_invariants(parse_element_at(
                sample.lambda_expr, sample.field, {}, 2 * sample.field->default_precision()));
            CHECK(lo.m == hi.m);
            CHECK(lo.s == hi.s);
            CHECK(lo.t == hi.t);
            CHECK(lo.nu1m == hi.nu1m);
            CHECK(lo.nuG == hi.nuG);
        }
    }
}

TEST_CASE("nu_one_minus_lambda_pow closed form") {
    auto f = Field::eisenstein_pure(3, 4, 96);
    auto inv = compute_invariants(parse_element("1+pi", f));

    CHECK(nu_one_minus_lambda_pow(inv, 9) == Q(7, 4));
    CHECK(nu_one_minus_lambda_pow(inv, 2) == Q(1, 4));

    MultiplierInvariants m2{Integer(3), 2, 0, 0, Q(1), Q(1)}; // lambda = 2 in Q_3
    validate_invariants(m2);
    CHECK(nu_one_minus_lambda_pow(m2, 1) == Q(0));
    CHECK(nu_one_minus_lambda_pow(m2, 7) == Q(0));

    SUBCASE("oracle equivalence against direct field powers") {
        for (const auto& sample : sample_multipliers()) {
            auto lambda = parse_element(sample.lambda_expr, sample.field);
            auto inv2 = compute_invariants(lambda);
            auto one = PadicElement::one(sample.field, lambda.precision());
            PadicElement cur = lambda;
            for (long n = 1; n <= 300; ++n) {
                if (n > 1) cur = cur.mul(lambda);
                auto v = one.sub(cur).valuation();
                REQUIRE(v.is_exact());
                CHECK(v.value() == nu_one_minus_lambda_pow(inv2, n));
            }
        }
    }
}

TEST_CASE("nu_factorial") {
    CHECK(nu_factorial(0, 3) == Q(0));
    CHECK(nu_factorial(9, 3) == Q(4));
    for (long k = 1; k <= 6; ++k) {
        Integer pk = lindisk::int_pow(3, static_cast<unsigned long>(k));
        CHECK(nu_factorial(pk, 3) == make_ratio(pk - 1, 2));
    }

    SUBCASE("Legendre formula oracle") {
        for (const Integer p : {2, 3, 5, 7}) {
            for (long n = 0; n <= 200; ++n) {
                Rational legendre(0);
                Integer pk = p;
                while (pk <= n) {
                    legendre += Rational(n / pk.get_si());
                    pk *= p;
                }
                CHECK(nu_factorial(n, p) == legendre);
            }
        }
    }
}

TEST_CASE("sigma closed form") {
    auto f = Field::eisenstein_pure(3, 4, 96);
    auto inv = compute_invariants(parse_element("1+pi", f)); // m=1, s=1

    SUBCASE("all delta terms vanish when m p^s divides k-1") {
        long k = 1 + 3 * 7; // k-1 = 21 divisible by m p^s = 3
        CHECK(sigma(inv, k) == Rational(inv.s) * Rational(k - 1, inv.m) * Q(2, 3));
    }

    SUBCASE("k = 5 fixture") {
        CHECK(sigma(inv, 5) == Q(3));
    }

    SUBCASE("matches the defining sum") {
        for (const auto& sample : sample_multipliers()) {
            auto inv2 = compute_invariants(parse_element(sample.lambda_expr, sample.field));
            if (inv2.s < 1) continue;
            for (long k = 2; k <= 200; ++k) {
                Rational direct(0);
                Integer pj = 1;
                for (long j = 0; j < inv2.s; ++j) {
                    Integer lo = Integer(k - 1) / (Integer(inv2.m) * pj * inv2.p);
                    Integer hi = Integer(k - 1) / (Integer(inv2.m) * pj);
                    direct += Rational((hi - lo) * pj);
                    pj *= inv2.p;
                }
                CHECK(sigma(inv2, k) == direct);
            }
        }
    }
}

TEST_CASE("nu_product") {
    auto f = Field::eisenstein_pure(3, 4, 96);
    auto inv = compute_invariants(parse_element("1+pi", f));

    SUBCASE("single factor") {
        CHECK(nu_product(inv, 2) == inv.nu1m);
    }

    SUBCASE("k = 10 fixture: 19/4") {
        CHECK(nu_product(inv, 10) == Q(19, 4));
    }

    SUBCASE("closed form equals the summation oracle for k <= 500") {
        for (const auto& sample : sample_multipliers()) {
            auto inv2 = compute_invariants(parse_element(sample.lambda_expr, sample.field));
            Rational running(0);
            for (long k = 2; k <= 500; ++k) {
                running += nu_one_minus_lambda_pow(inv2, k - 1);
                CHECK(nu_product(inv2, k) == running);
            }
        }
    }
}

TEST_CASE("product estimates in valuation form") {
    for (const auto& sample : sample_multipliers()) {
        auto inv = compute_invariants(parse_element(sample.lambda_expr, sample.field));
        const Rational nu_rt = tilde_r(inv);
        const Integer mps = Integer(inv.m) * lindisk::int_pow(inv.p, static_cast<unsigned long>(inv.s));
        const Integer pt = lindisk::int_pow(inv.p, static_cast<unsigned long>(inv.t));
        const Rational nuRs1 = nu_R(inv.s + 1, inv.p).value();

        for (long k = 2; k <= 500; ++k) {
            const Rational np = nu_product(inv, k);

            // general upper estimate; its derivation bounds nu(M!) by
            // (M-1)/(p-1) and therefore needs M = floor((k-1)/(m p^s)) >= 1
            // (numerically false at k = 2 for 1+3^{1/4} otherwise)
            if (k - 1 >= mps) {
                const Rational rhs =
                    Rational(k - 1) * nu_rt - nuRs1 / Rational(inv.m) -
                    Rational(pt) * delta_frac(k, mps) * inv.nuG;
                CHECK(np <= rhs);
            }

            // strict form of the same estimate
            CHECK(np < Rational(k - 1) * nu_rt);

            // exact equality when (k-1)/(m p^s) is a nonnegative power of p
            if (mpz_divisible_p(Integer(k - 1).get_mpz_t(), mps.get_mpz_t())) {
                Integer q = Integer(k - 1) / mps;
                bool pow_of_p = true;
                while (q > 1) {
                    if (!mpz_divisible_p(q.get_mpz_t(), inv.p.get_mpz_t())) {
                        pow_of_p = false;
                        break;
                    }
                    q /= inv.p;
                }
                if (pow_of_p)
                    CHECK(np == Rational(k - 1) * nu_rt - Rational(1, inv.p - 1));
            }

            // sharpened estimate for m = 1, p^s not dividing k-1
            if (inv.m == 1 && inv.s >= 1 &&
                !mpz_divisible_p(Integer(k - 1).get_mpz_t(), mps.get_mpz_t())) {
                const Rational rhs2 = Rational(k - 1) * nu_rt - nuRs1 -
                                      delta_frac(k, inv.p) * inv.nu1m;
                CHECK(np <= rhs2);
            }
        }
    }
}

TEST_CASE("tilde_r scales as 1/m") {
    MultiplierInvariants base{Integer(3), 1, 1, 1, Q(1, 4), Q(1, 4)};
    validate_invariants(base);
    MultiplierInvariants doubled = base;
    doubled.m = 2;
    validate_invariants(doubled);
    CHECK(tilde_r(base) == Q(7, 12));
    CHECK(tilde_r(doubled) * 2 == tilde_r(base));
}
