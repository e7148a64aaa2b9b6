#include "doctest.h"
#include "helpers.hpp"

#include "lindisk/dynamics.hpp"
#include "lindisk/errors.hpp"
#include "lindisk/parser.hpp"

using namespace lindisk;
using lindisk::testing::Q;

namespace {

FieldPtr quartic3(long prec = 96) { return Field::eisenstein_pure(3, 4, prec); }

PowerSeries quadratic_map(const FieldPtr& f, const std::string& lambda_expr) {
    auto lam = parse_element(lambda_expr, f);
    return parse_map("lambda*x + x^2", f, {{"lambda", lam}});
}

} // namespace

TEST_CASE("ramification numbers") {
    SUBCASE("the running quadratic example has i = 1, 4, 13") {
        auto f = quartic3();
        auto P = quadratic_map(f, "1+pi");
        auto ram = ramification_numbers(P, 2);
        REQUIRE(ram.entries.size() == 3);
        CHECK(ram.entries[0].i_n == 1);
        CHECK(ram.entries[1].i_n == 4);
        CHECK(ram.entries[2].i_n == 13);
        CHECK(ram.minimally_ramified_profile(3));
    }

    SUBCASE("Q = (1+x)^4 - 1 is not minimally ramified: i_0 = 2") {
        auto q3 = Field::q_p(3, 96);
        auto Qmap = parse_map("(1+x)^4 - 1", q3);
        auto ram = ramification_numbers(Qmap, 1);
        CHECK(ram.entries[0].i_n == 2);
        CHECK(ram.entries[1].i_n == 8);
        CHECK(!ram.minimally_ramified_profile(3));
    }

    SUBCASE("identity map is degenerate") {
        auto q3 = Field::q_p(3, 96);
        auto id = parse_map("x", q3);
        auto ram = ramification_numbers(id, 1);
        CHECK(!ram.entries[0].i_n.has_value());
        CHECK(!ram.entries[1].i_n.has_value());
    }

    SUBCASE("linear contraction towards the multiplier has no nonzero fixed points") {
        auto q3 = Field::q_p(3, 96);
        auto lam = parse_element("1+3", q3);
        auto t = parse_map("lambda*x", q3, {{"lambda", lam}});
        auto ram = ramification_numbers(t, 2);
        for (const auto& e : ram.entries)
            CHECK(e.i_n == 0);
    }

    SUBCASE("Sen congruence i_n = i_{n-1} mod p^n") {
        auto f = quartic3();
        std::vector<PowerSeries> maps{
            quadratic_map(f, "1+pi"),
            parse_map("lambda*x + x^2 + 2*x^3 + x^4", f,
                      {{"lambda", parse_element("1+pi", f)}}),
            parse_map("(1+x)^4 - 1", Field::q_p(3, 96)),
        };
        for (const auto& m : maps) {
            auto ram = ramification_numbers(m, 2);
            Integer pn = 1;
            for (size_t n = 1; n < ram.entries.size(); ++n) {
                pn *= 3;
                REQUIRE(ram.entries[n].i_n.has_value());
                Integer diff = Integer(*ram.entries[n].i_n) - Integer(*ram.entries[n - 1].i_n);
                CHECK(mpz_divisible_p(diff.get_mpz_t(), pn.get_mpz_t()));
            }
        }
    }
}

TEST_CASE("minimal ramification criterion") {
    auto f = quartic3();
    CHECK(is_minimally_ramified(quadratic_map(f, "1+pi")));
    CHECK(!is_minimally_ramified(parse_map("(1+x)^4 - 1", Field::q_p(3, 96))));
    // |a_2^2 - a_3| < 1 fails the criterion
    CHECK(!is_minimally_ramified(parse_map("lambda*x + x^2 + x^3", f,
                                           {{"lambda", parse_element("1+pi", f)}})));
    // p = 2 always fails
    auto q2 = Field::q_p(2, 96);
    CHECK(!is_minimally_ramified(parse_map("3*x + x^2", q2)));
}

TEST_CASE("kappa slopes") {
    auto f = quartic3();
    auto inv = compute_invariants(parse_element("1+pi", f));
    CHECK(kappa(inv, 1) == Q(-1, 6));
    CHECK(kappa(inv, 2) == Q(-1, 9));
    CHECK(kappa(inv, 3) == Q(-1, 27));

    auto f10 = Field::eisenstein_pure(3, 10, 120);
    auto inv10 = compute_invariants(parse_element("1+pi", f10));
    CHECK(kappa(inv10, 1) == Q(-1, 15)); // -(p-1)/p * 1/10

    SUBCASE("defining formula oracle") {
        std::vector<MultiplierInvariants> invs{
            inv, inv10,
            compute_invariants(parse_element("1+pi+3", Field::cyclotomic(3, 9, 96))),
            compute_invariants(parse_element("1+pi^3", f)),
            compute_invariants(parse_element("1+pi", Field::eisenstein_pure(5, 2, 96))),
        };
        for (const auto& iv : invs) {
            Integer pn = 1;
            for (long n = 1; n <= 6; ++n) {
                pn *= iv.p;
                const Rational lhs = kappa(iv, n);
                const Rational rhs =
                    -(nu_one_minus_lambda_pow(iv, pn.get_si()) -
                      nu_one_minus_lambda_pow(iv, pn.get_si() / iv.p.get_si())) /
                    Rational(pn);
                CHECK(lhs == rhs);
            }
        }
    }

    CHECK_THROWS_AS(kappa(MultiplierInvariants{Integer(3), 2, 0, 0, Q(2), Q(2)}, 1),
                    HypothesisViolated);
}

TEST_CASE("formula spectrum") {
    SUBCASE("lambda = 1+3^{1/4}") {
        auto inv = compute_invariants(parse_element("1+pi", quartic3()));
        auto spec = periodic_spectrum_formula(inv, 3);
        REQUIRE(spec.levels.size() == 4);
        CHECK(spec.levels[0] == PeriodicSpectrum::Level{0, Integer(1), Q(1, 4), Integer(1)});
        CHECK(spec.levels[1] == PeriodicSpectrum::Level{1, Integer(3), Q(1, 6), Integer(3)});
        CHECK(spec.levels[2] == PeriodicSpectrum::Level{2, Integer(9), Q(1, 9), Integer(9)});
        CHECK(spec.levels[3] == PeriodicSpectrum::Level{3, Integer(27), Q(1, 27), Integer(27)});
        CHECK(*spec.nu_rho == Q(1, 4));
        CHECK(!*spec.rho_is_psi);
    }

    SUBCASE("lambda* = gamma + 3 puts level s = 2 on the Psi sphere") {
        auto inv = compute_invariants(parse_element("1+pi+3", Field::cyclotomic(3, 9, 96)));
        auto spec = periodic_spectrum_formula(inv, 2);
        CHECK(spec.levels[1].nu == make_ratio(2, 3) * Q(1, 6)); // (p-1)/p * nu1m
        CHECK(spec.levels[2].nu == Q(5, 18));                   // nu(Psi)
        CHECK(*spec.nu_rho == Q(5, 18));
        CHECK(*spec.rho_is_psi); // s - t = 2
    }

    SUBCASE("s = 0 multiplier: fixed level then 1/p^n") {
        auto inv = compute_invariants(parse_element("1+pi^3", quartic3()));
        auto spec = periodic_spectrum_formula(inv, 2);
        CHECK(spec.levels[0].nu == Q(3, 4));
        CHECK(spec.levels[1].nu == Q(1, 3));
        CHECK(spec.levels[2].nu == Q(1, 9));
    }

    SUBCASE("rho classification matches the max comparison") {
        std::vector<std::pair<FieldPtr, std::string>> samples{
            {quartic3(), "1+pi"},
            {quartic3(), "1+pi^3"},
            {Field::cyclotomic(3, 9, 96), "1+pi+3"},
            {Field::eisenstein_pure(3, 10, 120), "1+pi"},
            {Field::eisenstein_pure(5, 2, 96), "1+pi"},
        };
        for (const auto& [fld, expr] : samples) {
            auto inv = compute_invariants(parse_element(expr, fld));
            auto spec = periodic_spectrum_formula(inv, 1);
            CHECK(*spec.rho_is_psi == (psi(inv) >= inv.nu1m));
        }
    }
}

TEST_CASE("newton spectrum") {
    SUBCASE("Fig-3 levels for the running quadratic example") {
        auto P = quadratic_map(quartic3(), "1+pi");
        auto spec = periodic_spectrum_newton(P, 2);
        REQUIRE(spec.levels.size() == 3);
        CHECK(spec.levels[0] == PeriodicSpectrum::Level{0, Integer(1), Q(1, 4), Integer(1)});
        CHECK(spec.levels[1] == PeriodicSpectrum::Level{1, Integer(3), Q(1, 6), Integer(3)});
        CHECK(spec.levels[2] == PeriodicSpectrum::Level{2, Integer(9), Q(1, 9), Integer(9)});
        CHECK(spec.verified_cycle_structure);
    }

    SUBCASE("Q = (1+x)^4 - 1: fixed points on sigma_0, six points of period 3") {
        auto Qmap = parse_map("(1+x)^4 - 1", Field::q_p(3, 96));
        auto spec = periodic_spectrum_newton(Qmap, 1);
        REQUIRE(spec.levels.size() == 2);
        CHECK(spec.levels[0] == PeriodicSpectrum::Level{0, Integer(1), Q(1, 2), Integer(2)});
        CHECK(spec.levels[1] == PeriodicSpectrum::Level{1, Integer(3), Q(1, 6), Integer(6)});
        CHECK(!spec.verified_cycle_structure);
    }

    SUBCASE("a purely linear map has an empty spectrum") {
        auto q3 = Field::q_p(3, 96);
        auto t = parse_map("lambda*x", q3, {{"lambda", parse_element("1+3", q3)}});
        auto spec = periodic_spectrum_newton(t, 2);
        CHECK(spec.levels.empty());
    }

    SUBCASE("formula and polygon spectra agree for minimally ramified maps") {
        struct Case {
            FieldPtr field;
            std::string lambda;
            std::string map;
            long nmax;
        };
        std::vector<Case> cases{
            {quartic3(), "1+pi", "lambda*x + x^2", 2},
            {quartic3(), "1+pi", "lambda*x + x^2 + 2*x^3", 2},
            {Field::eisenstein_pure(5, 2, 96), "1+pi", "lambda*x + x^2 + 2*x^3", 1},
            {quartic3(), "1+pi^3", "lambda*x + x^2", 1},
        };
        for (const auto& c : cases) {
            auto lam = parse_element(c.lambda, c.field);
            auto f = parse_map(c.map, c.field, {{"lambda", lam}});
            REQUIRE(is_minimally_ramified(f));
            auto inv = compute_invariants(lam);
            auto by_formula = periodic_spectrum_formula(inv, c.nmax);
            auto by_polygon = periodic_spectrum_newton(f, c.nmax);
            REQUIRE(by_formula.levels.size() == by_polygon.levels.size());
            for (size_t i = 0; i < by_formula.levels.size(); ++i)
                CHECK(by_formula.levels[i] == by_polygon.levels[i]);
        }
    }

    SUBCASE("single new segment per level with slope kappa_n (Lemma 6.2)") {
        auto lam = parse_element("1+pi", quartic3());
        auto f = parse_map("lambda*x + x^2 + x^4", quartic3(), {{"lambda", lam}});
        REQUIRE(is_minimally_ramified(f));
        auto inv = compute_invariants(lam);
        auto spec = periodic_spectrum_newton(f, 2);
        REQUIRE(spec.levels.size() == 3);
        for (long n = 1; n <= 2; ++n) {
            const auto& lvl = spec.levels[static_cast<size_t>(n)];
            CHECK(lvl.n == n);
            CHECK(lvl.count == int_pow(3, static_cast<unsigned long>(n)));
            CHECK(lvl.nu == -kappa(inv, n));
        }
    }
}

TEST_CASE("boundary-free check (Corollary C)") {
    SUBCASE("quadratic example over Q_3(3^{1/4})") {
        auto f = quartic3();
        auto lam = parse_element("1+pi", f);
        auto P = parse_map("lambda*x + x^2", f, {{"lambda", lam}});
        auto rep = boundary_free_check(P, compute_invariants(lam), true, 1);
        CHECK(rep.passed());
        CHECK(*rep.nu_r == Q(1, 2));
        CHECK(*rep.nu_rho == Q(1, 4));
        REQUIRE(rep.newton_spectrum.has_value());
        for (const auto& lvl : rep.formula_spectrum->levels)
            CHECK(lvl.nu != *rep.nu_r);
    }

    SUBCASE("cubic perturbation over Q_5(sqrt 5)") {
        auto f = Field::eisenstein_pure(5, 2, 96);
        auto lam = parse_element("1+pi", f);
        auto g = parse_map("lambda*x + x^2 + 2*x^3", f, {{"lambda", lam}});
        auto rep = boundary_free_check(g, compute_invariants(lam));
        CHECK(rep.passed());
        CHECK(*rep.nu_r == Q(13, 20));
        CHECK(*rep.nu_rho == Q(1, 2));
    }

    SUBCASE("contrast: Q's linearization is broken by fixed points on the boundary") {
        auto q3 = Field::q_p(3, 96);
        auto Qmap = parse_map("(1+x)^4 - 1", q3);
        auto lamQ = parse_element("4", q3);
        auto rep = boundary_free_check(Qmap, compute_invariants(lamQ), true, 1);
        CHECK(rep.status == LawCheckReport::Status::NotApplicable);
        REQUIRE(rep.newton_spectrum.has_value());
        // r(Q) = sigma_0 = p^{-1/(p-1)}: the fixed-point sphere carries the boundary
        const Rational nu_r_Q = Q(1, 2);
        CHECK(rep.newton_spectrum->levels[0].nu == nu_r_Q);
        CHECK(rep.newton_spectrum->levels[0].count == 2);
    }
}

TEST_CASE("critical orbit") {
    auto f = quartic3();
    auto lam = parse_element("1+pi", f);
    auto P = parse_map("lambda*x + x^2", f, {{"lambda", lam}});

    SUBCASE("orbit valuations settle on the fixed-point sphere") {
        auto orbit = critical_orbit(P, 6);
        REQUIRE(orbit.size() == 7);
        CHECK(orbit[0].value() == Q(0));
        CHECK(orbit[1].value() == Q(0));
        for (size_t k = 2; k < orbit.size(); ++k)
            CHECK(orbit[k].value() == Q(1, 4));
    }

    SUBCASE("kmax = 0 gives only the critical point") {
        auto orbit = critical_orbit(P, 0);
        REQUIRE(orbit.size() == 1);
        CHECK(orbit[0].value() == Q(0));
    }

    SUBCASE("the boundary valuation avoids the post-critical valuations") {
        auto inv = compute_invariants(lam);
        const Rational nu_r = quadratic_radius(inv);
        for (const auto& v : critical_orbit(P, 8))
            CHECK(v.value() != nu_r);
    }

    SUBCASE("non-quadratic polynomials are rejected") {
        auto cubic = parse_map("lambda*x + x^3", f, {{"lambda", lam}});
        CHECK_THROWS_AS(critical_orbit(cubic, 3), UnsupportedDegree);
        auto lin = parse_map("lambda*x", f, {{"lambda", lam}});
        CHECK_THROWS_AS(critical_orbit(lin, 3), UnsupportedDegree);
    }
}
