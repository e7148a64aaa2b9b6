#include "doctest.h"
#include "helpers.hpp"

#include "lindisk/errors.hpp"
#include "lindisk/parser.hpp"
#include "lindisk/series.hpp"

using namespace lindisk;
using lindisk::testing::Q;

namespace {

FieldPtr quartic3(long prec = 96) { return Field::eisenstein_pure(3, 4, prec); }
FieldPtr q3(long prec = 96) { return Field::q_p(3, prec); }

PowerSeries random_map(const FieldPtr& f, std::mt19937_64& rng, long K, long prec) {
    std::vector<PadicElement> c(static_cast<size_t>(K) + 1, PadicElement::zero(f));
    c[1] = lindisk::testing::random_unit(f, rng, prec);
    for (long i = 2; i <= K; ++i)
        c[static_cast<size_t>(i)] = lindisk::testing::random_integral(f, rng, prec);
    return PowerSeries(f, std::move(c), false);
}

Integer binom(unsigned long n, unsigned long k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

} // namespace

TEST_CASE("compose") {
    auto f = quartic3();
    auto lambda = parse_element("1+pi", f);
    Bindings b{{"lambda", lambda}};
    auto P = parse_map("lambda*x + x^2", f, b);

    SUBCASE("identity is neutral") {
        auto id = PowerSeries::identity(f, f->default_precision());
        auto c = compose(id, P.viewed_at(8));
        for (long i = 0; i <= c.truncation(); ++i)
            CHECK(c.coeff(i).same_value(P.viewed_at(8).coeff(i)));
    }

    SUBCASE("linear maps compose multiplicatively") {
        auto mu = parse_element("2+pi^2", f);
        auto c = compose(PowerSeries::linear(lambda), PowerSeries::linear(mu));
        CHECK(c.coeff(1).same_value(lambda.mul(mu)));
    }

    SUBCASE("x^2 coefficient of P o P is lambda^2 + lambda") {
        auto c = compose(P, P);
        CHECK(c.coeff(2).same_value(lambda.mul(lambda).add(lambda)));
    }

    SUBCASE("zero constant term is required") {
        auto g = parse_map("1 + x", f);
        CHECK_THROWS_AS(compose(P, g), HypothesisViolated);
    }

    SUBCASE("coefficient k depends only on coefficients <= k of both inputs") {
        std::mt19937_64 rng(1111);
        auto g = random_map(f, rng, 12, 48);
        auto h = random_map(f, rng, 12, 48);
        auto full = compose(g, h);
        for (long k = 1; k <= 6; ++k) {
            auto partial = compose(g.viewed_at(k), h.viewed_at(k));
            CHECK(full.coeff(k).same_value(partial.coeff(k)));
        }
    }
}

TEST_CASE("iterate") {
    SUBCASE("one iteration is the map itself") {
        auto f = quartic3();
        auto P = parse_map("lambda*x + x^2", f, {{"lambda", parse_element("1+pi", f)}});
        auto it = iterate(P, 1);
        for (long i = 0; i <= 2; ++i)
            CHECK(it.coeff(i).same_value(P.coeff(i)));
    }

    SUBCASE("iterate(Q, 3) matches the binomial expansion of (1+x)^64 - 1") {
        auto q = q3();
        auto Qmap = parse_map("(1+x)^4 - 1", q);
        auto it = iterate(Qmap, 3);
        REQUIRE(it.truncation() == 64);
        for (long i = 1; i <= 64; ++i) {
            auto expect = PadicElement::from_integer(q, binom(64, static_cast<unsigned long>(i)),
                                                     q->default_precision());
            CHECK(it.coeff(i).same_value(expect));
        }
        CHECK(it.coeff(0).is_exact_zero());
    }

    SUBCASE("linear coefficient of the 9th iterate is lambda^9") {
        auto f = quartic3();
        auto lambda = parse_element("1+pi", f);
        auto P = parse_map("lambda*x + x^2", f, {{"lambda", lambda}});
        auto it = iterate(P.viewed_at(22), 9);
        CHECK(it.coeff(1).same_value(lambda.pow(9)));
        auto one = PadicElement::one(f, f->default_precision());
        auto v = one.sub(it.coeff(1)).valuation();
        REQUIRE(v.is_exact());
        CHECK(v.value() == Q(7, 4));
    }

    SUBCASE("additivity of iteration counts") {
        auto f = quartic3(48);
        std::mt19937_64 rng(4242);
        auto g = random_map(f, rng, 10, 48);
        auto lhs = iterate(g, 5);
        auto rhs = compose(iterate(g, 2), iterate(g, 3));
        for (long i = 0; i <= 10; ++i)
            CHECK(lhs.coeff(i).same_value(rhs.coeff(i)));
    }
}

TEST_CASE("weierstrass degree") {
    auto f = quartic3();

    SUBCASE("x^2") {
        auto g = parse_map("x^2", f);
        auto d = weierstrass_degree(g);
        REQUIRE(d.has_value());
        CHECK(*d == 2);
    }

    SUBCASE("wideg(P^9 - id) = 14") {
        auto lambda = parse_element("1+pi", f);
        auto P = parse_map("lambda*x + x^2", f, {{"lambda", lambda}});
        auto g = iterate(P.viewed_at(22), 9).sub_identity();
        auto d = weierstrass_degree(g);
        REQUIRE(d.has_value());
        CHECK(*d == 14);
    }

    SUBCASE("wideg(Q - id) = 3 with coefficients 3,6,4,1") {
        auto q = q3();
        auto Qmap = parse_map("(1+x)^4 - 1", q);
        auto g = Qmap.sub_identity();
        long expect[] = {3, 6, 4, 1};
        for (long i = 1; i <= 4; ++i)
            CHECK(g.coeff(i).same_value(
                PadicElement::from_integer(q, expect[i - 1], q->default_precision())));
        auto d = weierstrass_degree(g);
        REQUIRE(d.has_value());
        CHECK(*d == 3);
    }

    SUBCASE("no unit coefficient up to truncation") {
        auto q = q3();
        auto g = parse_map("3*x + 3*x^2", q);
        CHECK(!weierstrass_degree(g).has_value());
    }
}

TEST_CASE("newton polygon") {
    SUBCASE("Fig-3 polygon of the 9th iterate") {
        auto f = quartic3();
        auto lambda = parse_element("1+pi", f);
        auto P = parse_map("lambda*x + x^2", f, {{"lambda", lambda}});
        auto g = iterate(P.viewed_at(22), 9).sub_identity();
        auto np = newton_polygon(g);
        REQUIRE(np.vertices.size() == 4);
        CHECK(np.vertices[0] == NewtonPolygon::Vertex{1, Q(7, 4)});
        CHECK(np.vertices[1] == NewtonPolygon::Vertex{2, Q(3, 2)});
        CHECK(np.vertices[2] == NewtonPolygon::Vertex{5, Q(1)});
        CHECK(np.vertices[3] == NewtonPolygon::Vertex{14, Q(0)});
        REQUIRE(np.segments.size() == 3);
        CHECK(np.segments[0] == NewtonPolygon::Segment{Q(-1, 4), 1});
        CHECK(np.segments[1] == NewtonPolygon::Segment{Q(-1, 6), 3});
        CHECK(np.segments[2] == NewtonPolygon::Segment{Q(-1, 9), 9});
    }

    SUBCASE("Q - id has a single segment of slope -1/2 and length 2") {
        auto q = q3();
        auto g = parse_map("(1+x)^4 - 1", q).sub_identity();
        auto np = newton_polygon(g);
        REQUIRE(np.segments.size() == 1);
        CHECK(np.segments[0] == NewtonPolygon::Segment{Q(-1, 2), 2});
    }

    SUBCASE("two-point hull for 3x + x^2") {
        auto q = q3();
        auto g = parse_map("3*x + x^2", q);
        auto np = newton_polygon(g);
        REQUIRE(np.segments.size() == 1);
        CHECK(np.segments[0] == NewtonPolygon::Segment{Q(-1), 1});
    }

    SUBCASE("slopes recover prescribed root valuations") {
        auto f = quartic3(64);
        auto prec = f->default_precision();
        auto pi = PadicElement::uniformizer(f, prec);
        std::vector<PadicElement> roots{pi, pi.mul(pi),
                                        PadicElement::from_integer(f, 3, prec)};
        auto g = PowerSeries::identity(f, prec); // includes the root at 0
        for (const auto& r : roots) {
            PowerSeries factor(f, {r.negate(), PadicElement::one(f, prec)}, true);
            g = g.mul(factor);
        }
        g = g.scale(PadicElement::from_integer(f, 2, prec)); // unit multiple
        auto np = newton_polygon(g);
        REQUIRE(np.segments.size() == 3);
        CHECK(np.segments[0] == NewtonPolygon::Segment{Q(-1), 1});
        CHECK(np.segments[1] == NewtonPolygon::Segment{Q(-1, 2), 1});
        CHECK(np.segments[2] == NewtonPolygon::Segment{Q(-1, 4), 1});
    }

    SUBCASE("convexity and total length invariants") {
        auto f = quartic3(48);
        std::mt19937_64 rng(555);
        for (int trial = 0; trial < 10; ++trial) {
            auto g = random_map(f, rng, 12, 48);
            auto d = weierstrass_degree(g);
            if (!d.has_value()) continue;
            auto np = newton_polygon(g);
            long total = 0;
            for (size_t i = 0; i + 1 < np.segments.size(); ++i)
                CHECK(np.segments[i].slope < np.segments[i + 1].slope);
            for (const auto& s : np.segments) total += s.length;
            if (np.vertices.front().index == 1)
                CHECK(total == *d - 1);
        }
    }
}

TEST_CASE("disk bijectivity") {
    auto f = quartic3();
    auto lambda = parse_element("1+pi", f);

    SUBCASE("identity map on any disk") {
        auto h = PowerSeries::identity(f, f->default_precision());
        auto rep = disk_bijectivity(h, Q(1, 3));
        CHECK(rep.bijective);
        CHECK(rep.degree_on_closed_disk == 1);
    }

    SUBCASE("quadratic map on the closed unit disk is 2-to-1") {
        auto P = parse_map("lambda*x + x^2", f, {{"lambda", lambda}});
        auto rep = disk_bijectivity(P, Q(0));
        CHECK(rep.bijective);
        CHECK(rep.degree_on_closed_disk == 2);
    }

    SUBCASE("violating coefficient reported as non-bijective") {
        // h = x + (1/3)x^2 fails |a_2| r^2 <= r at r = 1
        auto h = parse_map("x + x^2/3", f);
        auto rep = disk_bijectivity(h, Q(0));
        CHECK(!rep.bijective);
    }
}

TEST_CASE("evaluate") {
    auto f = quartic3();

    SUBCASE("identity") {
        auto id = PowerSeries::identity(f, f->default_precision());
        auto x = parse_element("pi + pi^2", f);
        CHECK(evaluate(id, x).same_value(x));
    }

    SUBCASE("evaluate(3x + x^2, pi) has valuation 1/2") {
        auto g = parse_map("3*x + x^2", f);
        auto pi = PadicElement::uniformizer(f, f->default_precision());
        auto v = evaluate(g, pi).valuation();
        REQUIRE(v.is_exact());
        CHECK(v.value() == Q(1, 2));
    }

    SUBCASE("unit-sphere points are rejected") {
        auto P = parse_map("lambda*x + x^2", f, {{"lambda", parse_element("1+pi", f)}});
        auto c = parse_element("2", f);
        CHECK_THROWS_AS(evaluate(P, c), OutsideConvergenceCertificate);
    }

    SUBCASE("truncated-series evaluation caps the reported precision") {
        auto g = parse_map("x + x^2", f).viewed_at(3);
        auto pi = PadicElement::uniformizer(f, 64);
        auto y = evaluate(g, pi);
        CHECK(y.precision() == 4); // (K+1) * e * nu(pi) = 4 * 1
    }
}

TEST_CASE("compose is associative on sampled triples") {
    auto f = quartic3(48);
    std::mt19937_64 rng(987);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = random_map(f, rng, 8, 48);
        auto b = random_map(f, rng, 8, 48);
        auto c = random_map(f, rng, 8, 48);
        auto lhs = compose(compose(a, b), c);
        auto rhs = compose(a, compose(b, c));
        for (long i = 0; i <= 8; ++i)
            CHECK(lhs.coeff(i).same_value(rhs.coeff(i)));
    }
}
