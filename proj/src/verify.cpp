#include "lindisk/verify.hpp"

#include "lindisk/commands.hpp"
#include "lindisk/errors.hpp"
#include "lindisk/parser.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace lindisk {

namespace {

using Clock = std::chrono::steady_clock;

struct ItemRunner {
    VerifySummary& summary;

    void run(const std::string& name, double budget_seconds,
             const std::function<std::pair<bool, std::string>()>& body) {
        VerifyItem item;
        item.name = name;
        item.budget_seconds = budget_seconds;
        const auto start = Clock::now();
        try {
            auto [ok, detail] = body();
            item.pass = ok;
            item.detail = detail;
        } catch (const std::exception& ex) {
            item.pass = false;
            item.detail = std::string("exception: ") + ex.what();
        }
        item.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (item.pass && budget_seconds > 0 && item.seconds > budget_seconds) {
            item.pass = false;
            item.detail += " [over the " + std::to_string(budget_seconds) + " s budget]";
        }
        summary.items.push_back(std::move(item));
    }
};

JobConfig quartic_config(const std::string& lambda, const std::string& command,
                         const std::string& extra = "") {
    std::string text = "[field]\np = 3\nkind = eisenstein\nrelation = pi^4 = p\n"
                       "[multiplier]\nlambda = " +
                       lambda + "\n[job]\ncommand = " + command + "\n" + extra;
    return parse_config(text);
}

bool check_spectrum_level(const PeriodicSpectrum& spec, size_t i, long period,
                          const Rational& nu, long count) {
    if (i >= spec.levels.size()) return false;
    const auto& l = spec.levels[i];
    return l.period == period && l.nu == nu && l.count == count;
}

ConjugacyInputBuilder builder_for(const FieldPtr& base_field, const std::string& lambda_expr,
                                  const std::string& map_expr) {
    const Integer p = base_field->p();
    const long degree = base_field->degree();
    const auto kind = base_field->kind();
    const Integer order = base_field->cyclotomic_order();
    const long def = base_field->default_precision();
    return [=](long prec) {
        const long n = prec > 0 ? prec : def;
        FieldPtr field = kind == Field::Kind::Cyclotomic
                             ? Field::cyclotomic(p, order, n)
                             : Field::eisenstein_pure(p, degree, n);
        auto lam = parse_element(lambda_expr, field);
        auto f = parse_map(map_expr, field, {{"lambda", lam}});
        return ConjugacyInputs{f, lam};
    };
}

std::pair<bool, std::string> quadratic_law_item(const FieldPtr& field,
                                                const std::string& lambda_expr, long K) {
    auto build = builder_for(field, lambda_expr, "lambda*x + x^2");
    auto coeffs = solve_conjugacy_auto(build, K);
    auto inv = compute_invariants(build(0).lambda);
    auto rep = quadratic_bk_exact_check(coeffs, inv, build(0).f);
    std::ostringstream os;
    os << "lambda = " << lambda_expr << ", k in [2," << K << "]: "
       << (rep.passed() ? "exact law holds" : rep.detail);
    return {rep.passed(), os.str()};
}

} // namespace

bool VerifySummary::all_pass() const {
    for (const auto& i : items)
        if (!i.pass) return false;
    return !items.empty();
}

bool radii_values_match(const Json& radii_block, const std::string& expect_tilde_r,
                        const std::string& expect_r) {
    return radii_block.contains("nu_tilde_r") && radii_block.contains("nu_r") &&
           radii_block["nu_tilde_r"] == expect_tilde_r && radii_block["nu_r"] == expect_r;
}

VerifySummary run_paper_suite() {
    VerifySummary summary;
    ItemRunner runner{summary};

    // 1. quadratic radius of the running example
    runner.run("section_7_1_radius", 1.0, []() -> std::pair<bool, std::string> {
        auto out = run_analyze(quartic_config("1 + pi", "analyze"));
        const bool ok = radii_values_match(out.report.doc["radii"], "7/12", "1/2");
        return {ok, "analyze reports nu(r~) = 7/12 and nu(r) = 1/2"};
    });

    // 2. Newton polygon of the 9th iterate
    runner.run("section_7_1_newton", 30.0, []() -> std::pair<bool, std::string> {
        auto out = run_newton(quartic_config("1 + pi", "newton", "nmax = 2\n"));
        const Json expect_vertices =
            Json::array({Json::array({1, "7/4"}), Json::array({2, "3/2"}),
                         Json::array({5, "1"}), Json::array({14, "0"})});
        const Json expect_segments =
            Json::array({Json::array({"-1/4", 1}), Json::array({"-1/6", 3}),
                         Json::array({"-1/9", 9})});
        const Json& poly = out.report.doc["polygons"][2]["polygon"];
        bool ok = poly["vertices"] == expect_vertices && poly["segments"] == expect_segments;
        const Json& ram = out.report.doc["ramification"];
        ok = ok && ram.size() == 3 && ram[0]["i_n"] == 1 && ram[1]["i_n"] == 4 &&
             ram[2]["i_n"] == 13;
        return {ok, "vertices (1,7/4),(2,3/2),(5,1),(14,0); slopes -1/4,-1/6,-1/9; i = 1,4,13"};
    });

    // 3. multiplier invariants of the two Fig-1 examples
    runner.run("fig1_invariants", 5.0, []() -> std::pair<bool, std::string> {
        auto star = run_analyze(parse_config(
            "[field]\np = 3\nkind = cyclotomic\norder = 9\n[multiplier]\nlambda = 1 + pi + 3\n"
            "[job]\ncommand = analyze\n"));
        const Json& inv1 = star.report.doc["invariants"];
        bool ok = inv1["m"] == 1 && inv1["s"] == 2 && inv1["t"] == 0 && inv1["nu_gamma"] == "1";
        auto deep = run_analyze(parse_config(
            "[field]\np = 3\nkind = eisenstein\nrelation = pi^10 = p\n[multiplier]\n"
            "lambda = 1 + pi\n[job]\ncommand = analyze\n"));
        const Json& inv2 = deep.report.doc["invariants"];
        ok = ok && inv2["m"] == 1 && inv2["s"] == 2 && inv2["t"] == 2;
        return {ok, "gamma+3: (m,s,t) = (1,2,0), nu(gamma_0 - lambda) = 1; "
                    "1+3^{1/10}: (m,s,t) = (1,2,2)"};
    });

    // 4. exact coefficient law at K = 200 for three multipliers
    runner.run("lemma_5_1_exact_law_quartic", 60.0, [] {
        return quadratic_law_item(Field::eisenstein_pure(3, 4, 96), "1+pi", 200);
    });
    runner.run("lemma_5_1_exact_law_quartic_cubed", 60.0, [] {
        return quadratic_law_item(Field::eisenstein_pure(3, 4, 96), "1+pi^3", 200);
    });
    runner.run("lemma_5_1_exact_law_sqrt5", 60.0, [] {
        return quadratic_law_item(Field::eisenstein_pure(5, 2, 96), "1+pi", 200);
    });

    // 5. divergence witnesses on the critical sphere
    runner.run("divergence_witness", 60.0, []() -> std::pair<bool, std::string> {
        auto build = builder_for(Field::eisenstein_pure(3, 4, 96), "1+pi", "lambda*x + x^2");
        auto coeffs = solve_conjugacy_auto(build, 82);
        auto inv = compute_invariants(build(0).lambda);
        const Rational nu_tau = quadratic_radius(inv);
        bool ok = true;
        for (long k : {10L, 28L, 82L}) {
            const Valuation& nu = coeffs.at(k).nu;
            ok = ok && nu.is_exact() &&
                 nu.value() + Rational(k) * nu_tau == nu_tau + Rational(1, 2);
        }
        return {ok, "nu(b_k) + k nu(tau) = nu(tau) + 1/2 at k = 10, 28, 82"};
    });

    // 6. the nu1m = 1 fixture with coefficient cancellation
    runner.run("remark_5_3_fixture", 10.0, []() -> std::pair<bool, std::string> {
        auto field = Field::q_p(3, 160);
        auto lam = parse_element("1+3", field);
        auto f = parse_map("lambda*x + x^2", field, {{"lambda", lam}});
        auto coeffs = solve_conjugacy(f, lam, 4);
        bool ok = coeffs.at(2).nu.is_exact() && coeffs.at(2).nu.value() == Rational(-1) &&
                  coeffs.at(3).nu.is_exact() && coeffs.at(3).nu.value() == Rational(-2) &&
                  coeffs.at(4).nu.is_exact() && coeffs.at(4).nu.value() == Rational(0);
        auto three_lam2 =
            PadicElement::from_integer(field, 3, lam.precision()).mul(lam.pow(2));
        auto combo = coeffs.at(2).b.add(three_lam2.mul(coeffs.at(3).b));
        ok = ok && combo.valuation().is_exact() && combo.valuation().value() == Rational(2) &&
             combo.same_value(parse_element("9/20", field));
        return {ok, "nu(b_2,b_3,b_4) = -1,-2,0 and b_2 + 3 lambda^2 b_3 = 9/20 (valuation 2)"};
    });

    // 7. closed-form valuations against direct field powers, n <= 1000
    runner.run("lemma_3_4_oracle", 60.0, []() -> std::pair<bool, std::string> {
        struct Sample {
            FieldPtr field;
            std::string expr;
        };
        std::vector<Sample> samples{
            {Field::eisenstein_pure(3, 4, 96), "1+pi"},
            {Field::eisenstein_pure(3, 4, 96), "1+pi^3"},
            {Field::eisenstein_pure(5, 2, 96), "1+pi"},
            {Field::eisenstein_pure(3, 10, 120), "1+pi"},
            {Field::cyclotomic(3, 9, 96), "1+pi+3"},
            {Field::q_p(5, 96), "2+5"},
        };
        for (const auto& s : samples) {
            auto lambda = parse_element(s.expr, s.field);
            auto inv = compute_invariants(lambda);
            auto one = PadicElement::one(s.field, lambda.precision());
            PadicElement cur = lambda;
            for (long n = 1; n <= 1000; ++n) {
                if (n > 1) cur = cur.mul(lambda);
                auto v = one.sub(cur).valuation();
                if (!v.is_exact() || v.value() != nu_one_minus_lambda_pow(inv, n))
                    return {false, s.expr + " disagrees at n = " + std::to_string(n)};
            }
        }
        return {true, "formula = direct valuation for 6 multipliers (m up to 4), n <= 1000"};
    });

    // 8. Corollary C: boundary free of periodic points, plus the contrast map
    runner.run("corollary_c", 60.0, []() -> std::pair<bool, std::string> {
        auto f3 = Field::eisenstein_pure(3, 4, 96);
        auto lam3 = parse_element("1+pi", f3);
        auto rep3 = boundary_free_check(
            parse_map("lambda*x + x^2", f3, {{"lambda", lam3}}), compute_invariants(lam3));
        bool ok = rep3.passed() && rep3.nu_r == Rational(1, 2);

        auto f5 = Field::eisenstein_pure(5, 2, 96);
        auto lam5 = parse_element("1+pi", f5);
        auto rep5 = boundary_free_check(
            parse_map("lambda*x + x^2 + 2*x^3", f5, {{"lambda", lam5}}),
            compute_invariants(lam5));
        ok = ok && rep5.passed();

        // contrast: r(Q) = sigma_0 = 3^{-1/2}, so the boundary carries the
        // two nonzero fixed points
        auto q3 = Field::q_p(3, 96);
        auto spec = periodic_spectrum_newton(parse_map("(1+x)^4 - 1", q3), 1);
        const Rational nu_r_Q(1, 2);
        ok = ok && check_spectrum_level(spec, 0, 1, nu_r_Q, 2) &&
             check_spectrum_level(spec, 1, 3, make_ratio(1, 6), 6);
        return {ok, "boundary free for both family maps; r(Q) = 3^{-1/2} hits Q's fixed sphere"};
    });

    // 9. property suites
    runner.run("property_suites", 300.0, []() -> std::pair<bool, std::string> {
        std::ostringstream os;

        // ultrametric & multiplicativity & ring axioms
        {
            auto field = Field::eisenstein_pure(3, 4, 64);
            std::mt19937_64 rng(20130408);
            auto random_elt = [&](long prec) {
                std::vector<Integer> c(4);
                for (auto& z : c) {
                    Integer acc = 0;
                    for (int d = 0; d < 16; ++d) acc = acc * 3 + Integer(rng() % 3);
                    z = acc;
                }
                return PadicElement::from_pi_coeffs(field, c, prec);
            };
            for (int i = 0; i < 200; ++i) {
                auto a = random_elt(48);
                auto b = random_elt(48);
                auto c = random_elt(48);
                auto va = a.valuation(), vb = b.valuation();
                if (va.is_exact() && vb.is_exact()) {
                    auto vs = a.add(b).valuation();
                    if (!vs.certainly_at_least(std::min(va.value(), vb.value())))
                        return {false, "ultrametric law failed"};
                    if (va.value() != vb.value() &&
                        (!vs.is_exact() || vs.value() != std::min(va.value(), vb.value())))
                        return {false, "ultrametric equality failed"};
                    auto vp = a.mul(b).valuation();
                    if (!vp.is_exact() || vp.value() != va.value() + vb.value())
                        return {false, "multiplicativity failed"};
                }
                if (!a.mul(b.add(c)).same_value(a.mul(b).add(a.mul(c))))
                    return {false, "distributivity failed"};
                if (!a.mul(b.mul(c)).same_value(a.mul(b).mul(c)))
                    return {false, "associativity failed"};
            }
            os << "ultrametric/ring laws on 200 samples; ";
        }

        // closed forms vs brute force sums, k <= 500
        {
            struct Sample {
                FieldPtr field;
                std::string expr;
            };
            std::vector<Sample> samples{
                {Field::eisenstein_pure(3, 4, 96), "1+pi"},
                {Field::eisenstein_pure(3, 4, 96), "1+pi^3"},
                {Field::eisenstein_pure(5, 2, 96), "1+pi"},
                {Field::eisenstein_pure(3, 10, 120), "1+pi"},
                {Field::cyclotomic(3, 9, 96), "1+pi+3"},
                {Field::q_p(5, 96), "2+5"},
                {Field::q_p(3, 96), "1+3"},
            };
            for (const auto& s : samples) {
                auto inv = compute_invariants(parse_element(s.expr, s.field));
                Rational running(0);
                for (long k = 2; k <= 500; ++k) {
                    running += nu_one_minus_lambda_pow(inv, k - 1);
                    if (nu_product(inv, k) != running)
                        return {false, "nu_product mismatch for " + s.expr};
                    if (inv.s >= 1) {
                        Rational direct(0);
                        Integer pj = 1;
                        for (long j = 0; j < inv.s; ++j) {
                            Integer lo = Integer(k - 1) / (Integer(inv.m) * pj * inv.p);
                            Integer hi = Integer(k - 1) / (Integer(inv.m) * pj);
                            direct += Rational((hi - lo) * pj);
                            pj *= inv.p;
                        }
                        if (sigma(inv, k) != direct)
                            return {false, "sigma mismatch for " + s.expr};
                    }
                }
            }
            os << "Sigma/nu_product closed forms vs sums (7 multipliers, k <= 500); ";
        }

        // Sen congruences
        {
            auto f3 = Field::eisenstein_pure(3, 4, 96);
            auto lam = parse_element("1+pi", f3);
            std::vector<PowerSeries> maps{
                parse_map("lambda*x + x^2", f3, {{"lambda", lam}}),
                parse_map("lambda*x + x^2 + 2*x^3 + x^4", f3, {{"lambda", lam}}),
                parse_map("(1+x)^4 - 1", Field::q_p(3, 96)),
            };
            for (const auto& m : maps) {
                auto ram = ramification_numbers(m, 2);
                Integer pn = 1;
                for (size_t n = 1; n < ram.entries.size(); ++n) {
                    pn *= 3;
                    if (!ram.entries[n].i_n || !ram.entries[n - 1].i_n)
                        return {false, "degenerate ramification entry"};
                    Integer diff =
                        Integer(*ram.entries[n].i_n) - Integer(*ram.entries[n - 1].i_n);
                    if (!mpz_divisible_p(diff.get_mpz_t(), pn.get_mpz_t()))
                        return {false, "Sen congruence failed"};
                }
            }
            os << "Sen congruences (3 maps, nmax = 2); ";
        }

        // formula vs polygon spectra for minimally ramified samples
        {
            struct Case {
                FieldPtr field;
                std::string lambda;
                std::string map;
                long nmax;
            };
            std::vector<Case> cases{
                {Field::eisenstein_pure(3, 4, 96), "1+pi", "lambda*x + x^2", 2},
                {Field::eisenstein_pure(3, 4, 96), "1+pi", "lambda*x + x^2 + 2*x^3", 2},
                {Field::eisenstein_pure(5, 2, 96), "1+pi", "lambda*x + x^2 + 2*x^3", 1},
                {Field::eisenstein_pure(3, 4, 96), "1+pi^3", "lambda*x + x^2", 1},
            };
            for (const auto& c : cases) {
                auto lam = parse_element(c.lambda, c.field);
                auto f = parse_map(c.map, c.field, {{"lambda", lam}});
                auto by_formula =
                    periodic_spectrum_formula(compute_invariants(lam), c.nmax);
                auto by_polygon = periodic_spectrum_newton(f, c.nmax);
                if (by_formula.levels.size() != by_polygon.levels.size())
                    return {false, "spectrum level counts differ for " + c.map};
                for (size_t i = 0; i < by_formula.levels.size(); ++i)
                    if (!(by_formula.levels[i] == by_polygon.levels[i]))
                        return {false, "spectrum level mismatch for " + c.map};
            }
            os << "formula = polygon spectra (4 maps); ";
        }

        // Corollary 5.6 invariance across 20 sampled perturbations, K = 200
        {
            auto field = Field::eisenstein_pure(3, 4, 96);
            const long K = 200;
            auto base = builder_for(field, "1+pi", "lambda*x + x^2");
            auto base_coeffs = solve_conjugacy_auto(base, K);
            std::mt19937_64 rng(5013);
            for (int trial = 0; trial < 20; ++trial) {
                // a_3 with residue in {0, 2} keeps |a_2^2 - a_3| = 1
                std::vector<Integer> tail(4); // a_3..a_6
                for (auto& z : tail) {
                    Integer acc = 0;
                    for (int d = 0; d < 12; ++d) acc = acc * 3 + Integer(rng() % 3);
                    z = acc;
                }
                if (tail[0] % 3 == 1) tail[0] += 1;
                std::ostringstream map;
                map << "lambda*x + x^2";
                for (size_t i = 0; i < tail.size(); ++i)
                    map << " + " << tail[i].get_str() << "*x^" << (i + 3);
                auto build = builder_for(field, "1+pi", map.str());
                if (!in_perturbed_quadratic_family(build(0).f))
                    return {false, "perturbation sample left the family"};
                auto coeffs = solve_conjugacy_auto(build, K);
                for (long k = 2; k <= K; ++k)
                    if (!(coeffs.at(k).nu == base_coeffs.at(k).nu))
                        return {false, "profile deviates at k = " + std::to_string(k) +
                                           " for perturbation " + std::to_string(trial)};
            }
            os << "Corollary 5.6 invariance over 20 perturbations (K = 200)";
        }

        return {true, os.str()};
    });

    return summary;
}

int run_verify(const std::string& suite, std::ostream& out) {
    if (suite != "paper")
        throw ConfigError("unknown verify suite '" + suite + "'");
    VerifySummary summary = run_paper_suite();
    size_t passed = 0;
    for (const auto& item : summary.items) {
        out << (item.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(34) << item.name
            << std::right << std::fixed << std::setprecision(2) << std::setw(8) << item.seconds
            << " s  " << item.detail << "\n";
        if (item.pass) ++passed;
    }
    out << passed << "/" << summary.items.size() << " criteria passed\n";
    return summary.all_pass() ? 0 : 1;
}

} // namespace lindisk
