#include "lindisk/commands.hpp"

#include "lindisk/errors.hpp"
#include "lindisk/parser.hpp"

#include <future>

namespace lindisk {

namespace {

Json input_echo(const JobConfig& cfg) {
    Json j;
    j["field"] = cfg.make_field()->describe();
    j["precision_pi_digits"] = cfg.pi_digits;
    j["lambda"] = cfg.lambda_expr;
    j["map"] = cfg.map_expr;
    j["command"] = cfg.command;
    return j;
}

ReportDocument base_report(const JobConfig& cfg) {
    ReportDocument rep;
    rep.doc["tool"] = "lindisk";
    rep.doc["version"] = kToolVersion;
    rep.doc["input"] = input_echo(cfg);
    return rep;
}

ConjugacyInputBuilder config_builder(const JobConfig& cfg) {
    return [cfg](long prec) {
        JobConfig local = cfg;
        if (prec > 0) local.pi_digits = prec;
        FieldPtr field = local.make_field();
        auto lam = parse_element(local.lambda_expr, field);
        auto f = parse_map(local.map_expr, field, {{"lambda", lam}});
        return ConjugacyInputs{f, lam};
    };
}

} // namespace

CommandOutcome run_analyze(const JobConfig& cfg) {
    FieldPtr field = cfg.make_field();
    auto lambda = parse_element(cfg.lambda_expr, field);
    auto inv = compute_invariants(lambda);
    auto radii = build_radius_report(inv);

    CommandOutcome out{base_report(cfg), std::nullopt, std::nullopt, std::nullopt};
    out.report.doc["invariants"] = invariants_json(inv);
    out.report.doc["radii"] = radii_json(radii, cfg.decimal, inv.p);
    Json spectra = Json::array();
    if (inv.m == 1 && inv.nu1m > 0 && inv.nu1m < 1)
        spectra.push_back(
            spectrum_json(periodic_spectrum_formula(inv, cfg.nmax), cfg.decimal, inv.p));
    out.report.doc["spectra"] = spectra;
    return out;
}

CommandOutcome run_conjugacy(const JobConfig& cfg) {
    FieldPtr field = cfg.make_field();
    auto lambda = parse_element(cfg.lambda_expr, field);
    auto inv = compute_invariants(lambda);
    auto f_probe = parse_map(cfg.map_expr, field, {{"lambda", lambda}});
    auto coeffs = solve_conjugacy_auto(config_builder(cfg), cfg.K);

    CommandOutcome out{base_report(cfg), std::nullopt, std::nullopt, std::nullopt};
    out.report.doc["invariants"] = invariants_json(inv);
    out.report.doc["radii"] = radii_json(build_radius_report(inv), cfg.decimal, inv.p);
    out.report.doc["coefficients"] = coefficients_json(coeffs);

    // Lemma 2.3 bound on every certified entry.
    LawCheckReport bound;
    bound.name = "coefficient_bound";
    bound.status = LawCheckReport::Status::Pass;
    for (long k = 2; k <= coeffs.K; ++k) {
        if (!coeffs.at(k).nu.certainly_at_least(-nu_product(inv, k))) {
            bound.status = LawCheckReport::Status::Fail;
            bound.first_failure_k = k;
            break;
        }
    }
    Json checks = Json::array();
    checks.push_back(check_json(bound));
    checks.push_back(check_json(quadratic_bk_exact_check(coeffs, inv, f_probe)));
    checks.push_back(check_json(tau_profile(coeffs, inv)));
    out.report.doc["checks"] = checks;
    return out;
}

CommandOutcome run_newton(const JobConfig& cfg) {
    FieldPtr field = cfg.make_field();
    auto lambda = parse_element(cfg.lambda_expr, field);
    auto inv = compute_invariants(lambda);
    auto f = parse_map(cfg.map_expr, field, {{"lambda", lambda}});
    if (f.truncation() < 1 || !f.coeff(1).same_value(lambda))
        throw HypothesisViolated("the configured map must satisfy f'(0) = lambda");

    auto analysis = analyze_iterates(f, cfg.nmax);
    auto boundary = boundary_free_check(f, inv, false);

    CommandOutcome out{base_report(cfg), std::nullopt, std::nullopt, std::nullopt};
    out.report.doc["invariants"] = invariants_json(inv);
    out.report.doc["radii"] = radii_json(build_radius_report(inv), cfg.decimal, inv.p);
    out.report.doc["ramification"] = ramification_json(analysis.ramification);
    out.report.doc["minimally_ramified"] = is_minimally_ramified(f);

    Json polys = Json::array();
    for (size_t n = 0; n < analysis.polygons.size(); ++n) {
        Json entry;
        entry["n"] = static_cast<long>(n);
        entry["polygon"] = polygon_json(analysis.polygons[n]);
        polys.push_back(entry);
    }
    out.report.doc["polygons"] = polys;

    Json spectra = Json::array();
    spectra.push_back(spectrum_json(analysis.spectrum, cfg.decimal, inv.p));
    if (inv.m == 1 && inv.nu1m > 0 && inv.nu1m < 1)
        spectra.push_back(
            spectrum_json(periodic_spectrum_formula(inv, cfg.nmax), cfg.decimal, inv.p));
    out.report.doc["spectra"] = spectra;
    out.report.doc["boundary_free"] = boundary_json(boundary);

    out.spectrum_csv = spectrum_csv(analysis.spectrum);
    if (!analysis.polygons.empty()) {
        out.polygon_csv = polygon_csv(analysis.polygons.back());
        out.svg = polygon_svg(analysis.polygons.back());
    }
    return out;
}

CommandOutcome run_job(const JobConfig& cfg) {
    if (cfg.command == "analyze") return run_analyze(cfg);
    if (cfg.command == "conjugacy") return run_conjugacy(cfg);
    if (cfg.command == "newton") return run_newton(cfg);
    throw ConfigError("run_job cannot dispatch command '" + cfg.command + "'");
}

Json run_sweep(const JobConfig& cfg, long jobs) {
    std::vector<std::string> lambdas = cfg.sweep;
    if (lambdas.empty()) lambdas.push_back(cfg.lambda_expr);
    if (jobs < 1) jobs = 1;

    std::vector<Json> results(lambdas.size());
    for (size_t base = 0; base < lambdas.size(); base += static_cast<size_t>(jobs)) {
        const size_t end = std::min(lambdas.size(), base + static_cast<size_t>(jobs));
        std::vector<std::future<Json>> batch;
        for (size_t i = base; i < end; ++i) {
            JobConfig job = cfg;
            job.lambda_expr = lambdas[i];
            job.sweep.clear();
            batch.push_back(std::async(std::launch::async, [job] {
                return run_job(job).report.doc;
            }));
        }
        for (size_t i = base; i < end; ++i) results[i] = batch[i - base].get();
    }
    Json arr = Json::array();
    for (auto& r : results) arr.push_back(std::move(r));
    return arr;
}

} // namespace lindisk
