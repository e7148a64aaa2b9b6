#include "lindisk/report.hpp"

#include <cmath>
#include <sstream>

namespace lindisk {

namespace {

std::string status_string(LawCheckReport::Status s) {
    switch (s) {
    case LawCheckReport::Status::Pass: return "pass";
    case LawCheckReport::Status::Fail: return "fail";
    default: return "not_applicable";
    }
}

} // namespace

double approx_radius(const Integer& p, const Rational& nu) {
    return std::pow(p.get_d(), -nu.get_d());
}

Json invariants_json(const MultiplierInvariants& inv) {
    Json j;
    j["m"] = inv.m;
    j["s"] = inv.s;
    j["t"] = inv.t;
    j["nu_1m"] = rat_to_string(inv.nu1m);
    j["nu_gamma"] = rat_to_string(inv.nuG);
    return j;
}

Json radii_json(const RadiusReport& rep, bool decimal, const Integer& p) {
    Json j;
    j["nu_tilde_r"] = rat_to_string(rep.nu_tilde_r);
    j["nu_r"] = rep.nu_r_quadratic ? Json(rat_to_string(*rep.nu_r_quadratic)) : Json(nullptr);
    j["nu_psi"] = rep.nu_psi ? Json(rat_to_string(*rep.nu_psi)) : Json(nullptr);
    j["nu_rho"] = rep.nu_rho ? Json(rat_to_string(*rep.nu_rho)) : Json(nullptr);
    j["family"] = Json{{"is_quadratic_family", rep.family.is_quadratic_family},
                       {"hypothesis_1_over_p", rep.family.hypothesis_1_over_p},
                       {"p_ge_3", rep.family.p_ge_3}};
    if (decimal) {
        Json approx;
        approx["tilde_r"] = approx_radius(p, rep.nu_tilde_r);
        if (rep.nu_r_quadratic) approx["r"] = approx_radius(p, *rep.nu_r_quadratic);
        if (rep.nu_psi) approx["psi"] = approx_radius(p, *rep.nu_psi);
        if (rep.nu_rho) approx["rho"] = approx_radius(p, *rep.nu_rho);
        j["approximate_radii"] = approx;
    }
    return j;
}

Json coefficients_json(const ConjugacyCoefficients& coeffs) {
    Json nub = Json::array();
    for (const auto& e : coeffs.entries)
        nub.push_back(Json::array({std::to_string(e.k), e.nu.to_string()}));
    Json j;
    j["K"] = coeffs.K;
    j["nu_b"] = nub;
    return j;
}

Json spectrum_json(const PeriodicSpectrum& spec, bool decimal, const Integer& p) {
    Json levels = Json::array();
    for (const auto& l : spec.levels) {
        Json e;
        e["period"] = l.period.get_str();
        e["nu"] = rat_to_string(l.nu);
        e["count"] = l.count.get_str();
        if (decimal) e["approx_radius"] = approx_radius(p, l.nu);
        levels.push_back(e);
    }
    Json j;
    j["source"] = spec.source == PeriodicSpectrum::Source::Formula ? "formula" : "newton";
    j["levels"] = levels;
    j["verified_cycle_structure"] = spec.verified_cycle_structure;
    if (spec.nu_rho) j["nu_rho"] = rat_to_string(*spec.nu_rho);
    if (spec.rho_is_psi) j["rho_is_psi"] = *spec.rho_is_psi;
    return j;
}

Json polygon_json(const NewtonPolygon& np) {
    Json verts = Json::array();
    for (const auto& v : np.vertices)
        verts.push_back(Json::array({v.index, rat_to_string(v.nu)}));
    Json segs = Json::array();
    for (const auto& s : np.segments)
        segs.push_back(Json::array({rat_to_string(s.slope), s.length}));
    Json j;
    j["vertices"] = verts;
    j["segments"] = segs;
    return j;
}

Json check_json(const LawCheckReport& rep) {
    Json j;
    j["name"] = rep.name;
    j["pass"] = rep.status == LawCheckReport::Status::Pass;
    j["status"] = status_string(rep.status);
    j["first_failure"] =
        rep.first_failure_k > 0 ? Json(rep.first_failure_k) : Json(nullptr);
    j["witness"] = rep.detail;
    return j;
}

Json ramification_json(const RamificationNumbers& ram) {
    Json j = Json::array();
    for (const auto& e : ram.entries) {
        Json entry;
        entry["n"] = e.n;
        entry["i_n"] = e.i_n ? Json(*e.i_n) : Json(nullptr);
        j.push_back(entry);
    }
    return j;
}

Json boundary_json(const BoundaryFreeReport& rep) {
    Json j;
    j["status"] = status_string(rep.status);
    j["pass"] = rep.passed();
    j["nu_r"] = rep.nu_r ? Json(rat_to_string(*rep.nu_r)) : Json(nullptr);
    j["nu_rho"] = rep.nu_rho ? Json(rat_to_string(*rep.nu_rho)) : Json(nullptr);
    j["witness"] = rep.detail;
    return j;
}

std::string spectrum_csv(const PeriodicSpectrum& spec) {
    std::ostringstream os;
    os << "period,nu,count\n";
    for (const auto& l : spec.levels)
        os << l.period.get_str() << ",\"" << rat_to_string(l.nu) << "\"," << l.count.get_str()
           << "\n";
    return os.str();
}

std::string polygon_csv(const NewtonPolygon& np) {
    std::ostringstream os;
    os << "index,nu\n";
    for (const auto& v : np.vertices)
        os << v.index << ",\"" << rat_to_string(v.nu) << "\"\n";
    return os.str();
}

std::string polygon_svg(const NewtonPolygon& np) {
    const double W = 640, H = 420, pad = 48;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    if (np.vertices.empty()) {
        os << "</svg>\n";
        return os.str();
    }
    const double x0 = np.vertices.front().index;
    const double x1 = np.vertices.back().index;
    double y_max = 0;
    for (const auto& v : np.vertices) y_max = std::max(y_max, v.nu.get_d());
    const double xs = (W - 2 * pad) / std::max(1.0, x1 - x0);
    const double ys = (H - 2 * pad) / std::max(1e-9, y_max);
    auto X = [&](double i) { return pad + (i - x0) * xs; };
    auto Y = [&](double nu) { return H - pad - nu * ys; };

    os << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad / 2
       << "\" y2=\"" << H - pad << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << pad << "\" y2=\""
       << pad / 2 << "\" stroke=\"black\"/>\n";

    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (const auto& v : np.vertices) os << X(v.index) << "," << Y(v.nu.get_d()) << " ";
    os << "\"/>\n";

    for (const auto& v : np.vertices) {
        os << "<circle cx=\"" << X(v.index) << "\" cy=\"" << Y(v.nu.get_d())
           << "\" r=\"3.5\" fill=\"black\"/>\n";
        os << "<text x=\"" << X(v.index) + 6 << "\" y=\"" << Y(v.nu.get_d()) - 6
           << "\" font-size=\"12\">(" << v.index << ", " << rat_to_string(v.nu) << ")</text>\n";
    }
    for (size_t i = 0; i < np.segments.size(); ++i) {
        const auto& a = np.vertices[i];
        const auto& b = np.vertices[i + 1];
        const double mx = (X(a.index) + X(b.index)) / 2;
        const double my = (Y(a.nu.get_d()) + Y(b.nu.get_d())) / 2;
        os << "<text x=\"" << mx + 4 << "\" y=\"" << my + 14
           << "\" font-size=\"12\" fill=\"darkred\">slope " << rat_to_string(np.segments[i].slope)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace lindisk
