#pragma once

#include "lindisk/dynamics.hpp"
#include "lindisk/linearization.hpp"
#include "lindisk/multiplier.hpp"

#include "json.hpp"

#include <string>

namespace lindisk {

using Json = nlohmann::ordered_json;

// The report document carried by every command; all rationals are exact
// "numerator/denominator" strings, infinite valuations serialize as "inf".
struct ReportDocument {
    Json doc;

    std::string serialize(int indent = 2) const { return doc.dump(indent); }
    static ReportDocument parse(const std::string& text) {
        return ReportDocument{Json::parse(text)};
    }
    bool operator==(const ReportDocument& o) const { return doc == o.doc; }
};

Json invariants_json(const MultiplierInvariants& inv);
Json radii_json(const RadiusReport& rep, bool decimal, const Integer& p);
Json coefficients_json(const ConjugacyCoefficients& coeffs);
Json spectrum_json(const PeriodicSpectrum& spec, bool decimal, const Integer& p);
Json polygon_json(const NewtonPolygon& np);
Json check_json(const LawCheckReport& rep);
Json ramification_json(const RamificationNumbers& ram);
Json boundary_json(const BoundaryFreeReport& rep);

std::string spectrum_csv(const PeriodicSpectrum& spec);
std::string polygon_csv(const NewtonPolygon& np);
// Best-effort rendering of the polygon with vertices and slope labels;
// the CSV is the contract, the SVG is decoration.
std::string polygon_svg(const NewtonPolygon& np);

// p^{-nu} as a decimal, for the --decimal convenience output.
double approx_radius(const Integer& p, const Rational& nu);

} // namespace lindisk
