#pragma once

#include "lindisk/linearization.hpp"
#include "lindisk/multiplier.hpp"
#include "lindisk/series.hpp"

#include <optional>
#include <vector>

namespace lindisk {

// i_n = wideg(f^{p^n} - id) - 1, counting the nonzero fixed points of the
// p^n-th iterate in the open unit disk with multiplicity.  An entry without
// a value marks a degenerate level (f^{p^n} indistinguishable from id).
struct RamificationNumbers {
    struct Entry {
        long n;
        std::optional<long> i_n;
    };
    std::vector<Entry> entries;

    // i_n = 1 + p + ... + p^n for every certified level n >= 0.
    bool minimally_ramified_profile(const Integer& p) const;
};

struct PeriodicSpectrum {
    enum class Source { Formula, Newton };
    struct Level {
        long n;         // minimal period p^n
        Integer period;
        Rational nu;    // valuation of the sphere carrying the points
        Integer count;  // number of points, with multiplicity
        bool operator==(const Level& o) const {
            return n == o.n && period == o.period && nu == o.nu && count == o.count;
        }
    };
    std::vector<Level> levels;
    Source source = Source::Formula;
    // Lemma 6.2 cycle structure certified (minimally ramified map / formula
    // hypotheses); Newton spectra of other maps are emitted but labeled so.
    bool verified_cycle_structure = false;
    // Formula spectra also carry nu(rho) and the rho = Psi classification.
    std::optional<Rational> nu_rho;
    std::optional<bool> rho_is_psi;
};

struct BoundaryFreeReport {
    LawCheckReport::Status status = LawCheckReport::Status::NotApplicable;
    std::optional<Rational> nu_r;
    std::optional<Rational> nu_rho;
    std::optional<PeriodicSpectrum> formula_spectrum;
    std::optional<PeriodicSpectrum> newton_spectrum;
    std::string detail;
    bool passed() const { return status == LawCheckReport::Status::Pass; }
};

// Default truncation for iterates: 1 + (1 + p + ... + p^nmax) + margin.
long auto_truncation(const Integer& p, long nmax, long margin = 8);

// Requires f(0) = 0 and |f'(0) - 1| < 1 certified.  For entire maps the
// truncation is auto-sized (and grown on demand); truncated maps must
// already carry enough coefficients.
RamificationNumbers ramification_numbers(const PowerSeries& f, long nmax);

// Single pass over the iterates f^{p^n}: ramification numbers, the Newton
// polygon of each level, and the polygon-derived spectrum.
struct IterateAnalysis {
    RamificationNumbers ramification;
    std::vector<NewtonPolygon> polygons; // level n = 0..nmax (empty for linear maps)
    PeriodicSpectrum spectrum;
};
IterateAnalysis analyze_iterates(const PowerSeries& f, long nmax);

// p >= 3, |a_2| = 1 and |a_2^2 - a_3| = 1.
bool is_minimally_ramified(const PowerSeries& f);

// Slope of the Newton-polygon segment added at level n:
// kappa_n = -(nu(1-lambda^{p^n}) - nu(1-lambda^{p^{n-1}}))/p^n, in closed
// form.  Requires m = 1 and 0 < nu1m < 1.
Rational kappa(const MultiplierInvariants& inv, long n);

// Sphere valuations and point counts per minimal period, from the closed
// forms: level 0 at nu1m, levels [1, s-1] at ((p-1)/p) nu1m, level s at
// nu(Psi), levels >= s+1 at 1/p^n.
PeriodicSpectrum periodic_spectrum_formula(const MultiplierInvariants& inv, long nmax);

// Same data read off the Newton polygons of f^{p^n} - id; per level the
// segments new relative to level n-1 give the entries.
PeriodicSpectrum periodic_spectrum_newton(const PowerSeries& f, long nmax);

// Corollary-C check for maps with p >= 3, 1/p < |1-lambda| < 1, |a_2| = 1,
// |a_2^2 - a_3| = 1: nu(r(f)) > nu(rho) and nu(r(f)) misses every spectrum
// level.  Out-of-family maps get an informational report with the Newton
// spectrum attached.
BoundaryFreeReport boundary_free_check(const PowerSeries& f, const MultiplierInvariants& inv,
                                       bool include_newton = false, long newton_nmax = 1);

// nu(f^k(c)) for the critical point c of a quadratic polynomial, k <= kmax,
// via exact polynomial evaluation.
std::vector<Valuation> critical_orbit(const PowerSeries& f, long kmax);

} // namespace lindisk
