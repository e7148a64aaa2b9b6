#pragma once

#include "lindisk/multiplier.hpp"
#include "lindisk/series.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lindisk {

// Coefficients b_k of the normalized conjugacy H with H(f(x)) = lambda H(x),
// H(0) = 0, H'(0) = 1.
struct ConjugacyCoefficients {
    PadicElement lambda;
    struct Entry {
        long k;
        PadicElement b;
        Valuation nu;
    };
    std::vector<Entry> entries; // k = 1..K in order
    long K = 0;

    const Entry& at(long k) const { return entries.at(static_cast<size_t>(k - 1)); }
};

struct RadiusReport {
    Rational nu_tilde_r;
    std::optional<Rational> nu_r_quadratic; // absent when the Theorem-B hypotheses fail
    std::optional<Rational> nu_psi;         // requires m = 1
    std::optional<Rational> nu_rho;         // max(nu1m, nu_psi)
    struct FamilyFlags {
        bool is_quadratic_family = false; // m = 1 and 0 < nu1m < 1
        bool hypothesis_1_over_p = false; // nu1m < 1
        bool p_ge_3 = false;
    } family;
};

struct LawCheckReport {
    enum class Status { Pass, Fail, NotApplicable };
    Status status = Status::NotApplicable;
    std::string name;
    long first_failure_k = 0;
    std::string detail;
    bool passed() const { return status == Status::Pass; }
};

// nu of the lower-bound radius for the linearization disk:
// nu(r~) = [nu(R(s+1)) + (s-t)/p^s + s ((p-1)/p) nu1m + nuG / p^{s-t}] / m.
Rational tilde_r(const MultiplierInvariants& inv);

// Exact quadratic radius nu(r) = nu(r~) - nu1m/p.
// Requires p >= 3, m = 1 and 0 < nu1m < 1.
Rational quadratic_radius(const MultiplierInvariants& inv);

// nu(Psi) = -nu1m/p + (s-t)/p^s + nuG/p^{s-t}; requires m = 1.
Rational psi(const MultiplierInvariants& inv);

// Assembles the radius block (with family flags) for reports.
RadiusReport build_radius_report(const MultiplierInvariants& inv);

// Degree-by-degree solution of the conjugacy equation.  Requires f in the
// unit-coefficient family with f(0) = 0 and f'(0) = lambda, and the
// root-of-unity guard for every power used up to K.
ConjugacyCoefficients solve_conjugacy(const PowerSeries& f, const PadicElement& lambda, long K);

// Rebuilds the inputs at a working precision sized from the invariants
// (N0 = e * ceil(K (nu1m + s + nuG + 1)) + 64) and retries with doubled
// precision up to three times on PrecisionExhausted.
struct ConjugacyInputs {
    PowerSeries f;
    PadicElement lambda;
};
using ConjugacyInputBuilder = std::function<ConjugacyInputs(long precision)>;
ConjugacyCoefficients solve_conjugacy_auto(const ConjugacyInputBuilder& build, long K);

// Exact coefficient law |b_k| = |1-lambda|^{floor((k-1)/p)} / prod |1-lambda^n|
// for the quadratic family and its perturbations with |a_2| = 1 and
// |a_2^2 - a_3| = 1; NotApplicable when the hypotheses fail.
LawCheckReport quadratic_bk_exact_check(const ConjugacyCoefficients& coeffs,
                                        const MultiplierInvariants& inv, const PowerSeries& f);

// Growth profile on the critical sphere of radius tau = r(P_lambda):
// strict inequality nu(b_k) + k nu(tau) > nu(tau) for all k, the R(s+1)
// strengthening for s >= 1, and the exact divergence witnesses at
// k = p^{s+alpha} + 1.
LawCheckReport tau_profile(const ConjugacyCoefficients& coeffs, const MultiplierInvariants& inv);

// True when f = lambda x + a_2 x^2 + ... satisfies |a_2| = 1 and
// |a_2^2 - a_3| = 1 (certified).
bool in_perturbed_quadratic_family(const PowerSeries& f);

} // namespace lindisk
