#include "lindisk/linearization.hpp"

#include "lindisk/errors.hpp"

#include <algorithm>
#include <sstream>

namespace lindisk {

namespace {

Integer pow_of(const Integer& p, long k) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

Rational canon(Rational q) {
    q.canonicalize();
    return q;
}

} // namespace

Rational tilde_r(const MultiplierInvariants& inv) {
    const Integer& p = inv.p;
    const Integer ps = pow_of(p, inv.s);
    Rational total = make_ratio(1, ps * (p - 1));            // nu(R(s+1))
    total += make_ratio(inv.s - inv.t, ps);                   // (s-t)/p^s
    total += Rational(inv.s) * make_ratio(p - 1, p) * inv.nu1m;
    total += inv.nuG / Rational(pow_of(p, inv.s - inv.t));    // nuG / p^{s-t}
    total /= inv.m;
    return canon(total);
}

Rational quadratic_radius(const MultiplierInvariants& inv) {
    if (inv.p < 3)
        throw HypothesisViolated("quadratic radius requires p >= 3");
    if (inv.m != 1)
        throw HypothesisViolated("quadratic radius requires m = 1");
    if (!(inv.nu1m > 0 && inv.nu1m < 1))
        throw HypothesisViolated("quadratic radius requires 1/p < |1-lambda| < 1");
    return canon(tilde_r(inv) - inv.nu1m / Rational(inv.p));
}

Rational psi(const MultiplierInvariants& inv) {
    if (inv.m != 1)
        throw HypothesisViolated("Psi requires m = 1");
    const Integer& p = inv.p;
    Rational total = -inv.nu1m / Rational(p);
    total += make_ratio(inv.s - inv.t, pow_of(p, inv.s));
    total += inv.nuG / Rational(pow_of(p, inv.s - inv.t));
    return canon(total);
}

RadiusReport build_radius_report(const MultiplierInvariants& inv) {
    RadiusReport rep;
    rep.nu_tilde_r = tilde_r(inv);
    rep.family.p_ge_3 = inv.p >= 3;
    rep.family.hypothesis_1_over_p = inv.nu1m < 1;
    rep.family.is_quadratic_family = inv.m == 1 && inv.nu1m > 0 && inv.nu1m < 1;
    if (rep.family.p_ge_3 && rep.family.is_quadratic_family)
        rep.nu_r_quadratic = quadratic_radius(inv);
    if (inv.m == 1) {
        rep.nu_psi = psi(inv);
        rep.nu_rho = std::max(inv.nu1m, *rep.nu_psi);
    }
    return rep;
}

ConjugacyCoefficients solve_conjugacy(const PowerSeries& f, const PadicElement& lambda, long K) {
    if (K < 1)
        throw HypothesisViolated("conjugacy truncation must be >= 1");
    if (!f.field()->same_as(*lambda.field()))
        throw FieldMismatch("map and multiplier live in different fields");
    if (!f.has_zero_constant_term())
        throw HypothesisViolated("conjugacy requires f(0) = 0");
    if (!f.in_unit_coefficient_family())
        throw HypothesisViolated("conjugacy requires f in O_p[[x]] with |f'(0)| = 1");
    if (f.truncation() < 1 || !f.coeff(1).same_value(lambda))
        throw HypothesisViolated("conjugacy requires f'(0) = lambda");

    const MultiplierInvariants inv = compute_invariants(lambda); // root-of-unity guard at m p^s
    const FieldPtr& field = f.field();
    const PadicElement one = PadicElement::one(field, lambda.precision());

    // Guard every p-power multiple of m that appears as an exponent k-1 <= K-1.
    for (Integer n = inv.m; n <= K - 1; n *= inv.p) {
        if (!n.fits_ulong_p()) break;
        if (one.sub(lambda.pow(n.get_ui())).is_digitwise_zero())
            throw IndistinguishableFromRootOfUnity(
                "1 - lambda^" + n.get_str() + " vanishes to working precision");
    }

    ConjugacyCoefficients out{lambda, {}, K};
    out.entries.reserve(static_cast<size_t>(K));
    const PadicElement b1 = PadicElement::one(field, lambda.precision());
    out.entries.push_back({1, b1, b1.valuation()});
    if (K == 1) return out;

    if (!f.entire() && f.truncation() < K)
        throw TruncationTooShort("map truncation " + std::to_string(f.truncation()) +
                                 " is below the requested K = " + std::to_string(K));
    const PowerSeries f_view = f.viewed_at(K);

    std::vector<PadicElement> acc(static_cast<size_t>(K) + 1, PadicElement::zero(field));
    PowerSeries fpow = f_view; // f^l, starting at l = 1
    PadicElement lam_pow = lambda;

    for (long l = 1; l < K; ++l) {
        if (l > 1) {
            fpow = fpow.mul(f_view);
            lam_pow = lam_pow.mul(lambda);
        }
        const PadicElement bl = out.entries.back().b;
        for (long k = std::max(l + 1, 2L); k <= K; ++k) {
            const PadicElement& cl = fpow.coeff(k); // C_l(k)
            if (cl.is_exact_zero()) continue;
            acc[static_cast<size_t>(k)] = acc[static_cast<size_t>(k)].add(bl.mul(cl));
        }
        // b_{k} for k = l+1, divisor lambda (1 - lambda^{k-1}) with k-1 = l
        const long k = l + 1;
        PadicElement divisor = lambda.mul(one.sub(lam_pow));
        PadicElement bk = [&] {
            try {
                return acc[static_cast<size_t>(k)].mul(divisor.invert());
            } catch (const PrecisionExhausted& ex) {
                throw PrecisionExhausted(std::string(ex.what()) + " (at coefficient k = " +
                                         std::to_string(k) +
                                         "; retry with the working precision doubled)");
            }
        }();
        const Valuation nu = bk.valuation();
        // Certified violations of the coefficient bound indicate a defect.
        const Rational bound = -nu_product(inv, k);
        if (nu.is_exact() && nu.value() < bound)
            throw std::logic_error("conjugacy coefficient bound violated at k = " +
                                   std::to_string(k));
        out.entries.push_back({k, bk, nu});
    }
    return out;
}

ConjugacyCoefficients solve_conjugacy_auto(const ConjugacyInputBuilder& build, long K) {
    ConjugacyInputs probe = build(0);
    const MultiplierInvariants inv = compute_invariants(probe.lambda);
    const long e = probe.lambda.field()->degree();
    const Rational budget = Rational(K) * (inv.nu1m + Rational(inv.s) + inv.nuG + 1);
    long n0 = e * static_cast<long>(-rat_floor(-budget).get_si()) + 64;
    for (int attempt = 0;; ++attempt) {
        ConjugacyInputs in = build(n0);
        try {
            return solve_conjugacy(in.f, in.lambda, K);
        } catch (const PrecisionExhausted&) {
            if (attempt >= 3) throw;
            n0 *= 2;
        }
    }
}

bool in_perturbed_quadratic_family(const PowerSeries& f) {
    if (f.truncation() < 2) return false;
    const PadicElement& a2 = f.coeff(2);
    if (!a2.valuation().certainly_zero()) return false;
    PadicElement disc = a2.mul(a2);
    if (f.truncation() >= 3)
        disc = disc.sub(f.coeff(3));
    else if (!f.entire())
        return false; // cubic coefficient unknown
    return disc.valuation().certainly_zero();
}

LawCheckReport quadratic_bk_exact_check(const ConjugacyCoefficients& coeffs,
                                        const MultiplierInvariants& inv, const PowerSeries& f) {
    LawCheckReport rep;
    rep.name = "quadratic_bk_exact_law";
    if (inv.p < 3 || inv.m != 1 || !(inv.nu1m > 0 && inv.nu1m < 1)) {
        rep.status = LawCheckReport::Status::NotApplicable;
        rep.detail = "requires p >= 3, m = 1 and 1/p < |1-lambda| < 1";
        return rep;
    }
    if (!in_perturbed_quadratic_family(f)) {
        rep.status = LawCheckReport::Status::NotApplicable;
        rep.detail = "requires |a_2| = 1 and |a_2^2 - a_3| = 1";
        return rep;
    }
    for (long k = 2; k <= coeffs.K; ++k) {
        const Valuation& nu = coeffs.at(k).nu;
        const Rational expect =
            Rational(Integer(k - 1) / inv.p) * inv.nu1m - nu_product(inv, k);
        if (!nu.is_exact() || nu.value() != expect) {
            rep.status = LawCheckReport::Status::Fail;
            rep.first_failure_k = k;
            std::ostringstream os;
            os << "nu(b_" << k << ") = " << nu.to_string() << ", law predicts "
               << rat_to_string(expect);
            rep.detail = os.str();
            return rep;
        }
    }
    rep.status = LawCheckReport::Status::Pass;
    return rep;
}

LawCheckReport tau_profile(const ConjugacyCoefficients& coeffs, const MultiplierInvariants& inv) {
    LawCheckReport rep;
    rep.name = "tau_profile";
    if (inv.p < 3 || inv.m != 1 || !(inv.nu1m > 0 && inv.nu1m < 1)) {
        rep.status = LawCheckReport::Status::NotApplicable;
        rep.detail = "requires p >= 3, m = 1 and 1/p < |1-lambda| < 1";
        return rep;
    }
    const Rational nu_tau = quadratic_radius(inv);
    const Rational strengthening =
        inv.s >= 1 ? nu_R(inv.s + 1, inv.p).value() + nu_tau : Rational(0);
    const Rational equality_level = make_ratio(1, inv.p - 1) + nu_tau;

    // indices k = p^{s+alpha} + 1, alpha >= 1
    std::vector<long> witness;
    for (Integer q = pow_of(inv.p, inv.s + 1);; q *= inv.p) {
        if (q + 1 > coeffs.K) break;
        witness.push_back(static_cast<long>(q.get_si()) + 1);
    }

    long witnesses_checked = 0;
    for (long k = 2; k <= coeffs.K; ++k) {
        const Valuation& nu = coeffs.at(k).nu;
        if (!nu.is_exact()) {
            rep.status = LawCheckReport::Status::Fail;
            rep.first_failure_k = k;
            rep.detail = "nu(b_" + std::to_string(k) + ") not certified";
            return rep;
        }
        const Rational lhs = nu.value() + Rational(k) * nu_tau;
        bool ok = lhs > nu_tau;
        if (ok && inv.s >= 1) ok = lhs >= strengthening;
        if (ok && std::find(witness.begin(), witness.end(), k) != witness.end()) {
            ok = lhs == equality_level;
            if (ok) ++witnesses_checked;
        }
        if (!ok) {
            rep.status = LawCheckReport::Status::Fail;
            rep.first_failure_k = k;
            std::ostringstream os;
            os << "nu(b_k) + k nu(tau) = " << rat_to_string(lhs) << " violates the tau profile at k = "
               << k;
            rep.detail = os.str();
            return rep;
        }
    }
    rep.status = LawCheckReport::Status::Pass;
    rep.detail = "divergence witnesses checked: " + std::to_string(witnesses_checked);
    return rep;
}

} // namespace lindisk
