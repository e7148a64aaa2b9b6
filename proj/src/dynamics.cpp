#include "lindisk/dynamics.hpp"

#include "lindisk/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lindisk {

namespace {

Integer pow_of(const Integer& p, long k) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

void require_parabolic_normalization(const PowerSeries& f) {
    if (!f.has_zero_constant_term())
        throw HypothesisViolated("iteration requires f(0) = 0");
    if (f.truncation() < 1)
        throw HypothesisViolated("map must have a linear term");
    const PadicElement one = PadicElement::one(
        f.field(), f.coeff(1).is_exact_zero() ? f.field()->default_precision()
                                              : f.coeff(1).precision());
    if (!f.coeff(1).sub(one).valuation().certainly_positive())
        throw HypothesisViolated("iteration requires |f'(0) - 1| < 1 certified");
}

// True polynomial degree, ignoring trailing exact zeros.
long polynomial_degree(const PowerSeries& f) {
    long d = f.truncation();
    while (d > 0 && f.coeff(d).is_exact_zero()) --d;
    return d;
}

// f^{p^n} - id for n = 0..nmax at a truncation large enough to expose every
// Weierstrass degree.  Entire maps are re-padded and retried when short.
std::vector<PowerSeries> iterate_levels(const PowerSeries& f, long nmax) {
    const Integer& p = f.field()->p();
    if (!p.fits_ulong_p())
        throw HypothesisViolated("prime too large for iteration");
    long K = auto_truncation(p, nmax);
    if (!f.entire() && f.truncation() < K)
        K = f.truncation();
    for (int attempt = 0;; ++attempt) {
        std::vector<PowerSeries> levels;
        PowerSeries h = f.viewed_at(K);
        bool short_truncation = false;
        for (long n = 0; n <= nmax; ++n) {
            if (n > 0) h = iterate(h, p.get_ui());
            PowerSeries g = h.sub_identity();
            if (!weierstrass_degree(g).has_value() && polynomial_degree(f) >= 2) {
                short_truncation = true;
                break;
            }
            levels.push_back(std::move(g));
        }
        if (!short_truncation)
            return levels;
        if (!f.entire() || attempt >= 8)
            throw TruncationTooShort(
                "no unit coefficient within truncation " + std::to_string(K) +
                "; the iterate's Weierstrass degree lies beyond it");
        K *= 2;
    }
}

// Aggregated (slope -> total length) over the strictly-negative-slope part.
std::map<Rational, long> open_disk_root_slopes(const NewtonPolygon& np) {
    std::map<Rational, long> out;
    for (const auto& seg : np.segments)
        if (seg.slope < 0) out[seg.slope] += seg.length;
    return out;
}

} // namespace

bool RamificationNumbers::minimally_ramified_profile(const Integer& p) const {
    Integer expect = 0;
    Integer pk = 1;
    for (const auto& e : entries) {
        expect += pk;
        pk *= p;
        if (!e.i_n.has_value() || Integer(*e.i_n) != expect)
            return false;
    }
    return !entries.empty();
}

long auto_truncation(const Integer& p, long nmax, long margin) {
    Integer total = 1 + margin;
    Integer pk = 1;
    for (long j = 0; j <= nmax; ++j) {
        total += pk;
        pk *= p;
    }
    if (!total.fits_slong_p())
        throw TruncationTooShort("auto truncation overflow");
    return total.get_si();
}

IterateAnalysis analyze_iterates(const PowerSeries& f, long nmax) {
    require_parabolic_normalization(f);
    if (nmax < 0)
        throw HypothesisViolated("nmax must be >= 0");
    IterateAnalysis out;
    out.spectrum.source = PeriodicSpectrum::Source::Newton;
    out.spectrum.verified_cycle_structure =
        f.field()->p() >= 3 && f.truncation() >= 2 && in_perturbed_quadratic_family(f);
    const Integer& p = f.field()->p();

    if (polynomial_degree(f) <= 1 && f.entire()) {
        // linear map: the only fixed point is 0, unless f is id to precision
        const PadicElement& a1 = f.coeff(1);
        const PadicElement one = PadicElement::one(
            f.field(),
            a1.is_exact_zero() ? f.field()->default_precision() : a1.precision());
        for (long n = 0; n <= nmax; ++n) {
            Integer pn = pow_of(p, n);
            if (!pn.fits_ulong_p())
                throw HypothesisViolated("p^n too large");
            const bool distinct = !a1.pow(pn.get_ui()).sub(one).is_digitwise_zero();
            out.ramification.entries.push_back(
                {n, distinct ? std::optional<long>(0) : std::nullopt});
        }
        return out;
    }

    auto levels = iterate_levels(f, nmax);
    std::map<Rational, long> prev;
    for (long n = 0; n <= nmax; ++n) {
        auto d = weierstrass_degree(levels[static_cast<size_t>(n)]);
        if (!d.has_value())
            throw TruncationTooShort("Weierstrass degree unresolved at level " +
                                     std::to_string(n));
        out.ramification.entries.push_back({n, *d - 1});
        auto np = newton_polygon(levels[static_cast<size_t>(n)]);
        auto cur = open_disk_root_slopes(np);
        for (const auto& [slope, len] : cur) {
            const long before = prev.count(slope) ? prev.at(slope) : 0;
            if (len < before)
                throw std::logic_error("periodic points lost between iterate levels");
            if (len > before)
                out.spectrum.levels.push_back({n, pow_of(p, n), -slope, Integer(len - before)});
        }
        prev = std::move(cur);
        out.polygons.push_back(std::move(np));
    }
    return out;
}

RamificationNumbers ramification_numbers(const PowerSeries& f, long nmax) {
    return analyze_iterates(f, nmax).ramification;
}

bool is_minimally_ramified(const PowerSeries& f) {
    require_parabolic_normalization(f);
    if (f.field()->p() < 3)
        return false;
    if (f.truncation() < 3 && !f.entire())
        throw TruncationTooShort("need the cubic coefficient to decide minimal ramification");
    return in_perturbed_quadratic_family(f);
}

Rational kappa(const MultiplierInvariants& inv, long n) {
    if (inv.m != 1 || !(inv.nu1m > 0 && inv.nu1m < 1))
        throw HypothesisViolated("kappa requires m = 1 and 0 < nu(1-lambda) < 1");
    if (n < 1)
        throw HypothesisViolated("kappa requires n >= 1");
    const Integer& p = inv.p;
    if (n >= inv.s + 1)
        return make_ratio(-1, pow_of(p, n));
    if (n == inv.s)
        return make_ratio(-(inv.s - inv.t), pow_of(p, inv.s)) -
               inv.nuG / Rational(pow_of(p, inv.s - inv.t)) + inv.nu1m / Rational(p);
    return -make_ratio(p - 1, p) * inv.nu1m; // n in [1, s-1], s >= 2
}

PeriodicSpectrum periodic_spectrum_formula(const MultiplierInvariants& inv, long nmax) {
    if (inv.m != 1 || !(inv.nu1m > 0 && inv.nu1m < 1))
        throw HypothesisViolated(
            "formula spectrum requires m = 1 and 0 < nu(1-lambda) < 1");
    PeriodicSpectrum out;
    out.source = PeriodicSpectrum::Source::Formula;
    out.verified_cycle_structure = true;
    const Integer& p = inv.p;
    // one cycle of length p^n per level n >= 1, hence p^n points each
    for (long n = 0; n <= nmax; ++n) {
        const Integer pn = pow_of(p, n);
        if (n == 0) {
            out.levels.push_back({0, pn, inv.nu1m, Integer(1)});
        } else if (n <= inv.s - 1) {
            out.levels.push_back({n, pn, make_ratio(p - 1, p) * inv.nu1m, pn});
        } else if (n == inv.s) {
            out.levels.push_back({n, pn, psi(inv), pn});
        } else {
            out.levels.push_back({n, pn, make_ratio(1, pn), pn});
        }
    }
    out.nu_rho = std::max(inv.nu1m, psi(inv));
    out.rho_is_psi =
        inv.s - inv.t >= 2 || (inv.s - inv.t == 1 && inv.nuG >= 2 * inv.nu1m);
    return out;
}

PeriodicSpectrum periodic_spectrum_newton(const PowerSeries& f, long nmax) {
    return analyze_iterates(f, nmax).spectrum;
}

BoundaryFreeReport boundary_free_check(const PowerSeries& f, const MultiplierInvariants& inv,
                                       bool include_newton, long newton_nmax) {
    BoundaryFreeReport rep;
    const bool family = inv.p >= 3 && inv.m == 1 && inv.nu1m > 0 && inv.nu1m < 1 &&
                        in_perturbed_quadratic_family(f);
    if (include_newton)
        rep.newton_spectrum = periodic_spectrum_newton(f, newton_nmax);
    if (!family) {
        rep.status = LawCheckReport::Status::NotApplicable;
        rep.detail =
            "map is outside the quadratic-like family; spectrum reported informationally";
        return rep;
    }

    const Rational nu_r = quadratic_radius(inv);
    rep.nu_r = nu_r;

    // all levels with sphere valuation >= nu(r) must be checked; beyond
    // n_star the tail levels sit at 1/p^n < nu(r)
    long n_star = inv.s + 1;
    while (make_ratio(1, pow_of(inv.p, n_star)) >= nu_r) ++n_star;
    auto spectrum = periodic_spectrum_formula(inv, n_star);
    rep.formula_spectrum = spectrum;
    rep.nu_rho = spectrum.nu_rho;

    std::ostringstream os;
    if (!(nu_r > *spectrum.nu_rho)) {
        rep.status = LawCheckReport::Status::Fail;
        os << "nu(r) = " << rat_to_string(nu_r) << " does not exceed nu(rho) = "
           << rat_to_string(*spectrum.nu_rho);
        rep.detail = os.str();
        return rep;
    }
    for (const auto& level : spectrum.levels) {
        if (level.nu == nu_r) {
            rep.status = LawCheckReport::Status::Fail;
            os << "nu(r) = " << rat_to_string(nu_r) << " coincides with the period-"
               << level.period.get_str() << " sphere";
            rep.detail = os.str();
            return rep;
        }
    }
    rep.status = LawCheckReport::Status::Pass;
    os << "nu(r) = " << rat_to_string(nu_r) << " > nu(rho) = "
       << rat_to_string(*spectrum.nu_rho) << "; no periodic sphere at nu(r) (levels checked up to p^"
       << n_star << ", tail below nu(r))";
    rep.detail = os.str();
    return rep;
}

std::vector<Valuation> critical_orbit(const PowerSeries& f, long kmax) {
    if (!f.entire())
        throw UnsupportedDegree("critical orbit requires a polynomial map");
    if (polynomial_degree(f) != 2)
        throw UnsupportedDegree("critical orbit is implemented for quadratic polynomials");
    if (!f.has_zero_constant_term())
        throw HypothesisViolated("critical orbit requires f(0) = 0");
    if (kmax < 0)
        throw HypothesisViolated("kmax must be >= 0");
    const PadicElement& a1 = f.coeff(1);
    const PadicElement& a2 = f.coeff(2);
    const PadicElement two =
        PadicElement::from_integer(f.field(), 2, a2.is_exact_zero()
                                                     ? f.field()->default_precision()
                                                     : a2.precision());
    PadicElement x = a1.negate().mul(two.mul(a2).invert()); // c = -a_1/(2 a_2)
    std::vector<Valuation> out;
    out.push_back(x.valuation());
    for (long k = 1; k <= kmax; ++k) {
        x = a1.mul(x).add(a2.mul(x).mul(x));
        out.push_back(x.valuation());
    }
    return out;
}

} // namespace lindisk
