#include "lindisk/multiplier.hpp"

#include "lindisk/errors.hpp"

namespace lindisk {

Valuation nu_R(long s, const Integer& p) {
    if (s < 0)
        throw HypothesisViolated("nu_R requires s >= 0");
    if (s == 0)
        return Valuation::infinite(); // R(0) = 0
    Integer den;
    mpz_pow_ui(den.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(s - 1));
    den *= p - 1;
    return Valuation::exact(make_ratio(1, den));
}

void validate_invariants(const MultiplierInvariants& inv) {
    const Integer& p = inv.p;
    if (inv.m < 1 || mpz_divisible_p(Integer(inv.m).get_mpz_t(), p.get_mpz_t()))
        throw HypothesisViolated("residue order m must be positive and prime to p");
    if (inv.t < 0 || inv.t > inv.s)
        throw HypothesisViolated("t must lie in [0, s]");
    if (inv.nu1m <= 0)
        throw HypothesisViolated("nu(1 - lambda^m) must be positive");
    const Rational r1 = make_ratio(1, p - 1);
    if (inv.s == 0) {
        if (!(inv.nu1m > r1))
            throw HypothesisViolated("s = 0 requires nu(1-lambda^m) > 1/(p-1)");
    } else {
        const Rational upper = nu_R(inv.s, p).value();
        const Rational lower = nu_R(inv.s + 1, p).value();
        if (!(upper >= inv.nu1m && inv.nu1m > lower))
            throw HypothesisViolated("sphere index s inconsistent with nu(1-lambda^m)");
    }
    if (inv.nuG < inv.nu1m || ((inv.nuG == inv.nu1m) != (inv.t == inv.s)))
        throw HypothesisViolated("nuG >= nu1m must hold, with equality iff t = s");
    if (inv.t >= 1) {
        Integer pt;
        mpz_pow_ui(pt.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(inv.t));
        const Rational window = Rational(pt) * inv.nuG;
        if (!(window > r1 && window <= make_ratio(p, p - 1)))
            throw HypothesisViolated("p^t nuG must lie in (1/(p-1), p/(p-1)]");
    } else if (!(inv.nuG > r1) && inv.s > 0) {
        throw HypothesisViolated("t = 0 requires nuG > 1/(p-1)");
    }
}

MultiplierInvariants compute_invariants(const PadicElement& lambda) {
    const FieldPtr& field = lambda.field();
    const Integer& p = field->p();
    if (!lambda.valuation().certainly_zero())
        throw HypothesisViolated("multiplier must satisfy |lambda| = 1 (certified)");

    // m = multiplicative order of the residue in the prime field
    const Integer r = lambda.residue_mod_p();
    long m = 1;
    Integer acc = r;
    while (acc != 1) {
        acc = (acc * r) % p;
        ++m;
        if (Integer(m) >= p)
            throw UnsupportedResidueOrder("residue order does not divide p - 1");
    }
    if (!mpz_divisible_p(Integer(p - 1).get_mpz_t(), Integer(m).get_mpz_t()))
        throw UnsupportedResidueOrder("residue order " + std::to_string(m) +
                                      " does not divide p - 1");

    const PadicElement one = PadicElement::one(field, lambda.precision());
    const PadicElement lam_m = lambda.pow(static_cast<unsigned long>(m));
    const Valuation v1m = one.sub(lam_m).valuation();
    if (!v1m.is_exact())
        throw IndistinguishableFromRootOfUnity(
            "1 - lambda^" + std::to_string(m) +
            " vanishes to working precision; raise the precision if lambda is not a root of unity");
    const Rational nu1m = v1m.value();

    long s = 0;
    if (!(nu1m > make_ratio(1, p - 1))) {
        s = 1;
        while (!(nu1m > nu_R(s + 1, p).value()))
            ++s;
    }

    Integer ps;
    mpz_pow_ui(ps.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(s));
    Integer mps = Integer(m) * ps;
    if (!mps.fits_ulong_p())
        throw HypothesisViolated("m p^s too large");
    const PadicElement lam_mps = lambda.pow(mps.get_ui());
    const Valuation vD = one.sub(lam_mps).valuation();
    if (!vD.is_exact())
        throw IndistinguishableFromRootOfUnity(
            "1 - lambda^{m p^s} vanishes to working precision; raise the precision if lambda is "
            "not a root of unity");
    const Rational D = vD.value();

    // D = (s - t) + p^t nuG; scan the disjoint windows from t = s down to 0.
    const Rational r1 = make_ratio(1, p - 1);
    const Rational rp = make_ratio(p, p - 1);
    for (long t = s; t >= 0; --t) {
        if (t >= 1) {
            const Rational x = D - Rational(s - t);
            if (x > r1 && x <= rp) {
                Integer pt;
                mpz_pow_ui(pt.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(t));
                Rational nuG = x / Rational(pt);
                nuG.canonicalize();
                MultiplierInvariants inv{p, m, s, t, nu1m, nuG};
                validate_invariants(inv);
                return inv;
            }
        } else {
            const Rational nuG = D - Rational(s);
            if (nuG > r1) {
                MultiplierInvariants inv{p, m, s, t, nu1m, nuG};
                validate_invariants(inv);
                return inv;
            }
        }
    }
    throw std::logic_error("no sphere window matches nu(1 - lambda^{m p^s})");
}

Rational nu_one_minus_lambda_pow(const MultiplierInvariants& inv, long n) {
    if (n < 1)
        throw HypothesisViolated("nu(1 - lambda^n) requires n >= 1");
    if (n % inv.m != 0)
        return Rational(0);
    long j = 0;
    Integer q(n);
    while (mpz_divisible_p(q.get_mpz_t(), inv.p.get_mpz_t())) {
        q /= inv.p;
        ++j;
    }
    if (j < inv.s) {
        Integer pj;
        mpz_pow_ui(pj.get_mpz_t(), inv.p.get_mpz_t(), static_cast<unsigned long>(j));
        return Rational(pj) * inv.nu1m;
    }
    Integer pt;
    mpz_pow_ui(pt.get_mpz_t(), inv.p.get_mpz_t(), static_cast<unsigned long>(inv.t));
    return Rational(j - inv.t) + Rational(pt) * inv.nuG;
}

Rational nu_factorial(const Integer& n, const Integer& p) {
    if (n < 0)
        throw HypothesisViolated("nu_factorial requires n >= 0");
    Integer digit_sum = 0;
    Integer q = n;
    while (q > 0) {
        digit_sum += q % p;
        q /= p;
    }
    return make_ratio(n - digit_sum, p - 1);
}

Rational delta_frac(long k, const Integer& z) {
    return rat_frac(make_ratio(k - 1, z));
}

Rational sigma(const MultiplierInvariants& inv, long k) {
    if (inv.s < 1)
        throw HypothesisViolated("sigma requires s >= 1");
    if (k < 2)
        throw HypothesisViolated("sigma requires k >= 2");
    const Integer& p = inv.p;
    Integer ps1; // p^{s-1}
    mpz_pow_ui(ps1.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(inv.s - 1));
    const Integer ps = ps1 * p;
    Rational total = Rational(inv.s) * make_ratio(k - 1, inv.m) * make_ratio(p - 1, p);
    total += delta_frac(k, Integer(inv.m) * ps) * Rational(ps1);
    total -= delta_frac(k, Integer(inv.m));
    Integer pw = 1;
    for (long sp = 1; sp <= inv.s - 1; ++sp) {
        pw *= p; // p^{sp}
        total -= delta_frac(k, Integer(inv.m) * pw) * Rational(pw - pw / p);
    }
    total.canonicalize();
    return total;
}

Rational nu_product(const MultiplierInvariants& inv, long k) {
    if (k < 2)
        throw HypothesisViolated("nu_product requires k >= 2");
    const Integer& p = inv.p;
    if (inv.s == 0) {
        const Integer N((k - 1) / inv.m);
        return nu_factorial(N, p) + Rational(N) * inv.nu1m;
    }
    Integer ps;
    mpz_pow_ui(ps.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(inv.s));
    const Integer M = Integer(k - 1) / (Integer(inv.m) * ps);
    Integer pt;
    mpz_pow_ui(pt.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(inv.t));
    Rational total = nu_factorial(M, p);
    total += Rational(inv.s - inv.t) * Rational(M);
    total += sigma(inv, k) * inv.nu1m;
    total += Rational(pt) * Rational(M) * inv.nuG;
    total.canonicalize();
    return total;
}

} // namespace lindisk
