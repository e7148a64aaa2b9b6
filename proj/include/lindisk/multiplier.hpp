#pragma once

#include "lindisk/element.hpp"
#include "lindisk/valuation.hpp"

namespace lindisk {

// Arithmetic invariants of a multiplier lambda with |lambda| = 1 that is not
// a root of unity:
//   m    - multiplicative order of the residue of lambda,
//   s    - sphere index with R(s) <= |1 - lambda^m| < R(s+1),
//   t    - sphere index with R(t) <= |gamma_0 - lambda^m| < R(t+1), where
//          gamma_0 is a p-power root of unity closest to lambda^m,
//   nu1m - nu(1 - lambda^m),
//   nuG  - nu(gamma_0 - lambda^m).
struct MultiplierInvariants {
    Integer p;
    long m = 1;
    long s = 0;
    long t = 0;
    Rational nu1m;
    Rational nuG;
};

// nu(R(s)) for R(s) = p^{-1/(p^{s-1}(p-1))}, with R(0) = 0.
Valuation nu_R(long s, const Integer& p);

// Throws HypothesisViolated when a structural invariant fails.
void validate_invariants(const MultiplierInvariants& inv);

// Recovers (m, s, t, nu1m, nuG) from lambda without constructing gamma_0:
// with D = nu(1 - lambda^{m p^s}) the decomposition D = (s-t) + p^t nuG
// identifies t uniquely via p^t nuG in (1/(p-1), p/(p-1)] for t >= 1 and
// nuG > 1/(p-1) for t = 0.
MultiplierInvariants compute_invariants(const PadicElement& lambda);

// nu(1 - lambda^n) in closed form (n >= 1).
Rational nu_one_minus_lambda_pow(const MultiplierInvariants& inv, long n);

// nu(n!) = (n - S_n)/(p-1), S_n the base-p digit sum.
Rational nu_factorial(const Integer& n, const Integer& p);

// The correction exponent attached to |1 - lambda^m| in the closed form of
// the product over 1 - lambda^n; requires s >= 1.
Rational sigma(const MultiplierInvariants& inv, long k);

// nu of prod_{n=1}^{k-1} (1 - lambda^n), k >= 2, in closed form.
Rational nu_product(const MultiplierInvariants& inv, long k);

// delta(z) = frac((k-1)/z), as used by the sigma correction terms.
Rational delta_frac(long k, const Integer& z);

} // namespace lindisk
