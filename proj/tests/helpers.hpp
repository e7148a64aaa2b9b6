#pragma once

#include "lindisk/element.hpp"
#include "lindisk/field.hpp"

#include <random>

namespace lindisk::testing {

inline Rational Q(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Deterministic pseudo-random integral element with uniform digits.
inline PadicElement random_integral(const FieldPtr& field, std::mt19937_64& rng,
                                    long precision) {
    const long e = field->degree();
    const long m = (precision + e - 1) / e;
    std::vector<Integer> coeffs(static_cast<size_t>(e));
    std::uniform_int_distribution<unsigned long> digit(
        0, static_cast<unsigned long>(field->p().get_ui() - 1));
    for (auto& c : coeffs) {
        Integer acc = 0;
        for (long j = m - 1; j >= 0; --j)
            acc = acc * field->p() + Integer(digit(rng));
        c = acc;
    }
    return PadicElement::from_pi_coeffs(field, std::move(coeffs), precision);
}

// Random unit (nonzero residue).
inline PadicElement random_unit(const FieldPtr& field, std::mt19937_64& rng, long precision) {
    for (;;) {
        PadicElement x = random_integral(field, rng, precision);
        auto v = x.valuation();
        if (v.certainly_zero()) return x;
    }
}

} // namespace lindisk::testing
