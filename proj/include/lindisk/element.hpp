#pragma once

#include "lindisk/field.hpp"
#include "lindisk/valuation.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lindisk {

// An element of a totally ramified extension Q_p(pi), stored as
//
//     x = p^{-w} * (c_0 + c_1 pi + ... + c_{e-1} pi^{e-1}),
//
// where the c_i are p-adic integers tracked modulo a power of p and the whole
// value is known modulo pi^N (absolute precision N in pi-units).  The exact
// zero (the only value with infinite precision) is representable; any other
// all-zero digit pattern only certifies nu(x) >= N/e.
//
// Values are immutable; all operations return new elements and may be used
// freely from concurrent threads.
class PadicElement {
public:
    static constexpr long kInfinitePrecision = std::numeric_limits<long>::max() / 4;

    static PadicElement zero(FieldPtr field); // exact zero
    static PadicElement from_integer(FieldPtr field, const Integer& z, long precision);
    static PadicElement one(FieldPtr field, long precision);
    static PadicElement uniformizer(FieldPtr field, long precision);
    // Integral element with prescribed pi-power coefficients c_0..c_{e-1}.
    static PadicElement from_pi_coeffs(FieldPtr field, std::vector<Integer> coeffs,
                                       long precision);

    const FieldPtr& field() const { return field_; }
    long precision() const { return prec_; } // pi-units; kInfinitePrecision for exact zero
    bool is_exact_zero() const { return prec_ >= kInfinitePrecision; }
    // True when every certified digit vanishes (includes the exact zero).
    bool is_digitwise_zero() const { return !has_digit_; }

    Valuation valuation() const;

    PadicElement add(const PadicElement& y) const;
    PadicElement sub(const PadicElement& y) const;
    PadicElement mul(const PadicElement& y) const;
    PadicElement negate() const;
    // Multiplicative inverse; requires a certified finite valuation.
    PadicElement invert() const;
    PadicElement pow(unsigned long n) const;

    // Truncate to a lower absolute precision.
    PadicElement with_precision(long precision) const;

    // Equality of residue classes at the shared precision min(Nx, Ny).
    bool same_value(const PadicElement& y) const;

    // Residue modulo the maximal ideal, as an integer in [0, p).
    // Requires nu(x) >= 0 certified.
    Integer residue_mod_p() const;

    // Expression-grammar form (round-trips through parse_element).
    std::string to_expression() const;
    // Human form with the O(pi^N) tail marker.
    std::string to_string() const;

    friend PadicElement operator+(const PadicElement& a, const PadicElement& b) { return a.add(b); }
    friend PadicElement operator-(const PadicElement& a, const PadicElement& b) { return a.sub(b); }
    friend PadicElement operator*(const PadicElement& a, const PadicElement& b) { return a.mul(b); }
    friend PadicElement operator-(const PadicElement& a) { return a.negate(); }

private:
    PadicElement(FieldPtr field, std::vector<Integer> coeffs, long shift, long prec,
                 std::optional<Integer> exact_int = std::nullopt);

    void canonicalize();
    void require_same_field(const PadicElement& y) const;
    // e * nu(x) as an integer lower bound (exact when a digit is certified).
    long val_e_lower_bound() const { return has_digit_ ? val_e_ : prec_; }

    FieldPtr field_;
    std::vector<Integer> coeffs_; // size e
    long shift_ = 0;              // w
    long prec_ = 0;               // N
    bool has_digit_ = false;      // cached by canonicalize()
    long val_e_ = 0;              // e * nu(x) when has_digit_
    // Carried alongside the digits while the value is a known rational
    // integer (literal arithmetic); lets integer identities such as
    // (1+x)^4 - 1 produce the exact zero instead of an uncertified one.
    std::optional<Integer> exact_int_;
};

} // namespace lindisk
