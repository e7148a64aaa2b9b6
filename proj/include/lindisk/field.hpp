#pragma once

#include "lindisk/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace lindisk {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// A totally ramified extension Q_p(pi) cut out by a monic Eisenstein
// polynomial pi^e + g_{e-1} pi^{e-1} + ... + g_1 pi + g_0 = 0.
// Q_p itself is the degree-1 case with pi = p.  The absolute value is
// normalized so that |p| = 1/p, hence nu(pi) = 1/e.
class Field : public std::enable_shared_from_this<Field> {
public:
    enum class Kind { Trivial, Eisenstein, Cyclotomic };

    // Q_p (pi = p).
    static FieldPtr q_p(const Integer& p, long default_precision);
    // Pure relation pi^degree = p.
    static FieldPtr eisenstein_pure(const Integer& p, long degree, long default_precision);
    // General monic Eisenstein polynomial, lower coefficients g_0..g_{e-1}.
    static FieldPtr eisenstein(const Integer& p, std::vector<Integer> lower_coeffs,
                               long default_precision);
    // Preset: the Eisenstein polynomial Phi_{p^s}(1+x) of degree p^{s-1}(p-1);
    // prime_power must be p^s with s >= 1.  The element 1+pi is then a
    // primitive p^s-th root of unity.
    static FieldPtr cyclotomic(const Integer& p, const Integer& prime_power,
                               long default_precision);

    const Integer& p() const { return p_; }
    long degree() const { return static_cast<long>(lower_.size()); }
    long default_precision() const { return default_precision_; }
    Kind kind() const { return kind_; }
    const std::vector<Integer>& lower_coeffs() const { return lower_; }
    // For cyclotomic fields, the root order p^s; otherwise 0.
    const Integer& cyclotomic_order() const { return cyclotomic_order_; }

    bool same_as(const Field& other) const;

    Integer p_pow(long k) const; // p^k, k >= 0

    // p-adic valuation of a nonzero integer.
    long nu_p(const Integer& z) const;

    std::string describe() const;

private:
    Field(Kind kind, Integer p, std::vector<Integer> lower, long default_precision,
          Integer cyclotomic_order);

    static void check_eisenstein(const Integer& p, const std::vector<Integer>& lower);

    Kind kind_;
    Integer p_;
    std::vector<Integer> lower_; // g_0..g_{e-1}
    long default_precision_;
    Integer cyclotomic_order_;
};

} // namespace lindisk
