#pragma once

#include "lindisk/rational.hpp"

#include <string>

namespace lindisk {

// Valuation of a field element, nu(x) = -log_p|x|.
//
// Exact(q)   : the valuation is exactly q (q*e is an integer for the ambient
//              ramification degree e).
// Infinite   : the element is exactly zero.
// AtLeast(q) : every known digit vanishes; only nu(x) >= q is certified.
class Valuation {
public:
    static Valuation exact(Rational q) { return Valuation(Kind::Exact, std::move(q)); }
    static Valuation infinite() { return Valuation(Kind::Infinite, Rational(0)); }
    static Valuation at_least(Rational q) { return Valuation(Kind::AtLeast, std::move(q)); }

    bool is_exact() const { return kind_ == Kind::Exact; }
    bool is_infinite() const { return kind_ == Kind::Infinite; }
    bool is_at_least() const { return kind_ == Kind::AtLeast; }

    // The exact value; only meaningful for Exact.
    const Rational& value() const { return q_; }
    // Certified lower bound (the value itself for Exact, the bound for AtLeast).
    // Not meaningful for Infinite.
    const Rational& lower_bound() const { return q_; }

    // Certified predicates (false means "cannot certify", not "certified false").
    bool certainly_zero() const { return kind_ == Kind::Exact && q_ == 0; }
    bool certainly_positive() const {
        return kind_ == Kind::Infinite || q_ > 0;
    }
    bool certainly_nonnegative() const {
        return kind_ == Kind::Infinite || q_ >= 0;
    }
    bool certainly_at_least(const Rational& bound) const {
        return kind_ == Kind::Infinite || q_ >= bound;
    }

    bool operator==(const Valuation& o) const { return kind_ == o.kind_ && q_ == o.q_; }

    std::string to_string() const {
        switch (kind_) {
        case Kind::Infinite: return "inf";
        case Kind::AtLeast: return ">=" + rat_to_string(q_);
        default: return rat_to_string(q_);
        }
    }

private:
    enum class Kind { Exact, Infinite, AtLeast };
    Valuation(Kind k, Rational q) : kind_(k), q_(std::move(q)) {}

    Kind kind_;
    Rational q_;
};

} // namespace lindisk
