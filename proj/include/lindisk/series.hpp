#pragma once

#include "lindisk/element.hpp"

#include <optional>
#include <vector>

namespace lindisk {

struct NewtonPolygon {
    struct Vertex {
        long index;
        Rational nu;
        bool operator==(const Vertex& o) const { return index == o.index && nu == o.nu; }
    };
    struct Segment {
        Rational slope;
        long length;
        bool operator==(const Segment& o) const { return slope == o.slope && length == o.length; }
    };
    std::vector<Vertex> vertices;
    std::vector<Segment> segments;
};

struct DiskBijectivityReport {
    bool bijective = false;
    long degree_on_closed_disk = 0;
    // True when the tail beyond the truncation is covered by the
    // integral-coefficients certificate (requires nu_r > 0).
    bool tail_certified = false;
};

// A power series truncated at degree K, with coefficients a_0..a_K.
// For dynamical maps the constant term is the exact zero; a general constant
// term is allowed for utility arithmetic.  A series marked "entire" is a
// polynomial: coefficients beyond K are exactly zero, so it may be freely
// re-truncated upward.
class PowerSeries {
public:
    PowerSeries(FieldPtr field, std::vector<PadicElement> coeffs, bool entire = false);

    static PowerSeries zero(FieldPtr field, long truncation);
    // The identity map x (entire).
    static PowerSeries identity(FieldPtr field, long precision);
    // The linear map c*x (entire).
    static PowerSeries linear(const PadicElement& c);
    // c * x^degree (entire).
    static PowerSeries monomial(const PadicElement& c, long degree);

    const FieldPtr& field() const { return field_; }
    long truncation() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool entire() const { return entire_; }
    const PadicElement& coeff(long i) const;
    const std::vector<PadicElement>& coeffs() const { return coeffs_; }

    // Truncate down, or pad (entire series only) up, to truncation K.
    PowerSeries truncate(long K) const;
    // Same, but the result is a plain truncated view (entire flag cleared).
    // Iterating a polynomial through this view keeps compositions at
    // truncation K instead of growing the full polynomial degree.
    PowerSeries viewed_at(long K) const;

    PowerSeries add(const PowerSeries& y) const;
    PowerSeries sub(const PowerSeries& y) const;
    PowerSeries mul(const PowerSeries& y) const;
    PowerSeries scale(const PadicElement& c) const;
    PowerSeries pow(unsigned long n) const;
    PowerSeries negate() const;
    // f - x.
    PowerSeries sub_identity() const;

    bool has_zero_constant_term() const;
    // |a_1| = 1 and nu(a_i) >= 0 for all i, all certified.
    bool in_unit_coefficient_family() const;

private:
    FieldPtr field_;
    std::vector<PadicElement> coeffs_;
    bool entire_;
};

// g(f(x)) truncated to the shared truncation; f must have zero constant term.
PowerSeries compose(const PowerSeries& g, const PowerSeries& f);

// n-fold composition f o f o ... o f (n >= 1) by repeated squaring.
PowerSeries iterate(const PowerSeries& f, unsigned long n);

// Smallest index with certified |a_d| = 1; nullopt when no unit coefficient
// exists up to the truncation.
std::optional<long> weierstrass_degree(const PowerSeries& g);

// Lower convex hull of {(i, nu(a_i)) : 1 <= i <= wideg(g)}.
NewtonPolygon newton_polygon(const PowerSeries& g);
// Hull over 1..last_index regardless of the Weierstrass degree (used for
// entire polynomials whose unit coefficient lies beyond the truncated view).
NewtonPolygon newton_polygon_up_to(const PowerSeries& g, long last_index);

// Checks |a_i| r^i <= r for all i (valuation form nu(a_i) + (i-1) nu_r >= 0)
// on the closed disk of radius r = p^{-nu_r}; requires |a_1| = 1.
// With assume_integral_tail the caller asserts the series lies in O_p[[x]],
// which certifies the tail beyond the truncation whenever nu_r > 0.
DiskBijectivityReport disk_bijectivity(const PowerSeries& h, const Rational& nu_r,
                                       bool assume_integral_tail = false);

// Horner evaluation; requires nu(x) > 0 certified.  The reported precision
// accounts for the omitted tail of a truncated series via nu(tail) >= (K+1) nu(x).
PadicElement evaluate(const PowerSeries& g, const PadicElement& x);

} // namespace lindisk
