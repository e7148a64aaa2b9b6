#include "lindisk/series.hpp"

#include "lindisk/errors.hpp"

#include <algorithm>

namespace lindisk {

PowerSeries::PowerSeries(FieldPtr field, std::vector<PadicElement> coeffs, bool entire)
    : field_(std::move(field)), coeffs_(std::move(coeffs)), entire_(entire) {
    if (coeffs_.empty())
        coeffs_.push_back(PadicElement::zero(field_));
    for (const auto& c : coeffs_)
        if (!c.field()->same_as(*field_))
            throw FieldMismatch("series coefficient lives in a different field");
}

PowerSeries PowerSeries::zero(FieldPtr field, long truncation) {
    std::vector<PadicElement> c(static_cast<size_t>(truncation) + 1,
                                PadicElement::zero(field));
    return PowerSeries(std::move(field), std::move(c), true);
}

PowerSeries PowerSeries::identity(FieldPtr field, long precision) {
    std::vector<PadicElement> c{PadicElement::zero(field),
                                PadicElement::one(field, precision)};
    return PowerSeries(std::move(field), std::move(c), true);
}

PowerSeries PowerSeries::linear(const PadicElement& c) {
    std::vector<PadicElement> v{PadicElement::zero(c.field()), c};
    return PowerSeries(c.field(), std::move(v), true);
}

PowerSeries PowerSeries::monomial(const PadicElement& c, long degree) {
    if (degree < 0)
        throw ParseError("monomial degree must be nonnegative");
    std::vector<PadicElement> v(static_cast<size_t>(degree) + 1,
                                PadicElement::zero(c.field()));
    v.back() = c;
    return PowerSeries(c.field(), std::move(v), true);
}

const PadicElement& PowerSeries::coeff(long i) const {
    if (i < 0 || i > truncation())
        throw std::out_of_range("series coefficient index " + std::to_string(i));
    return coeffs_[static_cast<size_t>(i)];
}

PowerSeries PowerSeries::truncate(long K) const {
    if (K < 0)
        throw TruncationTooShort("cannot truncate to negative degree");
    if (K <= truncation()) {
        std::vector<PadicElement> c(coeffs_.begin(), coeffs_.begin() + K + 1);
        return PowerSeries(field_, std::move(c), entire_ && K == truncation());
    }
    if (!entire_)
        throw TruncationTooShort("cannot extend a truncated series beyond degree " +
                                 std::to_string(truncation()));
    std::vector<PadicElement> c = coeffs_;
    c.resize(static_cast<size_t>(K) + 1, PadicElement::zero(field_));
    return PowerSeries(field_, std::move(c), true);
}

PowerSeries PowerSeries::viewed_at(long K) const {
    PowerSeries t = truncate(K);
    return PowerSeries(t.field_, std::move(t.coeffs_), false);
}

namespace {

long effective_truncation(const PowerSeries& x, const PowerSeries& y, bool additive) {
    if (x.entire() && y.entire())
        return additive ? std::max(x.truncation(), y.truncation())
                        : x.truncation() + y.truncation();
    if (x.entire()) return y.truncation();
    if (y.entire()) return x.truncation();
    return std::min(x.truncation(), y.truncation());
}

} // namespace

PowerSeries PowerSeries::add(const PowerSeries& y) const {
    if (!field_->same_as(*y.field_))
        throw FieldMismatch("adding series over different fields");
    const long K = effective_truncation(*this, y, true);
    std::vector<PadicElement> c(static_cast<size_t>(K) + 1, PadicElement::zero(field_));
    for (long i = 0; i <= K; ++i) {
        const PadicElement& a = i <= truncation() ? coeff(i) : c[static_cast<size_t>(i)];
        const PadicElement& b = i <= y.truncation() ? y.coeff(i) : c[static_cast<size_t>(i)];
        c[static_cast<size_t>(i)] = a.add(b);
    }
    return PowerSeries(field_, std::move(c), entire_ && y.entire_);
}

PowerSeries PowerSeries::negate() const {
    std::vector<PadicElement> c = coeffs_;
    for (auto& z : c) z = z.negate();
    return PowerSeries(field_, std::move(c), entire_);
}

PowerSeries PowerSeries::sub(const PowerSeries& y) const { return add(y.negate()); }

PowerSeries PowerSeries::mul(const PowerSeries& y) const {
    if (!field_->same_as(*y.field_))
        throw FieldMismatch("multiplying series over different fields");
    const long K = effective_truncation(*this, y, false);
    std::vector<PadicElement> c(static_cast<size_t>(K) + 1, PadicElement::zero(field_));
    for (long i = 0; i <= std::min(truncation(), K); ++i) {
        const PadicElement& a = coeff(i);
        if (a.is_exact_zero()) continue;
        const long jmax = std::min(y.truncation(), K - i);
        for (long j = 0; j <= jmax; ++j) {
            const PadicElement& b = y.coeff(j);
            if (b.is_exact_zero()) continue;
            auto& slot = c[static_cast<size_t>(i + j)];
            slot = slot.add(a.mul(b));
        }
    }
    return PowerSeries(field_, std::move(c), entire_ && y.entire_);
}

PowerSeries PowerSeries::scale(const PadicElement& c) const {
    std::vector<PadicElement> v = coeffs_;
    for (auto& z : v) z = z.mul(c);
    return PowerSeries(field_, std::move(v), entire_);
}

PowerSeries PowerSeries::pow(unsigned long n) const {
    if (n == 0)
        return PowerSeries(field_,
                           {PadicElement::one(field_, field_->default_precision())}, true);
    PowerSeries base = *this;
    PowerSeries result = *this;
    bool result_set = false;
    while (n > 0) {
        if (n & 1) {
            result = result_set ? result.mul(base) : base;
            result_set = true;
        }
        n >>= 1;
        if (n > 0) base = base.mul(base);
    }
    return result;
}

PowerSeries PowerSeries::sub_identity() const {
    if (truncation() < 1)
        return *this;
    std::vector<PadicElement> c = coeffs_;
    c[1] = c[1].sub(PadicElement::one(
        field_, c[1].is_exact_zero() ? field_->default_precision() : c[1].precision()));
    return PowerSeries(field_, std::move(c), entire_);
}

bool PowerSeries::has_zero_constant_term() const {
    return coeffs_[0].is_exact_zero();
}

bool PowerSeries::in_unit_coefficient_family() const {
    if (truncation() < 1) return false;
    if (!coeff(1).valuation().certainly_zero()) return false;
    for (long i = 0; i <= truncation(); ++i)
        if (!coeff(i).valuation().certainly_nonnegative()) return false;
    return true;
}

PowerSeries compose(const PowerSeries& g, const PowerSeries& f) {
    if (!g.field()->same_as(*f.field()))
        throw FieldMismatch("composing series over different fields");
    if (!f.has_zero_constant_term())
        throw HypothesisViolated("inner series of a composition must fix zero");
    long K;
    if (g.entire() && f.entire())
        K = g.truncation() * std::max(f.truncation(), 1L);
    else if (g.entire())
        K = f.truncation();
    else if (f.entire())
        K = g.truncation();
    else
        K = std::min(g.truncation(), f.truncation());
    const PowerSeries fK = f.entire() && f.truncation() < K ? f.truncate(K) : f;
    std::vector<PadicElement> acc(static_cast<size_t>(K) + 1,
                                  PadicElement::zero(g.field()));
    acc[0] = g.coeff(0);
    PowerSeries fpow = fK.truncate(std::min(fK.truncation(), K));
    const long lmax = std::min(g.truncation(), K);
    for (long l = 1; l <= lmax; ++l) {
        if (l > 1) fpow = fpow.mul(fK).truncate(std::min(fpow.truncation() + fK.truncation(), K));
        const PadicElement& gl = g.coeff(l);
        if (gl.is_exact_zero()) continue;
        const long top = std::min(fpow.truncation(), K);
        for (long k = l; k <= top; ++k) {
            const PadicElement& ck = fpow.coeff(k);
            if (ck.is_exact_zero()) continue;
            acc[static_cast<size_t>(k)] = acc[static_cast<size_t>(k)].add(gl.mul(ck));
        }
    }
    return PowerSeries(g.field(), std::move(acc), g.entire() && f.entire());
}

PowerSeries iterate(const PowerSeries& f, unsigned long n) {
    if (n == 0)
        throw HypothesisViolated("iterate requires a positive iteration count");
    if (!f.has_zero_constant_term())
        throw HypothesisViolated("iterated series must fix zero");
    PowerSeries base = f;
    PowerSeries result = f;
    bool result_set = false;
    while (n > 0) {
        if (n & 1) {
            result = result_set ? compose(result, base) : base;
            result_set = true;
        }
        n >>= 1;
        if (n > 0) base = compose(base, base);
    }
    return result;
}

std::optional<long> weierstrass_degree(const PowerSeries& g) {
    for (long i = 0; i <= g.truncation(); ++i) {
        const Valuation v = g.coeff(i).valuation();
        if (v.certainly_zero()) return i;
        // Exact nonzero, Infinite, and AtLeast(q > 0) are all certified non-units.
    }
    return std::nullopt;
}

namespace {

NewtonPolygon hull_of_points(const std::vector<NewtonPolygon::Vertex>& pts,
                             const std::vector<std::pair<long, Rational>>& unknown) {
    NewtonPolygon np;
    if (pts.empty())
        return np;
    std::vector<NewtonPolygon::Vertex> stack;
    for (const auto& p : pts) { // indices strictly increasing
        while (stack.size() >= 2) {
            const auto& a = stack[stack.size() - 2];
            const auto& b = stack[stack.size() - 1];
            // keep strictly increasing slopes: drop b when slope(a,b) >= slope(b,p)
            const Rational lhs = (b.nu - a.nu) * Rational(p.index - b.index);
            const Rational rhs = (p.nu - b.nu) * Rational(b.index - a.index);
            if (lhs >= rhs)
                stack.pop_back();
            else
                break;
        }
        stack.push_back(p);
    }
    np.vertices = stack;
    for (size_t i = 0; i + 1 < stack.size(); ++i) {
        Rational slope = (stack[i + 1].nu - stack[i].nu) / Rational(stack[i + 1].index - stack[i].index);
        slope.canonicalize();
        np.segments.push_back({slope, stack[i + 1].index - stack[i].index});
    }
    // An uncertified point must certifiably lie on or above the hull.
    for (const auto& [idx, bound] : unknown) {
        if (idx < np.vertices.front().index)
            throw PrecisionExhausted("uncertified coefficient left of the Newton polygon");
        if (idx > np.vertices.back().index)
            continue; // beyond the examined principal part
        // evaluate hull height at idx
        Rational h = np.vertices.front().nu;
        for (size_t i = 0; i + 1 < np.vertices.size(); ++i) {
            if (idx >= np.vertices[i].index && idx <= np.vertices[i + 1].index) {
                h = np.vertices[i].nu + np.segments[i].slope * Rational(idx - np.vertices[i].index);
                break;
            }
        }
        if (bound < h)
            throw PrecisionExhausted("uncertified coefficient may dent the Newton polygon");
    }
    return np;
}

} // namespace

NewtonPolygon newton_polygon_up_to(const PowerSeries& g, long last_index) {
    if (last_index > g.truncation())
        throw TruncationTooShort("Newton polygon range exceeds the truncation");
    std::vector<NewtonPolygon::Vertex> pts;
    std::vector<std::pair<long, Rational>> unknown;
    for (long i = 1; i <= last_index; ++i) {
        const Valuation v = g.coeff(i).valuation();
        if (v.is_infinite()) continue;
        if (v.is_exact())
            pts.push_back({i, v.value()});
        else
            unknown.emplace_back(i, v.lower_bound());
    }
    if (pts.empty())
        throw PrecisionExhausted("no certified coefficients for the Newton polygon");
    return hull_of_points(pts, unknown);
}

NewtonPolygon newton_polygon(const PowerSeries& g) {
    const auto d = weierstrass_degree(g);
    if (!d.has_value())
        throw TruncationTooShort("Weierstrass degree not reached within the truncation");
    return newton_polygon_up_to(g, *d);
}

DiskBijectivityReport disk_bijectivity(const PowerSeries& h, const Rational& nu_r,
                                       bool assume_integral_tail) {
    if (h.truncation() < 1 || !h.coeff(1).valuation().certainly_zero())
        throw HypothesisViolated("disk bijectivity requires |h'(0)| = 1");
    DiskBijectivityReport rep;
    rep.bijective = true;
    rep.degree_on_closed_disk = 1;
    for (long i = 2; i <= h.truncation(); ++i) {
        const Valuation v = h.coeff(i).valuation();
        const Rational need = -Rational(i - 1) * nu_r; // nu(a_i) >= (1-i) nu_r
        if (v.is_infinite()) continue;
        if (v.is_exact()) {
            if (v.value() < need) {
                rep.bijective = false;
                continue;
            }
            if (v.value() == need)
                rep.degree_on_closed_disk = i;
        } else {
            if (v.lower_bound() < need)
                throw PrecisionExhausted("cannot certify |a_i| r^i <= r at index " +
                                         std::to_string(i));
        }
    }
    rep.tail_certified = h.entire() || (assume_integral_tail && nu_r > 0);
    return rep;
}

PadicElement evaluate(const PowerSeries& g, const PadicElement& x) {
    const Valuation vx = x.valuation();
    if (!vx.certainly_positive())
        throw OutsideConvergenceCertificate("evaluation point must satisfy nu(x) > 0");
    const long K = g.truncation();
    PadicElement acc = g.coeff(K);
    for (long i = K - 1; i >= 0; --i)
        acc = acc.mul(x).add(g.coeff(i));
    if (!g.entire() && !x.is_exact_zero() && !acc.is_exact_zero()) {
        // nu(tail) >= (K+1) nu(x) for integral tails
        const Rational tail = Rational(K + 1) * vx.lower_bound();
        const Rational tail_pi = tail * Rational(g.field()->degree());
        const long cap = static_cast<long>(rat_floor(tail_pi).get_si());
        if (cap < acc.precision())
            acc = acc.with_precision(cap);
    }
    return acc;
}

} // namespace lindisk
