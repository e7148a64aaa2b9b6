#include "lindisk/element.hpp"

#include "lindisk/errors.hpp"

#include <algorithm>
#include <sstream>

namespace lindisk {

namespace {

long ceil_div_clamped(long a, long e) {
    if (a <= 0) return 0;
    return (a + e - 1) / e;
}

void mod_into(Integer& z, const Integer& modulus) {
    mpz_mod(z.get_mpz_t(), z.get_mpz_t(), modulus.get_mpz_t());
}

// Coefficient vectors of length e, multiplied modulo the defining polynomial
// and modulo p^m.
std::vector<Integer> raw_mul(const Field& field, const std::vector<Integer>& a,
                             const std::vector<Integer>& b, long m) {
    const long e = field.degree();
    const Integer pm = field.p_pow(m);
    std::vector<Integer> d(static_cast<size_t>(2 * e - 1), Integer(0));
    for (long i = 0; i < e; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (long j = 0; j < e; ++j) {
            if (b[static_cast<size_t>(j)] == 0) continue;
            d[static_cast<size_t>(i + j)] +=
                a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
        }
    }
    for (auto& z : d) mod_into(z, pm);
    // pi^e = -(g_0 + g_1 pi + ... + g_{e-1} pi^{e-1})
    const auto& g = field.lower_coeffs();
    for (long j = 2 * e - 2; j >= e; --j) {
        Integer top = d[static_cast<size_t>(j)];
        if (top == 0) continue;
        d[static_cast<size_t>(j)] = 0;
        for (long i = 0; i < e; ++i) {
            if (g[static_cast<size_t>(i)] == 0) continue;
            d[static_cast<size_t>(j - e + i)] -= top * g[static_cast<size_t>(i)];
            mod_into(d[static_cast<size_t>(j - e + i)], pm);
        }
    }
    d.resize(static_cast<size_t>(e));
    return d;
}

std::vector<Integer> raw_pow(const Field& field, std::vector<Integer> base, long n, long m) {
    std::vector<Integer> r(static_cast<size_t>(field.degree()), Integer(0));
    r[0] = 1;
    while (n > 0) {
        if (n & 1) r = raw_mul(field, r, base, m);
        base = raw_mul(field, base, base, m);
        n >>= 1;
    }
    return r;
}

} // namespace

PadicElement::PadicElement(FieldPtr field, std::vector<Integer> coeffs, long shift, long prec,
                           std::optional<Integer> exact_int)
    : field_(std::move(field)),
      coeffs_(std::move(coeffs)),
      shift_(shift),
      prec_(prec),
      exact_int_(std::move(exact_int)) {
    coeffs_.resize(static_cast<size_t>(field_->degree()), Integer(0));
    canonicalize();
}

void PadicElement::canonicalize() {
    const long e = field_->degree();
    if (exact_int_ && *exact_int_ == 0)
        prec_ = kInfinitePrecision;
    if (is_exact_zero()) {
        for (auto& c : coeffs_) c = 0;
        shift_ = 0;
        has_digit_ = false;
        prec_ = kInfinitePrecision;
        exact_int_ = Integer(0);
        return;
    }
    // Reduce each coefficient to its trusted modulus p^{K_i},
    // K_i = ceil((N + e*w - i)/e); digits at or beyond pi^{N+e*w} are garbage.
    const long total = prec_ + e * shift_;
    for (long i = 0; i < e; ++i) {
        const long ki = ceil_div_clamped(total - i, e);
        if (ki == 0) {
            coeffs_[static_cast<size_t>(i)] = 0;
            continue;
        }
        mod_into(coeffs_[static_cast<size_t>(i)], field_->p_pow(ki));
    }
    // Pull the denominator exponent down as far as the digits allow.
    while (shift_ > 0) {
        bool divisible = true;
        for (const auto& c : coeffs_)
            if (c != 0 && !mpz_divisible_p(c.get_mpz_t(), field_->p().get_mpz_t())) {
                divisible = false;
                break;
            }
        if (!divisible) break;
        for (auto& c : coeffs_)
            if (c != 0) c /= field_->p();
        --shift_;
    }
    has_digit_ = false;
    long min_u = 0;
    for (long i = 0; i < e; ++i) {
        const auto& c = coeffs_[static_cast<size_t>(i)];
        if (c == 0) continue;
        const long u = e * field_->nu_p(c) + i;
        if (!has_digit_ || u < min_u) {
            min_u = u;
            has_digit_ = true;
        }
    }
    val_e_ = has_digit_ ? min_u - e * shift_ : 0;
}

PadicElement PadicElement::zero(FieldPtr field) {
    std::vector<Integer> c(static_cast<size_t>(field->degree()), Integer(0));
    return PadicElement(std::move(field), std::move(c), 0, kInfinitePrecision, Integer(0));
}

PadicElement PadicElement::from_integer(FieldPtr field, const Integer& z, long precision) {
    if (precision < 1)
        throw PrecisionExhausted("cannot create an element at precision " +
                                 std::to_string(precision));
    std::vector<Integer> c(static_cast<size_t>(field->degree()), Integer(0));
    c[0] = z;
    return PadicElement(std::move(field), std::move(c), 0, precision, z);
}

PadicElement PadicElement::one(FieldPtr field, long precision) {
    return from_integer(std::move(field), Integer(1), precision);
}

PadicElement PadicElement::uniformizer(FieldPtr field, long precision) {
    std::vector<Integer> c(static_cast<size_t>(field->degree()), Integer(0));
    std::optional<Integer> exact;
    if (field->degree() == 1) {
        c[0] = -field->lower_coeffs()[0]; // pi is the root of x + g_0
        exact = c[0];
    } else {
        c[1] = 1;
    }
    return PadicElement(std::move(field), std::move(c), 0, precision, std::move(exact));
}

PadicElement PadicElement::from_pi_coeffs(FieldPtr field, std::vector<Integer> coeffs,
                                          long precision) {
    if (precision < 1)
        throw PrecisionExhausted("cannot create an element at precision " +
                                 std::to_string(precision));
    if (coeffs.size() > static_cast<size_t>(field->degree()))
        throw FieldMismatch("too many pi-power coefficients");
    return PadicElement(std::move(field), std::move(coeffs), 0, precision);
}

Valuation PadicElement::valuation() const {
    if (is_exact_zero())
        return Valuation::infinite();
    if (has_digit_)
        return Valuation::exact(make_ratio(val_e_, field_->degree()));
    return Valuation::at_least(make_ratio(prec_, field_->degree()));
}

void PadicElement::require_same_field(const PadicElement& y) const {
    if (!field_->same_as(*y.field_))
        throw FieldMismatch("operands live in different fields");
}

PadicElement PadicElement::add(const PadicElement& y) const {
    require_same_field(y);
    if (is_exact_zero()) return y;
    if (y.is_exact_zero()) return *this;
    const long e = field_->degree();
    const long w = std::max(shift_, y.shift_);
    const long n = std::min(prec_, y.prec_);
    std::vector<Integer> c(static_cast<size_t>(e), Integer(0));
    const Integer fx = field_->p_pow(w - shift_);
    const Integer fy = field_->p_pow(w - y.shift_);
    for (long i = 0; i < e; ++i)
        c[static_cast<size_t>(i)] =
            coeffs_[static_cast<size_t>(i)] * fx + y.coeffs_[static_cast<size_t>(i)] * fy;
    std::optional<Integer> exact;
    if (exact_int_ && y.exact_int_) exact = *exact_int_ + *y.exact_int_;
    return PadicElement(field_, std::move(c), w, n, std::move(exact));
}

PadicElement PadicElement::negate() const {
    if (is_exact_zero()) return *this;
    std::vector<Integer> c = coeffs_;
    for (auto& z : c) z = -z;
    std::optional<Integer> exact;
    if (exact_int_) exact = -*exact_int_;
    return PadicElement(field_, std::move(c), shift_, prec_, std::move(exact));
}

PadicElement PadicElement::sub(const PadicElement& y) const { return add(y.negate()); }

PadicElement PadicElement::mul(const PadicElement& y) const {
    require_same_field(y);
    if (is_exact_zero() || y.is_exact_zero()) return zero(field_);
    const long e = field_->degree();
    const long n = std::min(prec_ + y.val_e_lower_bound(), y.prec_ + val_e_lower_bound());
    if (n <= 0)
        throw PrecisionExhausted("product has no certified digit");
    const long w = shift_ + y.shift_;
    const long m = ceil_div_clamped(n, e) + w;
    std::vector<Integer> c = raw_mul(*field_, coeffs_, y.coeffs_, m);
    std::optional<Integer> exact;
    if (exact_int_ && y.exact_int_ &&
        mpz_sizeinbase(exact_int_->get_mpz_t(), 2) +
                mpz_sizeinbase(y.exact_int_->get_mpz_t(), 2) <
            (1u << 20))
        exact = *exact_int_ * *y.exact_int_;
    return PadicElement(field_, std::move(c), w, n, std::move(exact));
}

PadicElement PadicElement::invert() const {
    if (is_exact_zero())
        throw DivisionByUncertifiedZero("inverting the exact zero");
    if (!has_digit_)
        throw PrecisionExhausted(
            "inverting an element with no certified nonzero digit; retry at higher precision");
    const long e = field_->degree();
    const long n_out = prec_ - 2 * val_e_;
    if (n_out <= 0)
        throw PrecisionExhausted("inverse has no certified digit");
    const long alpha = val_e_ + e * shift_; // pi-valuation of the integral part
    // 1/x = p^{w} * h^{alpha} * u^{-1} * p^{-alpha},
    // where h = p/pi and u = I*h^{alpha}/p^{alpha} is a unit.
    const long w_out = alpha - shift_; // denominator exponent before folding
    const long m_target = ceil_div_clamped(n_out, e) + std::max(w_out, 0L);
    const long m_work = m_target + alpha + 2;
    const Integer pm_work = field_->p_pow(m_work);

    // h = (g_1 + g_2 pi + ... + g_{e-1} pi^{e-2} + pi^{e-1}) * (-g_0/p)^{-1}
    const auto& g = field_->lower_coeffs();
    Integer c0_over_p = -g[0] / field_->p();
    Integer c0_inv;
    if (mpz_invert(c0_inv.get_mpz_t(), c0_over_p.get_mpz_t(), pm_work.get_mpz_t()) == 0)
        throw std::logic_error("defining constant term is not a p-unit times p");
    std::vector<Integer> h(static_cast<size_t>(e), Integer(0));
    if (e == 1) {
        h[0] = c0_inv;
    } else {
        for (long i = 0; i + 1 < e; ++i) h[static_cast<size_t>(i)] = g[static_cast<size_t>(i + 1)];
        h[static_cast<size_t>(e - 1)] = 1;
        for (auto& z : h) {
            z *= c0_inv;
            mod_into(z, pm_work);
        }
    }

    std::vector<Integer> h_alpha = raw_pow(*field_, h, alpha, m_work);
    std::vector<Integer> u = raw_mul(*field_, coeffs_, h_alpha, m_work);
    const Integer p_alpha = field_->p_pow(alpha);
    for (auto& z : u) {
        if (!mpz_divisible_p(z.get_mpz_t(), p_alpha.get_mpz_t()))
            throw std::logic_error("inversion: unit extraction failed");
        z /= p_alpha;
    }
    const long m_u = m_work - alpha;
    const Integer pm_u = field_->p_pow(m_u);
    for (auto& z : u) mod_into(z, pm_u);

    // Newton iteration y <- y(2 - u y) in O_K / p^{m_u}.
    Integer u0_inv;
    Integer u0 = u[0];
    mod_into(u0, pm_u);
    if (mpz_invert(u0_inv.get_mpz_t(), u0.get_mpz_t(), pm_u.get_mpz_t()) == 0)
        throw std::logic_error("inversion: residue is not a unit");
    std::vector<Integer> y(static_cast<size_t>(e), Integer(0));
    y[0] = u0_inv;
    for (int iter = 0; iter < 64; ++iter) {
        std::vector<Integer> r = raw_mul(*field_, u, y, m_u);
        r[0] -= 1;
        mod_into(r[0], pm_u);
        bool converged = true;
        for (const auto& z : r)
            if (z != 0) {
                converged = false;
                break;
            }
        if (converged) break;
        // y <- y(2 - u y) = y(1 - r), with r = u y - 1
        std::vector<Integer> t(static_cast<size_t>(e), Integer(0));
        for (long i = 0; i < e; ++i) t[static_cast<size_t>(i)] = -r[static_cast<size_t>(i)];
        t[0] += 1;
        y = raw_mul(*field_, y, t, m_u);
        if (iter == 63)
            throw std::logic_error("inversion: Newton iteration failed to converge");
    }

    std::vector<Integer> j = raw_mul(*field_, h_alpha, y, m_work);
    long w_final = w_out;
    if (w_final < 0) {
        const Integer f = field_->p_pow(-w_final);
        for (auto& z : j) z *= f;
        w_final = 0;
    }
    return PadicElement(field_, std::move(j), w_final, n_out);
}

PadicElement PadicElement::pow(unsigned long n) const {
    if (n == 0)
        return one(field_, is_exact_zero() ? field_->default_precision() : prec_);
    if (is_exact_zero()) return *this;
    PadicElement base = *this;
    PadicElement result = one(field_, prec_);
    bool result_set = false;
    unsigned long k = n;
    while (k > 0) {
        if (k & 1) {
            result = result_set ? result.mul(base) : base;
            result_set = true;
        }
        k >>= 1;
        if (k > 0) base = base.mul(base);
    }
    return result;
}

PadicElement PadicElement::with_precision(long precision) const {
    if (precision < 1)
        throw PrecisionExhausted("cannot truncate to precision " + std::to_string(precision));
    if (precision >= prec_) return *this;
    return PadicElement(field_, coeffs_, shift_, precision, exact_int_);
}

bool PadicElement::same_value(const PadicElement& y) const {
    return sub(y).is_digitwise_zero();
}

Integer PadicElement::residue_mod_p() const {
    if (!valuation().certainly_nonnegative())
        throw PrecisionExhausted("residue requires a certified nonnegative valuation");
    if (shift_ != 0)
        throw std::logic_error("canonical integral element has nonzero shift");
    Integer r = coeffs_[0];
    mod_into(r, field_->p());
    return r;
}

std::string PadicElement::to_expression() const {
    if (is_digitwise_zero()) return "0";
    std::ostringstream os;
    if (shift_ > 0) os << "(";
    bool first = true;
    const long e = field_->degree();
    for (long i = 0; i < e; ++i) {
        const auto& c = coeffs_[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c.get_str();
        } else {
            if (c != 1) os << c.get_str() << "*";
            os << "pi";
            if (i > 1) os << "^" << i;
        }
    }
    if (shift_ > 0) {
        os << ")/p";
        if (shift_ > 1) os << "^" << shift_;
    }
    return os.str();
}

std::string PadicElement::to_string() const {
    if (is_exact_zero()) return "0";
    std::ostringstream os;
    os << to_expression() << " + O(pi^" << prec_ << ")";
    return os.str();
}

} // namespace lindisk
