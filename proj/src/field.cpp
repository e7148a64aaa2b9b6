#include "lindisk/field.hpp"

#include "lindisk/errors.hpp"

#include <sstream>

namespace lindisk {

namespace {

bool is_probable_prime(const Integer& p) {
    return mpz_probab_prime_p(p.get_mpz_t(), 30) != 0;
}

} // namespace

Field::Field(Kind kind, Integer p, std::vector<Integer> lower, long default_precision,
             Integer cyclotomic_order)
    : kind_(kind),
      p_(std::move(p)),
      lower_(std::move(lower)),
      default_precision_(default_precision),
      cyclotomic_order_(std::move(cyclotomic_order)) {}

void Field::check_eisenstein(const Integer& p, const std::vector<Integer>& lower) {
    if (p < 2 || !is_probable_prime(p))
        throw ConfigError("p = " + p.get_str() + " is not prime");
    if (lower.empty())
        throw ConfigError("defining polynomial must have degree >= 1");
    if (lower[0] == 0 || mpz_divisible_p(lower[0].get_mpz_t(), Integer(p * p).get_mpz_t()))
        throw ConfigError("constant term must have p-valuation exactly 1 (Eisenstein)");
    if (!mpz_divisible_p(lower[0].get_mpz_t(), p.get_mpz_t()))
        throw ConfigError("constant term must be divisible by p (Eisenstein)");
    for (size_t i = 1; i < lower.size(); ++i) {
        if (lower[i] != 0 && !mpz_divisible_p(lower[i].get_mpz_t(), p.get_mpz_t()))
            throw ConfigError("coefficient of pi^" + std::to_string(i) +
                              " must be divisible by p (Eisenstein)");
    }
}

FieldPtr Field::q_p(const Integer& p, long default_precision) {
    return eisenstein_pure(p, 1, default_precision);
}

FieldPtr Field::eisenstein_pure(const Integer& p, long degree, long default_precision) {
    if (degree < 1)
        throw ConfigError("ramification degree must be >= 1");
    std::vector<Integer> lower(static_cast<size_t>(degree), Integer(0));
    lower[0] = -p;
    check_eisenstein(p, lower);
    if (default_precision < 1)
        throw ConfigError("default precision must be positive");
    Kind kind = degree == 1 ? Kind::Trivial : Kind::Eisenstein;
    return FieldPtr(new Field(kind, p, std::move(lower), default_precision, Integer(0)));
}

FieldPtr Field::eisenstein(const Integer& p, std::vector<Integer> lower_coeffs,
                           long default_precision) {
    check_eisenstein(p, lower_coeffs);
    if (default_precision < 1)
        throw ConfigError("default precision must be positive");
    return FieldPtr(
        new Field(Kind::Eisenstein, p, std::move(lower_coeffs), default_precision, Integer(0)));
}

FieldPtr Field::cyclotomic(const Integer& p, const Integer& prime_power,
                           long default_precision) {
    if (p < 2 || !is_probable_prime(p))
        throw ConfigError("p = " + p.get_str() + " is not prime");
    // prime_power = p^s, s >= 1
    Integer q = prime_power;
    long s = 0;
    while (q > 1 && mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
        q /= p;
        ++s;
    }
    if (q != 1 || s < 1)
        throw ConfigError("cyclotomic order " + prime_power.get_str() +
                          " is not a positive power of p = " + p.get_str());
    // Phi_{p^s}(1+x) = sum_{j=0}^{p-1} (1+x)^{j*p^{s-1}}, degree e = p^{s-1}(p-1).
    Integer step;
    mpz_pow_ui(step.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(s - 1));
    if (!step.fits_ulong_p() || !p.fits_ulong_p())
        throw ConfigError("cyclotomic preset too large");
    unsigned long step_ul = step.get_ui();
    unsigned long p_ul = p.get_ui();
    unsigned long e = step_ul * (p_ul - 1);
    std::vector<Integer> coeffs(e + 1, Integer(0)); // full polynomial incl. leading term
    for (unsigned long j = 0; j < p_ul; ++j) {
        unsigned long n = j * step_ul;
        for (unsigned long i = 0; i <= n; ++i) {
            Integer b;
            mpz_bin_uiui(b.get_mpz_t(), n, i);
            coeffs[i] += b;
        }
    }
    if (coeffs[e] != 1)
        throw ConfigError("internal: cyclotomic preset is not monic");
    std::vector<Integer> lower(coeffs.begin(), coeffs.begin() + static_cast<long>(e));
    check_eisenstein(p, lower);
    if (default_precision < 1)
        throw ConfigError("default precision must be positive");
    return FieldPtr(
        new Field(Kind::Cyclotomic, p, std::move(lower), default_precision, prime_power));
}

bool Field::same_as(const Field& other) const {
    return p_ == other.p_ && lower_ == other.lower_;
}

Integer Field::p_pow(long k) const {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), p_.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

long Field::nu_p(const Integer& z) const {
    if (z == 0)
        throw std::invalid_argument("nu_p(0)");
    Integer rem;
    return static_cast<long>(mpz_remove(rem.get_mpz_t(), z.get_mpz_t(), p_.get_mpz_t()));
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "Q_" << p_.get_str();
    if (degree() > 1) {
        os << "(pi), pi^" << degree();
        bool pure = true;
        for (size_t i = 1; i < lower_.size(); ++i)
            if (lower_[i] != 0) pure = false;
        if (pure && lower_[0] == -p_) {
            os << " = " << p_.get_str();
        } else {
            os << " + ";
            bool first = true;
            for (size_t i = lower_.size(); i-- > 0;) {
                if (lower_[i] == 0) continue;
                if (!first) os << " + ";
                os << lower_[i].get_str();
                if (i >= 1) os << "*pi";
                if (i >= 2) os << "^" << i;
                first = false;
            }
            os << " = 0";
        }
        if (kind_ == Kind::Cyclotomic)
            os << " (cyclotomic " << cyclotomic_order_.get_str() << ")";
    }
    return os.str();
}

} // namespace lindisk
