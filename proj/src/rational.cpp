#include "lindisk/rational.hpp"

#include "lindisk/errors.hpp"

namespace lindisk {

Integer int_pow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

std::string rat_to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1)
        return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rat_from_string(const std::string& s) {
    if (s.empty())
        throw ParseError("empty rational");
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw ParseError("bad rational '" + s + "'");
    if (q.get_den() == 0)
        throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

Integer rat_floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

Rational rat_frac(const Rational& q) {
    return q - Rational(rat_floor(q));
}

} // namespace lindisk
