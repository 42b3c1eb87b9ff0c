#include "dyadnet/rational.hpp"

#include <stdexcept>

namespace dyadnet {

Rational frac(long num, long den) {
    if (den == 0) throw std::invalid_argument("frac: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational frac(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("frac: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational pow2(long e) {
    Rational q;
    if (e >= 0) {
        mpq_set_z(q.get_mpq_t(), pow2z(e).get_mpz_t());
    } else {
        mpq_set_ui(q.get_mpq_t(), 1, 1);
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
    }
    return q;
}

BigInt pow2z(long e) {
    if (e < 0) throw std::invalid_argument("pow2z: negative exponent");
    BigInt z;
    mpz_ui_pow_ui(z.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return z;
}

BigInt bigint_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt hi(static_cast<unsigned long>(u >> 64));
    BigInt lo(static_cast<unsigned long>(u & ~0ULL));
    BigInt z = (hi << 64) + lo;
    return neg ? BigInt(-z) : z;
}

std::string to_fraction(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational fraction_from(const std::string& s) {
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("fraction_from: cannot parse '" + s + "'");
    if (sgn(Rational(q.get_den())) <= 0)
        throw std::invalid_argument("fraction_from: nonpositive denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace dyadnet
