#ifndef UNDULATION_RATIONAL_HPP
#define UNDULATION_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

#include "undulation/errors.hpp"
#include "undulation/prime_field.hpp"

namespace undulation {

// Exact big integers and rationals. GMP keeps rationals canonical
// (positive denominator, gcd 1) after every canonicalize().
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw MathError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parse "num", "num/den" or a decimal string with optional sign.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(Integer(s));
        }
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        throw ParseError("invalid rational literal: '" + s + "'");
    }
}

inline std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

inline u64 mod_u64(const Integer& z, u64 p) {
    Integer r = z % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
}

// Image of a rational in GF(p); fails when the denominator vanishes mod p.
inline std::optional<u64> rational_mod(const Rational& q, const PrimeField& field) {
    u64 den = mod_u64(q.get_den(), field.modulus());
    if (den == 0) return std::nullopt;
    u64 num = mod_u64(q.get_num(), field.modulus());
    return field.mul(num, field.inv(den));
}

// Rational reconstruction: the unique n/d with |n|, d <= floor(sqrt(m/2)),
// d coprime to m, congruent to a mod m -- when it exists.
inline std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m) {
    if (m <= 0) throw MathError("rational_reconstruct: modulus must be positive");
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
    Integer r0 = m, r1 = ((a % m) + m) % m;
    Integer t0 = 0, t1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    if (sgn(t1) < 0) { t1 = -t1; r1 = -r1; }
    if (t1 > bound) return std::nullopt;
    Integer g;
    mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return std::nullopt;
    return make_rational(r1, t1);
}

} // namespace undulation

#endif
