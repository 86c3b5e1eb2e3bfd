/*
 * rational.hpp -- exact rational scalars.
 *
 * Thin layer over GMP's mpq_class: canonical "p/q" text form used by all
 * serialization, plus the few helpers the rest of the library needs.
 */
#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace reltwist {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// canonical text: "p" when the denominator is 1, else "p/q", q > 0, reduced
inline std::string rat_str(const Rational& q) {
    return q.get_str();
}

inline Rational rat_parse(const std::string& s) {
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// exact square root, when the argument is the square of a rational
inline std::optional<Rational> rat_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    mpz_class rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 2)) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), 2)) return std::nullopt;
    return Rational(rn, rd);
}

} // namespace reltwist
