#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace uwo {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "a" or "a/b".
inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational pow_rat(const Rational& base, long e) {
    if (e == 0) return 1;
    Rational out;
    if (e > 0) {
        mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    } else {
        if (is_zero(base)) throw std::domain_error("0 to negative power");
        mpz_pow_ui(out.get_num_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(-e));
        mpz_pow_ui(out.get_den_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(-e));
    }
    out.canonicalize();
    return out;
}

// q-adic valuation of a nonzero rational; nullopt for 0 (valuation +infinity).
inline std::optional<long> valuation(const Rational& r, long q) {
    if (is_zero(r)) return std::nullopt;
    Integer qq(q);
    long v = 0;
    Integer n = r.get_num();
    Integer d = r.get_den();
    Integer rem, quo;
    while (true) {
        mpz_tdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), qq.get_mpz_t());
        if (sgn(rem) != 0) break;
        n = quo;
        ++v;
    }
    while (true) {
        mpz_tdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), d.get_mpz_t(), qq.get_mpz_t());
        if (sgn(rem) != 0) break;
        d = quo;
        --v;
    }
    return v;
}

}  // namespace uwo
