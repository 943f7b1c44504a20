#pragma once

// Exact rational arithmetic (GMP-backed) and decimal rendering.
//
// All finite quantities in this library are exact rationals; mpq_class
// already maintains the canonical form (reduced, positive denominator),
// so we alias it rather than wrapping it.  What we add here: integer
// powers with negative exponents, parsing of the input syntaxes accepted
// on the command line ("3/4", "0.25", "1e-9"), and correctly rounded
// fixed-point rendering used by the table checks.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pjrank {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// base^e for integer e of either sign; 0^negative is a domain error.
inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    bool invert = e < 0;
    unsigned long mag = invert ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
    if (invert && base == 0) throw std::domain_error("rat_pow: 0 to a negative power");
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), mag);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), mag);
    if (invert) {
        mpq_inv(r.get_mpq_t(), r.get_mpq_t());
    }
    r.canonicalize();
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Rat pow10(long e) { return rat_pow(Rat(10), e); }

// Accepts "n", "n/d", decimal ("0.25", "-3.5"), and exponent forms
// ("1e-9", "2.5e3").  Used for --alpha, --tol and friends.
inline Rat parse_rat(std::string_view s) {
    auto bad = [&] { throw std::invalid_argument("parse_rat: cannot parse '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    std::string body(s);
    long exp10 = 0;
    if (auto epos = body.find_first_of("eE"); epos != std::string::npos) {
        std::string etail = body.substr(epos + 1);
        body = body.substr(0, epos);
        if (etail.empty() || body.empty()) bad();
        try {
            exp10 = std::stol(etail);
        } catch (...) {
            bad();
        }
    }
    auto parse_int = [&](const std::string& digits) {
        Int v;
        if (digits.empty() || mpz_set_str(v.get_mpz_t(), digits.c_str(), 10) != 0) bad();
        return v;
    };
    Rat value;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        Int den = parse_int(body.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rat: zero denominator");
        value = Rat(parse_int(body.substr(0, slash)), den);
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string digits = body.substr(0, dot) + body.substr(dot + 1);
        long frac = static_cast<long>(body.size() - dot - 1);
        if (digits == "-" || digits == "+") bad();
        value = Rat(parse_int(digits), int_pow(Int(10), static_cast<unsigned long>(frac)));
    } else {
        value = Rat(parse_int(body));
    }
    value.canonicalize();
    if (exp10 != 0) value *= pow10(exp10);
    return value;
}

namespace detail {

// |x|*10^digits split into quotient and remainder against the denominator.
inline void scaled_divmod(const Rat& x, int digits, Int& q, Int& r, Int& den) {
    Int num = abs(x.get_num()) * int_pow(Int(10), static_cast<unsigned long>(digits));
    den = x.get_den();
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
}

inline std::string fixed_point(const Int& units, int digits, bool negative) {
    std::string s = units.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    if (digits > 0) s.insert(s.size() - digits, ".");
    if (negative && units != 0) s.insert(0, "-");
    return s;
}

}  // namespace detail

// Round-to-nearest, ties to even, rendered with exactly `digits` fractional digits.
inline std::string decimal_nearest(const Rat& x, int digits) {
    if (digits < 0) throw std::invalid_argument("decimal_nearest: digits < 0");
    Int q, r, den;
    detail::scaled_divmod(x, digits, q, r, den);
    Int twice = 2 * r;
    int cmp = ::cmp(twice, den);
    if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
    return detail::fixed_point(q, digits, x < 0);
}

// Round toward zero (the convention several published table entries follow).
inline std::string decimal_truncated(const Rat& x, int digits) {
    if (digits < 0) throw std::invalid_argument("decimal_truncated: digits < 0");
    Int q, r, den;
    detail::scaled_divmod(x, digits, q, r, den);
    return detail::fixed_point(q, digits, x < 0);
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

}  // namespace pjrank
