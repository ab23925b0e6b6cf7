#pragma once

#include <gmpxx.h>
#include <string>

namespace varcalc {

// Exact rational coefficients. Binomials in the adjoint formula grow
// combinatorially, so arbitrary precision is mandatory; no floating point
// appears anywhere in the library.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

} // namespace varcalc
