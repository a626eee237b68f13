#ifndef OCTT_RATIONAL_HPP
#define OCTT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "octt/check.hpp"

namespace octt {

// Exact scalars. All algebraic computations in this library run over Q (or Z);
// floating point appears only in the numerical theta/Siegel layer.
using Rat = mpq_class;
using Int = mpz_class;

// Reduced fraction num/den.  The two-argument mpq_class constructor does not
// canonicalize, and comparisons assume canonical form, so every fraction
// built from a numerator/denominator pair must go through here.
inline Rat frac(long num, long den) {
    DOMAIN_CHECK(den != 0);
    Rat x(num, den);
    x.canonicalize();
    return x;
}

inline Rat frac(const Int& num, const Int& den) {
    DOMAIN_CHECK(den != 0);
    Rat x(num, den);
    x.canonicalize();
    return x;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

// The integer value of an integral rational; errors if x has a denominator.
inline Int to_int(const Rat& x) {
    DOMAIN_CHECK(is_integer(x));
    return x.get_num();
}

inline bool fits_long(const Int& x) { return x.fits_slong_p(); }

inline long to_long(const Int& x) {
    DOMAIN_CHECK(x.fits_slong_p());
    return x.get_si();
}

inline double to_double(const Rat& x) { return x.get_d(); }

inline std::string to_string(const Rat& x) { return x.get_str(); }

} // namespace octt

#endif
