#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace mahler {

using Int = mpz_class;
using Rat = mpq_class;

/// Parses "a" or "a/b" (optional sign, decimal digits); result is canonical.
Rat parse_rational(std::string_view text);

std::string to_string(const Rat& r);
std::string to_string(const Int& n);

Int pow(const Int& base, unsigned long exp);
Rat pow(const Rat& base, unsigned long exp);

Int floor(const Rat& r);
Int ceil(const Rat& r);
Rat abs(const Rat& r);

/// Number of bits in |n| (0 for n = 0).
std::size_t bit_length(const Int& n);

Int lcm(const Int& a, const Int& b);
Int gcd(const Int& a, const Int& b);

inline Rat make_rat(long num, unsigned long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace mahler
