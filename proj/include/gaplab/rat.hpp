#pragma once

// Exact rational arithmetic used for every probability mass in the library.
// All probabilities stay rational end to end; logarithms are taken in double
// precision only at the very last step of an information quantity.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace gaplab {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rat& x) { return x.get_d(); }

inline bool is_prob(const Rat& x) { return x >= 0 && x <= 1; }

// "a/b" for non-integers, "a" for integers.
std::string rat_str(const Rat& x);

// Parses "a", "a/b" (arbitrary precision). Throws DomainError on junk.
Rat parse_rat(const std::string& s);

// Natural log of a positive big integer, accurate to double precision.
double log_int(const Int& v);

// Natural log of a positive rational. Returns exactly 0.0 when x == 1 so
// that information quantities of exactly-independent distributions come out
// as exact zeros rather than rounding noise.
double log_rat(const Rat& x);

// Binomial coefficient; 0 whenever the arguments fall outside 0 <= k <= n,
// so combinatorial sums can run over a full index rectangle.
Int binom(long n, long k);

Int factorial(long n);

// n (n-1) ... (n-k+1), the falling factorial.
Int falling(long n, long k);

Rat pow_rat(const Rat& base, unsigned k);

} // namespace gaplab
