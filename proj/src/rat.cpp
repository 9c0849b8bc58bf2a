#include "gaplab/rat.hpp"

#include <cmath>

#include "gaplab/errors.hpp"

namespace gaplab {

std::string rat_str(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw DomainError("empty rational literal");
    try {
        Rat r(s);
        if (r.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw DomainError("bad rational literal: '" + s + "'");
    }
}

double log_int(const Int& v) {
    if (v <= 0) throw DomainError("log of non-positive integer");
    signed long exp = 0;
    double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double log_rat(const Rat& x) {
    if (x <= 0) throw DomainError("log of non-positive rational");
    if (x == 1) return 0.0;
    return log_int(Int(x.get_num())) - log_int(Int(x.get_den()));
}

Int binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Int(0);
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Int factorial(long n) {
    if (n < 0) throw DomainError("factorial of negative integer");
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Int falling(long n, long k) {
    if (k < 0) throw DomainError("falling factorial with negative length");
    Int r(1);
    for (long i = 0; i < k; ++i) r *= Int(n - i);
    return r;
}

Rat pow_rat(const Rat& base, unsigned k) {
    Rat r(1);
    for (unsigned i = 0; i < k; ++i) r *= base;
    return r;
}

} // namespace gaplab
