#include "gaplab/rng.hpp"

#include "gaplab/errors.hpp"

namespace gaplab {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw DomainError("Rng::below with bound 0");
    if (bound == 1) return 0;
    // Largest multiple of bound that fits; rejecting everything at or above
    // it removes the modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = eng_();
    } while (r >= limit);
    return r % bound;
}

} // namespace gaplab
