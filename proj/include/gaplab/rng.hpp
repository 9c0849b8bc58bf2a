#pragma once

// Deterministic random source. mt19937_64 is fully pinned by the standard;
// the derived draws (bounded integers, shuffles) are implemented here by hand
// because the standard library's distributions are implementation-defined
// and would break cross-platform reproducibility of seeded reports.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace gaplab {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    // Uniform on [0, bound) via rejection sampling; unbiased for any bound >= 1.
    std::uint64_t below(std::uint64_t bound);

    std::size_t index(std::size_t bound) { return static_cast<std::size_t>(below(bound)); }

    bool coin() { return below(2) == 1; }

    // Fisher-Yates.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

} // namespace gaplab
