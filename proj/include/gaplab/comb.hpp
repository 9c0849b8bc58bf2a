#pragma once

#include <cstddef>
#include <vector>

namespace gaplab {

// Lexicographic k-subsets of {0,...,m-1}, represented as increasing index vectors.
// Usage (requires k <= m):
//   auto idx = first_combination(k);
//   do { ... } while (next_combination(idx, m));
// k == 0 yields exactly one (empty) combination.
inline std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    return idx;
}

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] + k - i < m) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace gaplab
