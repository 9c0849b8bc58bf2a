#include "gaplab/partition.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

#include "gaplab/comb.hpp"
#include "gaplab/errors.hpp"

namespace gaplab {

namespace {

void check_args(unsigned N, unsigned n) {
    if (n == 0) throw DomainError("block size must be positive");
    if (N > 65536) throw DomainError("point set is limited to 65536 elements");
    if (N % n != 0) throw DomainError("block size must divide the point-set size");
}

// `fixed` must be a plausible block: n distinct in-range elements. Returns it sorted.
Block check_fixed(const Block& fixed, unsigned N, unsigned n) {
    check_args(N, n);
    if (fixed.size() != n) throw DomainError("fixed block has wrong size");
    Block b = fixed;
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] >= N) throw DomainError("fixed block element out of range");
        if (i > 0 && b[i] == b[i - 1]) throw DomainError("fixed block repeats an element");
    }
    return b;
}

std::vector<std::uint16_t> complement_of(const Block& sortedFixed, unsigned N) {
    std::vector<std::uint16_t> rest;
    rest.reserve(N - sortedFixed.size());
    std::size_t pos = 0;
    for (unsigned z = 0; z < N; ++z) {
        if (pos < sortedFixed.size() && sortedFixed[pos] == z) {
            ++pos;
            continue;
        }
        rest.push_back(static_cast<std::uint16_t>(z));
    }
    return rest;
}

// Anchor on the smallest available element, pick its n-1 partners, recurse.
// `avail` must be sorted; emits block lists in lexicographic order.
void enum_rec(const std::vector<std::uint16_t>& avail, unsigned n,
              std::vector<Block>& acc, std::vector<Partition>& out) {
    if (avail.empty()) {
        out.push_back(Partition{acc});
        return;
    }
    const std::uint16_t anchor = avail.front();
    const std::vector<std::uint16_t> rest(avail.begin() + 1, avail.end());
    auto idx = first_combination(n - 1);
    do {
        Block block{anchor};
        for (std::size_t i : idx) block.push_back(rest[i]);
        std::vector<std::uint16_t> remaining;
        remaining.reserve(rest.size() - idx.size());
        std::size_t pos = 0;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (pos < idx.size() && idx[pos] == i) {
                ++pos;
                continue;
            }
            remaining.push_back(rest[i]);
        }
        acc.push_back(std::move(block));
        enum_rec(remaining, n, acc, out);
        acc.pop_back();
    } while (next_combination(idx, rest.size()));
}

void check_enum_size(const Int& count) {
    if (count > Int(static_cast<unsigned long>(partition_guard())))
        throw SizeGuardError("enumeration would produce " + count.get_str() +
                             " partitions; raise GAPLAB_MAX_PARTITIONS to allow");
}

// Shuffle `elems` and cut it into consecutive blocks of n. Every canonical
// partition corresponds to the same number of orderings, so the draw is uniform.
std::vector<Block> shuffle_and_cut(std::vector<std::uint16_t> elems, unsigned n, Rng& rng) {
    rng.shuffle(elems);
    std::vector<Block> blocks;
    blocks.reserve(elems.size() / n);
    for (std::size_t start = 0; start < elems.size(); start += n)
        blocks.emplace_back(elems.begin() + start, elems.begin() + start + n);
    return blocks;
}

}  // namespace

std::size_t Partition::block_of(std::uint16_t z) const {
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (std::binary_search(blocks[b].begin(), blocks[b].end(), z)) return b;
    throw DomainError("element is not covered by the partition");
}

std::string Partition::to_string(unsigned d) const {
    std::string out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b > 0) out += '|';
        out += '{';
        for (std::size_t i = 0; i < blocks[b].size(); ++i) {
            if (i > 0) out += ',';
            for (unsigned bit = d; bit-- > 0;)
                out += ((blocks[b][i] >> bit) & 1) ? '1' : '0';
        }
        out += '}';
    }
    return out;
}

int bit_parity(std::uint16_t z) {
    return std::popcount(static_cast<unsigned>(z)) & 1;
}

int block_parity(const Block& block) {
    int p = 0;
    for (std::uint16_t z : block) p ^= bit_parity(z);
    return p;
}

void canonicalize(Partition& p) {
    for (Block& b : p.blocks) std::sort(b.begin(), b.end());
    std::sort(p.blocks.begin(), p.blocks.end(),
              [](const Block& a, const Block& b) { return a.front() < b.front(); });
}

Int partition_count(unsigned N, unsigned n) {
    check_args(N, n);
    if (N == 0) return Int(1);
    const unsigned blocks = N / n;
    Int den;
    mpz_pow_ui(den.get_mpz_t(), factorial(n).get_mpz_t(), blocks);
    den *= factorial(blocks);
    return factorial(N) / den;
}

Int containing_count(unsigned N, unsigned n) {
    check_args(N, n);
    if (N < n) throw DomainError("point set is smaller than one block");
    return partition_count(N - n, n);
}

std::size_t partition_guard() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("GAPLAB_MAX_PARTITIONS")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(1'000'000);
    }();
    return cap;
}

std::vector<Partition> enumerate_partitions(unsigned N, unsigned n) {
    check_args(N, n);
    check_enum_size(partition_count(N, n));
    std::vector<std::uint16_t> avail(N);
    for (unsigned z = 0; z < N; ++z) avail[z] = static_cast<std::uint16_t>(z);
    std::vector<Partition> out;
    std::vector<Block> acc;
    enum_rec(avail, n, acc, out);
    return out;
}

std::vector<Partition> partitions_containing(const Block& fixed, unsigned N, unsigned n) {
    const Block sorted = check_fixed(fixed, N, n);
    check_enum_size(containing_count(N, n));
    std::vector<Partition> out;
    std::vector<Block> acc;
    enum_rec(complement_of(sorted, N), n, acc, out);
    for (Partition& p : out) {
        p.blocks.push_back(sorted);
        canonicalize(p);
    }
    return out;
}

Partition sample_partition(unsigned N, unsigned n, Rng& rng) {
    check_args(N, n);
    std::vector<std::uint16_t> elems(N);
    for (unsigned z = 0; z < N; ++z) elems[z] = static_cast<std::uint16_t>(z);
    Partition p{shuffle_and_cut(std::move(elems), n, rng)};
    canonicalize(p);
    return p;
}

Partition sample_containing(const Block& fixed, unsigned N, unsigned n, Rng& rng) {
    const Block sorted = check_fixed(fixed, N, n);
    if (N < n) throw DomainError("point set is smaller than one block");
    Partition p{shuffle_and_cut(complement_of(sorted, N), n, rng)};
    p.blocks.push_back(sorted);
    canonicalize(p);
    return p;
}

}  // namespace gaplab
