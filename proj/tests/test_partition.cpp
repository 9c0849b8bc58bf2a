#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "gaplab/errors.hpp"
#include "gaplab/partition.hpp"
#include "gaplab/rng.hpp"

using namespace gaplab;

namespace {

bool is_valid_partition(const Partition& p, unsigned N, unsigned n) {
    std::set<std::uint16_t> seen;
    for (const Block& b : p.blocks) {
        if (b.size() != n) return false;
        if (!std::is_sorted(b.begin(), b.end())) return false;
        for (std::uint16_t z : b)
            if (z >= N || !seen.insert(z).second) return false;
    }
    if (seen.size() != N) return false;
    for (std::size_t i = 1; i < p.blocks.size(); ++i)
        if (p.blocks[i - 1].front() >= p.blocks[i].front()) return false;
    return true;
}

// independent count for pair blocks: (N-1)!! = (N-1)(N-3)...1
Int double_factorial_odd(unsigned N) {
    Int r(1);
    for (unsigned v = N - 1; v >= 1; v -= 2) {
        r *= v;
        if (v <= 2) break;
    }
    return r;
}

}  // namespace

TEST_CASE("bit parity is the xor of binary digits") {
    CHECK(bit_parity(0) == 0);
    CHECK(bit_parity(1) == 1);
    CHECK(bit_parity(2) == 1);
    CHECK(bit_parity(3) == 0);
    CHECK(bit_parity(7) == 1);
    CHECK(bit_parity(0b1011) == 1);
    CHECK(block_parity({0, 1}) == 1);
    CHECK(block_parity({0, 3}) == 0);
    CHECK(block_parity({1, 2, 4, 7}) == 0);
}

TEST_CASE("canonicalize sorts members and blocks") {
    Partition p{{{3, 0}, {2, 1}}};
    canonicalize(p);
    CHECK(p.blocks == std::vector<Block>{{0, 3}, {1, 2}});
    CHECK(p.block_of(0) == 0);
    CHECK(p.block_of(2) == 1);
    CHECK_THROWS_AS(p.block_of(9), DomainError);
    CHECK(p.to_string(2) == "{00,11}|{01,10}");
}

TEST_CASE("partition counts match the factorial formula and the pairing recurrence") {
    CHECK(partition_count(4, 2) == 3);
    CHECK(partition_count(8, 2) == 105);
    CHECK(partition_count(16, 2) == 2027025);
    CHECK(partition_count(8, 4) == 35);
    CHECK(partition_count(4, 4) == 1);
    CHECK(partition_count(0, 2) == 1);
    // for pair blocks the count is the odd double factorial
    for (unsigned N = 2; N <= 16; N += 2)
        CHECK(partition_count(N, 2) == double_factorial_odd(N));
    CHECK(containing_count(4, 2) == 1);
    CHECK(containing_count(8, 2) == 15);
    CHECK(containing_count(16, 2) == 135135);
    CHECK(containing_count(8, 4) == 1);
    CHECK_THROWS_AS(partition_count(5, 2), DomainError);
    CHECK_THROWS_AS(partition_count(4, 0), DomainError);
}

TEST_CASE("enumeration is exhaustive, canonical, sorted, duplicate-free") {
    for (const auto& [N, n] : std::vector<std::pair<unsigned, unsigned>>{
             {2, 2}, {4, 2}, {6, 2}, {8, 2}, {8, 4}, {6, 3}, {9, 3}}) {
        const auto all = enumerate_partitions(N, n);
        CHECK(Int(static_cast<unsigned long>(all.size())) == partition_count(N, n));
        std::set<std::vector<Block>> distinct;
        for (const Partition& p : all) {
            CHECK(is_valid_partition(p, N, n));
            distinct.insert(p.blocks);
        }
        CHECK(distinct.size() == all.size());
        CHECK(std::is_sorted(all.begin(), all.end(),
                             [](const Partition& a, const Partition& b) {
                                 return a.blocks < b.blocks;
                             }));
    }
}

TEST_CASE("enumeration of the 4-point pair partitions is exactly known") {
    const auto all = enumerate_partitions(4, 2);
    REQUIRE(all.size() == 3);
    CHECK(all[0].blocks == std::vector<Block>{{0, 1}, {2, 3}});
    CHECK(all[1].blocks == std::vector<Block>{{0, 2}, {1, 3}});
    CHECK(all[2].blocks == std::vector<Block>{{0, 3}, {1, 2}});
}

TEST_CASE("partitions containing a fixed block") {
    const auto withBlock = partitions_containing({0, 3}, 8, 2);
    CHECK(Int(static_cast<unsigned long>(withBlock.size())) == containing_count(8, 2));
    for (const Partition& p : withBlock) {
        CHECK(is_valid_partition(p, 8, 2));
        CHECK(std::find(p.blocks.begin(), p.blocks.end(), Block{0, 3}) != p.blocks.end());
    }
    // every such partition appears in the full enumeration
    const auto all = enumerate_partitions(8, 2);
    for (const Partition& p : withBlock)
        CHECK(std::find(all.begin(), all.end(), p) != all.end());

    CHECK_THROWS_AS(partitions_containing({0, 0}, 8, 2), DomainError);  // repeated member
    CHECK_THROWS_AS(partitions_containing({0, 9}, 8, 2), DomainError);  // out of range
    CHECK_THROWS_AS(partitions_containing({0}, 8, 2), DomainError);     // wrong size
}

TEST_CASE("enumeration refuses oversized jobs") {
    // 16 points in pairs: 2'027'025 partitions, over the default 1e6 cap
    CHECK_THROWS_AS(enumerate_partitions(16, 2), SizeGuardError);
}

TEST_CASE("partition sampling is uniform") {
    Rng rng(314);
    const auto all = enumerate_partitions(8, 2);
    std::map<std::vector<Block>, unsigned> freq;
    const unsigned draws = 21000;  // 200 per partition
    for (unsigned i = 0; i < draws; ++i) ++freq[sample_partition(8, 2, rng).blocks];
    CHECK(freq.size() == all.size());
    const double expect = static_cast<double>(draws) / 105.0;
    double chi2 = 0;
    for (const auto& [blocks, count] : freq) {
        chi2 += (count - expect) * (count - expect) / expect;
        Partition p{blocks};
        CHECK(is_valid_partition(p, 8, 2));
    }
    CHECK(chi2 < 149.45);  // 0.001 critical value, 104 degrees of freedom
}

TEST_CASE("conditioned sampling is uniform over the containing family") {
    Rng rng(2718);
    const Block fixed{1, 4};
    const auto family = partitions_containing(fixed, 8, 2);
    REQUIRE(family.size() == 15);
    std::map<std::vector<Block>, unsigned> freq;
    const unsigned draws = 4500;  // 300 per partition
    for (unsigned i = 0; i < draws; ++i) ++freq[sample_containing(fixed, 8, 2, rng).blocks];
    CHECK(freq.size() == 15);
    for (const auto& [blocks, count] : freq) {
        CHECK(std::find_if(family.begin(), family.end(), [&](const Partition& p) {
                  return p.blocks == blocks;
              }) != family.end());
    }
    const double expect = draws / 15.0;
    double chi2 = 0;
    for (const auto& [blocks, count] : freq)
        chi2 += (count - expect) * (count - expect) / expect;
    CHECK(chi2 < 36.12);  // 0.001 critical value, 14 degrees of freedom
}
