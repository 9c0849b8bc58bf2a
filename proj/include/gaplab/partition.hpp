#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaplab/rat.hpp"
#include "gaplab/rng.hpp"

namespace gaplab {

// Partitions of the point set {0,...,N-1} (read as bit strings) into blocks of
// equal size n. Canonical form: each block sorted ascending, blocks ordered by
// their smallest element. All enumeration and sampling below produce canonical
// partitions, so equality is plain vector equality.

using Block = std::vector<std::uint16_t>;

struct Partition {
    std::vector<Block> blocks;

    bool operator==(const Partition&) const = default;

    // Index of the block containing z. Throws DomainError if z is absent.
    std::size_t block_of(std::uint16_t z) const;

    // Renders each element as a d-bit string, e.g. "{000,011}|{001,010}".
    std::string to_string(unsigned d) const;
};

// XOR of the binary digits of z.
int bit_parity(std::uint16_t z);

// XOR of all binary digits of all members of the block.
int block_parity(const Block& block);

// Sorts members and orders blocks by smallest element, in place.
void canonicalize(Partition& p);

// Number of partitions of an N-set into blocks of size n: N! / ((n!)^(N/n) (N/n)!).
Int partition_count(unsigned N, unsigned n);

// Number of partitions having one given block: partition_count(N - n, n).
Int containing_count(unsigned N, unsigned n);

// Enumeration refuses to materialize more than this many partitions.
// Override with env var GAPLAB_MAX_PARTITIONS (default 1e6).
std::size_t partition_guard();

// All canonical partitions, in lexicographic order of their block lists.
std::vector<Partition> enumerate_partitions(unsigned N, unsigned n);

// All canonical partitions containing `fixed` as a block.
std::vector<Partition> partitions_containing(const Block& fixed, unsigned N, unsigned n);

// Uniform draw over all partitions (shuffle-and-cut).
Partition sample_partition(unsigned N, unsigned n, Rng& rng);

// Uniform draw over partitions containing `fixed` as a block.
Partition sample_containing(const Block& fixed, unsigned N, unsigned n, Rng& rng);

}  // namespace gaplab
