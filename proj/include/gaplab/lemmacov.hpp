#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gaplab/dist.hpp"
#include "gaplab/rat.hpp"

namespace gaplab {

// Parity bookkeeping for uniformly partitioned point sets. A pool of n0 points
// of parity 0 and n1 points of parity 1 is split uniformly into blocks of size
// n; Y_i is the parity (XOR) of block i. Closed-form block-parity
// probabilities are checked against brute-force enumeration, and the pairwise
// covariance Cov[Y_1, Y_2] is compared against delta * E[Y_1]^2.

struct ParityEnsemble {
    unsigned n0 = 2;
    unsigned n1 = 2;
    unsigned n = 2;

    unsigned total() const { return n0 + n1; }
    unsigned blocks() const { return total() / n; }
    // needTwoBlocks: pairwise quantities look at two distinct blocks.
    void validate(bool needTwoBlocks) const;
};

// P(Y_1 = 1): single binomial sum over the odd-count of the first block.
Rat marginal_parity_prob(const ParityEnsemble& e);

// P(Y_1 = 1, Y_2 = 1): double binomial sum over the odd-counts of two blocks.
Rat joint_parity_prob(const ParityEnsemble& e);

// Cov[Y_1, Y_2] = P(Y_1 = 1, Y_2 = 1) - P(Y_1 = 1)^2.
Rat covariance(const ParityEnsemble& e);

// P(Y_1=1, Y_2=1) / P(Y_1=1)^2; equals 1 + cov/marginal^2. Defined as 1 when
// the marginal is zero (both sides of the covariance comparison vanish).
Rat pair_ratio(const ParityEnsemble& e);

struct CovCheck {
    ParityEnsemble ens;
    Rat jointProb;
    Rat marginalProb;
    Rat cov;
    Rat ratio;
    Rat delta;
    bool holds = false;  // cov <= delta * marginal^2, exactly
};
CovCheck check_covariance(const ParityEnsemble& e, const Rat& delta);

// Smallest N' (as far as the searched grid can tell) such that
// min(n0, n1) >= N' implies cov <= delta * marginal^2. Scans every total in
// {2n, 3n, ..., totalCap} and every split (n0, n1); records violating splits.
struct NprimeResult {
    bool found = false;  // false when a violation sits on the grid boundary
    unsigned nprime = 1;
    bool capHit = false;
    unsigned totalCap = 0;
    std::vector<std::pair<unsigned, unsigned>> violations;
};
NprimeResult find_nprime(unsigned n, const Rat& delta, unsigned totalCap = 40);

// Exact distribution of the full parity vector (Y_1, ..., Y_k) by enumerating
// odd-point placements; axes "Y1".."Yk", each of size 2. Refuses to enumerate
// more than ~2e6 placements.
JointDist brute_force_parity_dist(const ParityEnsemble& e);

}  // namespace gaplab
