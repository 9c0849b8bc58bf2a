#pragma once

#include <cstdint>
#include <vector>

#include "gaplab/partition.hpp"
#include "gaplab/rat.hpp"
#include "gaplab/rng.hpp"
#include "gaplab/setting.hpp"

namespace gaplab {

// A hard instance for mutual-information generalization arguments. Data points
// are the N = 2^d bit strings of length d. A hypothesis is a partition of all
// points into blocks of size n = 2^r; its loss on z is the parity (XOR of all
// bits of all members) of the block containing z. Training on a duplicate-free
// sample draws a partition uniformly among those keeping the sample in one
// block; otherwise uniformly among all partitions. The construction keeps every
// single example independent of the output and the expected gap exactly zero,
// while the posterior-vs-prior divergence grows with d.

struct CEParams {
    unsigned r = 1;  // block size n = 2^r
    unsigned d = 3;  // point-set size N = 2^d
    Rat delta = rat(1, 4);  // tolerated duplicate probability
    enum class Mode { exact, monte_carlo } mode = Mode::exact;
    std::uint64_t trials = 20000;  // monte_carlo only
    std::uint64_t seed = 1;        // monte_carlo only

    unsigned n() const { return 1u << r; }
    unsigned N() const { return 1u << d; }
    void validate() const;
};

// Loss of hypothesis `p` on point z: parity of the block containing z.
int loss_eval(const Partition& p, std::uint16_t z);

// Probability that an i.i.d. uniform n-tuple from an N-set repeats an element.
Rat duplicate_prob(unsigned N, unsigned n);

// Divergence of the posterior from the uniform prior on a duplicate-free
// sample: log of the support ratio, log( falling(N,n) / (n! * (N/n)) ).
double kl_support_formula(unsigned N, unsigned n);

// Closed-form lower bound on the same quantity:
// n*log(N-n+1) - (n-1)*log(n) - log(N).
double kl_chain_lower(unsigned N, unsigned n);

// One posterior draw for a concrete sample tuple (used by the monte-carlo
// path): uniform over partitions keeping a duplicate-free sample in one block,
// uniform over all partitions otherwise.
Partition sample_hypothesis(const std::vector<std::uint16_t>& sample, unsigned N, unsigned n,
                            Rng& rng);

// The instance materialized as an explicit finite learning setting, together
// with the hypothesis list giving meaning to the W indices.
struct CEConstruction {
    LearningSetting setting;
    std::vector<Partition> hypotheses;
};
CEConstruction construct(const CEParams& params);

struct CEReport {
    CEParams params;

    // Closed-form quantities, available in both modes.
    Int hypothesisCount;   // partitions of the N points
    Int containingCount;   // partitions keeping a fixed duplicate-free sample together
    Rat duplicateProb;     // probability of a repeated training example
    double klFormula = 0;  // support-ratio divergence on duplicate-free samples (nats)
    double klChainLower = 0;
    double klTarget = 0;    // n - 1
    bool klHolds = false;   // klFormula >= n-1 and duplicateProb <= delta

    // Exhaustive checks (exact mode).
    bool exactEvaluated = false;
    double klDupFree = 0;           // measured divergence, identical on every duplicate-free row
    double klDeviation = 0;         // worst |measured - expected| over all rows
    bool klMatchesFormula = false;  // duplicate-free rows hit klFormula, duplicate rows hit 0
    bool marginalUniform = false;   // averaged posterior is exactly uniform
    bool independenceExact = false; // every (Z_i, W) pair factorizes exactly
    double perSampleMIMax = 0;      // largest measured I(W;Z_i)
    Rat expectedGap;                // exact expected population-minus-empirical gap
    bool zeroGapExact = false;      // expectedGap == 0 as a rational
    Rat tailTwoSided;               // P(|gap| >= 1/4)
    Rat tailOneSided;               // P(gap >= 1/4)
    bool tailHolds = false;         // tailTwoSided >= 1/2

    // Sampled checks (monte-carlo mode).
    bool mcEvaluated = false;
    std::uint64_t trials = 0;
    std::uint64_t dupFreeTrials = 0;
    std::uint64_t binaryViolations = 0;  // duplicate-free trials with non-binary empirical risk
    std::uint64_t hitsTwoSided = 0;      // trials with |gap| >= 1/4
    std::uint64_t hitsOneSided = 0;      // trials with gap >= 1/4
    std::uint64_t hitsMidRisk = 0;       // trials with population risk in [1/4, 3/4]
    double gapMean = 0;
    double gapMeanSe = 0;
    double tailFreq = 0;  // two-sided tail frequency
    double tailSe = 0;
    double midRiskFreq = 0;  // frequency of population risk in [1/4, 3/4]
    double midRiskSe = 0;
    bool mcBinaryHolds = false;   // no binary violations observed
    bool mcZeroGapHolds = false;  // |gapMean| <= 3 * gapMeanSe
    bool mcTailHolds = false;     // tailFreq >= 1/2 - 3 * tailSe
    bool mcMidRiskHolds = false;  // midRiskFreq >= 1/2 - 3 * midRiskSe

    // True when every evaluated check passed.
    bool all() const;
};

// Runs every check the requested mode can afford and fills a report.
CEReport verify_properties(const CEParams& params);

}  // namespace gaplab
