#pragma once

// Finite learning settings: a data distribution over a finite space, an
// ordered training set of n i.i.d. draws, a finite hypothesis space, a
// stochastic kernel mapping each training tuple to a distribution over
// hypotheses, and a [0,1] rational loss table. Everything downstream
// (gap functionals, information terms) is computed from the exact joint
// law of (Z_1..Z_n, W).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gaplab/dist.hpp"
#include "gaplab/rat.hpp"

namespace gaplab {

struct SizeCaps {
    std::size_t maxZ = 4;
    std::size_t maxN = 3;
    std::size_t maxW = 5;
};

struct LearningSetting {
    std::string name;
    std::size_t zCount = 0;
    std::vector<Rat> pz;                   // data distribution over Z
    std::size_t n = 0;                     // training-set size
    std::size_t wCount = 0;
    std::vector<std::vector<Rat>> kernel;  // [packed training tuple][w]
    std::vector<std::vector<Rat>> loss;    // [w][z], values in [0,1]

    std::uint64_t sCount() const;          // zCount^n
    std::uint64_t sPack(const std::vector<std::size_t>& z) const;
    void sUnpack(std::uint64_t sIdx, std::vector<std::size_t>& out) const;

    void validate() const; // throws DomainError on any broken invariant
};

// Hard cap on exact joint-state counts; override with env GAPLAB_MAX_STATES.
std::uint64_t exact_state_guard();

// Exact joint law over axes (Z1..Zn, W): i.i.d. product over ordered
// training tuples composed with the kernel.
JointDist build_joint(const LearningSetting& s);

// Expected loss of w under the data distribution.
Rat population_risk(const LearningSetting& s, std::size_t w);

// Mean loss of w over one ordered training tuple.
Rat empirical_risk(const LearningSetting& s, std::size_t w, const std::vector<std::size_t>& z);

struct GapStats {
    Rat expectedGap{0};
    Rat expectedSquaredGap{0};
    std::vector<std::pair<unsigned, Rat>> momentK;  // (k, E[gap^k]) for k = 2..maxMoment
    std::vector<std::pair<Rat, Rat>> gapDist;       // (gap value, probability), sorted by value
    std::vector<double> perSampleMI;                // I(W;Z_i)
    bool perSampleAllIndependent = true;            // exact independence of every (Z_i, W)
    std::vector<std::vector<double>> pairMI;        // I(W;Z_i,Z_k), symmetric, diagonal 0

    Rat moment(unsigned k) const;
    Rat tail_one_sided(const Rat& t) const;  // P(gap >= t)
    Rat tail_abs(const Rat& t) const;        // P(|gap| >= t)
};

GapStats gap_stats(const LearningSetting& s, const JointDist& joint, unsigned maxMoment = 6);
GapStats gap_stats(const LearningSetting& s, unsigned maxMoment = 6);

// Reproducible random setting under the given size caps: same seed, same
// setting, bit for bit. Masses are random small-denominator rationals.
LearningSetting random_setting(std::uint64_t seed, const SizeCaps& caps = {});

struct SettingAnalysis {
    LearningSetting setting;
    JointDist joint;
    GapStats stats;
};

SettingAnalysis analyze(LearningSetting s, unsigned maxMoment = 6);

} // namespace gaplab
