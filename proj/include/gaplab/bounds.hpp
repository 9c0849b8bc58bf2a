#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gaplab/dist.hpp"
#include "gaplab/rat.hpp"
#include "gaplab/setting.hpp"

namespace gaplab {

// A bound holds when lhs <= rhs + kHoldsTol. Everything upstream of the final
// square roots and logarithms is exact, so the tolerance only absorbs the
// rounding of those last float steps.
inline constexpr double kHoldsTol = 1e-12;

struct BoundTerm {
    std::string label;
    double value;
};

struct BoundReport {
    std::string bound;  // e.g. "gap_full_mi"
    double lhs = 0;
    double rhs = 0;
    double sigma = 0;              // sub-gaussian scale used (0 when not applicable)
    std::optional<Rat> lhsExact;   // the bounded quantity, when exactly representable
    std::vector<BoundTerm> terms;  // ingredients of rhs, for reports

    double slack() const { return rhs - lhs; }
    bool holds() const { return lhs <= rhs + kHoldsTol; }
};

// Losses valued in [0,1] are sub-gaussian with this scale.
inline constexpr double kHalfSigma = 0.5;

// |E[gap]| <= sqrt(2 sigma^2 I(W;S) / n).
BoundReport full_mi_bound(const SettingAnalysis& a, double sigma = kHalfSigma);

// |E[gap]| <= (1/n) sum_i sqrt(2 sigma^2 I(W;Z_i)).
BoundReport samplewise_mi_bound(const SettingAnalysis& a, double sigma = kHalfSigma);

// |E[gap]| <= mean over size-m subsets U of sqrt(2 sigma^2 I(W;Z_U) / m).
// U is drawn independently of everything else, so conditioning on U reduces to
// plain mutual information with the selected coordinates.
BoundReport subset_mi_bound(const SettingAnalysis& a, unsigned m, double sigma = kHalfSigma);

// E[gap^2] <= 1/n + (1/n^2) sum_{i != k} sqrt(2 I(W;Z_i,Z_k)), losses in [0,1].
BoundReport pairwise_sq_bound(const SettingAnalysis& a);

// E[gap^2] <= 1/n + 2 * mean over size-m subsets U of sqrt(I(W;Z_U) / m).
// Requires m >= 2: the hard instance keeps every single-example information
// term at zero while its squared gap stays bounded away from 1/n, so no
// singleton-subset version of this bound can exist.
BoundReport subset_sq_bound(const SettingAnalysis& a, unsigned m);

// P(|gap| >= t) <= (squared-gap bound) / t^2, via the pairwise bound above.
BoundReport markov_tail(const SettingAnalysis& a, const Rat& t);

// |E_joint[f] - E_product[f]| <= sqrt(2 sigma^2 I(X;Y)) where X spans axesA, Y
// spans axesB (strictly increasing, disjoint) and f maps their coordinates to
// a sigma-sub-gaussian value. f receives coordinate vectors for both groups.
using PairFn = std::function<Rat(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>;
BoundReport decoupling_check(const JointDist& j, const std::vector<std::size_t>& axesA,
                             const std::vector<std::size_t>& axesB, const PairFn& f,
                             double sigma = kHalfSigma);

// The full battery on one setting: expected-gap bounds (full, samplewise,
// every subset size), squared-gap bounds (pairwise, every subset size >= 2)
// and Markov tails at t in {1/4, 1/2, 3/4, 1}.
std::vector<BoundReport> standard_bounds(const SettingAnalysis& a, double sigma = kHalfSigma);

}  // namespace gaplab
