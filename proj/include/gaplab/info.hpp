#pragma once

// Information measures over exact distributions, in nats. Probability
// ratios are formed as exact rationals first; the log is the only
// floating-point step, and log(1) is exactly 0, so independence that holds
// as an identity of rationals yields an information value of exactly 0.0.
// KL divergence of distributions with a support violation is +infinity.

#include <cstdint>
#include <vector>

#include "gaplab/dist.hpp"

namespace gaplab {

// Sum of p log(p/q) with the 0 log 0 = 0 convention; +inf if supp(p) is not
// contained in supp(q). Spaces must have the same shape.
double kl(const JointDist& p, const JointDist& q);

double entropy(const JointDist& p);

// I(A;B) of the named axis groups (disjoint, strictly increasing indices).
double mutual_information(const JointDist& j, const std::vector<std::size_t>& a,
                          const std::vector<std::size_t>& b);

// log of joint mass over product-of-marginals mass at one outcome of the
// (a,b)-marginal; -inf where the joint mass is 0. Requesting a point with a
// zero marginal is an error.
double information_density(const JointDist& j, const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b,
                           const std::vector<std::size_t>& outcome);

// Expectation of the information density under the joint; equals I(A;B).
double expected_information_density(const JointDist& j, const std::vector<std::size_t>& a,
                                    const std::vector<std::size_t>& b);

// One conditioning slice of a conditional mutual information.
struct Disintegrated {
    std::uint64_t cKey = 0;             // packed value of the conditioning axes
    std::vector<std::size_t> cValue;    // the same, unpacked
    Rat pc;                             // P(C = c)
    double mi = 0.0;                    // I^{c}(A;B)
    bool indep = false;                 // exact independence at this slice
};

struct ConditionalMI {
    double value = 0.0;                 // sum of pc * mi over slices
    bool allIndependent = true;         // exact: every slice factorizes
    std::vector<Disintegrated> slices;  // ordered by cKey

    // Sum of pc * sqrt(innerScale * mi) over slices — the shape in which
    // disintegrated information enters square-root bounds.
    double expected_sqrt(double innerScale) const;
};

// I(A;B|C) via disintegration: slices at every positive-mass value of C.
ConditionalMI conditional_mi(const JointDist& j, const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& b,
                             const std::vector<std::size_t>& c);

// Same quantity as one KL divergence, KL(P_{A,B,C} || P_{A|C} P_{B|C} P_C);
// used to cross-check the disintegrated form.
double conditional_mi_direct(const JointDist& j, const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& b,
                             const std::vector<std::size_t>& c);

} // namespace gaplab
