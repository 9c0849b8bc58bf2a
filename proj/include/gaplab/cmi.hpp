#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gaplab/bounds.hpp"
#include "gaplab/dist.hpp"
#include "gaplab/rat.hpp"
#include "gaplab/setting.hpp"

namespace gaplab {

// Paired-sample view of a learning setting: 2n i.i.d. draws arranged in n
// pairs, one uniform selector bit per pair choosing which element trains, and
// the hypothesis drawn by the kernel on the selected tuple. Axis layout:
// Zt1c0, Zt1c1, ..., Ztnc0, Ztnc1, J1, ..., Jn, W.
struct SupersampleJoint {
    LearningSetting setting;
    JointDist joint;
    std::vector<Rat> lossValues;  // sorted distinct values of the loss table
    // lossIdx[w][z]: index of loss[w][z] within lossValues
    std::vector<std::vector<std::size_t>> lossIdx;

    std::size_t ztAxis(std::size_t i, std::size_t c) const { return 2 * i + c; }
    std::size_t jAxis(std::size_t i) const { return 2 * setting.n + i; }
    std::size_t wAxis() const { return 3 * setting.n; }

    // (E[gap], E[gap^2]) for gap = population risk - selected-tuple risk.
    // Must agree exactly with the plain-joint statistics of the same setting.
    std::pair<Rat, Rat> gap_moments() const;
};

SupersampleJoint build_cmi_joint(const LearningSetting& s);

// certifiedZero: every information ingredient of rhs vanished by an exact
// factorization check, so rhs is exactly its additive constant (zero for the
// expected-gap bounds).
struct CmiBoundReport : BoundReport {
    bool certifiedZero = false;
};

// Expected-gap bounds. lhs is |E[gap]| in all of them.
CmiBoundReport mask_cmi_bound(const SupersampleJoint& ss);         // sqrt(2/n * I(W;J|Zt))
CmiBoundReport samplewise_cmi_rows(const SupersampleJoint& ss);    // per-pair, conditioned on own row
CmiBoundReport samplewise_cmi_table(const SupersampleJoint& ss);   // per-pair, conditioned on all rows
CmiBoundReport samplewise_ecmi(const SupersampleJoint& ss);        // loss pair vs selector, unconditional
CmiBoundReport samplewise_ecmi_rows(const SupersampleJoint& ss);   // ... conditioned on own row
CmiBoundReport samplewise_ecmi_table(const SupersampleJoint& ss);  // ... conditioned on all rows

// Squared-gap bound 5/(2n) + (2/n) sum_i E[sqrt(2 I^{Zt}(W;J_i))].
CmiBoundReport sq_samplewise_cmi_bound(const SupersampleJoint& ss);

// Squared-gap pair bounds 5/(2n) + (2/n^2) sum_{i != k} sqrt-term, where the
// sqrt-term is, in order: loss pairs vs selectors unconditional / conditioned
// on the two rows / conditioned on all rows, then hypothesis vs selectors
// conditioned on the two rows / on all rows.
std::vector<CmiBoundReport> sq_pairwise_cmi_bounds(const SupersampleJoint& ss);

// Provable orderings between the information quantities above, checked
// exactly: unconditional <= row-conditioned <= table-conditioned (expectation
// inside), and per-slice loss-level values <= hypothesis-level values. With
// the expectation outside the square root the orderings may flip; flips are
// counted but are not failures.
struct DpiAudit {
    bool ok = true;
    double worstSlack = 0;  // most negative asserted margin (0 when all clean)
    unsigned sqrtFlips = 0;
    std::vector<std::string> violations;
};

// Everything at once, sharing the expensive disintegrations: all twelve
// bounds (the pair bounds only when n >= 2 gives them content) plus the
// ordering audit.
struct CmiAnalysis {
    Rat expectedGap;
    Rat expectedSqGap;
    std::vector<CmiBoundReport> bounds;
    DpiAudit dpi;
};
CmiAnalysis cmi_analysis(const SupersampleJoint& ss, double tol = 1e-12);

}  // namespace gaplab
