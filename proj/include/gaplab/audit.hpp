#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaplab/rat.hpp"
#include "gaplab/setting.hpp"

namespace gaplab {

// Randomized sweep: draw small settings, evaluate every bound exactly, and
// demand zero violations. Everything provable is asserted; orderings that are
// only conjectural (square root outside the expectation) are counted, never
// asserted.

struct AuditConfig {
    std::uint64_t seeds = 500;
    std::uint64_t baseSeed = 1;
    SizeCaps caps;
    double tol = 1e-12;
    unsigned maxMoment = 6;
};

struct AuditViolation {
    std::uint64_t seed = 0;
    std::string check;   // bound label or invariant name
    std::string detail;  // offending numbers
};

// How often a non-asserted ordering flipped, and a seed reproducing the first
// flip seen.
struct FlipStat {
    std::uint64_t count = 0;
    std::uint64_t firstSeed = 0;
    bool any = false;

    void hit(std::uint64_t seed) {
        if (!any) firstSeed = seed;
        any = true;
        ++count;
    }
};

struct AuditResult {
    AuditConfig config;
    std::uint64_t settingsChecked = 0;
    std::uint64_t boundsChecked = 0;       // reports asserted via holds()
    std::uint64_t exactChecks = 0;         // rational-arithmetic assertions
    double worstSlack = 0;                 // smallest rhs - lhs over asserted reports
    std::uint64_t dpiSqrtFlips = 0;        // per-term flips reported by the cmi audit
    FlipStat flipSamplewiseCmi;            // row-conditioned rhs > table-conditioned rhs
    FlipStat flipSamplewiseEcmi;           // any flip along plain -> rows -> table rhs
    FlipStat flipPairEcmi;                 // same, pair bounds
    FlipStat flipPairCmi;                  // rows rhs > table rhs, pair bounds
    std::vector<AuditViolation> violations;

    bool ok() const { return violations.empty(); }
};

AuditResult run_audit(const AuditConfig& cfg);

}  // namespace gaplab
