#include "gaplab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "gaplab/dist.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/info.hpp"

namespace gaplab {

namespace {

constexpr double kTol = 1e-12;

bool is_duplicate_free(Block sorted) {
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) return false;
    return true;
}

}  // namespace

void CEParams::validate() const {
    if (r < 1) throw DomainError("block exponent r must be at least 1");
    if (d < r) throw DomainError("dimension d must be at least the block exponent");
    if (d > 16) throw DomainError("dimension d is limited to 16");
    if (!is_prob(delta)) throw DomainError("delta must lie in [0,1]");
    if (mode == Mode::monte_carlo && trials == 0) throw DomainError("trials must be positive");
}

int loss_eval(const Partition& p, std::uint16_t z) {
    return block_parity(p.blocks[p.block_of(z)]);
}

Rat duplicate_prob(unsigned N, unsigned n) {
    if (N == 0 || n == 0) throw DomainError("duplicate_prob needs positive N and n");
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), N, n);
    return 1 - Rat(falling(N, n)) / Rat(den);
}

double kl_support_formula(unsigned N, unsigned n) {
    if (n == 0 || N < n || N % n != 0)
        throw DomainError("kl_support_formula needs n | N and N >= n");
    const Rat ratio = Rat(falling(N, n)) / Rat(factorial(n) * Int(N / n));
    return log_rat(ratio);
}

double kl_chain_lower(unsigned N, unsigned n) {
    if (n == 0 || N < n) throw DomainError("kl_chain_lower needs N >= n >= 1");
    return static_cast<double>(n) * log_int(Int(N - n + 1)) -
           static_cast<double>(n - 1) * log_int(Int(n)) - log_int(Int(N));
}

Partition sample_hypothesis(const std::vector<std::uint16_t>& sample, unsigned N, unsigned n,
                            Rng& rng) {
    if (sample.size() != n) throw DomainError("sample tuple has wrong length");
    Block sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() && sorted.back() >= N)
        throw DomainError("sample element out of range");
    if (is_duplicate_free(sorted)) return sample_containing(sorted, N, n, rng);
    return sample_partition(N, n, rng);
}

CEConstruction construct(const CEParams& params) {
    params.validate();
    const unsigned N = params.N();
    const unsigned n = params.n();

    CEConstruction out;
    out.hypotheses = enumerate_partitions(N, n);

    LearningSetting& s = out.setting;
    s.name = "hard-instance-n" + std::to_string(n) + "-d" + std::to_string(params.d);
    s.zCount = N;
    s.n = n;
    s.wCount = out.hypotheses.size();
    s.pz.assign(N, rat(1, N));

    s.loss.resize(s.wCount);
    for (std::size_t w = 0; w < s.wCount; ++w) {
        s.loss[w].reserve(N);
        for (unsigned z = 0; z < N; ++z)
            s.loss[w].push_back(Rat(loss_eval(out.hypotheses[w], static_cast<std::uint16_t>(z))));
    }

    std::map<std::vector<Block>, std::size_t> index;
    for (std::size_t w = 0; w < s.wCount; ++w) index[out.hypotheses[w].blocks] = w;

    s.kernel.assign(s.sCount(), std::vector<Rat>(s.wCount, Rat(0)));
    std::vector<std::size_t> z;
    for (std::uint64_t sIdx = 0; sIdx < s.sCount(); ++sIdx) {
        s.sUnpack(sIdx, z);
        Block sorted;
        sorted.reserve(n);
        for (std::size_t zi : z) sorted.push_back(static_cast<std::uint16_t>(zi));
        std::sort(sorted.begin(), sorted.end());
        auto& row = s.kernel[sIdx];
        if (is_duplicate_free(sorted)) {
            const auto containing = partitions_containing(sorted, N, n);
            const Rat mass = rat(1, static_cast<long>(containing.size()));
            for (const Partition& p : containing) row[index.at(p.blocks)] = mass;
        } else {
            const Rat mass = rat(1, static_cast<long>(s.wCount));
            for (auto& cell : row) cell = mass;
        }
    }

    s.validate();
    return out;
}

bool CEReport::all() const {
    bool ok = klHolds;
    if (exactEvaluated)
        ok = ok && klMatchesFormula && marginalUniform && independenceExact && zeroGapExact &&
             tailHolds;
    if (mcEvaluated) ok = ok && mcBinaryHolds && mcZeroGapHolds && mcTailHolds && mcMidRiskHolds;
    return ok;
}

namespace {

void verify_exact(const CEParams& params, CEReport& rep) {
    const CEConstruction c = construct(params);
    const LearningSetting& s = c.setting;
    const SettingAnalysis an = analyze(s);

    const JointDist wMarg = an.joint.marginal({s.n});
    const Rat unif = rat(1, static_cast<long>(s.wCount));
    bool uniform = wMarg.entries().size() == s.wCount;
    for (const auto& [key, p] : wMarg.entries()) uniform = uniform && p == unif;
    rep.marginalUniform = uniform;

    double maxDev = 0;
    bool sawDupFree = false;
    std::vector<std::size_t> z;
    for (std::uint64_t sIdx = 0; sIdx < s.sCount(); ++sIdx) {
        s.sUnpack(sIdx, z);
        Block sorted;
        for (std::size_t zi : z) sorted.push_back(static_cast<std::uint16_t>(zi));
        std::sort(sorted.begin(), sorted.end());
        const bool dupFree = is_duplicate_free(sorted);

        const double measured = kl(finite_dist("W", s.kernel[sIdx]), wMarg);
        if (dupFree && !sawDupFree) {
            rep.klDupFree = measured;
            sawDupFree = true;
        }
        const double expected = dupFree ? rep.klFormula : 0.0;
        maxDev = std::max(maxDev, std::fabs(measured - expected));
    }
    rep.klDeviation = maxDev;
    rep.klMatchesFormula = sawDupFree && maxDev <= kTol;

    rep.independenceExact = an.stats.perSampleAllIndependent;
    for (double v : an.stats.perSampleMI) rep.perSampleMIMax = std::max(rep.perSampleMIMax, v);

    rep.expectedGap = an.stats.expectedGap;
    rep.zeroGapExact = rep.expectedGap == 0;
    rep.tailTwoSided = an.stats.tail_abs(rat(1, 4));
    rep.tailOneSided = an.stats.tail_one_sided(rat(1, 4));
    rep.tailHolds = rep.tailTwoSided >= rat(1, 2);
    rep.exactEvaluated = true;
}

void verify_monte_carlo(const CEParams& params, CEReport& rep) {
    const unsigned N = params.N();
    const unsigned n = params.n();
    const unsigned blockCount = N / n;
    Rng rng(params.seed);

    Rat gapSum(0), gapSqSum(0);
    std::vector<std::uint16_t> sample(n);
    const Rat quarter = rat(1, 4);
    for (std::uint64_t t = 0; t < params.trials; ++t) {
        for (auto& zi : sample) zi = static_cast<std::uint16_t>(rng.below(N));
        Block sorted(sample.begin(), sample.end());
        std::sort(sorted.begin(), sorted.end());
        const bool dupFree = is_duplicate_free(sorted);

        const Partition w = dupFree ? sample_containing(sorted, N, n, rng)
                                    : sample_partition(N, n, rng);

        unsigned odd = 0;
        for (const Block& b : w.blocks) odd += static_cast<unsigned>(block_parity(b));
        const Rat popRisk = rat(odd, blockCount);

        long lossSum = 0;
        for (std::uint16_t zi : sample) lossSum += loss_eval(w, zi);
        const Rat empRisk = rat(lossSum, n);

        if (dupFree) {
            ++rep.dupFreeTrials;
            if (!(empRisk == 0 || empRisk == 1)) ++rep.binaryViolations;
        }
        const Rat gap = popRisk - empRisk;
        gapSum += gap;
        gapSqSum += gap * gap;
        if (gap >= quarter || -gap >= quarter) ++rep.hitsTwoSided;
        if (gap >= quarter) ++rep.hitsOneSided;
        if (popRisk >= quarter && popRisk <= 1 - quarter) ++rep.hitsMidRisk;
    }

    rep.trials = params.trials;
    const Rat tCount(static_cast<unsigned long>(params.trials));
    const double tN = static_cast<double>(params.trials);
    rep.gapMean = to_double(gapSum / tCount);
    if (params.trials > 1) {
        const Rat var = (gapSqSum - gapSum * gapSum / tCount) / (tCount - 1);
        rep.gapMeanSe = std::sqrt(to_double(var) / tN);
    }
    rep.mcZeroGapHolds =
        rep.gapMeanSe > 0 ? std::fabs(rep.gapMean) <= 3 * rep.gapMeanSe : gapSum == 0;

    rep.tailFreq = static_cast<double>(rep.hitsTwoSided) / tN;
    rep.tailSe = std::sqrt(rep.tailFreq * (1.0 - rep.tailFreq) / tN);
    rep.mcTailHolds = rep.tailFreq >= 0.5 - 3 * rep.tailSe;
    rep.midRiskFreq = static_cast<double>(rep.hitsMidRisk) / tN;
    rep.midRiskSe = std::sqrt(rep.midRiskFreq * (1.0 - rep.midRiskFreq) / tN);
    rep.mcMidRiskHolds = rep.midRiskFreq >= 0.5 - 3 * rep.midRiskSe;
    rep.mcBinaryHolds = rep.binaryViolations == 0;
    rep.mcEvaluated = true;
}

}  // namespace

CEReport verify_properties(const CEParams& params) {
    params.validate();
    const unsigned N = params.N();
    const unsigned n = params.n();

    CEReport rep;
    rep.params = params;
    rep.hypothesisCount = partition_count(N, n);
    rep.containingCount = containing_count(N, n);
    rep.duplicateProb = duplicate_prob(N, n);
    rep.klFormula = kl_support_formula(N, n);
    rep.klChainLower = kl_chain_lower(N, n);
    rep.klTarget = static_cast<double>(n) - 1.0;
    rep.klHolds = rep.klFormula + kTol >= rep.klTarget && rep.duplicateProb <= params.delta;

    if (params.mode == CEParams::Mode::exact)
        verify_exact(params, rep);
    else
        verify_monte_carlo(params, rep);
    return rep;
}

}  // namespace gaplab
