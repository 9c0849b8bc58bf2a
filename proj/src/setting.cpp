#include "gaplab/setting.hpp"

#include <cstdlib>
#include <map>

#include "gaplab/errors.hpp"
#include "gaplab/info.hpp"
#include "gaplab/rng.hpp"

namespace gaplab {

std::uint64_t LearningSetting::sCount() const {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < n; ++i) c *= zCount;
    return c;
}

std::uint64_t LearningSetting::sPack(const std::vector<std::size_t>& z) const {
    if (z.size() != n) throw DomainError("training tuple has wrong length");
    std::uint64_t key = 0;
    for (std::size_t zi : z) {
        if (zi >= zCount) throw DomainError("training example out of range");
        key = key * zCount + zi;
    }
    return key;
}

void LearningSetting::sUnpack(std::uint64_t sIdx, std::vector<std::size_t>& out) const {
    out.resize(n);
    for (std::size_t i = n; i-- > 0;) {
        out[i] = static_cast<std::size_t>(sIdx % zCount);
        sIdx /= zCount;
    }
}

void LearningSetting::validate() const {
    if (zCount == 0 || wCount == 0 || n == 0) throw DomainError("empty setting");
    if (pz.size() != zCount) throw DomainError("data distribution has wrong size");
    Rat total(0);
    for (const Rat& p : pz) {
        if (!is_prob(p)) throw DomainError("data mass outside [0,1]");
        total += p;
    }
    if (total != 1) throw DomainError("data masses sum to " + rat_str(total));
    if (kernel.size() != sCount()) throw DomainError("kernel is missing training rows");
    for (const auto& row : kernel) {
        if (row.size() != wCount) throw DomainError("kernel row has wrong size");
        Rat rs(0);
        for (const Rat& p : row) {
            if (!is_prob(p)) throw DomainError("kernel mass outside [0,1]");
            rs += p;
        }
        if (rs != 1) throw DomainError("kernel row sums to " + rat_str(rs));
    }
    if (loss.size() != wCount) throw DomainError("loss table has wrong hypothesis count");
    for (const auto& row : loss) {
        if (row.size() != zCount) throw DomainError("loss row has wrong size");
        for (const Rat& v : row)
            if (!is_prob(v)) throw DomainError("loss value outside [0,1]");
    }
}

std::uint64_t exact_state_guard() {
    static const std::uint64_t cap = [] {
        if (const char* env = std::getenv("GAPLAB_MAX_STATES")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return static_cast<std::uint64_t>(100'000'000);
    }();
    return cap;
}

JointDist build_joint(const LearningSetting& s) {
    Int states = Int(static_cast<unsigned long>(s.wCount));
    for (std::size_t i = 0; i < s.n; ++i) states *= static_cast<unsigned long>(s.zCount);
    if (states > Int(static_cast<unsigned long>(exact_state_guard())))
        throw SizeGuardError("exact joint needs " + states.get_str() +
                             " states; raise GAPLAB_MAX_STATES to allow");

    std::vector<Axis> axes;
    for (std::size_t i = 0; i < s.n; ++i)
        axes.push_back(Axis{"Z" + std::to_string(i + 1), s.zCount});
    axes.push_back(Axis{"W", s.wCount});
    Space space(std::move(axes));

    std::vector<Entry> mass;
    std::vector<std::size_t> z(s.n);
    const std::uint64_t sTotal = s.sCount();
    for (std::uint64_t sIdx = 0; sIdx < sTotal; ++sIdx) {
        s.sUnpack(sIdx, z);
        Rat ps(1);
        for (std::size_t zi : z) ps *= s.pz[zi];
        if (ps == 0) continue;
        const auto& row = s.kernel[sIdx];
        // Packed (Z1..Zn) prefix has the same mixed-radix layout as sIdx.
        std::uint64_t base = sIdx * s.wCount;
        for (std::size_t w = 0; w < s.wCount; ++w) {
            if (row[w] == 0) continue;
            mass.emplace_back(base + w, ps * row[w]);
        }
    }
    return JointDist(std::move(space), std::move(mass));
}

Rat population_risk(const LearningSetting& s, std::size_t w) {
    if (w >= s.wCount) throw DomainError("hypothesis index out of range");
    Rat acc(0);
    for (std::size_t z = 0; z < s.zCount; ++z) acc += s.pz[z] * s.loss[w][z];
    return acc;
}

Rat empirical_risk(const LearningSetting& s, std::size_t w, const std::vector<std::size_t>& z) {
    if (w >= s.wCount) throw DomainError("hypothesis index out of range");
    if (z.size() != s.n) throw DomainError("training tuple has wrong length");
    Rat acc(0);
    for (std::size_t zi : z) {
        if (zi >= s.zCount) throw DomainError("training example out of range");
        acc += s.loss[w][zi];
    }
    return acc / Rat(static_cast<long>(s.n));
}

Rat GapStats::moment(unsigned k) const {
    for (const auto& [kk, v] : momentK)
        if (kk == k) return v;
    throw DomainError("moment order not computed");
}

Rat GapStats::tail_one_sided(const Rat& t) const {
    Rat acc(0);
    for (const auto& [g, p] : gapDist)
        if (g >= t) acc += p;
    return acc;
}

Rat GapStats::tail_abs(const Rat& t) const {
    Rat acc(0);
    for (const auto& [g, p] : gapDist)
        if (g >= t || -g >= t) acc += p;
    return acc;
}

GapStats gap_stats(const LearningSetting& s, const JointDist& joint, unsigned maxMoment) {
    if (maxMoment < 2) throw DomainError("maxMoment must be at least 2");
    GapStats out;

    std::vector<Rat> risk(s.wCount);
    for (std::size_t w = 0; w < s.wCount; ++w) risk[w] = population_risk(s, w);

    std::map<Rat, Rat> dist;
    std::vector<std::size_t> idx, z;
    for (const auto& [key, p] : joint.entries()) {
        joint.space().unpack(key, idx);
        std::size_t w = idx[s.n];
        z.assign(idx.begin(), idx.begin() + s.n);
        Rat gap = risk[w] - empirical_risk(s, w, z);
        dist[gap] += p;
    }
    out.gapDist.assign(dist.begin(), dist.end());

    for (const auto& [g, p] : out.gapDist) {
        out.expectedGap += p * g;
        out.expectedSquaredGap += p * g * g;
    }
    for (unsigned k = 2; k <= maxMoment; ++k) {
        Rat mk(0);
        for (const auto& [g, p] : out.gapDist) mk += p * pow_rat(g, k);
        out.momentK.emplace_back(k, mk);
    }

    const std::size_t wAxis = s.n;
    out.perSampleMI.resize(s.n);
    out.perSampleAllIndependent = true;
    for (std::size_t i = 0; i < s.n; ++i) {
        out.perSampleMI[i] = mutual_information(joint, {i}, {wAxis});
        out.perSampleAllIndependent =
            out.perSampleAllIndependent && joint.independent({i}, {wAxis});
    }
    out.pairMI.assign(s.n, std::vector<double>(s.n, 0.0));
    for (std::size_t i = 0; i < s.n; ++i)
        for (std::size_t k = i + 1; k < s.n; ++k) {
            double v = mutual_information(joint, {i, k}, {wAxis});
            out.pairMI[i][k] = v;
            out.pairMI[k][i] = v;
        }
    return out;
}

GapStats gap_stats(const LearningSetting& s, unsigned maxMoment) {
    return gap_stats(s, build_joint(s), maxMoment);
}

LearningSetting random_setting(std::uint64_t seed, const SizeCaps& caps) {
    if (caps.maxZ == 0 || caps.maxN == 0 || caps.maxW == 0)
        throw DomainError("size caps must be at least 1");
    Rng rng(seed);
    LearningSetting s;
    s.name = "fuzz-" + std::to_string(seed);
    s.zCount = 1 + rng.index(caps.maxZ);
    s.n = 1 + rng.index(caps.maxN);
    s.wCount = 1 + rng.index(caps.maxW);

    // Data distribution: positive small-integer weights, normalized.
    {
        std::vector<long> w(s.zCount);
        long total = 0;
        for (auto& v : w) {
            v = 1 + static_cast<long>(rng.below(8));
            total += v;
        }
        for (long v : w) s.pz.push_back(rat(v, total));
    }
    // Kernel rows: nonnegative weights, at least one positive.
    const std::uint64_t rows = s.sCount();
    s.kernel.resize(rows);
    for (auto& row : s.kernel) {
        std::vector<long> w(s.wCount);
        long total = 0;
        for (auto& v : w) {
            v = static_cast<long>(rng.below(9));
            total += v;
        }
        if (total == 0) {
            w[rng.index(s.wCount)] = 1;
            total = 1;
        }
        for (long v : w) row.push_back(rat(v, total));
    }
    // Loss table: rationals on a 1/16 grid in [0,1].
    s.loss.resize(s.wCount);
    for (auto& row : s.loss)
        for (std::size_t z = 0; z < s.zCount; ++z)
            row.push_back(rat(static_cast<long>(rng.below(17)), 16));

    s.validate();
    return s;
}

SettingAnalysis analyze(LearningSetting s, unsigned maxMoment) {
    s.validate();
    JointDist joint = build_joint(s);
    GapStats stats = gap_stats(s, joint, maxMoment);
    return SettingAnalysis{std::move(s), std::move(joint), std::move(stats)};
}

} // namespace gaplab
