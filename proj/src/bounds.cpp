#include "gaplab/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "gaplab/comb.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/info.hpp"

namespace gaplab {

namespace {

Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

std::vector<std::size_t> z_axes(const LearningSetting& s) {
    std::vector<std::size_t> axes(s.n);
    for (std::size_t i = 0; i < s.n; ++i) axes[i] = i;
    return axes;
}

std::string subset_label(const std::vector<std::size_t>& axes) {
    std::string label = "mi";
    for (std::size_t a : axes) label += "_z" + std::to_string(a + 1);
    return label;
}

BoundReport gap_report(const std::string& name, const SettingAnalysis& a, double sigma) {
    BoundReport r;
    r.bound = name;
    r.sigma = sigma;
    r.lhsExact = abs_rat(a.stats.expectedGap);
    r.lhs = to_double(*r.lhsExact);
    return r;
}

BoundReport sq_report(const std::string& name, const SettingAnalysis& a) {
    BoundReport r;
    r.bound = name;
    r.lhsExact = a.stats.expectedSquaredGap;
    r.lhs = to_double(*r.lhsExact);
    return r;
}

}  // namespace

BoundReport full_mi_bound(const SettingAnalysis& a, double sigma) {
    BoundReport r = gap_report("gap_full_mi", a, sigma);
    const std::size_t wAxis = a.setting.n;
    const double mi = mutual_information(a.joint, z_axes(a.setting), {wAxis});
    r.terms.push_back({"mi_full", mi});
    r.rhs = std::sqrt(2.0 * sigma * sigma * mi / static_cast<double>(a.setting.n));
    return r;
}

BoundReport samplewise_mi_bound(const SettingAnalysis& a, double sigma) {
    BoundReport r = gap_report("gap_samplewise_mi", a, sigma);
    double sum = 0;
    for (std::size_t i = 0; i < a.setting.n; ++i) {
        const double mi = a.stats.perSampleMI[i];
        r.terms.push_back({"mi_z" + std::to_string(i + 1), mi});
        sum += std::sqrt(2.0 * sigma * sigma * mi);
    }
    r.rhs = sum / static_cast<double>(a.setting.n);
    return r;
}

BoundReport subset_mi_bound(const SettingAnalysis& a, unsigned m, double sigma) {
    const std::size_t n = a.setting.n;
    if (m < 1 || m > n) throw DomainError("subset size must lie in [1, n]");
    BoundReport r = gap_report("gap_subset_mi_m" + std::to_string(m), a, sigma);
    const std::size_t wAxis = n;

    double sum = 0;
    std::size_t count = 0;
    auto idx = first_combination(m);
    do {
        const double mi = mutual_information(a.joint, idx, {wAxis});
        r.terms.push_back({subset_label(idx), mi});
        sum += std::sqrt(2.0 * sigma * sigma * mi / static_cast<double>(m));
        ++count;
    } while (next_combination(idx, n));
    r.rhs = sum / static_cast<double>(count);
    return r;
}

BoundReport pairwise_sq_bound(const SettingAnalysis& a) {
    BoundReport r = sq_report("sqgap_pairwise_mi", a);
    const std::size_t n = a.setting.n;
    double sum = 0;  // over ordered pairs i != k
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) {
            const double mi = a.stats.pairMI[i][k];
            r.terms.push_back({"mi_z" + std::to_string(i + 1) + "_z" + std::to_string(k + 1), mi});
            sum += 2.0 * std::sqrt(2.0 * mi);
        }
    r.rhs = 1.0 / static_cast<double>(n) + sum / (static_cast<double>(n) * static_cast<double>(n));
    return r;
}

BoundReport subset_sq_bound(const SettingAnalysis& a, unsigned m) {
    const std::size_t n = a.setting.n;
    if (m < 2) throw DomainError("size-1 subsets cannot bound the squared gap; m must be >= 2");
    if (m > n) throw DomainError("subset size must lie in [2, n]");
    BoundReport r = sq_report("sqgap_subset_mi_m" + std::to_string(m), a);
    const std::size_t wAxis = n;

    double sum = 0;
    std::size_t count = 0;
    auto idx = first_combination(m);
    do {
        const double mi = mutual_information(a.joint, idx, {wAxis});
        r.terms.push_back({subset_label(idx), mi});
        sum += std::sqrt(mi / static_cast<double>(m));
        ++count;
    } while (next_combination(idx, n));
    r.rhs = 1.0 / static_cast<double>(n) + 2.0 * sum / static_cast<double>(count);
    return r;
}

BoundReport markov_tail(const SettingAnalysis& a, const Rat& t) {
    if (t <= 0) throw DomainError("tail threshold must be positive");
    BoundReport r;
    r.bound = "tail_markov_t" + rat_str(t);
    r.lhsExact = a.stats.tail_abs(t);
    r.lhs = to_double(*r.lhsExact);
    const BoundReport sq = pairwise_sq_bound(a);
    const double tD = to_double(t);
    r.terms.push_back({"sqgap_rhs", sq.rhs});
    r.rhs = sq.rhs / (tD * tD);
    return r;
}

BoundReport decoupling_check(const JointDist& j, const std::vector<std::size_t>& axesA,
                             const std::vector<std::size_t>& axesB, const PairFn& f,
                             double sigma) {
    BoundReport r;
    r.bound = "decoupling";
    r.sigma = sigma;

    std::vector<std::size_t> merged(axesA.size() + axesB.size());
    std::merge(axesA.begin(), axesA.end(), axesB.begin(), axesB.end(), merged.begin());
    const JointDist ab = j.marginal(merged);
    const JointDist pa = j.marginal(axesA);
    const JointDist pb = j.marginal(axesB);

    // Positions of the two groups inside the merged marginal.
    std::vector<std::size_t> aPos, bPos;
    {
        std::size_t ia = 0, ib = 0;
        for (std::size_t p = 0; p < merged.size(); ++p) {
            if (ia < axesA.size() && merged[p] == axesA[ia]) {
                aPos.push_back(p);
                ++ia;
            } else {
                bPos.push_back(p);
                ++ib;
            }
        }
        if (ia != axesA.size() || ib != axesB.size())
            throw DomainError("axis groups must be strictly increasing and disjoint");
    }

    Rat joint(0);
    std::vector<std::size_t> coord, ca(axesA.size()), cb(axesB.size());
    for (const auto& [key, p] : ab.entries()) {
        ab.space().unpack(key, coord);
        for (std::size_t i = 0; i < aPos.size(); ++i) ca[i] = coord[aPos[i]];
        for (std::size_t i = 0; i < bPos.size(); ++i) cb[i] = coord[bPos[i]];
        joint += p * f(ca, cb);
    }

    Rat prod(0);
    std::vector<std::size_t> ua, ub;
    for (const auto& [ka, paMass] : pa.entries()) {
        pa.space().unpack(ka, ua);
        for (const auto& [kb, pbMass] : pb.entries()) {
            pb.space().unpack(kb, ub);
            prod += paMass * pbMass * f(ua, ub);
        }
    }

    r.lhsExact = abs_rat(joint - prod);
    r.lhs = to_double(*r.lhsExact);
    const double mi = mutual_information(j, axesA, axesB);
    r.terms.push_back({"mi", mi});
    r.rhs = std::sqrt(2.0 * sigma * sigma * mi);
    return r;
}

std::vector<BoundReport> standard_bounds(const SettingAnalysis& a, double sigma) {
    std::vector<BoundReport> out;
    out.push_back(full_mi_bound(a, sigma));
    out.push_back(samplewise_mi_bound(a, sigma));
    for (unsigned m = 1; m <= a.setting.n; ++m) out.push_back(subset_mi_bound(a, m, sigma));
    out.push_back(pairwise_sq_bound(a));
    for (unsigned m = 2; m <= a.setting.n; ++m) out.push_back(subset_sq_bound(a, m));
    for (int q = 1; q <= 4; ++q) out.push_back(markov_tail(a, rat(q, 4)));
    return out;
}

}  // namespace gaplab
