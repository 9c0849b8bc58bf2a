#include "gaplab/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "gaplab/errors.hpp"

namespace gaplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Float rounding can leave a mathematically nonnegative sum epsilon-negative.
double clamp0(double x) { return x < 0.0 ? 0.0 : x; }

std::vector<std::size_t> merged_union(const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b) {
    for (const auto* g : {&a, &b})
        for (std::size_t i = 1; i < g->size(); ++i)
            if ((*g)[i] <= (*g)[i - 1])
                throw DomainError("axis group must be strictly increasing");
    std::vector<std::size_t> uni;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
    for (std::size_t i = 1; i < uni.size(); ++i)
        if (uni[i] == uni[i - 1]) throw DomainError("axis groups overlap");
    return uni;
}

// Positions of the members of `part` within the sorted union `uni`.
std::vector<std::size_t> positions(const std::vector<std::size_t>& part,
                                   const std::vector<std::size_t>& uni) {
    std::vector<std::size_t> pos;
    pos.reserve(part.size());
    for (std::size_t i = 0; i < uni.size(); ++i)
        if (std::binary_search(part.begin(), part.end(), uni[i])) pos.push_back(i);
    return pos;
}

std::uint64_t project_key(const JointDist& d, std::uint64_t key,
                          const std::vector<std::size_t>& pos, const Space& sub) {
    std::vector<std::size_t> idx(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) idx[i] = d.space().coord(key, pos[i]);
    return sub.pack(idx);
}

} // namespace

double kl(const JointDist& p, const JointDist& q) {
    if (!p.space().same_shape(q.space())) throw DomainError("KL over mismatched spaces");
    double acc = 0.0;
    for (const auto& [key, pv] : p.entries()) {
        Rat qv = q.mass_of(key);
        if (qv == 0) return kInf;
        acc += to_double(pv) * log_rat(pv / qv);
    }
    return clamp0(acc);
}

double entropy(const JointDist& p) {
    double acc = 0.0;
    for (const auto& [key, pv] : p.entries()) acc -= to_double(pv) * log_rat(pv);
    return clamp0(acc);
}

double mutual_information(const JointDist& j, const std::vector<std::size_t>& a,
                          const std::vector<std::size_t>& b) {
    auto uni = merged_union(a, b);
    JointDist mab = j.marginal(uni);
    auto posA = positions(a, uni);
    auto posB = positions(b, uni);
    JointDist ma = mab.marginal(posA);
    JointDist mb = mab.marginal(posB);
    Space sa = mab.space().select(posA);
    Space sb = mab.space().select(posB);
    double acc = 0.0;
    for (const auto& [key, p] : mab.entries()) {
        Rat pa = ma.mass_of(project_key(mab, key, posA, sa));
        Rat pb = mb.mass_of(project_key(mab, key, posB, sb));
        acc += to_double(p) * log_rat(p / (pa * pb));
    }
    return clamp0(acc);
}

double information_density(const JointDist& j, const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b,
                           const std::vector<std::size_t>& outcome) {
    auto uni = merged_union(a, b);
    JointDist mab = j.marginal(uni);
    auto posA = positions(a, uni);
    auto posB = positions(b, uni);
    JointDist ma = mab.marginal(posA);
    JointDist mb = mab.marginal(posB);
    Space sa = mab.space().select(posA);
    Space sb = mab.space().select(posB);
    std::uint64_t key = mab.space().pack(outcome);
    Rat pa = ma.mass_of(project_key(mab, key, posA, sa));
    Rat pb = mb.mass_of(project_key(mab, key, posB, sb));
    if (pa == 0 || pb == 0) throw DomainError("information density at a zero-marginal point");
    Rat p = mab.mass_of(key);
    if (p == 0) return -kInf;
    return log_rat(p / (pa * pb));
}

double expected_information_density(const JointDist& j, const std::vector<std::size_t>& a,
                                    const std::vector<std::size_t>& b) {
    auto uni = merged_union(a, b);
    JointDist mab = j.marginal(uni);
    auto posA = positions(a, uni);
    auto posB = positions(b, uni);
    JointDist ma = mab.marginal(posA);
    JointDist mb = mab.marginal(posB);
    Space sa = mab.space().select(posA);
    Space sb = mab.space().select(posB);
    double acc = 0.0;
    for (const auto& [key, p] : mab.entries()) {
        Rat pa = ma.mass_of(project_key(mab, key, posA, sa));
        Rat pb = mb.mass_of(project_key(mab, key, posB, sb));
        // Deliberately a different float path than mutual_information: the
        // density is evaluated on its own, then averaged.
        double iota = log_rat(p) - log_rat(pa * pb);
        acc += to_double(p) * iota;
    }
    return acc;
}

double ConditionalMI::expected_sqrt(double innerScale) const {
    double acc = 0.0;
    for (const auto& s : slices) acc += to_double(s.pc) * std::sqrt(innerScale * s.mi);
    return acc;
}

ConditionalMI conditional_mi(const JointDist& j, const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& b,
                             const std::vector<std::size_t>& c) {
    auto ab = merged_union(a, b);
    auto uni = merged_union(ab, c);
    JointDist m = j.marginal(uni);
    auto posA = positions(a, uni);
    auto posB = positions(b, uni);
    auto posC = positions(c, uni);
    Space sa = m.space().select(posA);
    Space sb = m.space().select(posB);
    Space sc = m.space().select(posC);

    struct Row {
        std::uint64_t cKey, aKey, bKey;
        Rat p;
    };
    std::vector<Row> rows;
    rows.reserve(m.support_size());
    for (const auto& [key, p] : m.entries()) {
        rows.push_back(Row{project_key(m, key, posC, sc), project_key(m, key, posA, sa),
                           project_key(m, key, posB, sb), p});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
        return std::tie(x.cKey, x.aKey, x.bKey) < std::tie(y.cKey, y.aKey, y.bKey);
    });

    ConditionalMI out;
    std::vector<std::pair<std::uint64_t, Rat>> am, bm;
    for (std::size_t lo = 0; lo < rows.size();) {
        std::size_t hi = lo;
        Rat pc(0);
        while (hi < rows.size() && rows[hi].cKey == rows[lo].cKey) {
            pc += rows[hi].p;
            ++hi;
        }
        // Unnormalized slice marginals over A and B.
        am.clear();
        bm.clear();
        for (std::size_t i = lo; i < hi; ++i) am.emplace_back(rows[i].aKey, rows[i].p);
        for (std::size_t i = lo; i < hi; ++i) bm.emplace_back(rows[i].bKey, rows[i].p);
        sort_and_merge(am);
        sort_and_merge(bm);
        auto lookup = [](const std::vector<std::pair<std::uint64_t, Rat>>& v, std::uint64_t k) {
            auto it = std::lower_bound(v.begin(), v.end(), k,
                                       [](const auto& e, std::uint64_t kk) { return e.first < kk; });
            return it->second; // key always present by construction
        };
        double mi = 0.0;
        bool indep = (hi - lo) == am.size() * bm.size();
        for (std::size_t i = lo; i < hi; ++i) {
            // Conditional ratio p(ab|c) / (p(a|c) p(b|c)) as exact rationals.
            Rat ratio = rows[i].p * pc / (lookup(am, rows[i].aKey) * lookup(bm, rows[i].bKey));
            if (ratio != 1) indep = false;
            mi += to_double(rows[i].p / pc) * log_rat(ratio);
        }
        mi = clamp0(mi);

        Disintegrated d;
        d.cKey = rows[lo].cKey;
        sc.unpack(d.cKey, d.cValue);
        d.pc = pc;
        d.mi = mi;
        d.indep = indep;
        out.value += to_double(pc) * mi;
        out.allIndependent = out.allIndependent && indep;
        out.slices.push_back(std::move(d));
        lo = hi;
    }
    out.value = clamp0(out.value);
    return out;
}

double conditional_mi_direct(const JointDist& j, const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& b,
                             const std::vector<std::size_t>& c) {
    auto ab = merged_union(a, b);
    auto uni = merged_union(ab, c);
    JointDist m = j.marginal(uni);
    auto posA = positions(a, uni);
    auto posB = positions(b, uni);
    auto posC = positions(c, uni);
    auto posAC = merged_union(posA, posC);
    auto posBC = merged_union(posB, posC);
    JointDist mac = m.marginal(posAC);
    JointDist mbc = m.marginal(posBC);
    JointDist mc = m.marginal(posC);
    Space sac = m.space().select(posAC);
    Space sbc = m.space().select(posBC);
    Space sc = m.space().select(posC);
    double acc = 0.0;
    for (const auto& [key, p] : m.entries()) {
        Rat pac = mac.mass_of(project_key(m, key, posAC, sac));
        Rat pbc = mbc.mass_of(project_key(m, key, posBC, sbc));
        Rat pc = mc.mass_of(project_key(m, key, posC, sc));
        acc += to_double(p) * log_rat(p * pc / (pac * pbc));
    }
    return clamp0(acc);
}

} // namespace gaplab
