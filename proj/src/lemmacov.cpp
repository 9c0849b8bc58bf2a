#include "gaplab/lemmacov.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "gaplab/comb.hpp"
#include "gaplab/errors.hpp"

namespace gaplab {

void ParityEnsemble::validate(bool needTwoBlocks) const {
    if (n == 0) throw DomainError("block size must be positive");
    if (total() % n != 0) throw DomainError("block size must divide the pool size");
    if (blocks() < (needTwoBlocks ? 2u : 1u))
        throw DomainError(needTwoBlocks ? "pairwise quantities need at least two blocks"
                                        : "pool must fill at least one block");
}

Rat marginal_parity_prob(const ParityEnsemble& e) {
    e.validate(false);
    Int num(0);
    for (unsigned odd = 1; odd <= e.n; odd += 2) {
        const unsigned even = e.n - odd;
        if (odd > e.n1 || even > e.n0) continue;
        num += binom(e.n1, odd) * binom(e.n0, even);
    }
    return Rat(num) / Rat(binom(e.total(), e.n));
}

Rat joint_parity_prob(const ParityEnsemble& e) {
    e.validate(true);
    Int num(0);
    for (unsigned odd1 = 1; odd1 <= e.n; odd1 += 2) {
        const unsigned even1 = e.n - odd1;
        if (odd1 > e.n1 || even1 > e.n0) continue;
        const Int first = binom(e.n1, odd1) * binom(e.n0, even1);
        for (unsigned odd2 = 1; odd2 <= e.n; odd2 += 2) {
            const unsigned even2 = e.n - odd2;
            if (odd2 > e.n1 - odd1 || even2 > e.n0 - even1) continue;
            num += first * binom(e.n1 - odd1, odd2) * binom(e.n0 - even1, even2);
        }
    }
    const Int M = binom(e.total(), e.n) * binom(e.total() - e.n, e.n);
    return Rat(num) / Rat(M);
}

Rat covariance(const ParityEnsemble& e) {
    const Rat m = marginal_parity_prob(e);
    return joint_parity_prob(e) - m * m;
}

Rat pair_ratio(const ParityEnsemble& e) {
    const Rat m = marginal_parity_prob(e);
    if (m == 0) return Rat(1);
    return joint_parity_prob(e) / (m * m);
}

CovCheck check_covariance(const ParityEnsemble& e, const Rat& delta) {
    CovCheck c;
    c.ens = e;
    c.marginalProb = marginal_parity_prob(e);
    c.jointProb = joint_parity_prob(e);
    c.cov = c.jointProb - c.marginalProb * c.marginalProb;
    c.ratio = c.marginalProb == 0 ? Rat(1) : c.jointProb / (c.marginalProb * c.marginalProb);
    c.delta = delta;
    c.holds = c.cov <= delta * c.marginalProb * c.marginalProb;
    return c;
}

NprimeResult find_nprime(unsigned n, const Rat& delta, unsigned totalCap) {
    if (n == 0) throw DomainError("block size must be positive");
    if (delta <= 0) throw DomainError("delta must be positive");
    if (totalCap < 2 * n) throw DomainError("totalCap must allow at least two blocks");

    NprimeResult res;
    res.totalCap = totalCap;
    const unsigned maxTotal = (totalCap / n) * n;
    for (unsigned total = 2 * n; total <= maxTotal; total += n)
        for (unsigned n0 = 0; n0 <= total; ++n0) {
            const ParityEnsemble e{n0, total - n0, n};
            if (!check_covariance(e, delta).holds) res.violations.emplace_back(n0, total - n0);
        }

    unsigned worst = 0;
    bool boundary = false;
    for (const auto& [a, b] : res.violations) {
        worst = std::max(worst, std::min(a, b));
        if (a + b == maxTotal) boundary = true;
    }
    res.nprime = res.violations.empty() ? 1 : worst + 1;
    res.capHit = boundary;
    res.found = !boundary;
    return res;
}

JointDist brute_force_parity_dist(const ParityEnsemble& e) {
    e.validate(false);
    const unsigned N = e.total();
    const unsigned k = e.blocks();
    const Int combos = binom(N, e.n1);
    if (combos > Int(2'000'000))
        throw SizeGuardError("brute force would enumerate " + combos.get_str() +
                             " odd-point placements");

    std::vector<Axis> axes;
    for (unsigned i = 1; i <= k; ++i) axes.push_back(Axis{"Y" + std::to_string(i), 2});
    Space space(std::move(axes));

    // Shuffle-and-cut: every placement of the odd points among the N ordered
    // slots is equally likely, and block b covers slots [b*n, (b+1)*n).
    std::map<std::uint64_t, unsigned long> counts;
    std::vector<unsigned> parity(k);
    auto idx = first_combination(e.n1);
    do {
        std::fill(parity.begin(), parity.end(), 0u);
        for (std::size_t pos : idx) parity[pos / e.n] ^= 1u;
        std::uint64_t key = 0;
        for (unsigned b = 0; b < k; ++b) key = (key << 1) | parity[b];
        ++counts[key];
    } while (next_combination(idx, N));

    const Rat unit = Rat(1) / Rat(combos);
    std::vector<Entry> mass;
    mass.reserve(counts.size());
    for (const auto& [key, c] : counts) mass.emplace_back(key, Rat(c) * unit);
    return JointDist(std::move(space), std::move(mass));
}

}  // namespace gaplab
