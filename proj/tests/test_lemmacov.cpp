#include <doctest.h>

#include <utility>
#include <vector>

#include "gaplab/errors.hpp"
#include "gaplab/lemmacov.hpp"
#include "gaplab/rat.hpp"

using namespace gaplab;

namespace {

ParityEnsemble ens(unsigned n0, unsigned n1, unsigned n) {
    ParityEnsemble e;
    e.n0 = n0;
    e.n1 = n1;
    e.n = n;
    return e;
}

// Brute-force marginal and joint read off the exact parity-vector law.
std::pair<Rat, Rat> brute_pair(const ParityEnsemble& e) {
    const JointDist dist = brute_force_parity_dist(e);
    Rat pm(0), pj(0);
    for (const auto& [key, mass] : dist.entries()) {
        const auto c = dist.space().unpack(key);
        if (c[0] == 1) pm += mass;
        if (c[0] == 1 && c[1] == 1) pj += mass;
    }
    return {pm, pj};
}

}  // namespace

TEST_CASE("hand-computed spot values for the pair ensemble") {
    // 2 even and 2 odd points in two pairs: marginal 2/3, joint 2/3, cov 2/9
    const auto e = ens(2, 2, 2);
    CHECK(marginal_parity_prob(e) == rat(2, 3));
    CHECK(joint_parity_prob(e) == rat(2, 3));
    CHECK(covariance(e) == rat(2, 9));
    CHECK(pair_ratio(e) == rat(3, 2));

    // 4 even and 2 odd points: both odd points must land in distinct blocks
    // for both parities to be odd
    const auto f = ens(4, 2, 2);
    CHECK(marginal_parity_prob(f) == rat(8, 15));
    CHECK(joint_parity_prob(f) == rat(4, 15));
    CHECK(covariance(f) == rat(4, 15) - rat(64, 225));
    CHECK(covariance(f) == rat(-4, 225));

    // no odd points at all: parity is deterministically zero
    const auto g = ens(4, 0, 2);
    CHECK(marginal_parity_prob(g) == rat(0, 1));
    CHECK(joint_parity_prob(g) == rat(0, 1));
    CHECK(covariance(g) == rat(0, 1));
    CHECK(pair_ratio(g) == rat(1, 1));  // defined as 1 on zero marginal
}

TEST_CASE("pair-block closed forms for small pools") {
    // For n = 2: P(Y_1=1) = 2 n0 n1 / (N (N-1)) with N = n0 + n1, and
    // P(Y_1=1, Y_2=1) = 4 n0 n1 (n0-1)(n1-1) / (N (N-1) (N-2) (N-3)).
    for (unsigned n0 = 0; n0 <= 10; ++n0) {
        for (unsigned n1 = 0; n1 <= 10; ++n1) {
            const unsigned N = n0 + n1;
            if (N % 2 != 0 || N < 4) continue;
            const auto e = ens(n0, n1, 2);
            const Rat pm = rat(2ll * n0 * n1, 1ll * N * (N - 1));
            const Rat pj = rat(4ll * n0 * n1 * (n0 > 0 ? n0 - 1 : 0) * (n1 > 0 ? n1 - 1 : 0),
                               1ll * N * (N - 1) * (N - 2) * (N - 3));
            CHECK(marginal_parity_prob(e) == pm);
            CHECK(joint_parity_prob(e) == pj);
            CHECK(covariance(e) == pj - pm * pm);
        }
    }
}

TEST_CASE("closed forms equal brute force for every pool up to ten of each parity") {
    for (unsigned n : {2u, 4u}) {
        for (unsigned n0 = 0; n0 <= 10; ++n0) {
            for (unsigned n1 = 0; n1 <= 10; ++n1) {
                const unsigned N = n0 + n1;
                if (N % n != 0 || N < 2 * n) continue;
                const auto e = ens(n0, n1, n);
                const auto [pm, pj] = brute_pair(e);
                CHECK(marginal_parity_prob(e) == pm);
                CHECK(joint_parity_prob(e) == pj);
            }
        }
    }
}

TEST_CASE("brute-force law is exchangeable across blocks") {
    const auto e = ens(5, 3, 2);  // 4 blocks
    const JointDist dist = brute_force_parity_dist(e);
    REQUIRE(dist.space().arity() == 4);

    // all single-block marginals agree
    const Rat pm = marginal_parity_prob(e);
    for (std::size_t i = 0; i < 4; ++i) {
        Rat p(0);
        for (const auto& [key, mass] : dist.entries())
            if (dist.space().unpack(key)[i] == 1) p += mass;
        CHECK(p == pm);
    }
    // all pair joints agree
    const Rat pj = joint_parity_prob(e);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = i + 1; k < 4; ++k) {
            Rat p(0);
            for (const auto& [key, mass] : dist.entries()) {
                const auto c = dist.space().unpack(key);
                if (c[i] == 1 && c[k] == 1) p += mass;
            }
            CHECK(p == pj);
        }
    }
    // total parity of the pool is invariant: XOR of all blocks = n1 mod 2
    for (const auto& [key, mass] : dist.entries()) {
        int parity = 0;
        for (std::size_t i = 0; i < 4; ++i) parity ^= static_cast<int>(dist.space().unpack(key)[i]);
        CHECK(parity == 1);  // n1 = 3 is odd
    }
}

TEST_CASE("balanced pools overshoot the product of marginals by a vanishing ratio") {
    // ratio(m, m, 2) = (m-1)(2m-1) / (m(2m-3)), falling toward 1
    const std::vector<std::pair<unsigned, Rat>> table = {
        {2, rat(3, 2)},      {4, rat(21, 20)},    {8, rat(105, 104)},
        {16, rat(465, 464)}, {32, rat(1953, 1952)}, {64, rat(8001, 8000)},
    };
    for (const auto& [m, expect] : table) {
        const auto e = ens(m, m, 2);
        CHECK(pair_ratio(e) == expect);
        CHECK(pair_ratio(e) == rat(1ll * (m - 1) * (2 * m - 1), 1ll * m * (2 * m - 3)));
        CHECK(covariance(e) > rat(0, 1));  // balanced pools are positively correlated
    }
}

TEST_CASE("covariance check compares exactly against the tolerance") {
    const auto big = check_covariance(ens(64, 64, 2), rat(1, 20));
    CHECK(big.holds);
    CHECK(big.cov == big.jointProb - big.marginalProb * big.marginalProb);
    CHECK(big.ratio == rat(8001, 8000));

    // the smallest balanced pool violates any delta below 1/2
    const auto tiny = check_covariance(ens(2, 2, 2), rat(3, 10));
    CHECK_FALSE(tiny.holds);
    CHECK(tiny.cov == rat(2, 9));
    // cov = (ratio - 1) * marginal^2 = 1/2 * marginal^2: delta 1/2 is exact equality
    const auto edge = check_covariance(ens(2, 2, 2), rat(1, 2));
    CHECK(edge.holds);
}

TEST_CASE("threshold search reports the violating splits") {
    const auto eq = find_nprime(2, rat(1, 2));
    CHECK(eq.found);
    CHECK(eq.nprime == 1);  // equality at the worst split counts as holding
    CHECK(eq.violations.empty());

    const auto a = find_nprime(2, rat(3, 10));
    CHECK(a.found);
    CHECK(a.nprime == 3);
    REQUIRE(a.violations.size() == 1);
    CHECK(a.violations[0] == std::pair<unsigned, unsigned>(2, 2));

    const auto b = find_nprime(2, rat(1, 10));
    CHECK(b.found);
    CHECK(b.nprime == 4);
    REQUIRE(b.violations.size() == 2);
    CHECK(b.violations[0] == std::pair<unsigned, unsigned>(2, 2));
    CHECK(b.violations[1] == std::pair<unsigned, unsigned>(3, 3));
}

TEST_CASE("argument validation and size guards") {
    CHECK_THROWS_AS(marginal_parity_prob(ens(3, 2, 2)), DomainError);  // 5 not divisible
    CHECK_THROWS_AS(joint_parity_prob(ens(1, 1, 2)), DomainError);     // only one block
    CHECK_THROWS_AS(marginal_parity_prob(ens(0, 0, 2)), DomainError);  // empty pool
    ParityEnsemble z;
    z.n = 0;
    CHECK_THROWS_AS(z.validate(false), DomainError);
    // brute force materializes C(24,12) = 2'704'156 placements: over the cap
    CHECK_THROWS_AS(brute_force_parity_dist(ens(12, 12, 2)), SizeGuardError);
}
