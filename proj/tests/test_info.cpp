#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "gaplab/dist.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/info.hpp"
#include "gaplab/rng.hpp"

using namespace gaplab;

namespace {

// random strictly-positive joint over the given axis sizes, masses k/total
JointDist random_joint(Rng& rng, std::vector<std::size_t> sizes) {
    std::vector<Axis> axes;
    for (std::size_t i = 0; i < sizes.size(); ++i)
        axes.push_back(Axis{"A" + std::to_string(i), sizes[i]});
    Space sp(std::move(axes));
    std::vector<unsigned long> w(sp.states());
    unsigned long total = 0;
    for (auto& v : w) {
        v = 1 + rng.below(12);
        total += v;
    }
    std::vector<Entry> m;
    for (std::uint64_t k = 0; k < sp.states(); ++k)
        m.emplace_back(k, rat(static_cast<long>(w[k]), static_cast<long>(total)));
    return JointDist(sp, std::move(m));
}

}  // namespace

TEST_CASE("kl is zero on equal inputs and infinite on support violations") {
    JointDist p = finite_dist("X", {rat(1, 2), rat(1, 2)});
    CHECK(kl(p, p) == 0.0);

    JointDist q = finite_dist("X", {rat(1, 4), rat(3, 4)});
    const double expect = 0.5 * std::log(0.5 / 0.25) + 0.5 * std::log(0.5 / 0.75);
    CHECK(std::fabs(kl(p, q) - expect) <= 1e-15);
    CHECK(kl(p, q) > 0);

    JointDist r = finite_dist("X", {rat(1), rat(0)});
    CHECK(kl(p, r) == std::numeric_limits<double>::infinity());
    CHECK(kl(r, p) < std::numeric_limits<double>::infinity());

    JointDist wrongShape = finite_dist("X", {rat(1, 3), rat(1, 3), rat(1, 3)});
    CHECK_THROWS_AS(kl(p, wrongShape), DomainError);
}

TEST_CASE("entropy of uniform and point distributions") {
    CHECK(entropy(uniform_dist("U", 1)) == 0.0);
    CHECK(std::fabs(entropy(uniform_dist("U", 7)) - std::log(7.0)) <= 1e-12);
    Space sp({Axis{"X", 4}});
    CHECK(entropy(JointDist::point_mass(sp, 2)) == 0.0);
}

TEST_CASE("mutual information is exactly zero for products") {
    JointDist prod = finite_dist("A", {rat(2, 5), rat(3, 5)})
                         .product(finite_dist("B", {rat(1, 6), rat(1, 3), rat(1, 2)}));
    CHECK(mutual_information(prod, {0}, {1}) == 0.0);
    CHECK(prod.independent({0}, {1}));
}

TEST_CASE("mutual information of a perfectly correlated pair is log k") {
    Space sp({Axis{"A", 3}, Axis{"B", 3}});
    std::vector<Entry> m;
    for (std::size_t v = 0; v < 3; ++v) m.emplace_back(sp.pack({v, v}), rat(1, 3));
    JointDist d(sp, std::move(m));
    CHECK(std::fabs(mutual_information(d, {0}, {1}) - std::log(3.0)) <= 1e-12);
}

TEST_CASE("mutual information agrees with the density expectation and is symmetric") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        JointDist d = random_joint(rng, {2, 3, 2});
        const double iab = mutual_information(d, {0}, {1, 2});
        CHECK(std::fabs(iab - expected_information_density(d, {0}, {1, 2})) <= 1e-12);
        CHECK(std::fabs(iab - mutual_information(d, {1, 2}, {0})) <= 1e-12);
        CHECK(iab >= 0.0);
    }
}

TEST_CASE("information density flags impossible points") {
    JointDist d = finite_dist("A", {rat(1, 2), rat(1, 2)})
                      .product(finite_dist("B", {rat(1), rat(0)}));
    CHECK(information_density(d, {0}, {1}, {0, 0}) == 0.0);  // independent, ratio 1
    CHECK_THROWS_AS(information_density(d, {0}, {1}, {0, 1}), DomainError);  // zero marginal

    Space sp({Axis{"A", 2}, Axis{"B", 2}});
    std::vector<Entry> m{{sp.pack({0, 0}), rat(1, 2)}, {sp.pack({1, 1}), rat(1, 2)}};
    JointDist corr(sp, std::move(m));
    CHECK(information_density(corr, {0}, {1}, {0, 1}) ==
          -std::numeric_limits<double>::infinity());
    CHECK(std::fabs(information_density(corr, {0}, {1}, {0, 0}) - std::log(2.0)) <= 1e-15);
}

TEST_CASE("conditional mutual information disintegrates consistently") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        JointDist d = random_joint(rng, {2, 2, 3});
        const ConditionalMI cmi = conditional_mi(d, {0}, {1}, {2});
        CHECK(std::fabs(cmi.value - conditional_mi_direct(d, {0}, {1}, {2})) <= 1e-12);
        Rat total(0);
        double acc = 0;
        for (const auto& sl : cmi.slices) {
            total += sl.pc;
            acc += to_double(sl.pc) * sl.mi;
            CHECK(sl.mi >= 0.0);
            CHECK((sl.indep ? sl.mi == 0.0 : true));
        }
        CHECK(total == 1);
        CHECK(std::fabs(acc - cmi.value) <= 1e-12);
    }
}

TEST_CASE("conditioning on a constant reduces to plain mutual information") {
    Rng rng(5);
    JointDist d = random_joint(rng, {3, 2, 1});
    const ConditionalMI cmi = conditional_mi(d, {0}, {1}, {2});
    CHECK(cmi.slices.size() == 1);
    CHECK(std::fabs(cmi.value - mutual_information(d, {0}, {1})) <= 1e-12);
}

TEST_CASE("conditional independence is certified exactly") {
    // X uniform bit, C uniform bit, Y = X xor C: Y depends on X, but given C
    // the pair (X, Y) is deterministic in lockstep; given nothing they are
    // dependent through C only when C is not observed.
    Space sp({Axis{"X", 2}, Axis{"Y", 2}, Axis{"C", 2}});
    std::vector<Entry> m;
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t c = 0; c < 2; ++c) m.emplace_back(sp.pack({x, x ^ c, c}), rat(1, 4));
    JointDist d(sp, std::move(m));

    // X independent of C, and Y independent of C
    CHECK(d.independent({0}, {2}));
    CHECK(d.independent({1}, {2}));
    // but I(X;Y|C) = log 2 with every slice fully correlated
    const ConditionalMI cmi = conditional_mi(d, {0}, {1}, {2});
    CHECK(!cmi.allIndependent);
    CHECK(std::fabs(cmi.value - std::log(2.0)) <= 1e-12);
    // while I(X;Y) = 0 exactly: marginally Y is an unbiased coin independent of X
    CHECK(mutual_information(d, {0}, {1}) == 0.0);
    CHECK(d.independent({0}, {1}));
}

TEST_CASE("expected_sqrt weights slice values by conditioning mass") {
    Space sp({Axis{"X", 2}, Axis{"Y", 2}, Axis{"C", 2}});
    std::vector<Entry> m;
    // C = 0 slice (mass 1/2): X = Y perfectly; C = 1 slice: X, Y independent
    for (std::size_t x = 0; x < 2; ++x) m.emplace_back(sp.pack({x, x, 0}), rat(1, 4));
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) m.emplace_back(sp.pack({x, y, 1}), rat(1, 8));
    JointDist d(sp, std::move(m));
    const ConditionalMI cmi = conditional_mi(d, {0}, {1}, {2});
    REQUIRE(cmi.slices.size() == 2);
    CHECK(!cmi.slices[0].indep);
    CHECK(cmi.slices[1].indep);
    CHECK(cmi.slices[1].mi == 0.0);
    const double expect = 0.5 * std::sqrt(2.0 * std::log(2.0));
    CHECK(std::fabs(cmi.expected_sqrt(2.0) - expect) <= 1e-12);
    CHECK(std::fabs(cmi.value - 0.5 * std::log(2.0)) <= 1e-12);
}
