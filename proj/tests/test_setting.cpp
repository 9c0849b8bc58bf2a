#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "gaplab/errors.hpp"
#include "gaplab/info.hpp"
#include "gaplab/setting.hpp"

using namespace gaplab;

namespace {

// W is drawn by a fair coin regardless of the single sample; loss of the
// only-hypothesis case below is the sample bit itself.
LearningSetting coin_loss_setting() {
    LearningSetting s;
    s.name = "coin-loss";
    s.zCount = 2;
    s.pz = {rat(1, 2), rat(1, 2)};
    s.n = 1;
    s.wCount = 1;
    s.kernel = {{rat(1)}, {rat(1)}};
    s.loss = {{rat(0), rat(1)}};
    return s;
}

// deterministic kernel remembering the sample: w = z, loss 0 iff w == z
LearningSetting identity_setting() {
    LearningSetting s;
    s.name = "identity";
    s.zCount = 2;
    s.pz = {rat(1, 2), rat(1, 2)};
    s.n = 1;
    s.wCount = 2;
    s.kernel = {{rat(1), rat(0)}, {rat(0), rat(1)}};
    s.loss = {{rat(0), rat(1)}, {rat(1), rat(0)}};
    return s;
}

}  // namespace

TEST_CASE("validate rejects broken settings") {
    LearningSetting s = coin_loss_setting();
    s.validate();

    LearningSetting bad = s;
    bad.pz = {rat(1, 2), rat(1, 3)};
    CHECK_THROWS_AS(bad.validate(), DomainError);

    bad = s;
    bad.kernel[0] = {rat(1, 2)};
    CHECK_THROWS_AS(bad.validate(), DomainError);

    bad = s;
    bad.loss[0][1] = rat(3, 2);
    CHECK_THROWS_AS(bad.validate(), DomainError);

    bad = s;
    bad.loss[0][1] = rat(-1, 4);
    CHECK_THROWS_AS(bad.validate(), DomainError);

    bad = s;
    bad.kernel.pop_back();
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("training tuples pack mixed-radix, first draw most significant") {
    LearningSetting s;
    s.zCount = 3;
    s.n = 2;
    CHECK(s.sCount() == 9);
    CHECK(s.sPack({0, 0}) == 0);
    CHECK(s.sPack({0, 2}) == 2);
    CHECK(s.sPack({1, 0}) == 3);
    CHECK(s.sPack({2, 2}) == 8);
    std::vector<std::size_t> out;
    for (std::uint64_t k = 0; k < 9; ++k) {
        s.sUnpack(k, out);
        CHECK(s.sPack(out) == k);
    }
}

TEST_CASE("joint law of a deterministic kernel") {
    const LearningSetting s = identity_setting();
    const JointDist j = build_joint(s);
    // axes: Z1, W; w always equals z
    CHECK(j.support_size() == 2);
    CHECK(j.mass_at({0, 0}) == rat(1, 2));
    CHECK(j.mass_at({1, 1}) == rat(1, 2));
}

TEST_CASE("risks of the coin-loss setting") {
    const LearningSetting s = coin_loss_setting();
    CHECK(population_risk(s, 0) == rat(1, 2));
    CHECK(empirical_risk(s, 0, {0}) == 0);
    CHECK(empirical_risk(s, 0, {1}) == 1);
}

TEST_CASE("gap statistics of the coin-loss setting") {
    const LearningSetting s = coin_loss_setting();
    const GapStats st = gap_stats(s);
    // gap = 1/2 - loss(z): +1/2 or -1/2, each with probability 1/2
    CHECK(st.expectedGap == 0);
    CHECK(st.expectedSquaredGap == rat(1, 4));
    CHECK(st.moment(3) == 0);
    CHECK(st.moment(4) == rat(1, 16));
    CHECK(st.moment(5) == 0);
    CHECK(st.moment(6) == rat(1, 64));
    REQUIRE(st.gapDist.size() == 2);
    CHECK(st.gapDist[0].first == rat(-1, 2));
    CHECK(st.gapDist[0].second == rat(1, 2));
    CHECK(st.gapDist[1].first == rat(1, 2));
    CHECK(st.tail_abs(rat(1, 2)) == 1);
    CHECK(st.tail_abs(rat(3, 4)) == 0);
    CHECK(st.tail_one_sided(rat(1, 2)) == rat(1, 2));
    // the hypothesis is constant, so it carries no information
    CHECK(st.perSampleAllIndependent);
    REQUIRE(st.perSampleMI.size() == 1);
    CHECK(st.perSampleMI[0] == 0.0);
}

TEST_CASE("gap statistics of the identity kernel") {
    const SettingAnalysis an = analyze(identity_setting());
    // w == z always, so the empirical loss is 0 and the gap is 1/2
    CHECK(an.stats.expectedGap == rat(1, 2));
    CHECK(an.stats.expectedSquaredGap == rat(1, 4));
    CHECK(an.stats.tail_abs(rat(1, 2)) == 1);
    CHECK(!an.stats.perSampleAllIndependent);
    CHECK(std::fabs(an.stats.perSampleMI[0] - std::log(2.0)) <= 1e-12);
    CHECK(std::fabs(mutual_information(an.joint, {1}, {0}) - std::log(2.0)) <= 1e-12);
}

TEST_CASE("pair information matrix is symmetric with zero diagonal") {
    LearningSetting s = random_setting(17, {3, 3, 4});
    const GapStats st = analyze(std::move(s)).stats;
    const std::size_t n = st.pairMI.size();
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(st.pairMI[i][i] == 0.0);
        for (std::size_t k = 0; k < n; ++k) CHECK(st.pairMI[i][k] == st.pairMI[k][i]);
    }
}

TEST_CASE("random settings always satisfy the invariants") {
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        const LearningSetting s = random_setting(seed, {});
        CHECK_NOTHROW(s.validate());
        CHECK(s.zCount >= 1);
        CHECK(s.zCount <= 4);
        CHECK(s.n >= 1);
        CHECK(s.n <= 3);
        CHECK(s.wCount >= 1);
        CHECK(s.wCount <= 5);
    }
}

TEST_CASE("random settings are reproducible and seed-sensitive") {
    const LearningSetting a = random_setting(5, {});
    const LearningSetting b = random_setting(5, {});
    CHECK(a.name == b.name);
    CHECK(a.pz == b.pz);
    CHECK(a.kernel == b.kernel);
    CHECK(a.loss == b.loss);
    CHECK(build_joint(a).same_mass(build_joint(b)));

    // different seeds almost surely differ somewhere; check a specific pair
    const LearningSetting c = random_setting(6, {});
    const bool differs = a.zCount != c.zCount || a.n != c.n || a.wCount != c.wCount ||
                         a.pz != c.pz || a.kernel != c.kernel || a.loss != c.loss;
    CHECK(differs);
}

TEST_CASE("joint construction refuses oversized state spaces") {
    LearningSetting s;
    s.name = "huge";
    s.zCount = 64;
    s.pz.assign(64, rat(1, 64));
    s.n = 5;  // 64^5 states exceeds the default guard of 1e8
    s.wCount = 1;
    // kernel would need 64^5 rows; validate() would catch the mismatch, so
    // call the guard through build_joint with a fabricated small kernel:
    s.kernel.assign(1, std::vector<Rat>{rat(1)});
    s.loss = {std::vector<Rat>(64, rat(0))};
    CHECK_THROWS_AS(build_joint(s), SizeGuardError);
}
