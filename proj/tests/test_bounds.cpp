#include <doctest.h>

#include <cmath>
#include <vector>

#include "gaplab/bounds.hpp"
#include "gaplab/counterexample.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/info.hpp"
#include "gaplab/rat.hpp"
#include "gaplab/setting.hpp"

using namespace gaplab;

namespace {

// One fair bit, one hypothesis, loss = the bit itself: gap is +-1/2 with even
// odds and every information term is zero.
LearningSetting coin_loss_setting() {
    LearningSetting s;
    s.name = "coin-loss";
    s.zCount = 2;
    s.pz = {rat(1, 2), rat(1, 2)};
    s.n = 1;
    s.wCount = 1;
    s.kernel = {{rat(1, 1)}, {rat(1, 1)}};
    s.loss = {{rat(0, 1), rat(1, 1)}};
    return s;
}

// One fair bit, the learner outputs the bit it saw, loss is the mismatch
// indicator: empirical risk is always 0, population risk always 1/2.
LearningSetting identity_setting() {
    LearningSetting s;
    s.name = "identity";
    s.zCount = 2;
    s.pz = {rat(1, 2), rat(1, 2)};
    s.n = 1;
    s.wCount = 2;
    s.kernel = {{rat(1, 1), rat(0, 1)}, {rat(0, 1), rat(1, 1)}};
    s.loss = {{rat(0, 1), rat(1, 1)}, {rat(1, 1), rat(0, 1)}};
    return s;
}

}  // namespace

TEST_CASE("zero-information setting: every expected-gap bound degenerates to zero") {
    const auto a = analyze(coin_loss_setting());
    CHECK(a.stats.expectedGap == rat(0, 1));
    CHECK(a.stats.expectedSquaredGap == rat(1, 4));

    const auto full = full_mi_bound(a);
    CHECK(full.lhs == 0.0);
    CHECK(full.rhs == 0.0);  // I(W;S) is exactly zero, so the sqrt is exactly zero
    CHECK(full.holds());
    CHECK(full.lhsExact.has_value());
    CHECK(*full.lhsExact == rat(0, 1));

    const auto sw = samplewise_mi_bound(a);
    CHECK(sw.rhs == 0.0);
    CHECK(sw.holds());

    // squared gap 1/4 is caught by the trivial 1/n term alone
    const auto pw = pairwise_sq_bound(a);
    CHECK(pw.lhs == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(pw.rhs == doctest::Approx(1.0).epsilon(1e-15));  // n = 1: no pair terms
    CHECK(pw.holds());
}

TEST_CASE("fully dependent setting: hand-checked bound values") {
    const auto a = analyze(identity_setting());
    CHECK(a.stats.expectedGap == rat(1, 2));
    CHECK(a.stats.expectedSquaredGap == rat(1, 4));
    REQUIRE(a.stats.perSampleMI.size() == 1);
    CHECK(a.stats.perSampleMI[0] == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    const auto full = full_mi_bound(a);
    CHECK(full.lhs == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(full.rhs == doctest::Approx(std::sqrt(std::log(2.0) / 2)).epsilon(1e-14));
    CHECK(full.holds());
    CHECK(full.slack() == doctest::Approx(std::sqrt(std::log(2.0) / 2) - 0.5).epsilon(1e-12));

    const auto sw = samplewise_mi_bound(a);
    CHECK(sw.rhs == doctest::Approx(full.rhs).epsilon(1e-14));  // n = 1: same formula
    CHECK(sw.holds());

    // sigma scales the right-hand side linearly
    const auto wide = full_mi_bound(a, 1.0);
    CHECK(wide.rhs == doctest::Approx(2 * full.rhs).epsilon(1e-14));
    CHECK(wide.sigma == 1.0);
}

TEST_CASE("hard instance at d=3: samplewise collapses to zero, full does not") {
    CEParams params;
    params.r = 1;
    params.d = 3;
    const auto a = analyze(construct(params).setting);

    const auto sw = samplewise_mi_bound(a);
    CHECK(sw.rhs == 0.0);  // certified by exact independence, not rounding
    CHECK(sw.lhs == 0.0);  // |E[gap]| is exactly zero too
    CHECK(sw.holds());

    const double fullMi = 0.875 * std::log(7.0);  // (1 - dup prob) * log(support ratio)
    const auto full = full_mi_bound(a);
    CHECK(full.rhs == doctest::Approx(std::sqrt(2 * 0.25 * fullMi / 2)).epsilon(1e-12));
    CHECK(full.rhs > 0.4);

    // the squared gap 6/35 defeats every vanishing expected-gap bound: only
    // the pair-information bounds see it coming
    CHECK(a.stats.expectedSquaredGap == rat(6, 35));
    const auto pw = pairwise_sq_bound(a);
    const double expectPw = 0.5 + 0.5 * std::sqrt(2 * fullMi);
    CHECK(pw.lhs == doctest::Approx(6.0 / 35.0).epsilon(1e-14));
    CHECK(pw.rhs == doctest::Approx(expectPw).epsilon(1e-12));
    CHECK(pw.holds());

    const auto ss = subset_sq_bound(a, 2);
    CHECK(ss.rhs == doctest::Approx(0.5 + 2 * std::sqrt(fullMi / 2)).epsilon(1e-12));
    CHECK(ss.holds());
    CHECK(pw.rhs <= ss.rhs);  // the pairwise version is the sharper of the two

    // subset endpoints reproduce the two basic bounds
    const auto sub1 = subset_mi_bound(a, 1);
    const auto sub2 = subset_mi_bound(a, 2);
    CHECK(sub1.rhs == doctest::Approx(sw.rhs).epsilon(1e-14));
    CHECK(sub2.rhs == doctest::Approx(full.rhs).epsilon(1e-14));
}

TEST_CASE("no singleton version of the squared-gap subset bound exists") {
    const auto a = analyze(coin_loss_setting());
    CHECK_THROWS_AS(subset_sq_bound(a, 1), DomainError);
    CHECK_THROWS_AS(subset_sq_bound(a, 0), DomainError);
    CHECK_THROWS_AS(subset_mi_bound(a, 0), DomainError);
    CHECK_THROWS_AS(subset_mi_bound(a, 2), DomainError);  // m exceeds n = 1
}

TEST_CASE("tail bound divides the squared-gap bound by the threshold squared") {
    CEParams params;
    params.r = 1;
    params.d = 3;
    const auto a = analyze(construct(params).setting);
    const auto pw = pairwise_sq_bound(a);

    const auto tail = markov_tail(a, rat(1, 4));
    CHECK(tail.lhs == doctest::Approx(24.0 / 35.0).epsilon(1e-14));
    CHECK(tail.rhs == doctest::Approx(pw.rhs * 16).epsilon(1e-12));
    CHECK(tail.holds());
    REQUIRE(tail.lhsExact.has_value());
    CHECK(*tail.lhsExact == rat(24, 35));

    // the exact chebyshev inequality behind it: P(|gap| >= t) t^2 <= E[gap^2]
    for (const Rat& t : {rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)}) {
        const Rat lhsExact = a.stats.tail_abs(t) * t * t;
        CHECK(lhsExact <= a.stats.expectedSquaredGap);
    }
    CHECK_THROWS_AS(markov_tail(a, rat(0, 1)), DomainError);
    CHECK_THROWS_AS(markov_tail(a, rat(-1, 2)), DomainError);
}

TEST_CASE("decoupling inequality on a perfectly correlated pair") {
    // X = Y = one fair bit; f = equality indicator. Joint expectation 1,
    // product expectation 1/2, information log 2.
    std::vector<Entry> mass = {{0, rat(1, 2)}, {3, rat(1, 2)}};
    JointDist j(Space{{{"X", 2}, {"Y", 2}}}, std::move(mass));
    const PairFn f = [](const std::vector<std::size_t>& xa, const std::vector<std::size_t>& xb) {
        return rat(xa[0] == xb[0] ? 1 : 0, 1);
    };
    const auto rep = decoupling_check(j, {0}, {1}, f);
    CHECK(rep.lhs == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rep.rhs == doctest::Approx(std::sqrt(std::log(2.0) / 2)).epsilon(1e-14));
    CHECK(rep.holds());

    CHECK_THROWS_AS(decoupling_check(j, {0}, {0}, f), DomainError);  // overlap
    CHECK_THROWS_AS(decoupling_check(j, {}, {1}, f), DomainError);   // empty group
    CHECK_THROWS_AS(decoupling_check(j, {1}, {2}, f), DomainError);  // out of range
}

TEST_CASE("standard battery emits the expected set of reports and all hold") {
    CEParams params;
    params.r = 1;
    params.d = 3;
    const auto a = analyze(construct(params).setting);
    const auto reports = standard_bounds(a);
    // full, samplewise, subsets m=1..2, pairwise, subset-sq m=2, four tails
    CHECK(reports.size() == 10);
    for (const auto& r : reports) {
        CAPTURE(r.bound);
        CHECK(r.holds());
        CHECK(r.rhs >= 0.0);
    }
    // report names are unique
    std::vector<std::string> names;
    for (const auto& r : reports) names.push_back(r.bound);
    std::sort(names.begin(), names.end());
    CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
}
