#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "errors.hpp"
#include "estimator.hpp"
#include "inference.hpp"

using belief::CellTable;
using belief::Mask;

namespace {

const std::vector<std::string> kBits2{"A_{1,1}", "A_{2,1}"};
const std::vector<std::string> kBits3{"A_{1,1}", "A_{2,1}", "A_{3,1}"};

// Population table over uniform cells with the given slope vector.
CellTable population_table(int P, const std::vector<double>& beta) {
    CellTable table;
    table.P = P;
    belief::BeliefFit fit;
    fit.P = P;
    fit.beta = beta;
    const auto means = fit.cell_expectations();
    table.counts.assign(std::size_t{1} << P, 1.0);
    for (double m : means) table.sums.push_back(m);
    return table;
}

}  // namespace

TEST_CASE("strong signal is detected, noise is not") {
    CellTable table;
    table.P = 2;
    table.counts = {1000, 1000, 1000, 1000};
    table.sums = {500, -500, 500, -500};  // mean = 0.5 * sign of bit 1
    const auto fit = belief::fit_lse(table);
    const auto result = belief::significant_slopes(fit, table, 0.01, kBits2);
    CHECK(result.adjusted_alpha == doctest::Approx(0.0025));
    CHECK(result.per_slope_se == doctest::Approx(std::sqrt(12.0 / (16.0 * 4000.0))));
    REQUIRE(result.tests.size() == 4);
    CHECK_FALSE(result.tests[0].significant);
    CHECK(result.tests[1].significant);
    CHECK(result.tests[1].estimate == doctest::Approx(0.5));
    CHECK_FALSE(result.tests[2].significant);
    CHECK_FALSE(result.tests[3].significant);
    // Confidence intervals are symmetric around the estimate.
    for (const auto& t : result.tests) {
        CHECK(t.ci_hi - t.estimate == doctest::Approx(t.estimate - t.ci_lo));
        CHECK(t.testable);
    }
}

TEST_CASE("alpha is validated") {
    const auto table = population_table(1, {0.0, 0.2});
    const auto fit = belief::fit_lse(table);
    CHECK_THROWS_AS(belief::significant_slopes(fit, table, 0.0, kBits2),
                    belief::ConfigError);
    CHECK_THROWS_AS(belief::significant_slopes(fit, table, 1.0, kBits2),
                    belief::ConfigError);
}

TEST_CASE("familywise error stays near the nominal level under the null") {
    std::mt19937_64 rng(51);
    const double alpha = 0.05;
    int rejections = 0;
    for (int seed = 0; seed < 200; ++seed) {
        CellTable table;
        table.P = 2;
        table.counts.assign(4, 0.0);
        table.sums.assign(4, 0.0);
        for (int i = 0; i < 1000; ++i) {
            const int cell = static_cast<int>(rng() % 4);
            table.counts[cell] += 1;
            table.sums[cell] += rng() % 2 ? 1 : -1;
        }
        if (!table.empty_cells().empty()) continue;
        const auto fit = belief::fit_lse(table);
        const auto result = belief::significant_slopes(fit, table, alpha, kBits2);
        // Mask 0 tests the intercept against 0, which is true under this null too.
        for (const auto& t : result.tests) {
            if (t.significant) {
                ++rejections;
                break;
            }
        }
    }
    // Expected about alpha * 200 = 10; generous ceiling to keep the test stable.
    CHECK(rejections <= 25);
}

TEST_CASE("independence statement from one interaction mask") {
    const std::vector<Mask> masks{3};
    const auto s = belief::independence_report(masks, 2, kBits2);
    CHECK(s.k == 1);
    CHECK(s.subgroup.order() == 2);
    CHECK(s.generators == std::vector<Mask>{3});
    CHECK(s.text == "B _||_ G_A | <A_{1,1}A_{2,1}>");
}

TEST_CASE("independence statement ignores the constant mask") {
    const std::vector<Mask> with_const{0, 3};
    const std::vector<Mask> without{3};
    const auto a = belief::independence_report(with_const, 2, kBits2);
    const auto b = belief::independence_report(without, 2, kBits2);
    CHECK(a.subgroup == b.subgroup);
    CHECK(a.text == b.text);
}

TEST_CASE("independence statement uses minimal generators") {
    // {1, 3} spans the same subgroup as {1, 2}; echelon basis is {2, 1}.
    const std::vector<Mask> masks{1, 3};
    const auto s = belief::independence_report(masks, 2, kBits2);
    CHECK(s.k == 2);
    CHECK(s.subgroup.order() == 4);
    CHECK(s.generators == std::vector<Mask>{2, 1});
    CHECK(s.text == "B _||_ G_A | <A_{2,1}, A_{1,1}>");
}

TEST_CASE("no significant masks gives the trivial conditioning set") {
    const std::vector<Mask> masks;
    const auto s = belief::independence_report(masks, 2, kBits2);
    CHECK(s.k == 0);
    CHECK(s.subgroup.order() == 1);
    CHECK(s.text == "B _||_ G_A | <1>");
}

TEST_CASE("out-of-range mask is rejected") {
    const std::vector<Mask> masks{4};
    CHECK_THROWS_AS(belief::independence_report(masks, 2, kBits2), belief::ConfigError);
}

TEST_CASE("precision zeros mirror zero slopes for an excluded bit") {
    // E[B|A] = 0.1 + 0.3 A2 A3: bit 1 (A1) carries nothing.
    std::vector<double> beta(8, 0.0);
    beta[0] = 0.1;
    beta[6] = 0.3;
    const auto table = population_table(3, beta);
    const auto check = belief::precision_zero_check(table, 0);
    REQUIRE(check.j_masks == std::vector<Mask>{1, 3, 5, 7});
    for (std::size_t i = 0; i < check.j_masks.size(); ++i) {
        CHECK(check.slope_zero[i]);
        CHECK(check.precision_zero[i]);
    }
    CHECK(check.equivalent);
}

TEST_CASE("precision zeros mirror nonzero slopes pattern") {
    // E[B|A] = 0.25 (A1 A2 + A2 A3 + A1 A3): B is pairwise independent of
    // every single bit, yet the two-way masks containing A1 carry signal.
    std::vector<double> beta(8, 0.0);
    beta[3] = beta[5] = beta[6] = 0.25;
    const auto table = population_table(3, beta);
    const auto check = belief::precision_zero_check(table, 0);
    REQUIRE(check.j_masks == std::vector<Mask>{1, 3, 5, 7});
    CHECK(check.slope_zero == std::vector<bool>{true, false, false, true});
    CHECK(check.precision_zero == std::vector<bool>{true, false, false, true});
    CHECK(check.equivalent);
}

TEST_CASE("precision check refuses empty cells") {
    CellTable table;
    table.P = 2;
    table.counts = {1, 1, 1, 0};
    table.sums = {1, -1, 0, 0};
    CHECK_THROWS_AS(belief::precision_zero_check(table, 0), belief::DegeneracyError);
    CellTable ok = population_table(2, {0.0, 0.2, 0.0, 0.0});
    CHECK_THROWS_AS(belief::precision_zero_check(ok, 2), belief::ConfigError);
}

TEST_CASE("precision check agrees with slopes on random samples") {
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 20; ++trial) {
        CellTable table;
        table.P = 2;
        table.counts.assign(4, 0.0);
        table.sums.assign(4, 0.0);
        for (int i = 0; i < 400; ++i) {
            const int cell = static_cast<int>(rng() % 4);
            const double p = cell == 0 ? 0.8 : 0.45;
            table.counts[cell] += 1;
            table.sums[cell] += (rng() % 1000) / 1000.0 < p ? 1 : -1;
        }
        if (!table.empty_cells().empty()) continue;
        for (int bit = 0; bit < 2; ++bit) {
            const auto check = belief::precision_zero_check(table, bit);
            CHECK(check.j_masks.size() == 2);
            CHECK(check.equivalent);  // sampled slopes are a.s. nonzero on both sides
        }
    }
}
