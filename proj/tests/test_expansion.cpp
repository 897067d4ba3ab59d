#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "expansion.hpp"

using belief::BitPanel;
using belief::ExpansionConfig;
using belief::RawColumn;
using belief::VariableSpec;
using belief::VarKind;

namespace {

RawColumn numeric_column(const std::string& name, const std::vector<double>& values) {
    RawColumn col{name, {}};
    char buf[40];
    for (double v : values) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        col.values.emplace_back(buf);
    }
    return col;
}

double reconstruct(std::span<const int> signs) {
    double v = 0.0, step = 0.5;
    for (int s : signs) {
        v += s * step;
        step *= 0.5;
    }
    return v;
}

}  // namespace

TEST_CASE("binary expansion of simple values") {
    std::array<int, 3> s{};
    belief::binary_expand(0.75, 3, s);
    CHECK(s == std::array<int, 3>{1, 1, -1});  // 0.5 + 0.25 - 0.125 = 0.625
    belief::binary_expand(-0.3, 2, s);
    CHECK(s[0] == -1);
    CHECK(s[1] == 1);  // -0.5 + 0.25 = -0.25
}

TEST_CASE("binary expansion tie rule picks -1") {
    std::array<int, 3> s{};
    belief::binary_expand(0.0, 3, s);
    CHECK(s == std::array<int, 3>{-1, 1, 1});  // repeating-ones tail
    belief::binary_expand(0.5, 3, s);
    CHECK(s == std::array<int, 3>{1, -1, 1});  // 0.5 = 0.5 - 0.25 + 0.25...
}

TEST_CASE("binary expansion remainder is at most 2^-D") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<int> s(10);
    for (int trial = 0; trial < 500; ++trial) {
        const double u = unif(rng);
        for (int depth = 1; depth <= 10; ++depth) {
            belief::binary_expand(u, depth, std::span(s).first(depth));
            const double err = std::abs(u - reconstruct(std::span(s).first(depth)));
            CHECK(err <= std::pow(2.0, -depth) + 1e-15);
        }
    }
}

TEST_CASE("packed bits agree with sign expansion") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::array<int, 6> s{};
    for (int trial = 0; trial < 200; ++trial) {
        const double u = unif(rng);
        belief::binary_expand(u, 6, s);
        const auto bits = belief::binary_expand_bits(u, 6);
        for (int d = 0; d < 6; ++d) {
            CHECK(((bits >> d) & 1u) == (s[d] == -1 ? 1u : 0u));
        }
    }
    CHECK_THROWS_AS(belief::binary_expand_bits(1.5, 2), std::domain_error);
}

TEST_CASE("ecdf rescale uses midranks") {
    const std::vector<double> x{3.0, 1.0, 2.0, 2.0};
    const auto u = belief::ecdf_rescale(x);
    // ranks: 1.0 -> 1, ties {2.0, 2.0} -> 2.5, 3.0 -> 4; u = (2r - 5) / 4
    CHECK(u[1] == doctest::Approx(-0.75));
    CHECK(u[2] == doctest::Approx(0.0));
    CHECK(u[3] == doctest::Approx(0.0));
    CHECK(u[0] == doctest::Approx(0.75));
    for (double v : u) CHECK(std::abs(v) < 1.0);
}

TEST_CASE("ecdf rescale rejects non-finite input") {
    const std::vector<double> x{1.0, std::nan(""), 2.0};
    CHECK_THROWS_WITH_AS(belief::ecdf_rescale(x), doctest::Contains("index 1"),
                         belief::DataError);
}

TEST_CASE("config validation") {
    ExpansionConfig cfg;
    CHECK_THROWS_AS(cfg.validate(), belief::ConfigError);

    cfg.vars.push_back({"x", VarKind::ContinuousEcdf, 0});
    CHECK_THROWS_AS(cfg.validate(), belief::ConfigError);

    cfg.vars[0].depth = 25;
    CHECK_THROWS_AS(cfg.validate(), belief::ConfigError);

    cfg.vars[0].depth = 24;
    CHECK_NOTHROW(cfg.validate());

    VariableSpec bad_binary{"b", VarKind::Binary, 2};
    bad_binary.positive_level = "yes";
    cfg.vars[0].depth = 1;
    cfg.vars.push_back(bad_binary);
    CHECK_THROWS_AS(cfg.validate(), belief::ConfigError);

    cfg.vars[1].depth = 1;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("panel layout: first variable owns the low bits") {
    ExpansionConfig cfg;
    cfg.vars.push_back({"x1", VarKind::ContinuousKnownRange, 2, -1.0, 1.0});
    cfg.vars.push_back({"x2", VarKind::ContinuousKnownRange, 1, -1.0, 1.0});

    const std::vector<RawColumn> cols{numeric_column("x1", {0.75, -0.75}),
                                      numeric_column("x2", {-0.5, 0.9})};
    const auto panel = belief::build_panel(cols, cfg);
    REQUIRE(panel.P == 3);
    REQUIRE(panel.n == 2);
    // row 0: x1 = 0.75 -> signs (1, 1); x2 = -0.5 -> sign -1
    CHECK(panel.sign(0, 0) == 1);
    CHECK(panel.sign(0, 1) == 1);
    CHECK(panel.sign(0, 2) == -1);
    CHECK(panel.cell[0] == 0b100);
    // row 1: x1 = -0.75 -> signs (-1, -1); x2 = 0.9 -> sign 1
    CHECK(panel.cell[1] == 0b011);
    REQUIRE(panel.columns.size() == 3);
    CHECK(panel.columns[0].variable_name == "x1");
    CHECK(panel.columns[0].depth == 1);
    CHECK(panel.columns[1].depth == 2);
    CHECK(panel.columns[2].variable_name == "x2");
}

TEST_CASE("known-range clamping is counted") {
    ExpansionConfig cfg;
    cfg.vars.push_back({"x", VarKind::ContinuousKnownRange, 1, 0.0, 10.0});
    const std::vector<RawColumn> cols{numeric_column("x", {5.0, -3.0, 12.0})};
    const auto fitted = belief::fit_expansion(cols, cfg);
    const auto result = belief::apply_expansion(fitted, cols);
    CHECK(result.clamped == 2);
    CHECK(result.panel.sign(1, 0) == -1);
    CHECK(result.panel.sign(2, 0) == 1);
}

TEST_CASE("test data maps through the training ecdf") {
    ExpansionConfig cfg;
    cfg.vars.push_back({"x", VarKind::ContinuousEcdf, 1});
    const std::vector<RawColumn> train{numeric_column("x", {1.0, 2.0, 3.0, 4.0})};
    const auto fitted = belief::fit_expansion(train, cfg);

    // Training data reproduces build_panel.
    const auto applied = belief::apply_expansion(fitted, train);
    const auto direct = belief::build_panel(train, cfg);
    CHECK(applied.panel.cell == direct.cell);
    CHECK(applied.clamped == 0);

    // New values: below the sample -> midrank 0.5 -> u < 0; above -> u close to 1.
    const std::vector<RawColumn> test{numeric_column("x", {0.5, 2.5, 100.0})};
    const auto panel = belief::apply_expansion(fitted, test).panel;
    CHECK(panel.sign(0, 0) == -1);
    CHECK(panel.sign(1, 0) == -1);  // midrank 2.5 -> u = 0 -> tie rule
    CHECK(panel.sign(2, 0) == 1);
}

TEST_CASE("binary variables map levels to signs") {
    ExpansionConfig cfg;
    VariableSpec spec{"treat", VarKind::Binary, 1};
    spec.positive_level = "drug";
    cfg.vars.push_back(spec);

    const std::vector<RawColumn> cols{{"treat", {"drug", "placebo", "drug"}}};
    const auto fitted = belief::fit_expansion(cols, cfg);
    CHECK(fitted.config.vars[0].negative_level == "placebo");
    const auto panel = belief::apply_expansion(fitted, cols).panel;
    CHECK(panel.sign(0, 0) == 1);
    CHECK(panel.sign(1, 0) == -1);
    CHECK(panel.sign(2, 0) == 1);

    const std::vector<RawColumn> bad{{"treat", {"drug", "placebo", "other"}}};
    CHECK_THROWS_AS(belief::fit_expansion(bad, cfg), belief::DataError);
    CHECK_THROWS_AS(belief::apply_expansion(fitted, bad), belief::DataError);
}

TEST_CASE("numeric parsing rejects junk") {
    ExpansionConfig cfg;
    cfg.vars.push_back({"x", VarKind::ContinuousEcdf, 1});
    const std::vector<RawColumn> cols{{"x", {"1.0", "abc"}}};
    CHECK_THROWS_WITH_AS(belief::build_panel(cols, cfg), doctest::Contains("row 2"),
                         belief::DataError);
}

TEST_CASE("response encoding") {
    const RawColumn col{"y", {"yes", "no", "yes", "no"}};
    std::string negative;
    const auto y = belief::encode_response(col, "yes", &negative);
    CHECK(y == std::vector<int>{1, -1, 1, -1});
    CHECK(negative == "no");

    const RawColumn bad{"y", {"yes", "no", "maybe"}};
    CHECK_THROWS_AS(belief::encode_response(bad, "yes"), belief::DataError);
}

TEST_CASE("bit labels") {
    ExpansionConfig cfg;
    cfg.vars.push_back({"x1", VarKind::ContinuousEcdf, 2});
    cfg.vars.push_back({"x2", VarKind::ContinuousEcdf, 1});
    const auto labels = belief::bit_labels(cfg);
    REQUIRE(labels.size() == 3);
    CHECK(labels[0] == "A_{1,1}");
    CHECK(labels[1] == "A_{1,2}");
    CHECK(labels[2] == "A_{2,1}");
}
