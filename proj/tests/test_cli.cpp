// End-to-end tests that spawn the installed CLI binary.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef BELIEF_CLI_PATH
#error "BELIEF_CLI_PATH must be defined"
#endif

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "belief_cli_tests";

int run(const std::string& args, const fs::path& stdout_path = {}) {
    std::string cmd = std::string(BELIEF_CLI_PATH) + " " + args;
    if (!stdout_path.empty()) cmd += " > " + stdout_path.string();
    cmd += " 2> " + (kDir / "stderr.txt").string();
    const int raw = std::system(cmd.c_str());
    REQUIRE(raw != -1);
    return WEXITSTATUS(raw);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

fs::path fixture_csv() {
    const auto path = kDir / "worked.csv";
    std::ostringstream out;
    out << "x1,x2,y\n";
    const double x1[] = {0.5, -0.5, 0.5, -0.5};
    const double x2[] = {0.5, 0.5, -0.5, -0.5};
    const int yes_count[] = {4, 3, 1, 0};
    for (int cell = 0; cell < 4; ++cell) {
        for (int i = 0; i < 4; ++i) {
            out << x1[cell] << "," << x2[cell] << "," << (i < yes_count[cell] ? "yes" : "no")
                << "\n";
        }
    }
    write(path, out.str());
    return path;
}

const char* kConfig = R"({
  "response": {"name": "y", "positive_level": "yes"},
  "variables": [
    {"name": "x1", "kind": "continuous-known-range", "depth": 1, "lo": -1, "hi": 1},
    {"name": "x2", "kind": "continuous-known-range", "depth": 1, "lo": -1, "hi": 1}
  ]
})";

struct Setup {
    Setup() { fs::create_directories(kDir); }
};
const Setup setup;

}  // namespace

TEST_CASE("fit writes the worked-example model") {
    const auto csv = fixture_csv();
    const auto cfg = kDir / "config.json";
    write(cfg, kConfig);
    const auto model = kDir / "model.json";
    const auto report = kDir / "report.txt";
    const int rc = run("fit --input " + csv.string() + " --config " + cfg.string() +
                       " --estimator lse --output " + model.string() + " --report " +
                       report.string());
    CHECK(rc == 0);
    const json j = json::parse(slurp(model));
    const auto beta = j.at("beta").get<std::vector<double>>();
    CHECK(beta[0] == doctest::Approx(0.0));
    CHECK(beta[1] == doctest::Approx(0.25));
    CHECK(beta[2] == doctest::Approx(0.75));
    CHECK(beta[3] == doctest::Approx(0.0));
    CHECK(slurp(report).find("slope") != std::string::npos);
}

TEST_CASE("fit via depth flags and ecdf expansion") {
    const auto csv = fixture_csv();
    const auto model = kDir / "model_ecdf.json";
    const int rc = run("fit --input " + csv.string() +
                       " --response y --positive-level yes --depth x1=1 --depth x2=1 "
                       "--estimator mp --output " +
                       model.string());
    CHECK(rc == 0);
    const json j = json::parse(slurp(model));
    CHECK(j.at("P") == 2);
    CHECK(j.at("transform").at("variables")[0].at("kind") == "continuous-ecdf");
}

TEST_CASE("separated fixture reports perfect separation") {
    const auto csv = kDir / "separated.csv";
    std::ostringstream rows;
    rows << "x1,y\n";
    for (int i = 0; i < 10; ++i) rows << "0.5,yes\n-0.5,no\n";
    write(csv, rows.str());
    const auto model = kDir / "model_sep.json";
    const auto report = kDir / "report_sep.txt";
    const int rc = run("fit --input " + csv.string() +
                       " --response y --positive-level yes --depth x1=1 --output " +
                       model.string() + " --report " + report.string());
    CHECK(rc == 0);
    const auto text = slurp(report);
    CHECK(text.find("perfect separation") != std::string::npos);
    CHECK(text.find("indicator event") != std::string::npos);
}

TEST_CASE("missing response column is a usage error") {
    const auto csv = fixture_csv();
    const int rc = run("fit --input " + csv.string() +
                       " --response nope --positive-level yes --depth x1=1");
    CHECK(rc == 2);
}

TEST_CASE("missing input file is a data error") {
    const int rc = run("fit --input " + (kDir / "no_such.csv").string() +
                       " --response y --positive-level yes --depth x1=1");
    CHECK(rc == 3);
}

TEST_CASE("unknown flag is a usage error") {
    CHECK(run("fit --frobnicate") == 2);
    CHECK(run("") == 2);
}

TEST_CASE("predict and infer consume a saved model") {
    const auto csv = fixture_csv();
    const auto cfg = kDir / "config.json";
    write(cfg, kConfig);
    const auto model = kDir / "model2.json";
    REQUIRE(run("fit --input " + csv.string() + " --config " + cfg.string() +
                " --estimator lse --output " + model.string()) == 0);

    const auto pred = kDir / "pred.json";
    CHECK(run("predict --model " + model.string() + " --input " + csv.string() +
              " --output " + pred.string()) == 0);
    const json pj = json::parse(slurp(pred));
    CHECK(pj.at("rows") == 16);
    CHECK(pj.at("prob_plus")[0].get<double>() == doctest::Approx(1.0));

    const auto inf = kDir / "infer.json";
    CHECK(run("infer --model " + model.string() + " --alpha 0.01 --output " + inf.string()) ==
          0);
    const json ij = json::parse(slurp(inf));
    CHECK(ij.at("alpha") == doctest::Approx(0.01));
    CHECK(ij.at("tests").size() == 4);
}

TEST_CASE("glm-compare emits the worked interaction value") {
    const auto out = kDir / "glm.json";
    CHECK(run("glm-compare --link logit --intercept 5 --coef 3 --coef 3 --glm-depth 1 "
              "--output " +
              out.string()) == 0);
    const json j = json::parse(slurp(out));
    CHECK(j.at("beta")[3].get<double>() == doctest::Approx(-0.053076).epsilon(1e-4));
}

TEST_CASE("simulate is deterministic and validates the scenario") {
    const auto a = kDir / "sim_a.json";
    const auto b = kDir / "sim_b.json";
    const std::string common = "simulate --scenario 1 --seed 7 --depths 1 2 "
                               "--n-train 512 --n-test 256 --output ";
    CHECK(run(common + a.string()) == 0);
    CHECK(run(common + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    const json j = json::parse(slurp(a));
    CHECK(j.at("logistic").at("auc").get<double>() > 0.5);

    CHECK(run("simulate --scenario 9 --seed 1") == 2);
}

TEST_CASE("degenerate lse refusal uses its own exit code") {
    const auto csv = kDir / "sparse.csv";
    write(csv, "x1,x2,y\n0.5,0.5,yes\n0.5,0.5,no\n-0.5,0.5,yes\n-0.5,0.5,no\n");
    const auto cfg = kDir / "config.json";
    write(cfg, kConfig);
    const int rc = run("fit --input " + csv.string() + " --config " + cfg.string() +
                       " --estimator lse");
    CHECK(rc == 4);
}
