// belief command-line tool. Links the public C API only.
//
// Exit codes: 0 success, 2 usage/config error, 3 data error, 4 degeneracy
// refusal, 1 anything else.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "belief/belief.h"

using nlohmann::json;

namespace {

int exit_code(belief_status status) {
    switch (status) {
        case BELIEF_OK: return 0;
        case BELIEF_ERR_ARG: return 2;
        case BELIEF_ERR_DATA: return 3;
        case BELIEF_ERR_IO: return 3;
        case BELIEF_ERR_DEGENERATE: return 4;
        default: return 1;
    }
}

[[noreturn]] void die(belief_status status) {
    std::cerr << "error: " << belief_last_error() << "\n";
    std::exit(exit_code(status));
}

void check(belief_status status) {
    if (status != BELIEF_OK) die(status);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        std::exit(3);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        std::exit(3);
    }
    out << text;
}

std::string take_string(char* s) {
    std::string out = s ? s : "";
    belief_free_string(s);
    return out;
}

// Shared flags for subcommands that read a CSV with an expansion config.
struct DataOptions {
    std::string input;
    std::string config_path;
    std::string response;
    std::string positive_level;
    std::vector<std::string> depth_pairs;  // "name=depth"

    std::string config_json() const {
        if (!config_path.empty()) return read_file(config_path);
        if (response.empty() || depth_pairs.empty()) {
            std::cerr << "error: either --config or --response plus --depth pairs required\n";
            std::exit(2);
        }
        json variables = json::array();
        for (const auto& pair : depth_pairs) {
            const auto eq = pair.find('=');
            if (eq == std::string::npos || eq == 0) {
                std::cerr << "error: --depth expects name=depth, got '" << pair << "'\n";
                std::exit(2);
            }
            int depth = 0;
            try {
                depth = std::stoi(pair.substr(eq + 1));
            } catch (const std::exception&) {
                std::cerr << "error: bad depth in '" << pair << "'\n";
                std::exit(2);
            }
            variables.push_back({{"name", pair.substr(0, eq)},
                                 {"kind", "continuous-ecdf"},
                                 {"depth", depth}});
        }
        return json{{"response", {{"name", response}, {"positive_level", positive_level}}},
                    {"variables", variables}}
            .dump();
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--input", input, "input CSV path")->required();
        cmd->add_option("--config", config_path, "expansion config JSON path");
        cmd->add_option("--response", response, "response column name");
        cmd->add_option("--positive-level", positive_level, "response level mapped to +1");
        cmd->add_option("--depth", depth_pairs, "per-variable depth as name=depth");
    }
};

belief_dataset* open_dataset(const DataOptions& opts) {
    belief_dataset* dataset = nullptr;
    check(belief_dataset_open_csv(opts.input.c_str(), opts.config_json().c_str(), &dataset));
    return dataset;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"belief: binary expansion linear-effect modeling of a binary response"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(belief_version()));

    DataOptions expand_data, fit_data;
    std::string output, model_path, text_path;
    std::string estimator = "lse";
    double lambda = 1.0;
    double alpha = 0.01;

    auto* expand = app.add_subcommand("expand", "binary-expand a CSV without fitting");
    expand_data.attach(expand);
    expand->add_option("--output", output, "output JSON path (default stdout)");

    auto* fit = app.add_subcommand("fit", "fit a model to a CSV");
    fit_data.attach(fit);
    fit->add_option("--output", output, "model JSON path (default stdout)");
    fit->add_option("--report", text_path, "also write a human-readable report here");
    fit->add_option("--estimator", estimator, "lse, mp, or ridge")
        ->check(CLI::IsMember({"lse", "mp", "ridge"}));
    fit->add_option("--lambda", lambda, "ridge penalty");

    std::string predict_input;
    auto* predict = app.add_subcommand("predict", "score a CSV with a fitted model");
    predict->add_option("--model", model_path, "model JSON path")->required();
    predict->add_option("--input", predict_input, "CSV of predictor columns")->required();
    predict->add_option("--output", output, "predictions JSON path (default stdout)");

    auto* infer = app.add_subcommand("infer", "slope significance and independence report");
    infer->add_option("--model", model_path, "model JSON path")->required();
    infer->add_option("--alpha", alpha, "familywise significance level");
    infer->add_option("--output", output, "JSON report path (default stdout)");
    infer->add_option("--report", text_path, "also write the text report here");

    std::string link = "logit", bit_weights = "dyadic", scale = "expectation";
    std::string request_path;
    double intercept = 0.0;
    std::vector<double> coefficients;
    int glm_depth = 1;
    auto* glm = app.add_subcommand("glm-compare",
                                   "slopes implied by a main-effects GLM (hidden interactions)");
    glm->add_option("--request", request_path, "request JSON path (overrides other flags)");
    glm->add_option("--link", link, "logit, probit, or linear")
        ->check(CLI::IsMember({"logit", "probit", "linear"}));
    glm->add_option("--intercept", intercept, "GLM intercept");
    glm->add_option("--coef", coefficients, "GLM slope per predictor");
    glm->add_option("--glm-depth", glm_depth, "expansion depth per predictor");
    glm->add_option("--bit-weights", bit_weights, "dyadic or unit")
        ->check(CLI::IsMember({"dyadic", "unit"}));
    glm->add_option("--scale", scale, "expectation or probability")
        ->check(CLI::IsMember({"expectation", "probability"}));
    glm->add_option("--output", output, "output JSON path (default stdout)");

    int scenario = 1;
    std::uint64_t seed = 0;
    std::vector<int> sim_depths{1, 2, 3};
    std::int64_t n_train = 8192, n_test = 4096;
    auto* simulate = app.add_subcommand("simulate", "compare against a logistic baseline");
    simulate->add_option("--scenario", scenario, "scenario id (1, 2, or 3)")->required();
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_option("--depths", sim_depths, "expansion depths to fit");
    simulate->add_option("--n-train", n_train, "training sample size");
    simulate->add_option("--n-test", n_test, "test sample size");
    simulate->add_option("--output", output, "output JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (expand->parsed()) {
        belief_dataset* dataset = open_dataset(expand_data);
        char* out = nullptr;
        const auto status = belief_dataset_expand(dataset, &out);
        belief_dataset_close(dataset);
        check(status);
        write_output(output, take_string(out));
        return 0;
    }

    if (fit->parsed()) {
        belief_dataset* dataset = open_dataset(fit_data);
        belief_model* model = nullptr;
        const auto status = belief_fit(dataset, estimator.c_str(), lambda, &model);
        belief_dataset_close(dataset);
        check(status);
        char* model_json = nullptr;
        check(belief_model_to_json(model, &model_json));
        write_output(output, take_string(model_json));
        char* report = nullptr;
        check(belief_model_report(model, &report));
        const std::string report_text = take_string(report);
        if (!text_path.empty()) {
            write_output(text_path, report_text);
        } else if (!output.empty() && output != "-") {
            std::cout << report_text;
        }
        belief_model_close(model);
        return 0;
    }

    if (predict->parsed()) {
        belief_model* model = nullptr;
        check(belief_model_open_json(read_file(model_path).c_str(), &model));
        char* out = nullptr;
        const auto status = belief_predict_csv(model, predict_input.c_str(), &out);
        belief_model_close(model);
        check(status);
        write_output(output, take_string(out));
        return 0;
    }

    if (infer->parsed()) {
        belief_model* model = nullptr;
        check(belief_model_open_json(read_file(model_path).c_str(), &model));
        char* json_out = nullptr;
        char* text_out = nullptr;
        const auto status = belief_infer(model, alpha, &json_out, &text_out);
        belief_model_close(model);
        check(status);
        write_output(output, take_string(json_out));
        const std::string report_text = take_string(text_out);
        if (!text_path.empty()) {
            write_output(text_path, report_text);
        } else if (!output.empty() && output != "-") {
            std::cout << report_text;
        }
        return 0;
    }

    if (glm->parsed()) {
        std::string request;
        if (!request_path.empty()) {
            request = read_file(request_path);
        } else {
            request = json{{"link", link},
                           {"intercept", intercept},
                           {"coefficients", coefficients},
                           {"depth", glm_depth},
                           {"bit_weights", bit_weights},
                           {"scale", scale}}
                          .dump();
        }
        char* out = nullptr;
        check(belief_glm_report(request.c_str(), &out));
        write_output(output, take_string(out));
        return 0;
    }

    if (simulate->parsed()) {
        const std::string request = json{{"scenario", scenario},
                                         {"seed", seed},
                                         {"depths", sim_depths},
                                         {"n_train", n_train},
                                         {"n_test", n_test}}
                                        .dump();
        char* out = nullptr;
        check(belief_simulate(request.c_str(), &out));
        write_output(output, take_string(out));
        return 0;
    }

    return 2;
}
