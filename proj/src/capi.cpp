#include "belief/belief.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include <json.hpp>

#include "csv.hpp"
#include "errors.hpp"
#include "estimator.hpp"
#include "expansion.hpp"
#include "glm_bridge.hpp"
#include "inference.hpp"
#include "model_io.hpp"
#include "simharness.hpp"

using nlohmann::json;

struct belief_dataset {
    belief::CsvTable csv;
    belief::ExpansionConfig config;
    std::string response_name;
    std::string positive_level;
};

struct belief_model {
    belief::Model model;
};

namespace {

thread_local std::string g_last_error = "no error";

belief_status fail(belief_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
belief_status guard(Fn&& fn) {
    try {
        return fn();
    } catch (const belief::ConfigError& e) {
        return fail(BELIEF_ERR_ARG, e.what());
    } catch (const belief::DataError& e) {
        return fail(BELIEF_ERR_DATA, e.what());
    } catch (const belief::DegeneracyError& e) {
        return fail(BELIEF_ERR_DEGENERATE, e.what());
    } catch (const json::exception& e) {
        return fail(BELIEF_ERR_ARG, std::string("json: ") + e.what());
    } catch (const std::exception& e) {
        return fail(BELIEF_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<belief::RawColumn> predictor_columns(const belief::CsvTable& csv,
                                                 const belief::ExpansionConfig& config) {
    std::vector<belief::RawColumn> cols;
    for (const auto& var : config.vars) cols.push_back(csv.raw_column(var.name));
    return cols;
}

json roc_to_json(const belief::RocCurve& curve) {
    json points = json::array();
    for (const auto& [fpr, tpr] : curve.points) points.push_back({fpr, tpr});
    return {{"auc", curve.auc}, {"points", points}};
}

}  // namespace

extern "C" {

const char* belief_version(void) { return "0.1.0"; }

const char* belief_last_error(void) { return g_last_error.c_str(); }

void belief_free_string(char* s) { std::free(s); }

belief_status belief_dataset_open_csv(const char* csv_path, const char* config_json,
                                      belief_dataset** out) {
    if (!csv_path || !config_json || !out) return fail(BELIEF_ERR_ARG, "null argument");
    return guard([&] {
        auto dataset = std::make_unique<belief_dataset>();
        const json cfg = json::parse(config_json);
        dataset->config = belief::expansion_config_from_json(cfg);
        dataset->response_name = belief::response_name_from_json(cfg);
        dataset->positive_level = belief::response_positive_level_from_json(cfg);
        try {
            dataset->csv = belief::read_csv(csv_path);
        } catch (const belief::DataError& e) {
            if (std::string(e.what()).find("cannot open") != std::string::npos) {
                return fail(BELIEF_ERR_IO, e.what());
            }
            throw;
        }
        // Validate referenced columns exist up front; a config naming a
        // column the file lacks is a configuration error, not a data error.
        try {
            dataset->csv.column(dataset->response_name);
            for (const auto& var : dataset->config.vars) dataset->csv.column(var.name);
        } catch (const belief::DataError& e) {
            return fail(BELIEF_ERR_ARG, e.what());
        }
        *out = dataset.release();
        return BELIEF_OK;
    });
}

void belief_dataset_close(belief_dataset* dataset) { delete dataset; }

int64_t belief_dataset_rows(const belief_dataset* dataset) {
    return dataset ? dataset->csv.rows() : 0;
}

belief_status belief_dataset_expand(const belief_dataset* dataset, char** json_out) {
    if (!dataset || !json_out) return fail(BELIEF_ERR_ARG, "null argument");
    return guard([&] {
        const auto cols = predictor_columns(dataset->csv, dataset->config);
        const auto panel = belief::build_panel(cols, dataset->config);
        json cell = json::array();
        json signs = json::array();
        for (std::int64_t i = 0; i < panel.n; ++i) {
            cell.push_back(panel.cell[i]);
            json row = json::array();
            for (int k = 0; k < panel.P; ++k) row.push_back(panel.sign(i, k));
            signs.push_back(std::move(row));
        }
        const json result{{"rows", panel.n},
                          {"P", panel.P},
                          {"labels", belief::bit_labels(dataset->config)},
                          {"cell", cell},
                          {"signs", signs}};
        *json_out = dup_string(result.dump(2));
        return BELIEF_OK;
    });
}

belief_status belief_fit(const belief_dataset* dataset, const char* estimator_kind,
                         double lambda, belief_model** out) {
    if (!dataset || !estimator_kind || !out) return fail(BELIEF_ERR_ARG, "null argument");
    return guard([&] {
        const auto kind = belief::estimator_kind_from_string(estimator_kind);
        auto handle = std::make_unique<belief_model>();
        auto& model = handle->model;

        const auto cols = predictor_columns(dataset->csv, dataset->config);
        model.expansion = belief::fit_expansion(cols, dataset->config);
        const auto panel = belief::apply_expansion(model.expansion, cols).panel;
        model.response_name = dataset->response_name;
        model.positive_level = dataset->positive_level;
        const auto response =
            belief::encode_response(dataset->csv.raw_column(dataset->response_name),
                                    dataset->positive_level, &model.negative_level);
        model.table = belief::aggregate(panel, response);
        switch (kind) {
            case belief::EstimatorKind::Lse:
                model.fit = belief::fit_lse(model.table);
                break;
            case belief::EstimatorKind::MoorePenrose:
                model.fit = belief::fit_mp(model.table);
                break;
            case belief::EstimatorKind::Ridge:
                model.fit = belief::fit_ridge(model.table, lambda);
                break;
        }
        *out = handle.release();
        return BELIEF_OK;
    });
}

void belief_model_close(belief_model* model) { delete model; }

int belief_model_num_bits(const belief_model* model) { return model ? model->model.fit.P : 0; }

belief_status belief_model_to_json(const belief_model* model, char** json_out) {
    if (!model || !json_out) return fail(BELIEF_ERR_ARG, "null argument");
    return guard([&] {
        *json_out = dup_string(belief::model_to_json(model->model).dump(2));
        return BELIEF_OK;
    });
}

belief_status belief_model_open_json(const char* json_text, belief_model** out) {
    if (!json_text || !out) return fail(BELIEF_ERR_ARG, "null argument");
    return guard([&] {
        auto handle = std::make_unique<belief_model>();
        handle->model = belief::model_from_json(json::parse(json_text));
        *out = handle.release();
        return BELIEF_OK;
    });
}

belief_status belief_model_report(const belief_model* model, char** text_out) {
    if (!model || !text_out) return fail(BELIEF_ERR_ARG, "null argument");
    return guard([&] {
        *text_out = dup_string(belief::fit_report_text(model->model));
        return BELIEF_OK;
    });
}

belief_status belief_predict_cell(const belief_model* model, uint32_t cell,
                                  double* expectation, double* prob_plus) {
    if (!model || !expectation || !prob_plus) return fail(BELIEF_ERR_ARG, "null argument");
    return guard([&] {
        const auto pred = belief::predict(model->model.fit, cell);
        *expectation = pred.expectation;
        *prob_plus = pred.prob_plus;
        return BELIEF_OK;
    });
}

belief_status belief_predict_csv(const belief_model* model, const char* csv_path,
                                 char** json_out) {
    if (!model || !csv_path || !json_out) return fail(BELIEF_ERR_ARG, "null argument");
    return guard([&] {
        belief::CsvTable csv;
        try {
            csv = belief::read_csv(csv_path);
        } catch (const belief::DataError& e) {
            if (std::string(e.what()).find("cannot open") != std::string::npos) {
                return fail(BELIEF_ERR_IO, e.what());
            }
            throw;
        }
        const auto cols = predictor_columns(csv, model->model.expansion.config);
        const auto panel = belief::apply_expansion(model->model.expansion, cols).panel;
        const auto expectations = model->model.fit.cell_expectations();
        json expectation = json::array();
        json prob = json::array();
        for (std::int64_t i = 0; i < panel.n; ++i) {
            const double e = expectations[panel.cell[i]];
            expectation.push_back(e);
            prob.push_back((1.0 + e) / 2.0);
        }
        const json result{{"rows", panel.n}, {"expectation", expectation}, {"prob_plus", prob}};
        *json_out = dup_string(result.dump(2));
        return BELIEF_OK;
    });
}

belief_status belief_infer(const belief_model* model, double alpha, char** json_out,
                           char** text_out) {
    if (!model || !json_out) return fail(BELIEF_ERR_ARG, "null argument");
    return guard([&] {
        const auto& m = model->model;
        const auto bits = belief::model_bit_labels(m);
        const auto degeneracy = belief::classify_degeneracy(m.table);

        json result{{"alpha", alpha}, {"degeneracy_case", degeneracy.degeneracy_case}};
        std::string text;
        if (degeneracy.degeneracy_case >= 3) {
            result["note"] =
                "empty cells present (degeneracy case 3; case 4 is indistinguishable from "
                "data alone): slope tests are unavailable, empty cells predict probability 1/2";
            result["empty_cells"] = degeneracy.empty_cells;
            text = "partial report: " + result["note"].get<std::string>() + "\n";
        } else {
            const auto slopes = belief::significant_slopes(m.fit, m.table, alpha, bits);
            result["adjusted_alpha"] = slopes.adjusted_alpha;
            result["per_slope_se"] = slopes.per_slope_se;
            json tests = json::array();
            std::vector<belief::Mask> significant;
            for (const auto& t : slopes.tests) {
                tests.push_back({{"mask", t.mask},
                                 {"label", t.label},
                                 {"estimate", t.estimate},
                                 {"se", t.se},
                                 {"z", t.z},
                                 {"ci", {t.ci_lo, t.ci_hi}},
                                 {"significant", t.significant},
                                 {"testable", t.testable}});
                if (t.significant) significant.push_back(t.mask);
            }
            result["tests"] = tests;
            const auto statement =
                belief::independence_report(significant, m.fit.P, bits);
            result["independence"] = {{"generators", statement.generators},
                                      {"generator_labels", statement.generator_labels},
                                      {"k", statement.k},
                                      {"order", statement.subgroup.order()},
                                      {"statement", statement.text}};
            if (degeneracy.degeneracy_case == 2) {
                result["note"] = "deterministic cells present; degenerate-variance cells excluded";
                result["separated_cells"] = degeneracy.separated_cells;
            }

            std::ostringstream out;
            out << "slope tests at alpha = " << alpha << " (Bonferroni over "
                << slopes.tests.size() << " slopes, adjusted " << slopes.adjusted_alpha << ")\n";
            out << "  mask  interaction          slope      z        CI\n";
            for (const auto& t : slopes.tests) {
                char line[160];
                std::snprintf(line, sizeof line, "  %4u  %-18s %+.4f  %+7.2f  (%+.4f, %+.4f)%s\n",
                              t.mask, t.label.c_str(), t.estimate, t.z, t.ci_lo, t.ci_hi,
                              t.significant ? "  *" : "");
                out << line;
            }
            out << "\n" << statement.text << "\n";
            text = out.str();
        }
        *json_out = dup_string(result.dump(2));
        if (text_out) *text_out = dup_string(text);
        return BELIEF_OK;
    });
}

belief_status belief_glm_report(const char* request_json, char** json_out) {
    if (!request_json || !json_out) return fail(BELIEF_ERR_ARG, "null argument");
    return guard([&] {
        const json req = json::parse(request_json);
        const std::string link_name = req.value("link", std::string("logit"));
        belief::Link link;
        if (link_name == "logit") {
            link = belief::Link::logit();
        } else if (link_name == "probit") {
            link = belief::Link::probit();
        } else if (link_name == "linear") {
            link = belief::Link::linear(req.value("slope", 0.25));
        } else {
            throw belief::ConfigError("unknown link '" + link_name + "'");
        }
        const double intercept = req.at("intercept").get<double>();
        const auto coefficients = req.at("coefficients").get<std::vector<double>>();
        const int depth = req.value("depth", 1);
        const auto weights = req.value("bit_weights", std::string("dyadic")) == "unit"
                                 ? belief::BitWeights::Unit
                                 : belief::BitWeights::Dyadic;
        const std::string scale = req.value("scale", std::string("expectation"));
        if (scale != "expectation" && scale != "probability") {
            throw belief::ConfigError("scale must be 'expectation' or 'probability'");
        }
        const auto report =
            belief::hidden_interaction_report(intercept, coefficients, link, depth, weights);

        const bool prob = scale == "probability";
        json beta = json::array();
        json masks = json::array();
        for (std::size_t m = 0; m < report.beta.size(); ++m) {
            masks.push_back(m);
            double value = report.beta[m];
            if (prob) value = m == 0 ? (value + 1.0) / 2.0 : value / 2.0;
            beta.push_back(value);
        }
        json cross = json::array();
        for (const auto& e : report.cross_interactions) {
            cross.push_back({{"mask", e.mask},
                             {"label", e.label},
                             {"beta", prob ? e.beta_probability : e.beta_expectation},
                             {"beta_expectation", e.beta_expectation},
                             {"beta_probability", e.beta_probability}});
        }
        const json result{{"scale", scale},         {"link", link_name},
                          {"bit_weights", weights == belief::BitWeights::Unit ? "unit" : "dyadic"},
                          {"P", report.P},          {"masks", masks},
                          {"labels", report.labels}, {"beta", beta},
                          {"gamma", report.gamma},  {"cross_interactions", cross}};
        *json_out = dup_string(result.dump(2));
        return BELIEF_OK;
    });
}

belief_status belief_simulate(const char* request_json, char** json_out) {
    if (!request_json || !json_out) return fail(BELIEF_ERR_ARG, "null argument");
    return guard([&] {
        const json req = json::parse(request_json);
        const int scenario = req.at("scenario").get<int>();
        const std::uint64_t seed = req.value("seed", std::uint64_t{0});
        const auto depths = req.value("depths", std::vector<int>{1, 2, 3});
        const std::int64_t n_train = req.value("n_train", std::int64_t{8192});
        const std::int64_t n_test = req.value("n_test", std::int64_t{4096});
        const auto comparison =
            belief::run_comparison(scenario, depths, n_train, n_test, seed);

        json result{{"scenario", scenario},
                    {"seed", seed},
                    {"n_train", n_train},
                    {"n_test", n_test},
                    {"logistic", roc_to_json(comparison.logistic_roc)},
                    {"logistic_converged", comparison.logistic_converged}};
        json belief_entries = json::array();
        for (std::size_t i = 0; i < comparison.depths.size(); ++i) {
            auto entry = roc_to_json(comparison.belief_roc[i]);
            entry["depth"] = comparison.depths[i];
            belief_entries.push_back(std::move(entry));
        }
        result["belief"] = belief_entries;
        *json_out = dup_string(result.dump(2));
        return BELIEF_OK;
    });
}

}  // extern "C"
