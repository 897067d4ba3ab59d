#include "model_io.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace belief {

namespace {

VarKind kind_from_string(const std::string& s) {
    if (s == "continuous-ecdf") return VarKind::ContinuousEcdf;
    if (s == "continuous-known-range") return VarKind::ContinuousKnownRange;
    if (s == "binary") return VarKind::Binary;
    throw ConfigError("unknown variable kind '" + s + "'");
}

std::string kind_to_string(VarKind k) {
    switch (k) {
        case VarKind::ContinuousEcdf: return "continuous-ecdf";
        case VarKind::ContinuousKnownRange: return "continuous-known-range";
        case VarKind::Binary: return "binary";
    }
    return "?";
}

}  // namespace

ExpansionConfig expansion_config_from_json(const nlohmann::json& j) {
    ExpansionConfig cfg;
    if (!j.contains("variables") || !j["variables"].is_array()) {
        throw ConfigError("config: missing 'variables' array");
    }
    for (const auto& v : j["variables"]) {
        VariableSpec spec;
        spec.name = v.at("name").get<std::string>();
        spec.kind = kind_from_string(v.value("kind", std::string("continuous-ecdf")));
        spec.depth = v.value("depth", 1);
        spec.lo = v.value("lo", -1.0);
        spec.hi = v.value("hi", 1.0);
        spec.positive_level = v.value("positive_level", std::string());
        spec.negative_level = v.value("negative_level", std::string());
        cfg.vars.push_back(std::move(spec));
    }
    cfg.validate();
    return cfg;
}

std::string response_name_from_json(const nlohmann::json& j) {
    return j.at("response").at("name").get<std::string>();
}

std::string response_positive_level_from_json(const nlohmann::json& j) {
    return j.at("response").at("positive_level").get<std::string>();
}

nlohmann::json model_to_json(const Model& model) {
    const auto bits = bit_labels(model.expansion.config);
    nlohmann::json labels = nlohmann::json::array();
    for (std::size_t m = 0; m < model.fit.beta.size(); ++m) {
        labels.push_back(mask_label(static_cast<Mask>(m), bits));
    }
    nlohmann::json variables = nlohmann::json::array();
    for (std::size_t v = 0; v < model.expansion.config.vars.size(); ++v) {
        const auto& spec = model.expansion.config.vars[v];
        nlohmann::json jv{{"name", spec.name},
                          {"kind", kind_to_string(spec.kind)},
                          {"depth", spec.depth}};
        switch (spec.kind) {
            case VarKind::ContinuousEcdf:
                jv["sorted_train"] = model.expansion.sorted_train[v];
                break;
            case VarKind::ContinuousKnownRange:
                jv["lo"] = spec.lo;
                jv["hi"] = spec.hi;
                break;
            case VarKind::Binary:
                jv["positive_level"] = spec.positive_level;
                jv["negative_level"] = spec.negative_level;
                break;
        }
        variables.push_back(std::move(jv));
    }
    return nlohmann::json{
        {"P", model.fit.P},
        {"labels", labels},
        {"estimator_kind", to_string(model.fit.kind)},
        {"lambda", model.fit.lambda},
        {"beta", model.fit.beta},
        {"empty_cells", model.fit.empty_cells},
        {"n", model.table.n()},
        {"counts", model.table.counts},
        {"sums", model.table.sums},
        {"transform",
         {{"response",
           {{"name", model.response_name},
            {"positive_level", model.positive_level},
            {"negative_level", model.negative_level}}},
          {"variables", variables}}},
    };
}

Model model_from_json(const nlohmann::json& j) {
    Model model;
    model.fit.P = j.at("P").get<int>();
    model.fit.kind = estimator_kind_from_string(j.at("estimator_kind").get<std::string>());
    model.fit.lambda = j.value("lambda", 0.0);
    model.fit.beta = j.at("beta").get<std::vector<double>>();
    model.fit.empty_cells = j.value("empty_cells", std::vector<std::uint32_t>{});
    if (model.fit.beta.size() != std::size_t{1} << model.fit.P) {
        throw DataError("model: beta length does not match P");
    }
    model.table.P = model.fit.P;
    model.table.counts = j.at("counts").get<std::vector<double>>();
    if (model.table.counts.size() != model.fit.beta.size()) {
        throw DataError("model: counts length does not match P");
    }
    if (j.contains("sums")) {
        model.table.sums = j["sums"].get<std::vector<double>>();
    } else {
        // Reconstruct from fitted expectations; exact for lse/mp fits.
        const auto fitted = model.fit.cell_expectations();
        model.table.sums.resize(model.table.counts.size());
        for (std::size_t t = 0; t < model.table.sums.size(); ++t) {
            model.table.sums[t] = fitted[t] * model.table.counts[t];
        }
    }

    const auto& transform = j.at("transform");
    model.response_name = transform.at("response").at("name").get<std::string>();
    model.positive_level = transform.at("response").at("positive_level").get<std::string>();
    model.negative_level = transform.at("response").value("negative_level", std::string());
    for (const auto& jv : transform.at("variables")) {
        VariableSpec spec;
        spec.name = jv.at("name").get<std::string>();
        spec.kind = kind_from_string(jv.at("kind").get<std::string>());
        spec.depth = jv.at("depth").get<int>();
        std::vector<double> sorted;
        switch (spec.kind) {
            case VarKind::ContinuousEcdf:
                sorted = jv.at("sorted_train").get<std::vector<double>>();
                break;
            case VarKind::ContinuousKnownRange:
                spec.lo = jv.at("lo").get<double>();
                spec.hi = jv.at("hi").get<double>();
                break;
            case VarKind::Binary:
                spec.positive_level = jv.at("positive_level").get<std::string>();
                spec.negative_level = jv.value("negative_level", std::string());
                break;
        }
        model.expansion.config.vars.push_back(std::move(spec));
        model.expansion.sorted_train.push_back(std::move(sorted));
    }
    if (model.expansion.config.total_bits() != model.fit.P) {
        throw DataError("model: transform depths do not match P");
    }
    return model;
}

std::vector<std::string> model_bit_labels(const Model& model) {
    return bit_labels(model.expansion.config);
}

std::string fit_report_text(const Model& model) {
    const auto bits = bit_labels(model.expansion.config);
    const auto bounds = check_bounds(model.fit, model.table);
    const auto separation = detect_separation(model.fit);
    const auto degeneracy = classify_degeneracy(model.table);

    std::ostringstream out;
    out << "BELIEF fit (" << to_string(model.fit.kind) << ", P = " << model.fit.P
        << ", n = " << model.table.n() << ")\n";
    if (model.fit.kind == EstimatorKind::Ridge) out << "lambda = " << model.fit.lambda << "\n";
    out << "\n  mask  interaction          slope\n";
    for (std::size_t m = 0; m < model.fit.beta.size(); ++m) {
        char line[96];
        std::snprintf(line, sizeof line, "  %4zu  %-18s %+.6f\n", m,
                      mask_label(static_cast<Mask>(m), bits).c_str(), model.fit.beta[m]);
        out << line;
    }
    out << "\nbounds: cell-inf slack " << bounds.slack_cell_inf << ", design-inf slack "
        << bounds.slack_design_inf << ", l2 slack " << bounds.slack_l2 << "\n";
    out << "degeneracy case " << degeneracy.degeneracy_case;
    if (!degeneracy.note.empty()) out << " (" << degeneracy.note << ")";
    out << "\n";
    if (!degeneracy.empty_cells.empty()) {
        out << "empty cells:";
        for (auto t : degeneracy.empty_cells) out << " " << t;
        out << " (predicted probability 1/2)\n";
    }
    if (separation.separated) {
        out << "perfect separation: the response is a deterministic function of the bits\n";
        out << "indicator event (cells predicting +1):";
        for (auto t : separation.event_cells) out << " " << t;
        out << "\n";
    }
    return out.str();
}

}  // namespace belief
