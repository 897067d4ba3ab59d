#include "expansion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "errors.hpp"

namespace belief {

int ExpansionConfig::total_bits() const {
    int p = 0;
    for (const auto& v : vars) p += v.depth;
    return p;
}

void ExpansionConfig::validate() const {
    if (vars.empty()) throw ConfigError("expansion config has no variables");
    for (const auto& v : vars) {
        if (v.name.empty()) throw ConfigError("variable with empty name");
        if (v.depth < 1) {
            throw ConfigError("variable '" + v.name + "': depth must be >= 1");
        }
        if (v.kind == VarKind::Binary && v.depth != 1) {
            throw ConfigError("binary variable '" + v.name + "' must have depth 1");
        }
        if (v.kind == VarKind::Binary && v.positive_level.empty()) {
            throw ConfigError("binary variable '" + v.name + "' needs a positive level");
        }
        if (v.kind == VarKind::ContinuousKnownRange && !(v.lo < v.hi)) {
            throw ConfigError("variable '" + v.name + "': lo must be < hi");
        }
    }
    if (total_bits() > kMaxTotalBits) {
        throw ConfigError("total bits " + std::to_string(total_bits()) + " exceeds cap " +
                          std::to_string(kMaxTotalBits));
    }
}

std::vector<double> ecdf_rescale(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n == 0) throw DataError("ecdf_rescale: empty input");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i])) {
            throw DataError("ecdf_rescale: non-finite value at index " + std::to_string(i));
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    std::vector<double> u(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        // Midrank over the tie block [i, j], ranks are 1-based.
        const double midrank = static_cast<double>(i + j + 2) / 2.0;
        const double v = (2.0 * midrank - static_cast<double>(n) - 1.0) / static_cast<double>(n);
        for (std::size_t k = i; k <= j; ++k) u[order[k]] = v;
        i = j + 1;
    }
    return u;
}

void binary_expand(double u, int depth, std::span<int> out_signs) {
    if (!(std::abs(u) <= 1.0)) {
        throw std::domain_error("binary_expand: |u| must be <= 1");
    }
    double r = u;
    double step = 0.5;
    for (int d = 0; d < depth; ++d) {
        const int s = r > 0.0 ? 1 : -1;
        out_signs[d] = s;
        r -= s * step;
        step *= 0.5;
    }
}

std::uint32_t binary_expand_bits(double u, int depth) {
    if (!(std::abs(u) <= 1.0)) {
        throw std::domain_error("binary_expand: |u| must be <= 1");
    }
    std::uint32_t bits = 0;
    double r = u;
    double step = 0.5;
    for (int d = 0; d < depth; ++d) {
        if (r > 0.0) {
            r -= step;
        } else {
            bits |= std::uint32_t{1} << d;
            r += step;
        }
        step *= 0.5;
    }
    return bits;
}

namespace {

double parse_number(const std::string& s, const std::string& var, std::size_t row) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (s.empty() || end == begin || (end && *end != '\0') || !std::isfinite(v)) {
        throw DataError("variable '" + var + "', row " + std::to_string(row + 1) +
                        ": not a finite number: '" + s + "'");
    }
    return v;
}

std::vector<double> parse_column(const RawColumn& col) {
    std::vector<double> out(col.values.size());
    for (std::size_t i = 0; i < col.values.size(); ++i) {
        out[i] = parse_number(col.values[i], col.name, i);
    }
    return out;
}

// Midrank of x against a sorted reference sample.
double midrank_in(const std::vector<double>& sorted, double x) {
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), x);
    const auto hi = std::upper_bound(sorted.begin(), sorted.end(), x);
    const double less = static_cast<double>(lo - sorted.begin());
    const double equal = static_cast<double>(hi - lo);
    return less + (equal + 1.0) / 2.0;
}

}  // namespace

FittedExpansion fit_expansion(std::span<const RawColumn> cols, ExpansionConfig cfg) {
    cfg.validate();
    if (cols.size() != cfg.vars.size()) {
        throw ConfigError("column count " + std::to_string(cols.size()) +
                          " does not match config (" + std::to_string(cfg.vars.size()) + ")");
    }
    const std::size_t n = cols.empty() ? 0 : cols[0].values.size();
    if (n == 0) throw DataError("empty data");

    FittedExpansion fitted;
    fitted.sorted_train.resize(cfg.vars.size());
    for (std::size_t v = 0; v < cfg.vars.size(); ++v) {
        auto& spec = cfg.vars[v];
        const auto& col = cols[v];
        if (col.name != spec.name) {
            throw ConfigError("column '" + col.name + "' does not match variable '" + spec.name + "'");
        }
        if (col.values.size() != n) throw DataError("ragged columns");
        switch (spec.kind) {
            case VarKind::ContinuousEcdf: {
                auto sorted = parse_column(col);
                std::sort(sorted.begin(), sorted.end());
                fitted.sorted_train[v] = std::move(sorted);
                break;
            }
            case VarKind::ContinuousKnownRange:
                parse_column(col);  // validation only
                break;
            case VarKind::Binary: {
                std::string negative = spec.negative_level;
                bool saw_positive = false;
                for (std::size_t i = 0; i < n; ++i) {
                    const auto& s = col.values[i];
                    if (s == spec.positive_level) {
                        saw_positive = true;
                    } else if (negative.empty()) {
                        negative = s;
                    } else if (s != negative) {
                        throw DataError("binary variable '" + spec.name +
                                        "' has more than two levels ('" + spec.positive_level +
                                        "', '" + negative + "', '" + s + "')");
                    }
                }
                (void)saw_positive;
                spec.negative_level = negative;
                break;
            }
        }
    }
    fitted.config = std::move(cfg);
    return fitted;
}

ApplyResult apply_expansion(const FittedExpansion& fitted, std::span<const RawColumn> cols) {
    const auto& cfg = fitted.config;
    if (cols.size() != cfg.vars.size()) {
        throw ConfigError("column count does not match fitted expansion");
    }
    const std::size_t n = cols.empty() ? 0 : cols[0].values.size();
    if (n == 0) throw DataError("empty data");

    ApplyResult result;
    BitPanel& panel = result.panel;
    panel.n = static_cast<std::int64_t>(n);
    panel.P = cfg.total_bits();
    panel.cell.assign(n, 0);

    int bit_offset = 0;
    for (std::size_t v = 0; v < cfg.vars.size(); ++v) {
        const auto& spec = cfg.vars[v];
        const auto& col = cols[v];
        if (col.name != spec.name) {
            throw ConfigError("unknown column '" + col.name + "', expected '" + spec.name + "'");
        }
        if (col.values.size() != n) throw DataError("ragged columns");
        for (int d = 1; d <= spec.depth; ++d) {
            panel.columns.push_back({static_cast<int>(v), d, spec.name});
        }

        switch (spec.kind) {
            case VarKind::ContinuousEcdf: {
                const auto& sorted = fitted.sorted_train[v];
                const double m = static_cast<double>(sorted.size());
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = parse_number(col.values[i], spec.name, i);
                    const double r = midrank_in(sorted, x);
                    const double u = (2.0 * r - m - 1.0) / m;
                    panel.cell[i] |= binary_expand_bits(u, spec.depth) << bit_offset;
                }
                break;
            }
            case VarKind::ContinuousKnownRange: {
                for (std::size_t i = 0; i < n; ++i) {
                    double x = parse_number(col.values[i], spec.name, i);
                    if (x < spec.lo || x > spec.hi) {
                        x = std::clamp(x, spec.lo, spec.hi);
                        ++result.clamped;
                    }
                    const double u = 2.0 * (x - spec.lo) / (spec.hi - spec.lo) - 1.0;
                    panel.cell[i] |= binary_expand_bits(u, spec.depth) << bit_offset;
                }
                break;
            }
            case VarKind::Binary: {
                for (std::size_t i = 0; i < n; ++i) {
                    const auto& s = col.values[i];
                    if (s == spec.positive_level) continue;  // sign +1, bit stays 0
                    if (s != spec.negative_level) {
                        throw DataError("binary variable '" + spec.name + "', row " +
                                        std::to_string(i + 1) + ": unexpected level '" + s + "'");
                    }
                    panel.cell[i] |= std::uint32_t{1} << bit_offset;
                }
                break;
            }
        }
        bit_offset += spec.depth;
    }
    return result;
}

BitPanel build_panel(std::span<const RawColumn> cols, const ExpansionConfig& cfg) {
    return apply_expansion(fit_expansion(cols, cfg), cols).panel;
}

std::vector<int> encode_response(const RawColumn& col, const std::string& positive_level,
                                 std::string* negative_level_out) {
    if (col.values.empty()) throw DataError("empty response column");
    std::string negative;
    std::vector<int> out(col.values.size());
    for (std::size_t i = 0; i < col.values.size(); ++i) {
        const auto& s = col.values[i];
        if (s == positive_level) {
            out[i] = 1;
        } else if (negative.empty() || s == negative) {
            negative = s;
            out[i] = -1;
        } else {
            throw DataError("response '" + col.name + "' has more than two levels ('" +
                            positive_level + "', '" + negative + "', '" + s + "')");
        }
    }
    if (negative_level_out) *negative_level_out = negative;
    return out;
}

std::vector<std::string> bit_labels(const ExpansionConfig& cfg) {
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < cfg.vars.size(); ++v) {
        for (int d = 1; d <= cfg.vars[v].depth; ++d) {
            labels.push_back("A_{" + std::to_string(v + 1) + "," + std::to_string(d) + "}");
        }
    }
    return labels;
}

}  // namespace belief
