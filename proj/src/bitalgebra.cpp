#include "bitalgebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace belief {

void wht_inplace(std::span<double> x) {
    const std::size_t len = x.size();
    if (len == 0 || (len & (len - 1)) != 0) {
        throw std::invalid_argument("wht: length must be a power of two");
    }
    for (std::size_t h = 1; h < len; h *= 2) {
        for (std::size_t i = 0; i < len; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double a = x[j];
                const double b = x[j + h];
                x[j] = a + b;
                x[j + h] = a - b;
            }
        }
    }
}

std::vector<double> wht(std::vector<double> x) {
    wht_inplace(x);
    return x;
}

namespace {

int leading_bit(Mask m) { return 31 - std::countl_zero(m); }

}  // namespace

Subgroup Subgroup::span(std::span<const Mask> generators) {
    Subgroup g;
    for (Mask m : generators) {
        for (Mask b : g.basis_) {
            if (m & (Mask{1} << leading_bit(b))) m ^= b;
        }
        if (m == 0) continue;
        // Back-reduce existing rows against the new one, keep echelon order.
        const int lead = leading_bit(m);
        for (Mask& b : g.basis_) {
            if (b & (Mask{1} << lead)) b ^= m;
        }
        g.basis_.push_back(m);
        std::sort(g.basis_.begin(), g.basis_.end(),
                  [](Mask a, Mask b) { return leading_bit(a) > leading_bit(b); });
    }
    return g;
}

Subgroup Subgroup::span(std::initializer_list<Mask> generators) {
    return span(std::span<const Mask>(generators.begin(), generators.size()));
}

bool Subgroup::member(Mask m) const {
    for (Mask b : basis_) {
        if (m & (Mask{1} << leading_bit(b))) m ^= b;
    }
    return m == 0;
}

std::vector<Mask> Subgroup::members() const {
    std::vector<Mask> out;
    out.reserve(std::size_t{1} << basis_.size());
    out.push_back(0);
    for (Mask b : basis_) {
        const std::size_t sz = out.size();
        for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] ^ b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string mask_label(Mask m, std::span<const std::string> bit_labels) {
    if (m == 0) return "1";
    std::string out;
    for (std::size_t k = 0; k < bit_labels.size(); ++k) {
        if (m & (Mask{1} << k)) out += bit_labels[k];
    }
    return out;
}

}  // namespace belief
