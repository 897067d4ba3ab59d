#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace belief {

// An interaction mask names a product of sign bits: bit k of the mask is set
// iff bit k participates in the product. Mask 0 is the constant term 1.
// Products of interactions compose by XOR.
using Mask = std::uint32_t;

// Entry of the Sylvester-Hadamard matrix at (cell t, mask m).
// Cell encoding: bit k of t is set iff sign bit k equals -1.
inline int hadamard_entry(std::uint32_t t, Mask m) {
    return (std::popcount(t & m) & 1) ? -1 : 1;
}

// Unnormalized fast Walsh-Hadamard transform: y = H x with
// y[m] = sum_t (-1)^popcount(t & m) x[t]. Length must be a power of two.
// Applying it twice multiplies by the length (H^2 = 2^P I).
void wht_inplace(std::span<double> x);
std::vector<double> wht(std::vector<double> x);

// GF(2) linear span of a set of interaction masks. The canonical form is the
// reduced echelon basis, so subgroup equality is basis equality.
class Subgroup {
public:
    Subgroup() = default;

    static Subgroup span(std::span<const Mask> generators);
    static Subgroup span(std::initializer_list<Mask> generators);

    bool member(Mask m) const;
    int rank() const { return static_cast<int>(basis_.size()); }
    std::uint64_t order() const { return std::uint64_t{1} << basis_.size(); }

    // Reduced echelon basis, descending by leading bit. Empty for {0}.
    const std::vector<Mask>& basis() const { return basis_; }

    // A generating set of minimal size (= rank); this is the echelon basis.
    const std::vector<Mask>& minimal_generators() const { return basis_; }

    // Full enumeration of the 2^rank members, sorted ascending.
    std::vector<Mask> members() const;

    bool operator==(const Subgroup&) const = default;

private:
    std::vector<Mask> basis_;
};

// Display label for a mask given per-bit labels; mask 0 is "1".
std::string mask_label(Mask m, std::span<const std::string> bit_labels);

}  // namespace belief
