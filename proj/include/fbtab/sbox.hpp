#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fbtab/gf2n.hpp"

namespace fbtab {

// A function on GF(2^n), materialized as a full lookup table. The exponent
// is recorded when the box is a power map x^d. Immutable after construction.
struct SBox {
    FieldSpec field;
    std::vector<Elem> lut;
    std::optional<std::uint64_t> exponent;

    Elem operator()(Elem x) const { return lut[x]; }
    unsigned n() const { return field.n(); }
    std::uint32_t size() const { return static_cast<std::uint32_t>(lut.size()); }
};

// lut[x] = x^d. Requires d >= 1.
SBox power_sbox(const FieldSpec& field, std::uint64_t d);

// The exponent 2^(m+1) - 1 whose tables the closedform module predicts.
std::uint64_t closed_form_exponent(unsigned n);
SBox closed_form_sbox(const FieldSpec& field);

// Explicit table; every value must be < 2^n and the length exactly 2^n.
SBox from_lut(const FieldSpec& field, const std::vector<Elem>& values);

bool is_permutation(const SBox& s);

// Compositional inverse; throws std::domain_error on a non-permutation.
SBox inverse(const SBox& s);

// Line-oriented table format: one integer per line in index order, decimal
// or 0x-prefixed hex, '#' starts a comment.
SBox read_sbox(const FieldSpec& field, std::istream& in);
SBox load_sbox(const FieldSpec& field, const std::string& path);
void write_sbox(const SBox& s, std::ostream& out);
void save_sbox(const SBox& s, const std::string& path);

}  // namespace fbtab
