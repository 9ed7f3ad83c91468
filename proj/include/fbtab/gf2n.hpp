#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fbtab {

// Field element in polynomial basis: bit i is the coefficient of x^i.
using Elem = std::uint32_t;

constexpr unsigned kMinDegree = 2;
constexpr unsigned kMaxDegree = 24;

// Lexicographically smallest irreducible polynomial of each degree,
// encoded with bit i = coefficient of x^i (so the top bit is x^n).
Elem default_modulus(unsigned n);

// GF(2^n) under a fixed irreducible modulus. Construction validates the
// modulus and precomputes the trace mask and the solver for y^2 + y = u.
// Immutable afterwards; every operation is const and safe to call from
// any number of threads.
class FieldSpec {
public:
    explicit FieldSpec(unsigned n);       // built-in modulus
    FieldSpec(unsigned n, Elem modulus);  // explicit modulus

    unsigned n() const { return n_; }
    Elem modulus() const { return modulus_; }
    unsigned m() const { return m_; }      // n = 2m or n = 2m+1
    bool even() const { return even_; }    // true iff n = 2m
    std::uint64_t size() const { return std::uint64_t{1} << n_; }
    Elem max_elem() const { return mask_; }  // 2^n - 1

    Elem add(Elem a, Elem b) const { return a ^ b; }
    Elem mul(Elem a, Elem b) const;
    Elem sqr(Elem a) const { return mul(a, a); }

    // Square-and-multiply; pow(0,0) = 1, pow(0,e) = 0 for e > 0.
    // For a nonzero base the exponent is reduced mod 2^n - 1.
    Elem pow(Elem a, std::uint64_t e) const;

    // a^(2^n - 2); throws std::domain_error for a = 0.
    Elem inv(Elem a) const;

    // Absolute trace, in {0, 1}.
    int trace(Elem a) const;

    // Trace of GF(2^m) onto GF(2), for a in the subfield GF(2^m) of
    // GF(2^{2m}). Requires an even degree and a subfield element; note
    // trace() is identically zero on subfield elements, this is not it.
    int subfield_trace(Elem a) const;

    // a^(2^m) == a; exactly 2^m elements qualify. Even degree only.
    bool is_in_subfield(Elem a) const;

    // a^(2^m + 1) == 1; exactly 2^m + 1 elements qualify. Even degree only.
    bool in_unit_circle(Elem a) const;

    // All roots of a x^2 + b x + c, ascending. Requires a != 0.
    // One root when b = 0; otherwise two roots iff trace(ac/b^2) = 0.
    std::vector<Elem> solve_quadratic(Elem a, Elem b, Elem c) const;

private:
    void init();
    Elem solve_artin_schreier(Elem u) const;  // some y with y^2 + y = u

    unsigned n_ = 0;
    Elem modulus_ = 0;
    unsigned m_ = 0;
    bool even_ = false;
    Elem mask_ = 0;
    Elem trace_mask_ = 0;  // bit i = Tr(x^i)
    // Echelon form of the linearized map y -> y^2 + y restricted to the
    // complement {y : bit 0 clear} of its kernel {0, 1}.
    struct Pivot {
        Elem value = 0;
        Elem preimage = 0;
    };
    std::vector<Pivot> pivots_;
};

std::string to_hex(Elem a);

}  // namespace fbtab
