#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbtab/sbox.hpp"

namespace fbtab {

// Raised when a request exceeds the enumeration budget; the message carries
// the estimated cost of the refused computation.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense 2^n x 2^n table of counts, indexed (a, b) row-major.
struct Table2D {
    unsigned n = 0;
    std::vector<std::uint32_t> counts;

    std::uint32_t at(Elem a, Elem b) const {
        return counts[(static_cast<std::size_t>(a) << n) | b];
    }
    std::uint32_t& at(Elem a, Elem b) {
        return counts[(static_cast<std::size_t>(a) << n) | b];
    }
    std::uint32_t side() const { return std::uint32_t{1} << n; }
};

// Multiset {value -> multiplicity} over a declared index domain. Entries
// iterate in descending value order, so serialization is deterministic.
struct Spectrum {
    std::string domain;
    std::map<std::uint64_t, std::uint64_t, std::greater<std::uint64_t>> entries;

    std::uint64_t total() const;
    std::uint64_t multiplicity(std::uint64_t value) const;
    bool operator==(const Spectrum& other) const = default;
};

// Nonzero cells of a 2^(arity*n) table, keyed by packed coordinates with
// 16 bits per coordinate: (a, c, b) or (a, c, b, d), most significant
// first. Zero cells are implicit.
struct SparseTable {
    unsigned n = 0;
    unsigned arity = 3;
    std::map<std::uint64_t, std::uint32_t> cells;

    static std::uint64_t pack3(Elem a, Elem c, Elem b) {
        return (std::uint64_t{a} << 32) | (std::uint64_t{c} << 16) | b;
    }
    static std::uint64_t pack4(Elem a, Elem c, Elem b, Elem d) {
        return (std::uint64_t{a} << 48) | (std::uint64_t{c} << 32) |
               (std::uint64_t{b} << 16) | d;
    }
    static void unpack(std::uint64_t key, unsigned arity, Elem out[4]);

    std::uint64_t total_cells() const;
    std::uint32_t at3(Elem a, Elem c, Elem b) const;
    std::uint32_t at4(Elem a, Elem c, Elem b, Elem d) const;
    Spectrum spectrum(std::string domain) const;
};

struct ComputeOptions {
    unsigned workers = 0;       // 0 = hardware concurrency
    bool force_scalar = false;  // pin the scalar kernels
};

// ---- Difference Distribution Table -------------------------------------

Table2D ddt(const SBox& s, const ComputeOptions& opts = {});
unsigned differential_uniformity(const Table2D& t);
unsigned differential_uniformity(const SBox& s, const ComputeOptions& opts = {});
// Spectrum over a != 0 (all b).
Spectrum differential_spectrum(const Table2D& t);
Spectrum differential_spectrum(const SBox& s, const ComputeOptions& opts = {});

// ---- Boomerang Connectivity Table (permutations only) -------------------

Table2D bct(const SBox& s, const ComputeOptions& opts = {});
unsigned boomerang_uniformity(const Table2D& t);
unsigned boomerang_uniformity(const SBox& s, const ComputeOptions& opts = {});

// ---- Feistel Boomerang Connectivity Table --------------------------------

Table2D fbct(const SBox& s, const ComputeOptions& opts = {});
unsigned feistel_boomerang_uniformity(const Table2D& t);
unsigned feistel_boomerang_uniformity(const SBox& s, const ComputeOptions& opts = {});

// ---- FBDT / FBET ---------------------------------------------------------

// Point queries, O(2^n) each; any supported degree.
std::uint32_t fbdt_entry(const SBox& s, Elem a, Elem c, Elem b);
std::uint32_t fbet_entry(const SBox& s, Elem a, Elem c, Elem b, Elem d);

// One pass over all (x, a, b) collecting the nonzero FBDT and/or FBET
// cells. Partitioned over a across workers; the merged result is
// identical for any worker count.
struct SweepResult {
    std::optional<SparseTable> fbdt;
    std::optional<SparseTable> fbet;
};
SweepResult boomerang_sweep(const SBox& s, bool want_fbdt, bool want_fbet,
                            const ComputeOptions& opts = {});

SparseTable fbdt_table(const SBox& s, const ComputeOptions& opts = {});
SparseTable fbet_table(const SBox& s, const ComputeOptions& opts = {});
Spectrum fbdt_spectrum(const SBox& s, const ComputeOptions& opts = {});
Spectrum fbet_spectrum(const SBox& s, const ComputeOptions& opts = {});

// Max over (a, c) != (0, 0).
unsigned feistel_boomerang_differential_uniformity(const SparseTable& t);
unsigned feistel_boomerang_differential_uniformity(const SBox& s,
                                                   const ComputeOptions& opts = {});
// Max over all tuples except (0, 0, 0, 0).
unsigned feistel_boomerang_extended_uniformity(const SparseTable& t);
unsigned feistel_boomerang_extended_uniformity(const SBox& s,
                                               const ComputeOptions& opts = {});

// Full-domain spectrum of a dense table.
Spectrum table_spectrum(const Table2D& t, std::string domain);

// Canonical domain descriptors.
inline constexpr const char* kDomainAllPairs = "all (a,b)";
inline constexpr const char* kDomainNonzeroA = "a != 0, all b";
inline constexpr const char* kDomainTriples = "all (a,c,b)";
inline constexpr const char* kDomainQuads = "all (a,c,b,d)";

}  // namespace fbtab
