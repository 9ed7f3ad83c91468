#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fbtab/closedform.hpp"
#include "fbtab/sbox.hpp"
#include "fbtab/tables.hpp"

namespace fbtab {

struct Mismatch {
    std::array<Elem, 4> coords{};
    unsigned arity = 2;
    std::uint64_t predicted = 0;
    std::uint64_t observed = 0;
    std::string case_label;  // matched theorem case, or the violated property

    bool operator==(const Mismatch& other) const = default;
};

struct VerifyOptions {
    unsigned workers = 0;
    bool force_scalar = false;
    std::uint64_t seed = 0x5eedf0b7;   // for sampled-zero checks
    std::uint64_t zero_samples = 1'000'000;
    std::size_t mismatch_cap = 100;
};

struct VerifyReport {
    std::string subject;
    std::uint64_t checked_cells = 0;
    std::vector<Mismatch> mismatches;  // truncated at mismatch_cap
    std::uint64_t mismatch_total = 0;
    bool passed = false;
    double elapsed_seconds = 0.0;
    std::uint64_t seed = 0;  // nonzero iff sampling was part of the run
};

// Closed form vs brute force on every cell. DDT/FBCT compare densely;
// FBDT (n <= 6) and FBET (n <= 4) sweep every tuple; larger degrees up to
// n = 10 check the full nonzero support plus sampled predicted-zero tuples
// re-counted pointwise. Throws BudgetError beyond the supported range.
VerifyReport verify_entrywise(const FieldSpec& f, TableKind kind,
                              const VerifyOptions& opts = {});

// Brute-force spectrum against the closed-form counting formulas, domain
// totals, the two differential-spectrum identities, and the uniformity.
VerifyReport verify_spectra(const FieldSpec& f, TableKind kind,
                            const VerifyOptions& opts = {});

// Structural properties that hold for every S-box: DDT row sums and
// evenness, the six FBCT properties, the APN criterion, and the
// marginalization identities tying FBDT to FBCT (and FBET to FBDT for
// n <= 6).
VerifyReport verify_structural(const SBox& s, const VerifyOptions& opts = {});

}  // namespace fbtab
