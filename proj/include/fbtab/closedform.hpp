#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "fbtab/gf2n.hpp"
#include "fbtab/tables.hpp"

namespace fbtab {

enum class TableKind { ddt, bct, fbct, fbdt, fbet };

const char* table_kind_name(TableKind kind);
TableKind table_kind_from_name(const std::string& name);
unsigned table_kind_arity(TableKind kind);  // 2, 3, or 4

// Predicted count for one coordinate tuple of the x^(2^(m+1)-1) tables,
// together with the matched case and the reduced ratios t1 = c/a^(2^(m+1)-1)
// and t2 = d/b^(2^(m+1)-1) where they are defined. The cases of one theorem
// are disjoint; classification evaluates them all and fails hard if a tuple
// matches more than one.
struct EntryClassification {
    TableKind table = TableKind::ddt;
    std::array<Elem, 4> coords{};
    unsigned arity = 2;
    std::optional<Elem> t1;
    std::optional<Elem> t2;
    std::string case_label;
    std::uint32_t predicted = 0;
};

EntryClassification cf_ddt_entry(const FieldSpec& f, Elem a, Elem b);
Spectrum cf_ddt_spectrum(const FieldSpec& f);
unsigned cf_differential_uniformity(const FieldSpec& f);  // 2 or 2^m

EntryClassification cf_fbct_entry(const FieldSpec& f, Elem a, Elem b);
Spectrum cf_fbct_spectrum(const FieldSpec& f);
unsigned cf_beta_c(const FieldSpec& f);

EntryClassification cf_fbdt_entry(const FieldSpec& f, Elem a, Elem c, Elem b);
Spectrum cf_fbdt_spectrum(const FieldSpec& f);
unsigned cf_beta_d(const FieldSpec& f);

EntryClassification cf_fbet_entry(const FieldSpec& f, Elem a, Elem c, Elem b, Elem d);
Spectrum cf_fbet_spectrum(const FieldSpec& f);
unsigned cf_beta_e(const FieldSpec& f);

EntryClassification cf_entry(const FieldSpec& f, TableKind kind,
                             const std::array<Elem, 4>& coords);
Spectrum cf_spectrum(const FieldSpec& f, TableKind kind);

}  // namespace fbtab
