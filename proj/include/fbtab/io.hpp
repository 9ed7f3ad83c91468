#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fbtab/closedform.hpp"
#include "fbtab/tables.hpp"
#include "fbtab/verify.hpp"

namespace fbtab {

// Spectra serialize with descending values so equal spectra yield
// byte-identical text.
nlohmann::ordered_json to_json(const Spectrum& s);
nlohmann::ordered_json to_json(const Table2D& t);
nlohmann::ordered_json to_json(const SparseTable& t);
nlohmann::ordered_json to_json(const EntryClassification& e);
nlohmann::ordered_json to_json(const VerifyReport& r);
VerifyReport report_from_json(const nlohmann::json& j);

std::string to_json_string(const Spectrum& s);

// Header row of b values, one row per a, decimal counts.
void write_csv(std::ostream& out, const Table2D& t);
// One nonzero cell per row: a,c,b[,d],count.
void write_csv(std::ostream& out, const SparseTable& t);
void write_csv(std::ostream& out, const Spectrum& s);

void write_text(std::ostream& out, const Table2D& t);
void write_text(std::ostream& out, const SparseTable& t);
void write_text(std::ostream& out, const Spectrum& s);
void write_text(std::ostream& out, const EntryClassification& e);
void write_text(std::ostream& out, const VerifyReport& r);

}  // namespace fbtab
