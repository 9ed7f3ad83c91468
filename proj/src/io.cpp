#include "fbtab/io.hpp"

#include <iomanip>
#include <ostream>

namespace fbtab {

nlohmann::ordered_json to_json(const Spectrum& s) {
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    for (const auto& [value, mult] : s.entries) {
        values[std::to_string(value)] = mult;
    }
    return {{"domain", s.domain}, {"values", values}};
}

std::string to_json_string(const Spectrum& s) { return to_json(s).dump(); }

nlohmann::ordered_json to_json(const Table2D& t) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    const std::uint32_t side = t.side();
    for (std::uint32_t a = 0; a < side; ++a) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::uint32_t b = 0; b < side; ++b) row.push_back(t.at(a, b));
        rows.push_back(std::move(row));
    }
    return {{"n", t.n}, {"counts", rows}};
}

nlohmann::ordered_json to_json(const SparseTable& t) {
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& [key, count] : t.cells) {
        Elem coords[4];
        SparseTable::unpack(key, t.arity, coords);
        nlohmann::ordered_json cell = nlohmann::ordered_json::array();
        for (unsigned i = 0; i < t.arity; ++i) cell.push_back(coords[i]);
        cell.push_back(count);
        cells.push_back(std::move(cell));
    }
    return {{"n", t.n}, {"arity", t.arity}, {"cells", cells}};
}

nlohmann::ordered_json to_json(const EntryClassification& e) {
    nlohmann::ordered_json coords = nlohmann::ordered_json::array();
    for (unsigned i = 0; i < e.arity; ++i) coords.push_back(to_hex(e.coords[i]));
    nlohmann::ordered_json j{{"table", table_kind_name(e.table)},
                             {"coords", coords},
                             {"case", e.case_label},
                             {"predicted", e.predicted}};
    if (e.t1) j["t1"] = to_hex(*e.t1);
    if (e.t2) j["t2"] = to_hex(*e.t2);
    return j;
}

nlohmann::ordered_json to_json(const VerifyReport& r) {
    nlohmann::ordered_json mismatches = nlohmann::ordered_json::array();
    for (const Mismatch& m : r.mismatches) {
        nlohmann::ordered_json coords = nlohmann::ordered_json::array();
        for (unsigned i = 0; i < m.arity; ++i) coords.push_back(m.coords[i]);
        mismatches.push_back({{"coords", coords},
                              {"predicted", m.predicted},
                              {"observed", m.observed},
                              {"case", m.case_label}});
    }
    return {{"subject", r.subject},
            {"checked_cells", r.checked_cells},
            {"mismatch_total", r.mismatch_total},
            {"mismatches", mismatches},
            {"passed", r.passed},
            {"elapsed_seconds", r.elapsed_seconds},
            {"seed", r.seed}};
}

VerifyReport report_from_json(const nlohmann::json& j) {
    VerifyReport r;
    r.subject = j.at("subject").get<std::string>();
    r.checked_cells = j.at("checked_cells").get<std::uint64_t>();
    r.mismatch_total = j.at("mismatch_total").get<std::uint64_t>();
    r.passed = j.at("passed").get<bool>();
    r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& mj : j.at("mismatches")) {
        Mismatch m;
        const auto& coords = mj.at("coords");
        m.arity = static_cast<unsigned>(coords.size());
        for (unsigned i = 0; i < m.arity && i < 4; ++i) {
            m.coords[i] = coords[i].get<Elem>();
        }
        m.predicted = mj.at("predicted").get<std::uint64_t>();
        m.observed = mj.at("observed").get<std::uint64_t>();
        m.case_label = mj.at("case").get<std::string>();
        r.mismatches.push_back(std::move(m));
    }
    return r;
}

void write_csv(std::ostream& out, const Table2D& t) {
    const std::uint32_t side = t.side();
    out << "a";
    for (std::uint32_t b = 0; b < side; ++b) out << ',' << b;
    out << '\n';
    for (std::uint32_t a = 0; a < side; ++a) {
        out << a;
        for (std::uint32_t b = 0; b < side; ++b) out << ',' << t.at(a, b);
        out << '\n';
    }
}

void write_csv(std::ostream& out, const SparseTable& t) {
    out << (t.arity == 3 ? "a,c,b,count" : "a,c,b,d,count") << '\n';
    for (const auto& [key, count] : t.cells) {
        Elem coords[4];
        SparseTable::unpack(key, t.arity, coords);
        for (unsigned i = 0; i < t.arity; ++i) out << coords[i] << ',';
        out << count << '\n';
    }
}

void write_csv(std::ostream& out, const Spectrum& s) {
    out << "value,multiplicity\n";
    for (const auto& [value, mult] : s.entries) {
        out << value << ',' << mult << '\n';
    }
}

void write_text(std::ostream& out, const Table2D& t) {
    const std::uint32_t side = t.side();
    int width = 1;
    for (std::uint32_t v = side; v >= 10; v /= 10) ++width;
    for (std::uint32_t a = 0; a < side; ++a) {
        for (std::uint32_t b = 0; b < side; ++b) {
            out << std::setw(width + (b ? 1 : 0)) << t.at(a, b);
        }
        out << '\n';
    }
}

void write_text(std::ostream& out, const SparseTable& t) {
    out << "# nonzero cells of a 2^(" << t.arity << "*" << t.n << ") table\n";
    for (const auto& [key, count] : t.cells) {
        Elem coords[4];
        SparseTable::unpack(key, t.arity, coords);
        out << '(';
        for (unsigned i = 0; i < t.arity; ++i) {
            out << (i ? "," : "") << to_hex(coords[i]);
        }
        out << ") = " << count << '\n';
    }
}

void write_text(std::ostream& out, const Spectrum& s) {
    out << "domain: " << s.domain << '\n';
    for (const auto& [value, mult] : s.entries) {
        out << std::setw(10) << value << " x " << mult << '\n';
    }
}

void write_text(std::ostream& out, const EntryClassification& e) {
    out << table_kind_name(e.table) << '(';
    for (unsigned i = 0; i < e.arity; ++i) {
        out << (i ? "," : "") << to_hex(e.coords[i]);
    }
    out << "): predicted " << e.predicted << ", case " << e.case_label;
    if (e.t1) out << ", t1=" << to_hex(*e.t1);
    if (e.t2) out << ", t2=" << to_hex(*e.t2);
    out << '\n';
}

void write_text(std::ostream& out, const VerifyReport& r) {
    out << (r.passed ? "PASS" : "FAIL") << ' ' << r.subject << ": "
        << r.checked_cells << " cells checked, " << r.mismatch_total
        << " mismatches, " << std::fixed << std::setprecision(3)
        << r.elapsed_seconds << "s";
    if (r.seed) out << ", seed " << r.seed;
    out << '\n';
    out.unsetf(std::ios::fixed);
    for (const Mismatch& m : r.mismatches) {
        out << "  mismatch at (";
        for (unsigned i = 0; i < m.arity; ++i) {
            out << (i ? "," : "") << to_hex(m.coords[i]);
        }
        out << "): predicted " << m.predicted << ", observed " << m.observed << " ["
            << m.case_label << "]\n";
    }
    if (r.mismatch_total > r.mismatches.size()) {
        out << "  ... " << (r.mismatch_total - r.mismatches.size())
            << " further mismatches suppressed\n";
    }
}

}  // namespace fbtab
