#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fbtab/closedform.hpp"
#include "fbtab/io.hpp"
#include "fbtab/kernels.hpp"
#include "fbtab/tables.hpp"
#include "fbtab/verify.hpp"

namespace {

using namespace fbtab;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Elem parse_elem(const std::string& token, const FieldSpec& f) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        const int base = (token.size() > 1 && token[0] == '0' &&
                          (token[1] == 'x' || token[1] == 'X'))
                             ? 16
                             : 10;
        v = std::stoul(token, &used, base);
    } catch (const std::exception&) {
        throw UsageError("cannot parse element '" + token + "'");
    }
    if (used != token.size() || v > f.max_elem()) {
        throw UsageError("element '" + token + "' is out of range for n=" +
                         std::to_string(f.n()));
    }
    return static_cast<Elem>(v);
}

std::vector<Elem> parse_coords(const std::string& text, const FieldSpec& f) {
    std::vector<Elem> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        out.push_back(parse_elem(token, f));
    }
    return out;
}

// Point queries for the 2D tables; O(2^n), no dense table needed.
std::uint32_t ddt_point(const SBox& s, Elem a, Elem b) {
    std::uint32_t count = 0;
    for (std::uint32_t x = 0; x < s.size(); ++x) {
        count += (s.lut[x] ^ s.lut[x ^ a]) == b;
    }
    return count;
}

std::uint32_t fbct_point(const SBox& s, Elem a, Elem b) {
    std::uint32_t count = 0;
    for (std::uint32_t x = 0; x < s.size(); ++x) {
        count += (s.lut[x] ^ s.lut[x ^ a] ^ s.lut[x ^ b] ^ s.lut[x ^ a ^ b]) == 0;
    }
    return count;
}

std::uint32_t bct_point(const SBox& s, Elem a, Elem b) {
    const SBox inv = inverse(s);
    std::uint32_t count = 0;
    for (std::uint32_t x = 0; x < s.size(); ++x) {
        count += (inv.lut[s.lut[x] ^ b] ^ inv.lut[s.lut[x ^ a] ^ b]) == a;
    }
    return count;
}

struct Options {
    unsigned n = 0;
    std::string modulus;
    std::string sbox = "closedform";
    std::string command;
    std::string table;
    std::string coords;
    std::string format = "text";
    unsigned workers = 0;
    std::string out;
    std::uint64_t seed = VerifyOptions{}.seed;
    bool scalar_only = false;
};

int run(const Options& opt) {
    std::optional<FieldSpec> field;
    if (opt.modulus.empty()) {
        field.emplace(opt.n);
    } else {
        std::size_t used = 0;
        unsigned long mod = 0;
        try {
            mod = std::stoul(opt.modulus, &used, 16);
        } catch (const std::exception&) {
            throw UsageError("cannot parse modulus '" + opt.modulus + "'");
        }
        if (used != opt.modulus.size()) {
            throw UsageError("cannot parse modulus '" + opt.modulus + "'");
        }
        field.emplace(opt.n, static_cast<Elem>(mod));
    }
    const FieldSpec& f = *field;

    SBox box = [&]() -> SBox {
        if (opt.sbox == "closedform" || opt.sbox == "paper") return closed_form_sbox(f);
        if (opt.sbox.rfind("power:", 0) == 0) {
            const std::string d = opt.sbox.substr(6);
            try {
                return power_sbox(f, std::stoull(d));
            } catch (const std::invalid_argument&) {
                throw UsageError("bad power exponent '" + d + "'");
            }
        }
        if (opt.sbox.rfind("lut:", 0) == 0) {
            return load_sbox(f, opt.sbox.substr(4));
        }
        throw UsageError("unknown S-box source '" + opt.sbox +
                         "' (expected closedform, power:<d> or lut:<path>)");
    }();
    const bool is_cf_box = box.exponent && *box.exponent == closed_form_exponent(f.n());

    const TableKind kind = table_kind_from_name(opt.table);
    const ComputeOptions copts{opt.workers, opt.scalar_only};

    std::ofstream file;
    std::ostream* sink = &std::cout;
    if (!opt.out.empty()) {
        file.open(opt.out);
        if (!file) throw std::runtime_error("cannot open " + opt.out + " for writing");
        sink = &file;
    }
    std::ostream& os = *sink;

    const auto emit_spectrum = [&](const Spectrum& spec) {
        if (opt.format == "json") {
            os << to_json(spec).dump() << '\n';
        } else if (opt.format == "csv") {
            write_csv(os, spec);
        } else {
            write_text(os, spec);
        }
    };

    if (opt.command == "table") {
        if (kind == TableKind::fbdt || kind == TableKind::fbet) {
            const SparseTable t =
                kind == TableKind::fbdt ? fbdt_table(box, copts) : fbet_table(box, copts);
            if (opt.format == "json") {
                os << to_json(t).dump() << '\n';
            } else if (opt.format == "csv") {
                write_csv(os, t);
            } else {
                write_text(os, t);
            }
        } else {
            const Table2D t = kind == TableKind::ddt    ? ddt(box, copts)
                              : kind == TableKind::fbct ? fbct(box, copts)
                                                        : bct(box, copts);
            if (opt.format == "json") {
                os << to_json(t).dump() << '\n';
            } else if (opt.format == "csv") {
                write_csv(os, t);
            } else {
                write_text(os, t);
            }
        }
        return kExitOk;
    }

    if (opt.command == "spectrum") {
        switch (kind) {
            case TableKind::ddt:
                emit_spectrum(table_spectrum(ddt(box, copts), kDomainAllPairs));
                break;
            case TableKind::bct:
                emit_spectrum(table_spectrum(bct(box, copts), kDomainAllPairs));
                break;
            case TableKind::fbct:
                emit_spectrum(table_spectrum(fbct(box, copts), kDomainAllPairs));
                break;
            case TableKind::fbdt:
                emit_spectrum(fbdt_spectrum(box, copts));
                break;
            case TableKind::fbet:
                emit_spectrum(fbet_spectrum(box, copts));
                break;
        }
        return kExitOk;
    }

    if (opt.command == "uniformity") {
        unsigned value = 0;
        switch (kind) {
            case TableKind::ddt: value = differential_uniformity(box, copts); break;
            case TableKind::bct: value = boomerang_uniformity(box, copts); break;
            case TableKind::fbct: value = feistel_boomerang_uniformity(box, copts); break;
            case TableKind::fbdt:
                value = feistel_boomerang_differential_uniformity(box, copts);
                break;
            case TableKind::fbet:
                value = feistel_boomerang_extended_uniformity(box, copts);
                break;
        }
        os << value << '\n';
        return kExitOk;
    }

    if (opt.command == "entry" || opt.command == "classify") {
        const unsigned arity = table_kind_arity(kind);
        const std::vector<Elem> coords = parse_coords(opt.coords, f);
        if (coords.size() != arity) {
            throw UsageError("--coords needs " + std::to_string(arity) +
                             " comma-separated values for " + opt.table + ", got " +
                             std::to_string(coords.size()));
        }
        std::array<Elem, 4> c{};
        std::copy(coords.begin(), coords.end(), c.begin());

        if (opt.command == "classify") {
            if (!is_cf_box) {
                throw UsageError("classify describes the x^(2^(m+1)-1) S-box; "
                                 "use --sbox closedform");
            }
            const EntryClassification e = cf_entry(f, kind, c);
            if (opt.format == "json") {
                os << to_json(e).dump() << '\n';
            } else {
                write_text(os, e);
            }
            return kExitOk;
        }

        std::uint32_t observed = 0;
        switch (kind) {
            case TableKind::ddt: observed = ddt_point(box, c[0], c[1]); break;
            case TableKind::bct: observed = bct_point(box, c[0], c[1]); break;
            case TableKind::fbct: observed = fbct_point(box, c[0], c[1]); break;
            case TableKind::fbdt: observed = fbdt_entry(box, c[0], c[1], c[2]); break;
            case TableKind::fbet: observed = fbet_entry(box, c[0], c[1], c[2], c[3]); break;
        }
        const bool with_cf = is_cf_box && kind != TableKind::bct;
        if (opt.format == "json") {
            nlohmann::ordered_json j{{"table", opt.table}, {"observed", observed}};
            nlohmann::ordered_json jc = nlohmann::ordered_json::array();
            for (unsigned i = 0; i < arity; ++i) jc.push_back(to_hex(c[i]));
            j["coords"] = jc;
            if (with_cf) j["closed_form"] = to_json(cf_entry(f, kind, c));
            os << j.dump() << '\n';
        } else {
            os << opt.table << '(';
            for (unsigned i = 0; i < arity; ++i) os << (i ? "," : "") << to_hex(c[i]);
            os << ") = " << observed << '\n';
            if (with_cf) {
                const EntryClassification e = cf_entry(f, kind, c);
                os << "closed form: " << e.predicted << ", case " << e.case_label;
                if (e.t1) os << ", t1=" << to_hex(*e.t1);
                if (e.t2) os << ", t2=" << to_hex(*e.t2);
                os << '\n';
            }
        }
        return kExitOk;
    }

    if (opt.command == "verify") {
        VerifyOptions vopts;
        vopts.workers = opt.workers;
        vopts.force_scalar = opt.scalar_only;
        vopts.seed = opt.seed;
        std::vector<VerifyReport> reports;
        if (is_cf_box) {
            if (kind == TableKind::bct) {
                throw UsageError("no closed form for the bct; verify ddt, fbct, fbdt or fbet");
            }
            reports.push_back(verify_entrywise(f, kind, vopts));
            reports.push_back(verify_spectra(f, kind, vopts));
        } else {
            reports.push_back(verify_structural(box, vopts));
        }
        bool all_passed = true;
        if (opt.format == "json") {
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (const VerifyReport& r : reports) {
                j.push_back(to_json(r));
                all_passed = all_passed && r.passed;
            }
            os << j.dump() << '\n';
        } else {
            for (const VerifyReport& r : reports) {
                write_text(os, r);
                all_passed = all_passed && r.passed;
            }
        }
        return all_passed ? kExitOk : kExitMismatch;
    }

    throw UsageError("unknown command '" + opt.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Differential and Feistel boomerang tables (DDT/BCT/FBCT/FBDT/FBET) of "
        "S-boxes over GF(2^n), with closed-form predictions for x^(2^(m+1)-1)"};
    Options opt;

    app.add_option("--n", opt.n, "field degree (2..24)")->required();
    app.add_option("--modulus", opt.modulus,
                   "irreducible modulus as hex coefficient bits (e.g. 0x13)");
    app.add_option("--sbox", opt.sbox,
                   "closedform | power:<d> | lut:<path> (default closedform)");
    app.add_option("--command", opt.command,
                   "table | entry | spectrum | uniformity | verify | classify")
        ->required();
    app.add_option("--table", opt.table, "ddt | bct | fbct | fbdt | fbet")->required();
    app.add_option("--coords", opt.coords,
                   "comma-separated tuple for entry/classify, arity per table");
    app.add_option("--format", opt.format, "csv | json | text (default text)");
    app.add_option("--workers", opt.workers, "worker threads (default: hardware)");
    app.add_option("--out", opt.out, "output path (default stdout)");
    app.add_option("--seed", opt.seed, "seed for sampled zero checks");
    app.add_flag("--scalar", opt.scalar_only, "disable the SIMD kernels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        return run(opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const fbtab::BudgetError& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
