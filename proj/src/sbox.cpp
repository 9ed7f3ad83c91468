#include "fbtab/sbox.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace fbtab {

SBox power_sbox(const FieldSpec& field, std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("power exponent must be >= 1");
    std::vector<Elem> lut(field.size());
    for (std::uint64_t x = 0; x < field.size(); ++x) {
        lut[x] = field.pow(static_cast<Elem>(x), d);
    }
    return SBox{field, std::move(lut), d};
}

std::uint64_t closed_form_exponent(unsigned n) {
    const unsigned m = n / 2;
    return (std::uint64_t{1} << (m + 1)) - 1;
}

SBox closed_form_sbox(const FieldSpec& field) {
    return power_sbox(field, closed_form_exponent(field.n()));
}

SBox from_lut(const FieldSpec& field, const std::vector<Elem>& values) {
    if (values.size() != field.size()) {
        throw std::invalid_argument("S-box table has " + std::to_string(values.size()) +
                                    " entries, expected " + std::to_string(field.size()));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > field.max_elem()) {
            throw std::invalid_argument("S-box entry " + std::to_string(values[i]) +
                                        " at index " + std::to_string(i) +
                                        " is out of range for n=" + std::to_string(field.n()));
        }
    }
    return SBox{field, values, std::nullopt};
}

bool is_permutation(const SBox& s) {
    std::vector<bool> seen(s.size(), false);
    for (Elem y : s.lut) {
        if (seen[y]) return false;
        seen[y] = true;
    }
    return true;
}

SBox inverse(const SBox& s) {
    std::vector<Elem> inv(s.size(), 0);
    std::vector<bool> seen(s.size(), false);
    for (std::uint32_t x = 0; x < s.size(); ++x) {
        const Elem y = s.lut[x];
        if (seen[y]) throw std::domain_error("S-box is not a permutation, cannot invert");
        seen[y] = true;
        inv[y] = static_cast<Elem>(x);
    }
    std::optional<std::uint64_t> d;
    if (s.exponent) {
        // x^d inverts to x^e with d*e = 1 mod 2^n - 1.
        const std::uint64_t order = s.field.size() - 1;
        for (std::uint64_t e = 1; e < order; ++e) {
            if ((static_cast<unsigned __int128>(*s.exponent) * e) % order == 1) {
                d = e;
                break;
            }
        }
    }
    return SBox{s.field, std::move(inv), d};
}

SBox read_sbox(const FieldSpec& field, std::istream& in) {
    std::vector<Elem> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(pos, end - pos + 1);
        try {
            const int base = (token.size() > 1 && token[0] == '0' &&
                              (token[1] == 'x' || token[1] == 'X'))
                                 ? 16
                                 : 10;
            std::size_t used = 0;
            const unsigned long v = std::stoul(token, &used, base);
            if (used != token.size()) throw std::invalid_argument(token);
            values.push_back(static_cast<Elem>(v));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed S-box entry '" + token + "' on line " +
                                        std::to_string(lineno));
        }
    }
    return from_lut(field, values);
}

SBox load_sbox(const FieldSpec& field, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open S-box file " + path);
    return read_sbox(field, in);
}

void write_sbox(const SBox& s, std::ostream& out) {
    out << "# n=" << s.n() << " modulus=" << to_hex(s.field.modulus());
    if (s.exponent) out << " exponent=" << *s.exponent;
    out << '\n';
    for (Elem y : s.lut) out << y << '\n';
}

void save_sbox(const SBox& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_sbox(s, out);
}

}  // namespace fbtab
