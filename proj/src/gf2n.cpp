#include "fbtab/gf2n.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <stdexcept>

namespace fbtab {

namespace {

// Smallest (by integer encoding) irreducible polynomial per degree 2..24.
constexpr std::array<Elem, kMaxDegree + 1> kDefaultModuli = {
    0,         0,         0x7,       0xb,      0x13,     0x25,      0x43,
    0x83,      0x11b,     0x203,     0x409,    0x805,    0x1009,    0x201b,
    0x4021,    0x8003,    0x1002b,   0x20009,  0x40009,  0x80027,   0x100009,
    0x200005,  0x400003,  0x800021,  0x100001b,
};

int degree(std::uint64_t p) {
    return p == 0 ? -1 : 63 - std::countl_zero(p);
}

// Product of two binary polynomials, no reduction.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t acc = 0;
    while (b) {
        if (b & 1) acc ^= a;
        a <<= 1;
        b >>= 1;
    }
    return acc;
}

std::uint64_t poly_mod(std::uint64_t v, std::uint64_t f) {
    const int df = degree(f);
    for (int d = degree(v); d >= df; d = degree(v)) {
        v ^= f << (d - df);
    }
    return v;
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// x^(2^k) mod f, by k squarings in the quotient ring (f need not be
// irreducible here).
std::uint64_t x_pow_pow2_mod(unsigned k, std::uint64_t f) {
    std::uint64_t v = 0b10;  // x
    for (unsigned i = 0; i < k; ++i) {
        v = poly_mod(clmul(v, v), f);
    }
    return v;
}

bool is_irreducible(Elem f, unsigned n) {
    if (x_pow_pow2_mod(n, f) != 0b10) return false;
    for (unsigned p : prime_factors(n)) {
        std::uint64_t s = x_pow_pow2_mod(n / p, f);
        if (poly_gcd(s ^ 0b10, f) != 1) return false;
    }
    return true;
}

}  // namespace

Elem default_modulus(unsigned n) {
    if (n < kMinDegree || n > kMaxDegree) {
        throw std::invalid_argument("field degree must be in [2, 24], got " +
                                    std::to_string(n));
    }
    return kDefaultModuli[n];
}

FieldSpec::FieldSpec(unsigned n) : FieldSpec(n, default_modulus(n)) {}

FieldSpec::FieldSpec(unsigned n, Elem modulus) : n_(n), modulus_(modulus) {
    if (n < kMinDegree || n > kMaxDegree) {
        throw std::invalid_argument("field degree must be in [2, 24], got " +
                                    std::to_string(n));
    }
    if (modulus_ >> n_ != 1u) {
        throw std::invalid_argument("modulus " + to_hex(modulus_) +
                                    " does not have degree " + std::to_string(n_));
    }
    if (!is_irreducible(modulus_, n_)) {
        throw std::invalid_argument("modulus " + to_hex(modulus_) +
                                    " is reducible over GF(2)");
    }
    init();
}

void FieldSpec::init() {
    m_ = n_ / 2;
    even_ = (n_ == 2 * m_);
    mask_ = static_cast<Elem>((std::uint64_t{1} << n_) - 1);

    // Trace of each basis element x^i, folded into a mask so that
    // trace(a) = parity(a & trace_mask).
    trace_mask_ = 0;
    for (unsigned i = 0; i < n_; ++i) {
        Elem p = Elem{1} << i;
        Elem s = p;
        for (unsigned k = 1; k < n_; ++k) {
            p = sqr(p);
            s ^= p;
        }
        if (s > 1) throw std::logic_error("trace of basis element not in GF(2)");
        if (s) trace_mask_ |= Elem{1} << i;
    }

    // Row-reduce the images of x^1..x^{n-1} under y -> y^2 + y. The map is
    // injective on that complement of {0,1}, so every column gets a pivot.
    pivots_.assign(n_, Pivot{});
    for (unsigned i = 1; i < n_; ++i) {
        Elem v = sqr(Elem{1} << i) ^ (Elem{1} << i);
        Elem w = Elem{1} << i;
        while (v) {
            unsigned hb = 31 - std::countl_zero(v);
            if (pivots_[hb].value == 0) {
                pivots_[hb] = {v, w};
                break;
            }
            v ^= pivots_[hb].value;
            w ^= pivots_[hb].preimage;
        }
        if (!v) throw std::logic_error("y^2 + y not injective off its kernel");
    }
}

Elem FieldSpec::mul(Elem a, Elem b) const {
    std::uint64_t acc = clmul(a, b);
    for (int d = degree(acc); d >= static_cast<int>(n_); d = degree(acc)) {
        acc ^= static_cast<std::uint64_t>(modulus_) << (d - n_);
    }
    return static_cast<Elem>(acc);
}

Elem FieldSpec::pow(Elem a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const std::uint64_t order = size() - 1;
    e %= order;
    Elem result = 1;
    Elem base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = sqr(base);
        e >>= 1;
    }
    return result;
}

Elem FieldSpec::inv(Elem a) const {
    if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
    return pow(a, size() - 2);
}

int FieldSpec::trace(Elem a) const {
    return std::popcount(a & trace_mask_) & 1;
}

bool FieldSpec::is_in_subfield(Elem a) const {
    if (!even_) throw std::domain_error("subfield GF(2^m) requires n = 2m");
    Elem p = a;
    for (unsigned i = 0; i < m_; ++i) p = sqr(p);
    return p == a;
}

int FieldSpec::subfield_trace(Elem a) const {
    if (!is_in_subfield(a)) {
        throw std::domain_error("subfield trace of " + to_hex(a) +
                                ": element is not in GF(2^" + std::to_string(m_) + ")");
    }
    Elem p = a;
    Elem s = a;
    for (unsigned i = 1; i < m_; ++i) {
        p = sqr(p);
        s ^= p;
    }
    if (s > 1) throw std::logic_error("subfield trace not in GF(2)");
    return static_cast<int>(s);
}

bool FieldSpec::in_unit_circle(Elem a) const {
    if (!even_) throw std::domain_error("unit circle requires n = 2m");
    if (a == 0) return false;
    Elem p = a;
    for (unsigned i = 0; i < m_; ++i) p = sqr(p);
    return mul(p, a) == 1;
}

Elem FieldSpec::solve_artin_schreier(Elem u) const {
    Elem r = u;
    Elem w = 0;
    while (r) {
        unsigned hb = 31 - std::countl_zero(r);
        if (pivots_[hb].value == 0) {
            throw std::logic_error("y^2 + y = u has no solution for " + to_hex(u));
        }
        r ^= pivots_[hb].value;
        w ^= pivots_[hb].preimage;
    }
    return w;
}

std::vector<Elem> FieldSpec::solve_quadratic(Elem a, Elem b, Elem c) const {
    if (a == 0) throw std::invalid_argument("leading coefficient must be nonzero");
    if (b == 0) {
        // Double root: the unique square root of c/a.
        Elem v = mul(c, inv(a));
        for (unsigned i = 1; i < n_; ++i) v = sqr(v);
        return {v};
    }
    const Elem u = mul(mul(a, c), inv(sqr(b)));
    if (trace(u) == 1) return {};
    const Elem y0 = solve_artin_schreier(u);
    const Elem scale = mul(b, inv(a));  // roots are scale*y0 and scale*(y0+1)
    Elem r0 = mul(scale, y0);
    Elem r1 = r0 ^ scale;
    if (r0 > r1) std::swap(r0, r1);
    return {r0, r1};
}

std::string to_hex(Elem a) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%x", a);
    return buf;
}

}  // namespace fbtab
