#include <doctest.h>

#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "fbtab/gf2n.hpp"

using namespace fbtab;

namespace {

// Test-side irreducibility oracle: trial division by every polynomial of
// degree 1..n/2, independent of the library's Rabin-style check.
bool irreducible_by_trial_division(std::uint64_t f, unsigned n) {
    for (unsigned d = 1; 2 * d <= n; ++d) {
        for (std::uint64_t g = (std::uint64_t{1} << d); g < (std::uint64_t{2} << d); ++g) {
            std::uint64_t r = f;
            while (true) {
                int dr = 63 - std::countl_zero(r);
                if (r == 0 || dr < static_cast<int>(d)) break;
                r ^= g << (dr - d);
            }
            if (r == 0) return false;
        }
    }
    return true;
}

// Direct power-sum trace, independent of the mask-based implementation.
int trace_by_power_sum(const FieldSpec& f, Elem a) {
    Elem sum = 0;
    for (unsigned i = 0; i < f.n(); ++i) {
        sum ^= f.pow(a, std::uint64_t{1} << i);
    }
    REQUIRE(sum <= 1);
    return static_cast<int>(sum);
}

}  // namespace

TEST_CASE("built-in moduli are the smallest irreducible polynomials") {
    for (unsigned n = kMinDegree; n <= kMaxDegree; ++n) {
        const Elem mod = default_modulus(n);
        CHECK((mod >> n) == 1u);
        CHECK(irreducible_by_trial_division(mod, n));
        for (Elem cand = Elem{1} << n; cand < mod; ++cand) {
            CHECK_FALSE(irreducible_by_trial_division(cand, n));
        }
    }
    CHECK(default_modulus(3) == 0xb);
    CHECK(default_modulus(4) == 0x13);
    CHECK(default_modulus(8) == 0x11b);
    CHECK_THROWS_AS(default_modulus(1), std::invalid_argument);
    CHECK_THROWS_AS(default_modulus(25), std::invalid_argument);
}

TEST_CASE("every supported degree constructs and has a cyclic unit group") {
    for (unsigned n = kMinDegree; n <= kMaxDegree; ++n) {
        const FieldSpec f(n);
        CHECK(f.m() == n / 2);
        CHECK(f.even() == (n % 2 == 0));
        for (Elem a : {Elem{2}, Elem{3}, f.max_elem()}) {
            CHECK(f.pow(a, f.size() - 1) == 1);
            CHECK(f.mul(a, f.inv(a)) == 1);
        }
    }
}

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(FieldSpec(4, 0x23), std::invalid_argument);  // degree 5
    CHECK_THROWS_AS(FieldSpec(4, 0x11), std::invalid_argument);  // (x+1)^4
    CHECK_THROWS_AS(FieldSpec(4, 0x10), std::invalid_argument);  // x^4
    // x(x^2+x+1)(x^3+x+1): squarefree with factor degrees 1, 2, 3 that all
    // divide 6, which a bare Fermat-style test would wave through.
    CHECK_THROWS_AS(FieldSpec(6, 0x62), std::invalid_argument);
    CHECK_NOTHROW(FieldSpec(4, 0x19));  // x^4 + x^3 + 1, the other weight-3 choice
}

TEST_CASE("add and mul on GF(2^3)") {
    const FieldSpec f(3, 0xb);
    CHECK(f.add(0b101, 0b011) == 0b110);
    CHECK(f.mul(0b010, 0b011) == 0b110);
    CHECK(f.mul(0b100, 0b010) == 0b011);
    for (Elem a = 0; a < 8; ++a) {
        CHECK(f.add(a, 0) == a);
        CHECK(f.add(a, a) == 0);
        CHECK(f.mul(a, 0b001) == a);
    }
}

TEST_CASE("pow conventions") {
    const FieldSpec f(3);
    CHECK(f.pow(0b010, 7) == 0b001);
    CHECK(f.pow(0, 5) == 0);
    CHECK(f.pow(0b110, 0) == 0b001);
    CHECK(f.pow(0, 0) == 1);
    // Exponent reduction mod 2^n - 1 for nonzero bases.
    for (Elem a = 1; a < 8; ++a) {
        CHECK(f.pow(a, 9) == f.pow(a, 2));
        CHECK(f.pow(a, 7) == 1);
    }
}

TEST_CASE("inv matches exhaustive search and covers all degrees") {
    const FieldSpec f3(3, 0xb);
    CHECK(f3.inv(0b001) == 0b001);
    Elem found = 0;
    for (Elem y = 1; y < 8; ++y) {
        if (f3.mul(0b010, y) == 1) found = y;
    }
    CHECK(found == 0b101);
    CHECK(f3.inv(0b010) == found);
    CHECK_THROWS_AS(f3.inv(0), std::domain_error);

    for (unsigned n = 2; n <= 12; ++n) {
        const FieldSpec f(n);
        for (Elem a = 1; a < f.size(); ++a) {
            REQUIRE(f.mul(a, f.inv(a)) == 1);
        }
    }
}

TEST_CASE("trace basics and linearity") {
    const FieldSpec f3(3);
    CHECK(f3.trace(0) == 0);
    CHECK(f3.trace(1) == 1);  // Tr(1) = n mod 2
    CHECK(f3.trace(0b010) == trace_by_power_sum(f3, 0b010));
    CHECK(f3.trace(0b010) == 0);

    std::mt19937 rng(1);
    for (unsigned n = 2; n <= 12; ++n) {
        const FieldSpec f(n);
        std::uint64_t ones = 0;
        for (Elem a = 0; a < f.size(); ++a) ones += f.trace(a);
        CHECK(ones == f.size() / 2);  // the trace is balanced
        for (int i = 0; i < 50; ++i) {
            const Elem a = static_cast<Elem>(rng()) & f.max_elem();
            const Elem b = static_cast<Elem>(rng()) & f.max_elem();
            CHECK(f.trace(f.add(a, b)) == (f.trace(a) ^ f.trace(b)));
            CHECK(f.trace(f.sqr(a)) == f.trace(a));
            CHECK(f.trace(a) == trace_by_power_sum(f, a));
        }
    }
}

TEST_CASE("subfield membership and unit circle") {
    const FieldSpec f4(4);
    unsigned members = 0;
    for (Elem a = 0; a < 16; ++a) members += f4.is_in_subfield(a);
    CHECK(members == 4);
    CHECK(f4.is_in_subfield(0));
    CHECK(f4.is_in_subfield(1));

    unsigned circle = 0;
    for (Elem a = 1; a < 16; ++a) circle += f4.in_unit_circle(a);
    CHECK(circle == 5);  // 2^m + 1
    CHECK(f4.in_unit_circle(1));
    CHECK_FALSE(f4.in_unit_circle(0));

    // A multiplicative generator has order 15, not a divisor of 5.
    for (Elem g = 2; g < 16; ++g) {
        unsigned order = 1;
        Elem p = g;
        while (p != 1) {
            p = f4.mul(p, g);
            ++order;
        }
        if (order == 15) {
            CHECK_FALSE(f4.in_unit_circle(g));
            break;
        }
    }

    const FieldSpec f3(3);
    CHECK_THROWS_AS(f3.is_in_subfield(1), std::domain_error);
    CHECK_THROWS_AS(f3.in_unit_circle(1), std::domain_error);

    for (unsigned n = 2; n <= 12; n += 2) {
        const FieldSpec f(n);
        unsigned sub = 0, circ = 0;
        for (Elem a = 0; a < f.size(); ++a) {
            sub += f.is_in_subfield(a);
            if (a) circ += f.in_unit_circle(a);
        }
        CHECK(sub == (1u << f.m()));
        CHECK(circ == (1u << f.m()) + 1);
    }
}

TEST_CASE("subfield trace") {
    const FieldSpec f4(4);
    CHECK(f4.subfield_trace(0) == 0);
    CHECK(f4.subfield_trace(1) == 0);  // m = 2: 1 + 1

    // Generator u of GF(4) inside GF(16): u^4 = u, u not in {0,1}; then
    // u + u^2 = 1 because u^2 + u + 1 = 0.
    Elem u = 0;
    for (Elem a = 2; a < 16; ++a) {
        if (f4.is_in_subfield(a)) {
            u = a;
            break;
        }
    }
    REQUIRE(u != 0);
    CHECK(f4.add(f4.sqr(u), f4.add(u, 1)) == 0);
    CHECK(f4.subfield_trace(u) == 1);

    // Not defined off the subfield or in odd degree.
    bool threw = false;
    for (Elem a = 0; a < 16; ++a) {
        if (!f4.is_in_subfield(a)) {
            CHECK_THROWS_AS(f4.subfield_trace(a), std::domain_error);
            threw = true;
            break;
        }
    }
    CHECK(threw);

    // On subfield elements the absolute trace vanishes and the partial sum
    // stays in GF(2).
    for (unsigned n = 2; n <= 12; n += 2) {
        const FieldSpec f(n);
        for (Elem a = 0; a < f.size(); ++a) {
            if (!f.is_in_subfield(a)) continue;
            CHECK(f.trace(a) == 0);
            const int t = f.subfield_trace(a);
            CHECK((t == 0 || t == 1));
        }
    }
}

TEST_CASE("solve_quadratic spec cases") {
    const FieldSpec f3(3);
    std::mt19937 rng(2);
    for (unsigned n = 2; n <= 8; ++n) {
        const FieldSpec f(n);
        for (int i = 0; i < 20; ++i) {
            const Elem v = static_cast<Elem>(rng()) & f.max_elem();
            const auto roots = f.solve_quadratic(1, 0, v);
            REQUIRE(roots.size() == 1);
            CHECK(roots[0] == f.pow(v, std::uint64_t{1} << (n - 1)));
        }
    }
    CHECK(f3.solve_quadratic(1, 1, 0) == std::vector<Elem>{0, 1});
    CHECK(f3.solve_quadratic(1, 1, 1).empty());  // trace(1) = 1 for odd n
    CHECK_THROWS_AS(f3.solve_quadratic(0, 1, 1), std::invalid_argument);
}

TEST_CASE("solve_quadratic matches exhaustive evaluation") {
    for (unsigned n = 2; n <= 4; ++n) {
        const FieldSpec f(n);
        std::uint64_t two_roots = 0, no_roots = 0;
        for (Elem a = 1; a < f.size(); ++a) {
            for (Elem b = 0; b < f.size(); ++b) {
                for (Elem c = 0; c < f.size(); ++c) {
                    std::set<Elem> brute;
                    for (Elem x = 0; x < f.size(); ++x) {
                        if ((f.mul(a, f.sqr(x)) ^ f.mul(b, x) ^ c) == 0) brute.insert(x);
                    }
                    const auto roots = f.solve_quadratic(a, b, c);
                    REQUIRE(std::set<Elem>(roots.begin(), roots.end()) == brute);
                    REQUIRE(std::is_sorted(roots.begin(), roots.end()));
                    // Lemma trichotomy.
                    if (b == 0) {
                        CHECK(roots.size() == 1);
                    } else {
                        const int tr = f.trace(f.mul(f.mul(a, c), f.inv(f.sqr(b))));
                        CHECK(roots.size() == (tr == 0 ? 2 : 0));
                        (roots.size() == 2 ? two_roots : no_roots) += 1;
                    }
                }
            }
        }
        CHECK(two_roots == no_roots);  // balanced over b != 0
    }
}
