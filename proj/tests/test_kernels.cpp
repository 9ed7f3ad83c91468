#include <doctest.h>

#include <random>

#include "fbtab/kernels.hpp"

using namespace fbtab;

TEST_CASE("kernel dispatch") {
    const auto scalar = kernels::select(true);
    CHECK(std::string(scalar.name) == "scalar");
    const auto active = kernels::select(false);
    if (kernels::avx2_available()) {
        CHECK(std::string(active.name) == "avx2");
    } else {
        CHECK(std::string(active.name) == "scalar");
    }
}

TEST_CASE("xor_derivative") {
    const std::vector<std::uint32_t> lut{3, 1, 4, 1, 5, 9, 2, 6};
    std::vector<std::uint32_t> g(8);
    kernels::xor_derivative(lut.data(), 8, 5, g.data());
    for (std::uint32_t x = 0; x < 8; ++x) CHECK(g[x] == (lut[x] ^ lut[x ^ 5]));
}

TEST_CASE("scalar and simd kernels agree") {
    std::mt19937 rng(7);
    const auto simd = kernels::select(false);
    for (unsigned n = 2; n <= 13; ++n) {
        const std::uint32_t size = 1u << n;
        std::vector<std::uint32_t> v(size);
        // Narrow value range makes matches frequent enough to exercise the
        // collect path heavily.
        for (auto& x : v) x = rng() % (n <= 4 ? 4u : (size >> 2));
        std::vector<std::uint32_t> shifts{0u, 1u, size - 1};
        for (int i = 0; i < 6; ++i) shifts.push_back(rng() % size);
        for (std::uint32_t s : shifts) {
            const std::uint32_t want = kernels::match_count_scalar(v.data(), size, s);
            CHECK(simd.match_count(v.data(), size, s) == want);
            std::vector<std::uint32_t> a, b;
            kernels::match_collect_scalar(v.data(), size, s, a);
            simd.match_collect(v.data(), size, s, b);
            CHECK(a == b);
            CHECK(a.size() == want);
            CHECK(std::is_sorted(a.begin(), a.end()));
        }
    }
}
