#include "fbtab/kernels.hpp"

namespace fbtab::kernels {

std::uint32_t match_count_scalar(const std::uint32_t* v, std::uint32_t size,
                                 std::uint32_t s) {
    std::uint32_t count = 0;
    for (std::uint32_t x = 0; x < size; ++x) {
        count += (v[x] == v[x ^ s]);
    }
    return count;
}

void match_collect_scalar(const std::uint32_t* v, std::uint32_t size, std::uint32_t s,
                          std::vector<std::uint32_t>& out) {
    for (std::uint32_t x = 0; x < size; ++x) {
        if (v[x] == v[x ^ s]) out.push_back(x);
    }
}

bool avx2_available() {
#if FBTAB_HAVE_AVX2
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Dispatch select(bool force_scalar) {
#if FBTAB_HAVE_AVX2
    if (!force_scalar && avx2_available()) {
        return Dispatch{match_count_avx2, match_collect_avx2, "avx2"};
    }
#else
    (void)force_scalar;
#endif
    return Dispatch{match_count_scalar, match_collect_scalar, "scalar"};
}

void xor_derivative(const std::uint32_t* lut, std::uint32_t size, std::uint32_t a,
                    std::uint32_t* out) {
    for (std::uint32_t x = 0; x < size; ++x) {
        out[x] = lut[x] ^ lut[x ^ a];
    }
}

}  // namespace fbtab::kernels
