#include "fbtab/kernels.hpp"

#if FBTAB_HAVE_AVX2

#include <immintrin.h>

#include <bit>

namespace fbtab::kernels {

namespace {

// Lane mask of x..x+7 where v[x] == v[x ^ s]. v[x ^ s] is a gather since
// XOR by s does not preserve contiguity.
inline int match_mask8(const std::uint32_t* v, std::uint32_t x, __m256i s_vec,
                       __m256i lane) {
    const __m256i lhs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + x));
    const __m256i idx = _mm256_xor_si256(
        _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(x)), lane), s_vec);
    const __m256i rhs =
        _mm256_i32gather_epi32(reinterpret_cast<const int*>(v), idx, 4);
    const __m256i eq = _mm256_cmpeq_epi32(lhs, rhs);
    return _mm256_movemask_ps(_mm256_castsi256_ps(eq));
}

}  // namespace

std::uint32_t match_count_avx2(const std::uint32_t* v, std::uint32_t size,
                               std::uint32_t s) {
    std::uint32_t count = 0;
    std::uint32_t x = 0;
    if (size >= 8) {
        const __m256i s_vec = _mm256_set1_epi32(static_cast<int>(s));
        const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
        for (; x + 8 <= size; x += 8) {
            count += static_cast<std::uint32_t>(
                std::popcount(static_cast<unsigned>(match_mask8(v, x, s_vec, lane))));
        }
    }
    for (; x < size; ++x) {
        count += (v[x] == v[x ^ s]);
    }
    return count;
}

void match_collect_avx2(const std::uint32_t* v, std::uint32_t size, std::uint32_t s,
                        std::vector<std::uint32_t>& out) {
    std::uint32_t x = 0;
    if (size >= 8) {
        const __m256i s_vec = _mm256_set1_epi32(static_cast<int>(s));
        const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
        for (; x + 8 <= size; x += 8) {
            unsigned mask = static_cast<unsigned>(match_mask8(v, x, s_vec, lane));
            while (mask) {
                const unsigned bit = static_cast<unsigned>(std::countr_zero(mask));
                out.push_back(x + bit);
                mask &= mask - 1;
            }
        }
    }
    for (; x < size; ++x) {
        if (v[x] == v[x ^ s]) out.push_back(x);
    }
}

}  // namespace fbtab::kernels

#endif  // FBTAB_HAVE_AVX2
