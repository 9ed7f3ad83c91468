#pragma once

#include <cstdint>
#include <vector>

// Inner-loop kernels shared by the table computations. Everything reduces
// to scans of the form "compare v[x] against v[x ^ s]": counting matches
// gives one table cell, collecting the matching x values feeds the sparse
// spectrum passes. Scalar versions are the reference; the AVX2 versions
// are selected at runtime and must agree bit-for-bit.

namespace fbtab::kernels {

// #{x in [0, size) : v[x] == v[x ^ s]}; size is a power of two, s < size.
using MatchCountFn = std::uint32_t (*)(const std::uint32_t* v, std::uint32_t size,
                                       std::uint32_t s);

// Appends each matching x to out, in ascending order.
using MatchCollectFn = void (*)(const std::uint32_t* v, std::uint32_t size,
                                std::uint32_t s, std::vector<std::uint32_t>& out);

std::uint32_t match_count_scalar(const std::uint32_t* v, std::uint32_t size,
                                 std::uint32_t s);
void match_collect_scalar(const std::uint32_t* v, std::uint32_t size, std::uint32_t s,
                          std::vector<std::uint32_t>& out);

#if FBTAB_HAVE_AVX2
std::uint32_t match_count_avx2(const std::uint32_t* v, std::uint32_t size,
                               std::uint32_t s);
void match_collect_avx2(const std::uint32_t* v, std::uint32_t size, std::uint32_t s,
                        std::vector<std::uint32_t>& out);
#endif

struct Dispatch {
    MatchCountFn match_count;
    MatchCollectFn match_collect;
    const char* name;
};

bool avx2_available();

// force_scalar pins the reference implementation regardless of CPU support.
Dispatch select(bool force_scalar = false);

// out[x] = lut[x] ^ lut[x ^ a]; out must hold size entries.
void xor_derivative(const std::uint32_t* lut, std::uint32_t size, std::uint32_t a,
                    std::uint32_t* out);

}  // namespace fbtab::kernels
