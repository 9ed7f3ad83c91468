#include "fbtab/tables.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

#include "fbtab/kernels.hpp"

namespace fbtab {

namespace {

constexpr unsigned kMaxDenseDegree = 12;  // 2^(2n) cells, 2^(3n) passes

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Contiguous chunks of [0, rows) across the worker pool. Each chunk owns
// its output rows, so the merged result never depends on scheduling.
template <typename Fn>
void parallel_rows(std::uint32_t rows, unsigned workers, Fn&& fn) {
    workers = std::min<unsigned>(std::max(workers, 1u), rows);
    if (workers == 1) {
        fn(0u, rows, 0u);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint32_t begin = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(rows) * w) / workers);
        const std::uint32_t end = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(rows) * (w + 1)) / workers);
        pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
    }
    for (auto& t : pool) t.join();
}

void check_dense_budget(const SBox& s, const char* what, unsigned pass_exponent) {
    const unsigned n = s.n();
    if (n > kMaxDenseDegree) {
        throw BudgetError(std::string(what) + " at n=" + std::to_string(n) +
                          " needs a 2^" + std::to_string(pass_exponent * n) +
                          " enumeration; supported up to n=" +
                          std::to_string(kMaxDenseDegree) +
                          " (point queries stay available at any degree)");
    }
}

}  // namespace

// ---- Spectrum / SparseTable ------------------------------------------------

std::uint64_t Spectrum::total() const {
    std::uint64_t sum = 0;
    for (const auto& [value, mult] : entries) sum += mult;
    return sum;
}

std::uint64_t Spectrum::multiplicity(std::uint64_t value) const {
    const auto it = entries.find(value);
    return it == entries.end() ? 0 : it->second;
}

void SparseTable::unpack(std::uint64_t key, unsigned arity, Elem out[4]) {
    if (arity == 3) {
        out[0] = static_cast<Elem>(key >> 32);
        out[1] = static_cast<Elem>((key >> 16) & 0xffff);
        out[2] = static_cast<Elem>(key & 0xffff);
        out[3] = 0;
    } else {
        out[0] = static_cast<Elem>(key >> 48);
        out[1] = static_cast<Elem>((key >> 32) & 0xffff);
        out[2] = static_cast<Elem>((key >> 16) & 0xffff);
        out[3] = static_cast<Elem>(key & 0xffff);
    }
}

std::uint64_t SparseTable::total_cells() const {
    return std::uint64_t{1} << (arity * n);
}

std::uint32_t SparseTable::at3(Elem a, Elem c, Elem b) const {
    const auto it = cells.find(pack3(a, c, b));
    return it == cells.end() ? 0 : it->second;
}

std::uint32_t SparseTable::at4(Elem a, Elem c, Elem b, Elem d) const {
    const auto it = cells.find(pack4(a, c, b, d));
    return it == cells.end() ? 0 : it->second;
}

Spectrum SparseTable::spectrum(std::string domain) const {
    Spectrum spec;
    spec.domain = std::move(domain);
    for (const auto& [key, count] : cells) {
        ++spec.entries[count];
    }
    const std::uint64_t zero = total_cells() - cells.size();
    if (zero) spec.entries[0] += zero;
    return spec;
}

Spectrum table_spectrum(const Table2D& t, std::string domain) {
    Spectrum spec;
    spec.domain = std::move(domain);
    for (std::uint32_t c : t.counts) ++spec.entries[c];
    return spec;
}

// ---- DDT --------------------------------------------------------------------

Table2D ddt(const SBox& s, const ComputeOptions& opts) {
    check_dense_budget(s, "ddt", 2);
    const std::uint32_t size = s.size();
    Table2D t{s.n(), std::vector<std::uint32_t>(static_cast<std::size_t>(size) * size, 0)};
    const Elem* lut = s.lut.data();
    parallel_rows(size, resolve_workers(opts.workers),
                  [&](std::uint32_t begin, std::uint32_t end, unsigned) {
                      for (std::uint32_t a = begin; a < end; ++a) {
                          std::uint32_t* row = &t.counts[static_cast<std::size_t>(a) << t.n];
                          for (std::uint32_t x = 0; x < size; ++x) {
                              ++row[lut[x] ^ lut[x ^ a]];
                          }
                      }
                  });
    return t;
}

unsigned differential_uniformity(const Table2D& t) {
    std::uint32_t best = 0;
    const std::uint32_t side = t.side();
    for (std::uint32_t a = 1; a < side; ++a) {
        for (std::uint32_t b = 0; b < side; ++b) {
            best = std::max(best, t.at(a, b));
        }
    }
    return best;
}

unsigned differential_uniformity(const SBox& s, const ComputeOptions& opts) {
    return differential_uniformity(ddt(s, opts));
}

Spectrum differential_spectrum(const Table2D& t) {
    Spectrum spec;
    spec.domain = kDomainNonzeroA;
    const std::uint32_t side = t.side();
    for (std::uint32_t a = 1; a < side; ++a) {
        for (std::uint32_t b = 0; b < side; ++b) {
            ++spec.entries[t.at(a, b)];
        }
    }
    return spec;
}

Spectrum differential_spectrum(const SBox& s, const ComputeOptions& opts) {
    return differential_spectrum(ddt(s, opts));
}

// ---- BCT --------------------------------------------------------------------

// Per column b, bucket x by F^{-1}(F(x)+b) ^ x: any two entries x, y of one
// bucket satisfy the boomerang equation at a = x ^ y, so each ordered
// bucket pair feeds one cell of column b. Work is proportional to the
// table mass instead of a cubic scan.
Table2D bct(const SBox& s, const ComputeOptions& opts) {
    check_dense_budget(s, "bct", 2);
    const SBox inv = inverse(s);  // rejects non-permutations
    const std::uint32_t size = s.size();
    Table2D t{s.n(), std::vector<std::uint32_t>(static_cast<std::size_t>(size) * size, 0)};
    const Elem* lut = s.lut.data();
    const Elem* ilut = inv.lut.data();
    parallel_rows(size, resolve_workers(opts.workers),
                  [&](std::uint32_t begin, std::uint32_t end, unsigned) {
                      std::vector<std::uint32_t> h(size), start(size + 1), order(size);
                      for (std::uint32_t b = begin; b < end; ++b) {
                          for (std::uint32_t x = 0; x < size; ++x) {
                              h[x] = ilut[lut[x] ^ b] ^ x;
                          }
                          std::fill(start.begin(), start.end(), 0);
                          for (std::uint32_t x = 0; x < size; ++x) ++start[h[x] + 1];
                          for (std::uint32_t v = 0; v < size; ++v) start[v + 1] += start[v];
                          {
                              std::vector<std::uint32_t> cursor(start.begin(), start.end() - 1);
                              for (std::uint32_t x = 0; x < size; ++x) order[cursor[h[x]]++] = x;
                          }
                          for (std::uint32_t v = 0; v < size; ++v) {
                              for (std::uint32_t i = start[v]; i < start[v + 1]; ++i) {
                                  for (std::uint32_t j = start[v]; j < start[v + 1]; ++j) {
                                      ++t.at(order[i] ^ order[j], b);
                                  }
                              }
                          }
                      }
                  });
    return t;
}

unsigned boomerang_uniformity(const Table2D& t) {
    std::uint32_t best = 0;
    const std::uint32_t side = t.side();
    for (std::uint32_t a = 1; a < side; ++a) {
        for (std::uint32_t b = 1; b < side; ++b) {
            best = std::max(best, t.at(a, b));
        }
    }
    return best;
}

unsigned boomerang_uniformity(const SBox& s, const ComputeOptions& opts) {
    return boomerang_uniformity(bct(s, opts));
}

// ---- FBCT -------------------------------------------------------------------

// FBCT(a, b) counts x with G(x) = G(x ^ b) for the derivative
// G(x) = F(x) ^ F(x ^ a), which is exactly the match-count kernel.
Table2D fbct(const SBox& s, const ComputeOptions& opts) {
    check_dense_budget(s, "fbct", 3);
    const std::uint32_t size = s.size();
    Table2D t{s.n(), std::vector<std::uint32_t>(static_cast<std::size_t>(size) * size, 0)};
    const Elem* lut = s.lut.data();
    const auto kern = kernels::select(opts.force_scalar);
    parallel_rows(size, resolve_workers(opts.workers),
                  [&](std::uint32_t begin, std::uint32_t end, unsigned) {
                      std::vector<std::uint32_t> g(size);
                      for (std::uint32_t a = begin; a < end; ++a) {
                          kernels::xor_derivative(lut, size, a, g.data());
                          std::uint32_t* row = &t.counts[static_cast<std::size_t>(a) << t.n];
                          for (std::uint32_t b = 0; b < size; ++b) {
                              row[b] = kern.match_count(g.data(), size, b);
                          }
                      }
                  });
    return t;
}

unsigned feistel_boomerang_uniformity(const Table2D& t) {
    std::uint32_t best = 0;
    const std::uint32_t side = t.side();
    for (std::uint32_t a = 1; a < side; ++a) {
        for (std::uint32_t b = 1; b < side; ++b) {
            if (b == a) continue;
            best = std::max(best, t.at(a, b));
        }
    }
    return best;
}

unsigned feistel_boomerang_uniformity(const SBox& s, const ComputeOptions& opts) {
    return feistel_boomerang_uniformity(fbct(s, opts));
}

// ---- FBDT / FBET -------------------------------------------------------------

std::uint32_t fbdt_entry(const SBox& s, Elem a, Elem c, Elem b) {
    const std::uint32_t size = s.size();
    const Elem* lut = s.lut.data();
    std::uint32_t count = 0;
    for (std::uint32_t x = 0; x < size; ++x) {
        const Elem da = lut[x] ^ lut[x ^ a];
        count += (da == c) && ((da ^ lut[x ^ b] ^ lut[x ^ a ^ b]) == 0);
    }
    return count;
}

std::uint32_t fbet_entry(const SBox& s, Elem a, Elem c, Elem b, Elem d) {
    const std::uint32_t size = s.size();
    const Elem* lut = s.lut.data();
    std::uint32_t count = 0;
    for (std::uint32_t x = 0; x < size; ++x) {
        const Elem da = lut[x] ^ lut[x ^ a];
        const Elem db = lut[x ^ a] ^ lut[x ^ a ^ b];
        count += (da == c) && (db == d) && ((da ^ lut[x ^ b] ^ lut[x ^ a ^ b]) == 0);
    }
    return count;
}

SweepResult boomerang_sweep(const SBox& s, bool want_fbdt, bool want_fbet,
                            const ComputeOptions& opts) {
    check_dense_budget(s, "fbdt/fbet sweep", 3);
    const std::uint32_t size = s.size();
    const Elem* lut = s.lut.data();
    const auto kern = kernels::select(opts.force_scalar);
    const unsigned workers = resolve_workers(opts.workers);

    using Accum = std::unordered_map<std::uint64_t, std::uint32_t>;
    std::vector<Accum> fbdt_parts(workers);
    std::vector<Accum> fbet_parts(workers);

    parallel_rows(size, workers, [&](std::uint32_t begin, std::uint32_t end, unsigned w) {
        std::vector<std::uint32_t> g(size);
        std::vector<std::uint32_t> hits;
        std::vector<std::uint32_t> ctab(size, 0);
        std::vector<std::uint32_t> touched;
        std::vector<std::uint32_t> cd;
        hits.reserve(size);
        for (std::uint32_t a = begin; a < end; ++a) {
            kernels::xor_derivative(lut, size, a, g.data());
            for (std::uint32_t b = 0; b < size; ++b) {
                hits.clear();
                kern.match_collect(g.data(), size, b, hits);
                if (want_fbdt) {
                    for (std::uint32_t x : hits) {
                        const Elem c = g[x];
                        if (ctab[c]++ == 0) touched.push_back(c);
                    }
                    for (std::uint32_t c : touched) {
                        fbdt_parts[w][SparseTable::pack3(a, c, b)] += ctab[c];
                        ctab[c] = 0;
                    }
                    touched.clear();
                }
                if (want_fbet) {
                    cd.clear();
                    for (std::uint32_t x : hits) {
                        const Elem c = g[x];
                        const Elem d = lut[x ^ a] ^ lut[x ^ a ^ b];
                        cd.push_back((c << 16) | d);
                    }
                    std::sort(cd.begin(), cd.end());
                    for (std::size_t i = 0; i < cd.size();) {
                        std::size_t j = i;
                        while (j < cd.size() && cd[j] == cd[i]) ++j;
                        fbet_parts[w][SparseTable::pack4(a, cd[i] >> 16, b, cd[i] & 0xffff)] +=
                            static_cast<std::uint32_t>(j - i);
                        i = j;
                    }
                }
            }
        }
    });

    SweepResult result;
    if (want_fbdt) {
        SparseTable t{s.n(), 3, {}};
        for (const auto& part : fbdt_parts) {
            for (const auto& [key, count] : part) t.cells[key] += count;
        }
        result.fbdt = std::move(t);
    }
    if (want_fbet) {
        SparseTable t{s.n(), 4, {}};
        for (const auto& part : fbet_parts) {
            for (const auto& [key, count] : part) t.cells[key] += count;
        }
        result.fbet = std::move(t);
    }
    return result;
}

SparseTable fbdt_table(const SBox& s, const ComputeOptions& opts) {
    return std::move(*boomerang_sweep(s, true, false, opts).fbdt);
}

SparseTable fbet_table(const SBox& s, const ComputeOptions& opts) {
    return std::move(*boomerang_sweep(s, false, true, opts).fbet);
}

Spectrum fbdt_spectrum(const SBox& s, const ComputeOptions& opts) {
    return fbdt_table(s, opts).spectrum(kDomainTriples);
}

Spectrum fbet_spectrum(const SBox& s, const ComputeOptions& opts) {
    return fbet_table(s, opts).spectrum(kDomainQuads);
}

unsigned feistel_boomerang_differential_uniformity(const SparseTable& t) {
    std::uint32_t best = 0;
    for (const auto& [key, count] : t.cells) {
        if (key >> 16 == 0) continue;  // (a, c) == (0, 0)
        best = std::max(best, count);
    }
    return best;
}

unsigned feistel_boomerang_differential_uniformity(const SBox& s,
                                                   const ComputeOptions& opts) {
    return feistel_boomerang_differential_uniformity(fbdt_table(s, opts));
}

unsigned feistel_boomerang_extended_uniformity(const SparseTable& t) {
    std::uint32_t best = 0;
    for (const auto& [key, count] : t.cells) {
        if (key == 0) continue;
        best = std::max(best, count);
    }
    return best;
}

unsigned feistel_boomerang_extended_uniformity(const SBox& s,
                                               const ComputeOptions& opts) {
    return feistel_boomerang_extended_uniformity(fbet_table(s, opts));
}

}  // namespace fbtab
