#include "fbtab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <thread>

#include "fbtab/kernels.hpp"

namespace fbtab {

namespace {

constexpr unsigned kMaxFullFbdtDegree = 6;
constexpr unsigned kMaxFullFbetDegree = 4;
constexpr unsigned kMaxSampledDegree = 10;
constexpr unsigned kMaxDenseVerifyDegree = 12;

class Collector {
public:
    explicit Collector(std::size_t cap) : cap_(cap) {}

    void add(const std::array<Elem, 4>& coords, unsigned arity, std::uint64_t predicted,
             std::uint64_t observed, std::string label) {
        ++total_;
        if (items_.size() < cap_) {
            items_.push_back(Mismatch{coords, arity, predicted, observed, std::move(label)});
        }
    }

    void merge(Collector&& other) {
        total_ += other.total_;
        for (auto& m : other.items_) {
            if (items_.size() >= cap_) break;
            items_.push_back(std::move(m));
        }
    }

    std::uint64_t total() const { return total_; }
    std::vector<Mismatch> take() { return std::move(items_); }

private:
    std::size_t cap_;
    std::uint64_t total_ = 0;
    std::vector<Mismatch> items_;
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

template <typename Fn>
std::vector<Collector> run_row_partition(std::uint32_t rows, unsigned workers,
                                         std::size_t cap, Fn&& fn) {
    workers = std::min<unsigned>(std::max(workers, 1u), rows);
    std::vector<Collector> parts;
    parts.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) parts.emplace_back(cap);
    if (workers == 1) {
        fn(0u, rows, parts[0]);
        return parts;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint32_t begin = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(rows) * w) / workers);
        const std::uint32_t end = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(rows) * (w + 1)) / workers);
        pool.emplace_back([&fn, &parts, begin, end, w] { fn(begin, end, parts[w]); });
    }
    for (auto& t : pool) t.join();
    return parts;
}

VerifyReport finish(std::string subject, std::uint64_t checked, Collector&& collected,
                    const Timer& timer, std::uint64_t seed) {
    VerifyReport report;
    report.subject = std::move(subject);
    report.checked_cells = checked;
    report.mismatch_total = collected.total();
    report.mismatches = collected.take();
    report.passed = report.mismatch_total == 0;
    report.elapsed_seconds = timer.seconds();
    report.seed = seed;
    return report;
}

std::string subject_string(const FieldSpec& f, TableKind kind, const char* what) {
    return std::string(table_kind_name(kind)) + " " + what + ", n=" +
           std::to_string(f.n()) + ", modulus " + to_hex(f.modulus());
}

// Dense cell-by-cell comparison for the 2D tables.
Collector compare_dense(const FieldSpec& f, TableKind kind, const Table2D& observed,
                        const VerifyOptions& opts) {
    const std::uint32_t side = observed.side();
    auto parts = run_row_partition(
        side, resolve_workers(opts.workers), opts.mismatch_cap,
        [&](std::uint32_t begin, std::uint32_t end, Collector& out) {
            for (std::uint32_t a = begin; a < end; ++a) {
                for (std::uint32_t b = 0; b < side; ++b) {
                    const EntryClassification e = cf_entry(f, kind, {a, b, 0, 0});
                    const std::uint32_t got = observed.at(a, b);
                    if (e.predicted != got) {
                        out.add({a, b, 0, 0}, 2, e.predicted, got, e.case_label);
                    }
                }
            }
        });
    Collector merged(opts.mismatch_cap);
    for (auto& p : parts) merged.merge(std::move(p));
    return merged;
}

void check_entrywise_budget(const FieldSpec& f, TableKind kind) {
    const unsigned n = f.n();
    switch (kind) {
        case TableKind::ddt:
        case TableKind::fbct:
            if (n > kMaxDenseVerifyDegree) {
                throw BudgetError(std::string(table_kind_name(kind)) +
                                  " entrywise verification at n=" + std::to_string(n) +
                                  " needs a dense 2^" + std::to_string(2 * n) +
                                  " table; supported up to n=" +
                                  std::to_string(kMaxDenseVerifyDegree));
            }
            return;
        case TableKind::fbdt:
        case TableKind::fbet:
            if (n > kMaxSampledDegree) {
                throw BudgetError(std::string(table_kind_name(kind)) +
                                  " entrywise verification at n=" + std::to_string(n) +
                                  " exceeds the sampled budget (support pass is 2^" +
                                  std::to_string(3 * n) + " steps); supported up to n=" +
                                  std::to_string(kMaxSampledDegree));
            }
            return;
        case TableKind::bct:
            throw std::invalid_argument("no closed form for the bct");
    }
}

}  // namespace

VerifyReport verify_entrywise(const FieldSpec& f, TableKind kind,
                              const VerifyOptions& opts) {
    check_entrywise_budget(f, kind);
    Timer timer;
    const SBox box = closed_form_sbox(f);
    const ComputeOptions copts{opts.workers, opts.force_scalar};
    const std::uint32_t size = box.size();
    const unsigned n = f.n();

    if (kind == TableKind::ddt || kind == TableKind::fbct) {
        const Table2D observed = kind == TableKind::ddt ? ddt(box, copts) : fbct(box, copts);
        Collector collected = compare_dense(f, kind, observed, opts);
        return finish(subject_string(f, kind, "entrywise"),
                      static_cast<std::uint64_t>(size) * size, std::move(collected), timer,
                      0);
    }

    if (kind == TableKind::fbdt && n <= kMaxFullFbdtDegree) {
        // Full 2^(3n) sweep: every (a, c, b) compared, zero cells included.
        const auto kern = kernels::select(opts.force_scalar);
        const Elem* lut = box.lut.data();
        auto parts = run_row_partition(
            size, resolve_workers(opts.workers), opts.mismatch_cap,
            [&](std::uint32_t begin, std::uint32_t end, Collector& out) {
                std::vector<std::uint32_t> g(size), ctab(size, 0), hits;
                for (std::uint32_t a = begin; a < end; ++a) {
                    kernels::xor_derivative(lut, size, a, g.data());
                    for (std::uint32_t b = 0; b < size; ++b) {
                        hits.clear();
                        kern.match_collect(g.data(), size, b, hits);
                        for (std::uint32_t x : hits) ++ctab[g[x]];
                        for (std::uint32_t c = 0; c < size; ++c) {
                            const EntryClassification e = cf_fbdt_entry(f, a, c, b);
                            if (e.predicted != ctab[c]) {
                                out.add({a, c, b, 0}, 3, e.predicted, ctab[c], e.case_label);
                            }
                        }
                        for (std::uint32_t x : hits) ctab[g[x]] = 0;
                    }
                }
            });
        Collector collected(opts.mismatch_cap);
        for (auto& p : parts) collected.merge(std::move(p));
        return finish(subject_string(f, kind, "entrywise (full sweep)"),
                      std::uint64_t{1} << (3 * n), std::move(collected), timer, 0);
    }

    if (kind == TableKind::fbet && n <= kMaxFullFbetDegree) {
        const auto kern = kernels::select(opts.force_scalar);
        const Elem* lut = box.lut.data();
        auto parts = run_row_partition(
            size, resolve_workers(opts.workers), opts.mismatch_cap,
            [&](std::uint32_t begin, std::uint32_t end, Collector& out) {
                std::vector<std::uint32_t> g(size), hits;
                std::vector<std::uint32_t> cd(static_cast<std::size_t>(size) * size, 0);
                for (std::uint32_t a = begin; a < end; ++a) {
                    kernels::xor_derivative(lut, size, a, g.data());
                    for (std::uint32_t b = 0; b < size; ++b) {
                        hits.clear();
                        kern.match_collect(g.data(), size, b, hits);
                        for (std::uint32_t x : hits) {
                            const Elem d = lut[x ^ a] ^ lut[x ^ a ^ b];
                            ++cd[(static_cast<std::size_t>(g[x]) << n) | d];
                        }
                        for (std::uint32_t c = 0; c < size; ++c) {
                            for (std::uint32_t d = 0; d < size; ++d) {
                                const EntryClassification e = cf_fbet_entry(f, a, c, b, d);
                                const std::uint32_t got =
                                    cd[(static_cast<std::size_t>(c) << n) | d];
                                if (e.predicted != got) {
                                    out.add({a, c, b, d}, 4, e.predicted, got, e.case_label);
                                }
                            }
                        }
                        for (std::uint32_t x : hits) {
                            const Elem d = lut[x ^ a] ^ lut[x ^ a ^ b];
                            cd[(static_cast<std::size_t>(g[x]) << n) | d] = 0;
                        }
                    }
                }
            });
        Collector collected(opts.mismatch_cap);
        for (auto& p : parts) collected.merge(std::move(p));
        return finish(subject_string(f, kind, "entrywise (full sweep)"),
                      std::uint64_t{1} << (4 * n), std::move(collected), timer, 0);
    }

    // Larger FBDT/FBET degrees: the sparse pass covers every nonzero cell,
    // then sampled tuples outside the support are re-counted pointwise.
    const bool is_fbdt = kind == TableKind::fbdt;
    const ComputeOptions sweep_opts{opts.workers, opts.force_scalar};
    const SweepResult sweep =
        boomerang_sweep(box, is_fbdt, !is_fbdt, sweep_opts);
    const SparseTable& table = is_fbdt ? *sweep.fbdt : *sweep.fbet;

    Collector collected(opts.mismatch_cap);
    std::uint64_t checked = 0;
    for (const auto& [key, count] : table.cells) {
        Elem coords[4];
        SparseTable::unpack(key, table.arity, coords);
        const EntryClassification e =
            cf_entry(f, kind, {coords[0], coords[1], coords[2], coords[3]});
        if (e.predicted != count) {
            collected.add({coords[0], coords[1], coords[2], coords[3]}, table.arity,
                          e.predicted, count, e.case_label);
        }
        ++checked;
    }

    // Sample tuples are drawn once, so the verdict depends only on the seed.
    std::mt19937_64 rng(opts.seed);
    const Elem mask = f.max_elem();
    std::vector<std::array<Elem, 4>> samples;
    samples.reserve(opts.zero_samples);
    for (std::uint64_t i = 0; i < opts.zero_samples; ++i) {
        const std::uint64_t r = rng();
        std::array<Elem, 4> tuple{static_cast<Elem>(r & mask),
                                  static_cast<Elem>((r >> 16) & mask),
                                  static_cast<Elem>((r >> 32) & mask),
                                  is_fbdt ? 0 : static_cast<Elem>((r >> 48) & mask)};
        const std::uint64_t key = is_fbdt
                                      ? SparseTable::pack3(tuple[0], tuple[1], tuple[2])
                                      : SparseTable::pack4(tuple[0], tuple[1], tuple[2],
                                                           tuple[3]);
        if (table.cells.count(key)) continue;  // already checked above
        samples.push_back(tuple);
    }

    const unsigned workers = resolve_workers(opts.workers);
    auto parts = run_row_partition(
        static_cast<std::uint32_t>(samples.size()), workers, opts.mismatch_cap,
        [&](std::uint32_t begin, std::uint32_t end, Collector& out) {
            for (std::uint32_t i = begin; i < end; ++i) {
                const auto& tup = samples[i];
                const EntryClassification e = cf_entry(f, kind, tup);
                const std::uint32_t got =
                    is_fbdt ? fbdt_entry(box, tup[0], tup[1], tup[2])
                            : fbet_entry(box, tup[0], tup[1], tup[2], tup[3]);
                if (e.predicted != got || got != 0) {
                    out.add(tup, table.arity, e.predicted, got, e.case_label);
                }
            }
        });
    for (auto& p : parts) collected.merge(std::move(p));
    checked += samples.size();

    return finish(subject_string(f, kind, "entrywise (support + sampled zeros)"), checked,
                  std::move(collected), timer, opts.seed);
}

VerifyReport verify_spectra(const FieldSpec& f, TableKind kind,
                            const VerifyOptions& opts) {
    Timer timer;
    const SBox box = closed_form_sbox(f);
    const ComputeOptions copts{opts.workers, opts.force_scalar};
    Collector collected(opts.mismatch_cap);
    std::uint64_t checked = 0;

    const auto compare_spectra = [&](const Spectrum& observed, const Spectrum& predicted) {
        auto keys = [](const Spectrum& s) {
            std::vector<std::uint64_t> v;
            for (const auto& [value, mult] : s.entries) v.push_back(value);
            return v;
        };
        std::vector<std::uint64_t> all = keys(observed);
        for (std::uint64_t k : keys(predicted)) {
            if (std::find(all.begin(), all.end(), k) == all.end()) all.push_back(k);
        }
        for (std::uint64_t value : all) {
            ++checked;
            const std::uint64_t want = predicted.multiplicity(value);
            const std::uint64_t got = observed.multiplicity(value);
            if (want != got) {
                collected.add({static_cast<Elem>(value), 0, 0, 0}, 2, want, got,
                              "spectrum multiplicity of " + std::to_string(value));
            }
        }
    };
    const auto check_value = [&](std::uint64_t predicted, std::uint64_t observed,
                                 const char* label) {
        ++checked;
        if (predicted != observed) {
            collected.add({0, 0, 0, 0}, 2, predicted, observed, label);
        }
    };

    switch (kind) {
        case TableKind::ddt: {
            const Table2D t = ddt(box, copts);
            compare_spectra(table_spectrum(t, kDomainAllPairs), cf_ddt_spectrum(f));
            check_value(f.size() * f.size(), table_spectrum(t, kDomainAllPairs).total(),
                        "spectrum total = 2^(2n)");
            // The two multiset identities over a != 0.
            const Spectrum diff = differential_spectrum(t);
            std::uint64_t count_sum = 0, weighted_sum = 0;
            for (const auto& [value, mult] : diff.entries) {
                count_sum += mult;
                weighted_sum += value * mult;
            }
            check_value(f.size() * (f.size() - 1), count_sum, "sum w_i = 2^n(2^n-1)");
            check_value(f.size() * (f.size() - 1), weighted_sum,
                        "sum i*w_i = 2^n(2^n-1)");
            check_value(cf_differential_uniformity(f), differential_uniformity(t),
                        "differential uniformity");
            break;
        }
        case TableKind::fbct: {
            const Table2D t = fbct(box, copts);
            compare_spectra(table_spectrum(t, kDomainAllPairs), cf_fbct_spectrum(f));
            check_value(f.size() * f.size(), table_spectrum(t, kDomainAllPairs).total(),
                        "spectrum total = 2^(2n)");
            check_value(cf_beta_c(f), feistel_boomerang_uniformity(t),
                        "feistel boomerang uniformity");
            break;
        }
        case TableKind::fbdt: {
            const SparseTable t = fbdt_table(box, copts);
            const Spectrum observed = t.spectrum(kDomainTriples);
            compare_spectra(observed, cf_fbdt_spectrum(f));
            check_value(std::uint64_t{1} << (3 * f.n()), observed.total(),
                        "spectrum total = 2^(3n)");
            check_value(cf_beta_d(f), feistel_boomerang_differential_uniformity(t),
                        "feistel boomerang differential uniformity");
            break;
        }
        case TableKind::fbet: {
            const SparseTable t = fbet_table(box, copts);
            const Spectrum observed = t.spectrum(kDomainQuads);
            compare_spectra(observed, cf_fbet_spectrum(f));
            check_value(std::uint64_t{1} << (4 * f.n()), observed.total(),
                        "spectrum total = 2^(4n)");
            check_value(cf_beta_e(f), feistel_boomerang_extended_uniformity(t),
                        "feistel boomerang extended uniformity");
            break;
        }
        case TableKind::bct:
            throw std::invalid_argument("no closed form for the bct");
    }

    return finish(subject_string(f, kind, "spectra"), checked, std::move(collected), timer,
                  0);
}

VerifyReport verify_structural(const SBox& s, const VerifyOptions& opts) {
    Timer timer;
    const unsigned n = s.n();
    const std::uint32_t size = s.size();
    const ComputeOptions copts{opts.workers, opts.force_scalar};
    Collector collected(opts.mismatch_cap);
    std::uint64_t checked = 0;

    const auto expect = [&](bool ok, std::array<Elem, 4> coords, unsigned arity,
                            std::uint64_t want, std::uint64_t got, const char* label) {
        ++checked;
        if (!ok) collected.add(coords, arity, want, got, label);
    };

    const Table2D d = ddt(s, copts);
    for (std::uint32_t a = 0; a < size; ++a) {
        std::uint64_t row_sum = 0;
        for (std::uint32_t b = 0; b < size; ++b) {
            const std::uint32_t v = d.at(a, b);
            row_sum += v;
            expect(v % 2 == 0, {a, b, 0, 0}, 2, 0, v, "ddt entry even");
        }
        expect(row_sum == size, {a, 0, 0, 0}, 2, size, row_sum, "ddt row sum = 2^n");
    }
    expect(d.at(0, 0) == size, {0, 0, 0, 0}, 2, size, d.at(0, 0), "ddt(0,0) = 2^n");

    const Table2D fb = fbct(s, copts);
    std::uint32_t off_max = 0;
    for (std::uint32_t a = 0; a < size; ++a) {
        for (std::uint32_t b = 0; b < size; ++b) {
            const std::uint32_t v = fb.at(a, b);
            expect(v == fb.at(b, a), {a, b, 0, 0}, 2, fb.at(b, a), v, "fbct symmetry");
            expect(v % 4 == 0, {a, b, 0, 0}, 2, 0, v, "fbct multiplicity mod 4");
            expect(v == fb.at(a, a ^ b), {a, b, 0, 0}, 2, fb.at(a, a ^ b), v,
                   "fbct(a,b) = fbct(a,a+b)");
            if (a != 0 && b != 0 && a != b) off_max = std::max(off_max, v);
        }
        expect(fb.at(a, 0) == size, {a, 0, 0, 0}, 2, size, fb.at(a, 0),
               "fbct first column = 2^n");
        expect(fb.at(0, a) == size, {0, a, 0, 0}, 2, size, fb.at(0, a),
               "fbct first line = 2^n");
        expect(fb.at(a, a) == size, {a, a, 0, 0}, 2, size, fb.at(a, a),
               "fbct diagonal = 2^n");
    }

    const bool apn = differential_uniformity(d) == 2;
    expect(apn == (off_max == 0), {0, 0, 0, 0}, 2, apn, off_max,
           "apn iff fbct zero off the degenerate cells");

    // Marginalization: sum_c FBDT(a,c,b) = FBCT(a,b); for n <= 6 additionally
    // sum_d FBET(a,c,b,d) = FBDT(a,c,b).
    const bool with_fbet = n <= kMaxFullFbdtDegree;
    const SweepResult sweep = boomerang_sweep(s, true, with_fbet, copts);
    {
        std::vector<std::uint64_t> sums(static_cast<std::size_t>(size) * size, 0);
        for (const auto& [key, count] : sweep.fbdt->cells) {
            Elem coords[4];
            SparseTable::unpack(key, 3, coords);
            sums[(static_cast<std::size_t>(coords[0]) << n) | coords[2]] += count;
        }
        for (std::uint32_t a = 0; a < size; ++a) {
            for (std::uint32_t b = 0; b < size; ++b) {
                const std::uint64_t got = sums[(static_cast<std::size_t>(a) << n) | b];
                expect(got == fb.at(a, b), {a, b, 0, 0}, 2, fb.at(a, b), got,
                       "sum_c fbdt(a,c,b) = fbct(a,b)");
            }
        }
    }
    if (with_fbet) {
        std::map<std::uint64_t, std::uint64_t> sums;
        for (const auto& [key, count] : sweep.fbet->cells) {
            Elem coords[4];
            SparseTable::unpack(key, 4, coords);
            sums[SparseTable::pack3(coords[0], coords[1], coords[2])] += count;
        }
        for (const auto& [key, want] : sweep.fbdt->cells) {
            const auto it = sums.find(key);
            const std::uint64_t got = it == sums.end() ? 0 : it->second;
            Elem coords[4];
            SparseTable::unpack(key, 3, coords);
            expect(got == want, {coords[0], coords[1], coords[2], 0}, 3, want, got,
                   "sum_d fbet(a,c,b,d) = fbdt(a,c,b)");
        }
        for (const auto& [key, got] : sums) {
            if (!sweep.fbdt->cells.count(key)) {
                Elem coords[4];
                SparseTable::unpack(key, 3, coords);
                expect(false, {coords[0], coords[1], coords[2], 0}, 3, 0, got,
                       "sum_d fbet(a,c,b,d) = fbdt(a,c,b)");
            }
        }
    }

    std::string subject = "structural suite, n=" + std::to_string(n);
    if (s.exponent) subject += ", x^" + std::to_string(*s.exponent);
    return finish(std::move(subject), checked, std::move(collected), timer, 0);
}

}  // namespace fbtab
