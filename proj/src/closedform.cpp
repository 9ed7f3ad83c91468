#include "fbtab/closedform.hpp"

#include <stdexcept>

namespace fbtab {

namespace {

// Collects the matching theorem cases for one tuple. The case sets of a
// theorem are disjoint, so more than one hit is a hard failure; a miss is
// only allowed where the theorem has an explicit "otherwise" class.
class CaseCollector {
public:
    void consider(bool cond, const char* label, std::uint32_t value) {
        if (!cond) return;
        ++hits_;
        label_ = label;
        value_ = value;
    }

    void finish(EntryClassification& e, bool has_otherwise, const char* context) const {
        if (hits_ == 1) {
            e.case_label = label_;
            e.predicted = value_;
            return;
        }
        if (hits_ == 0 && has_otherwise) {
            e.case_label = "otherwise";
            e.predicted = 0;
            return;
        }
        throw std::logic_error(std::string(context) + ": tuple matches " +
                               std::to_string(hits_) + " theorem cases");
    }

private:
    int hits_ = 0;
    const char* label_ = nullptr;
    std::uint32_t value_ = 0;
};

// num / den^(2^(m+1)-1), den != 0.
Elem reduced_ratio(const FieldSpec& f, Elem num, Elem den) {
    return f.mul(num, f.inv(f.pow(den, closed_form_exponent(f.n()))));
}

Elem pow_2m(const FieldSpec& f, Elem t) {
    for (unsigned i = 0; i < f.m(); ++i) t = f.sqr(t);
    return t;
}

// Tr(1 / t^(2^m+1)), the odd-degree entry test; t != 0.
int odd_trace_test(const FieldSpec& f, Elem t) {
    const Elem u = f.mul(pow_2m(f, t), t);
    return f.trace(f.inv(u));
}

// Tr_1^m((t^(2^m)+t+1) / (t^(2^(m+1)+2)+1)), the even-degree entry test.
// Defined for t outside the unit circle, where the denominator is nonzero;
// the argument always lands in GF(2^m), which subfield_trace enforces.
int even_trace_test(const FieldSpec& f, Elem t) {
    const Elem tm = pow_2m(f, t);
    const Elem u = f.mul(tm, t);  // t^(2^m+1)
    const Elem num = tm ^ t ^ 1u;
    const Elem den = f.sqr(u) ^ 1u;
    return f.subfield_trace(f.mul(num, f.inv(den)));
}

std::uint32_t full_count(const FieldSpec& f) { return std::uint32_t{1} << f.n(); }
std::uint32_t half_count(const FieldSpec& f) { return std::uint32_t{1} << f.m(); }

// Accumulating keeps value classes correct when 2^m degenerates to 2 (m = 1),
// and zero-sized classes are dropped to match brute-force spectra.
void add_class(Spectrum& spec, std::uint64_t value, std::uint64_t mult) {
    if (mult) spec.entries[value] += mult;
}

void require_fits_u64(const FieldSpec& f, unsigned arity, const char* what) {
    if (arity * f.n() > 63) {
        throw BudgetError(std::string(what) + " multiplicities at n=" +
                          std::to_string(f.n()) + " exceed 64 bits (domain 2^" +
                          std::to_string(arity * f.n()) + ")");
    }
}

}  // namespace

const char* table_kind_name(TableKind kind) {
    switch (kind) {
        case TableKind::ddt: return "ddt";
        case TableKind::bct: return "bct";
        case TableKind::fbct: return "fbct";
        case TableKind::fbdt: return "fbdt";
        case TableKind::fbet: return "fbet";
    }
    return "?";
}

TableKind table_kind_from_name(const std::string& name) {
    if (name == "ddt") return TableKind::ddt;
    if (name == "bct") return TableKind::bct;
    if (name == "fbct") return TableKind::fbct;
    if (name == "fbdt") return TableKind::fbdt;
    if (name == "fbet") return TableKind::fbet;
    throw std::invalid_argument("unknown table kind '" + name + "'");
}

unsigned table_kind_arity(TableKind kind) {
    switch (kind) {
        case TableKind::fbdt: return 3;
        case TableKind::fbet: return 4;
        default: return 2;
    }
}

// ---- DDT --------------------------------------------------------------------

EntryClassification cf_ddt_entry(const FieldSpec& f, Elem a, Elem b) {
    EntryClassification e;
    e.table = TableKind::ddt;
    e.coords = {a, b, 0, 0};
    e.arity = 2;

    CaseCollector cs;
    const bool a0 = a == 0, b0 = b == 0;
    cs.consider(a0 && b0, "a=b=0", full_count(f));
    cs.consider(a0 && !b0, "a=0, b!=0", 0);

    if (!f.even()) {
        cs.consider(!a0 && b0, "b=0", 0);
        if (!a0 && !b0) {
            const Elem t = reduced_ratio(f, b, a);
            e.t1 = t;
            const int tr = odd_trace_test(f, t);
            cs.consider(tr == 1, "Tr=1", 2);
            cs.consider(tr == 0, "Tr=0", 0);
        }
    } else {
        const bool m_odd = f.m() % 2 == 1;
        cs.consider(!a0 && b0 && m_odd, "b=0, m odd", 2);
        cs.consider(!a0 && b0 && !m_odd, "b=0, m even", 0);
        if (!a0 && !b0) {
            const Elem t = reduced_ratio(f, b, a);
            e.t1 = t;
            const bool unit = f.in_unit_circle(t);
            cs.consider(t == 1, "t=1", half_count(f));
            cs.consider(t != 1 && unit, "t in U\\{1}", 0);
            if (!unit) {
                const int tr = even_trace_test(f, t);
                cs.consider(tr == 1, "t notin U, Tr_m=1", 2);
                cs.consider(tr == 0, "t notin U, Tr_m=0", 0);
            }
        }
    }
    cs.finish(e, false, "cf_ddt_entry");
    return e;
}

Spectrum cf_ddt_spectrum(const FieldSpec& f) {
    const std::uint64_t N = f.size();
    Spectrum spec;
    spec.domain = kDomainAllPairs;
    add_class(spec, N, 1);
    if (!f.even()) {
        add_class(spec, 2, (N / 2) * (N - 1));
        add_class(spec, 0, N * N / 2 + N / 2 - 1);
    } else {
        const std::uint64_t M = std::uint64_t{1} << f.m();
        add_class(spec, M, N - 1);
        add_class(spec, 2, (N / 2 - M / 2) * (N - 1));
        add_class(spec, 0, (N / 2 + M / 2) * (N - 1));
    }
    return spec;
}

unsigned cf_differential_uniformity(const FieldSpec& f) {
    return f.even() ? half_count(f) : 2;
}

// ---- FBCT -------------------------------------------------------------------

EntryClassification cf_fbct_entry(const FieldSpec& f, Elem a, Elem b) {
    EntryClassification e;
    e.table = TableKind::fbct;
    e.coords = {a, b, 0, 0};
    e.arity = 2;

    CaseCollector cs;
    const bool degenerate = (a == 0 || b == 0 || a == b);
    cs.consider(degenerate, "ab(a+b)=0", full_count(f));
    if (!degenerate) {
        if (f.even()) {
            // a != b keeps the ratio away from {0, 1}.
            const bool sub = f.is_in_subfield(f.mul(a, f.inv(b)));
            cs.consider(sub, "a/b in F_2^m\\{0,1}", half_count(f));
            cs.consider(!sub, "a/b notin F_2^m", 0);
        } else {
            cs.consider(true, "ab(a+b)!=0", 0);
        }
    }
    cs.finish(e, false, "cf_fbct_entry");
    return e;
}

Spectrum cf_fbct_spectrum(const FieldSpec& f) {
    const std::uint64_t N = f.size();
    Spectrum spec;
    spec.domain = kDomainAllPairs;
    add_class(spec, N, 3 * N - 2);
    if (f.even()) {
        const std::uint64_t M = std::uint64_t{1} << f.m();
        add_class(spec, M, (M - 2) * (N - 1));
        add_class(spec, 0, (N - M) * (N - 1));
    } else {
        add_class(spec, 0, (N - 2) * (N - 1));
    }
    return spec;
}

unsigned cf_beta_c(const FieldSpec& f) {
    // At n = 2 the 2^m-achieving set {a/b in GF(2^m)\{0,1}} is empty, so
    // nothing off the degenerate cells is nonzero.
    if (f.even() && f.m() > 1) return half_count(f);
    return 0;
}

// ---- FBDT -------------------------------------------------------------------

EntryClassification cf_fbdt_entry(const FieldSpec& f, Elem a, Elem c, Elem b) {
    EntryClassification e;
    e.table = TableKind::fbdt;
    e.coords = {a, c, b, 0};
    e.arity = 3;

    CaseCollector cs;
    const bool a0 = a == 0, c0 = c == 0;
    const bool bin = (b == 0 || b == a);  // collapses to the plain DDT row

    cs.consider(a0 && c0, "I_2^n", full_count(f));
    cs.consider(a0 && !c0, "I_0(1)", 0);

    if (!f.even()) {
        if (!a0) {
            e.t1 = reduced_ratio(f, c, a);
            if (!c0) {
                const int tr = odd_trace_test(f, *e.t1);
                cs.consider(bin && tr == 1, "I_2", 2);
                cs.consider(bin && tr == 0, "I_0(2)", 0);
            }
            cs.consider(!bin, "I_0(3)", 0);
        }
    } else {
        const bool m_odd = f.m() % 2 == 1;
        if (!a0) {
            const Elem t = reduced_ratio(f, c, a);
            e.t1 = t;
            bool t_one = false, t_unit_not1 = false, t_nonunit = false;
            int tr = -1;
            if (!c0) {
                t_one = (t == 1);
                const bool unit = f.in_unit_circle(t);
                t_unit_not1 = unit && !t_one;
                t_nonunit = !unit;
                if (t_nonunit) tr = even_trace_test(f, t);
            }
            bool r_sub = false, r_nonsub = false;
            if (!bin) {
                const bool sub = f.is_in_subfield(f.mul(a, f.inv(b)));
                r_sub = sub;
                r_nonsub = !sub;
            }
            cs.consider(!c0 && bin && t_one, "I_2^m(1)", half_count(f));
            cs.consider(!c0 && !bin && t_one && r_sub, "I_2^m(2)", half_count(f));
            cs.consider(!c0 && bin && t_nonunit && tr == 1, "I_2(1)", 2);
            cs.consider(c0 && bin && m_odd, "I_2(2)", 2);
            cs.consider(c0 && bin && !m_odd, "I_0(2)", 0);
            cs.consider(!c0 && bin && t_nonunit && tr == 0, "I_0(3)", 0);
            cs.consider(!c0 && bin && t_unit_not1, "I_0(4)", 0);
            cs.consider(!c0 && !bin && !t_one && r_sub, "I_0(5)", 0);
            cs.consider(!c0 && !bin && r_nonsub, "I_0(6)", 0);
        }
    }
    cs.finish(e, true, "cf_fbdt_entry");
    return e;
}

Spectrum cf_fbdt_spectrum(const FieldSpec& f) {
    require_fits_u64(f, 3, "fbdt spectrum");
    const std::uint64_t N = f.size();
    Spectrum spec;
    spec.domain = kDomainTriples;
    add_class(spec, N, N);
    if (!f.even()) {
        add_class(spec, 2, N * (N - 1));
    } else {
        const std::uint64_t M = std::uint64_t{1} << f.m();
        add_class(spec, M, M * (N - 1));
        add_class(spec, 2, (N - M) * (N - 1));
    }
    add_class(spec, 0, N * N * (N - 1));
    return spec;
}

unsigned cf_beta_d(const FieldSpec& f) { return f.even() ? half_count(f) : 2; }

// ---- FBET -------------------------------------------------------------------

EntryClassification cf_fbet_entry(const FieldSpec& f, Elem a, Elem c, Elem b, Elem d) {
    EntryClassification e;
    e.table = TableKind::fbet;
    e.coords = {a, c, b, d};
    e.arity = 4;

    const bool a0 = a == 0, c0 = c == 0, b0 = b == 0, d0 = d == 0;
    bool t1_one = false, t1_nonunit = false;
    bool t2_one = false, t2_nonunit = false;
    int tr1 = -1, tr2 = -1;
    if (!a0) {
        const Elem t1 = reduced_ratio(f, c, a);
        e.t1 = t1;
        if (!c0) {
            if (f.even()) {
                t1_one = (t1 == 1);
                t1_nonunit = !f.in_unit_circle(t1);
                if (t1_nonunit) tr1 = even_trace_test(f, t1);
            } else {
                tr1 = odd_trace_test(f, t1);
            }
        }
    }
    if (!b0) {
        const Elem t2 = reduced_ratio(f, d, b);
        e.t2 = t2;
        if (!d0) {
            if (f.even()) {
                t2_one = (t2 == 1);
                t2_nonunit = !f.in_unit_circle(t2);
                if (t2_nonunit) tr2 = even_trace_test(f, t2);
            } else {
                tr2 = odd_trace_test(f, t2);
            }
        }
    }

    CaseCollector cs;
    cs.consider(a0 && c0 && b0 && d0, "I_2^n", full_count(f));
    if (!f.even()) {
        cs.consider(a0 && c0 && !b0 && !d0 && tr2 == 1, "I_2(1)", 2);
        cs.consider(!a0 && !c0 && b0 && d0 && tr1 == 1, "I_2(2)", 2);
        cs.consider(a == b && !a0 && c == d && !c0 && tr1 == 1, "I_2(3)", 2);
    } else {
        const bool m_odd = f.m() % 2 == 1;
        const std::uint32_t half = half_count(f);
        bool r_sub = false;
        if (!a0 && !b0 && b != a) {
            r_sub = f.is_in_subfield(f.mul(a, f.inv(b)));
        }
        cs.consider(a0 && c0 && !b0 && !d0 && t2_one, "I_2^m(1)", half);
        cs.consider(!a0 && !c0 && b0 && d0 && t1_one, "I_2^m(2)", half);
        cs.consider(a == b && !a0 && c == d && !c0 && t1_one, "I_2^m(3)", half);
        cs.consider(!a0 && !b0 && b != a && r_sub && t1_one && t2_one, "I_2^m(4)", half);
        cs.consider(a0 && c0 && !b0 && !d0 && t2_nonunit && tr2 == 1, "I_2(1)", 2);
        cs.consider(a0 && c0 && !b0 && d0 && m_odd, "I_2(2)", 2);
        cs.consider(!a0 && !c0 && b0 && d0 && t1_nonunit && tr1 == 1, "I_2(3)", 2);
        cs.consider(!a0 && c0 && b0 && d0 && m_odd, "I_2(4)", 2);
        cs.consider(a == b && !a0 && c == d && !c0 && t1_nonunit && tr1 == 1, "I_2(5)", 2);
        cs.consider(a == b && !a0 && c0 && d0 && m_odd, "I_2(6)", 2);
    }
    cs.finish(e, true, "cf_fbet_entry");
    return e;
}

Spectrum cf_fbet_spectrum(const FieldSpec& f) {
    require_fits_u64(f, 4, "fbet spectrum");
    const std::uint64_t N = f.size();
    const std::uint64_t total = N * N * N * N;
    Spectrum spec;
    spec.domain = kDomainQuads;
    add_class(spec, N, 1);
    if (!f.even()) {
        add_class(spec, 2, 3 * (N / 2) * (N - 1));
        add_class(spec, 0, total - 3 * (N * N / 2 - N / 2) - 1);
    } else {
        // The value-2 class collects, for each of the three families
        // (a=c=0), (b=d=0) and (a=b, c=d), exactly the 2-valued cells of one
        // ddt row per nonzero row index: 2^(n-1) - 2^(m-1) cells each.
        const std::uint64_t M = std::uint64_t{1} << f.m();
        add_class(spec, M, (M + 1) * (N - 1));
        add_class(spec, 2, 3 * (N / 2 - M / 2) * (N - 1));
        add_class(spec, 0, total - (3 * (N / 2) - M / 2 + 1) * (N - 1) - 1);
    }
    return spec;
}

unsigned cf_beta_e(const FieldSpec& f) { return f.even() ? half_count(f) : 2; }

// ---- dispatch helpers ---------------------------------------------------------

EntryClassification cf_entry(const FieldSpec& f, TableKind kind,
                             const std::array<Elem, 4>& coords) {
    switch (kind) {
        case TableKind::ddt: return cf_ddt_entry(f, coords[0], coords[1]);
        case TableKind::fbct: return cf_fbct_entry(f, coords[0], coords[1]);
        case TableKind::fbdt: return cf_fbdt_entry(f, coords[0], coords[1], coords[2]);
        case TableKind::fbet:
            return cf_fbet_entry(f, coords[0], coords[1], coords[2], coords[3]);
        case TableKind::bct: break;
    }
    throw std::invalid_argument("no closed form for the bct");
}

Spectrum cf_spectrum(const FieldSpec& f, TableKind kind) {
    switch (kind) {
        case TableKind::ddt: return cf_ddt_spectrum(f);
        case TableKind::fbct: return cf_fbct_spectrum(f);
        case TableKind::fbdt: return cf_fbdt_spectrum(f);
        case TableKind::fbet: return cf_fbet_spectrum(f);
        case TableKind::bct: break;
    }
    throw std::invalid_argument("no closed form for the bct");
}

}  // namespace fbtab
