#include <doctest.h>

#include <random>

#include "fbtab/io.hpp"
#include "fbtab/verify.hpp"

using namespace fbtab;

TEST_CASE("entrywise verification passes on small degrees") {
    const FieldSpec f3(3);
    const VerifyReport ddt3 = verify_entrywise(f3, TableKind::ddt);
    CHECK(ddt3.passed);
    CHECK(ddt3.checked_cells == 64);
    CHECK(ddt3.mismatch_total == 0);

    const FieldSpec f4(4);
    const VerifyReport fbct4 = verify_entrywise(f4, TableKind::fbct);
    CHECK(fbct4.passed);
    CHECK(fbct4.checked_cells == 256);

    const VerifyReport fbdt4 = verify_entrywise(f4, TableKind::fbdt);
    CHECK(fbdt4.passed);
    CHECK(fbdt4.checked_cells == 4096);

    const VerifyReport fbet3 = verify_entrywise(f3, TableKind::fbet);
    CHECK(fbet3.passed);
    CHECK(fbet3.checked_cells == 4096);
}

TEST_CASE("entrywise verification with sampling above the full-sweep range") {
    const FieldSpec f7(7);
    VerifyOptions opts;
    opts.zero_samples = 2000;
    opts.seed = 99;
    const VerifyReport r = verify_entrywise(f7, TableKind::fbdt, opts);
    CHECK(r.passed);
    CHECK(r.seed == 99);
    CHECK(r.checked_cells > 2000);  // support plus the accepted samples

    const FieldSpec f5(5);
    VerifyOptions opts5;
    opts5.zero_samples = 5000;
    const VerifyReport r5 = verify_entrywise(f5, TableKind::fbet, opts5);
    CHECK(r5.passed);
    CHECK(r5.seed == opts5.seed);

    // n = 6 has odd m, which activates the m-parity case sets.
    const FieldSpec f6(6);
    VerifyOptions opts6;
    opts6.zero_samples = 5000;
    CHECK(verify_entrywise(f6, TableKind::fbet, opts6).passed);
}

TEST_CASE("spectra verification") {
    for (unsigned n = 2; n <= 6; ++n) {
        const FieldSpec f(n);
        CHECK(verify_spectra(f, TableKind::ddt).passed);
        CHECK(verify_spectra(f, TableKind::fbct).passed);
        CHECK(verify_spectra(f, TableKind::fbdt).passed);
        CHECK(verify_spectra(f, TableKind::fbet).passed);
    }
}

TEST_CASE("closed forms hold under a different modulus") {
    // Everything is basis-independent, so an alternative irreducible
    // polynomial must verify just as well and yield the same spectra.
    const FieldSpec f4(4, 0x19);   // x^4 + x^3 + 1
    const FieldSpec f6(6, 0x49);   // x^6 + x^3 + 1
    const FieldSpec f5(5, 0x3b);   // x^5 + x^4 + x^3 + x + 1
    for (const FieldSpec* f : {&f4, &f6, &f5}) {
        CHECK(verify_entrywise(*f, TableKind::ddt).passed);
        CHECK(verify_entrywise(*f, TableKind::fbct).passed);
        CHECK(verify_entrywise(*f, TableKind::fbdt).passed);
        CHECK(verify_spectra(*f, TableKind::fbet).passed);
    }
    CHECK(fbdt_spectrum(closed_form_sbox(f6)) ==
          fbdt_spectrum(closed_form_sbox(FieldSpec(6))));
}

TEST_CASE("structural suite on arbitrary boxes") {
    std::mt19937 rng(4242);
    const FieldSpec f4(4);
    for (int i = 0; i < 5; ++i) {
        std::vector<Elem> lut(16);
        for (auto& v : lut) v = rng() % 16;
        const VerifyReport r = verify_structural(from_lut(f4, lut));
        CHECK(r.passed);
        CHECK(r.mismatch_total == 0);
    }
    const FieldSpec f5(5);
    CHECK(verify_structural(power_sbox(f5, 3)).passed);
    CHECK(verify_structural(power_sbox(f5, 30)).passed);  // x^(2^n-2)
}

TEST_CASE("verification budget refusals") {
    const FieldSpec f13(13);
    CHECK_THROWS_AS(verify_entrywise(f13, TableKind::ddt), BudgetError);
    const FieldSpec f11(11);
    CHECK_THROWS_AS(verify_entrywise(f11, TableKind::fbdt), BudgetError);
    const FieldSpec f4(4);
    CHECK_THROWS_AS(verify_entrywise(f4, TableKind::bct), std::invalid_argument);
}

TEST_CASE("reports round-trip through json") {
    VerifyReport r;
    r.subject = "fbdt entrywise, n=4, modulus 0x13";
    r.checked_cells = 4096;
    r.mismatch_total = 2;
    r.mismatches.push_back(Mismatch{{1, 2, 3, 0}, 3, 4, 0, "I_2^m(1)"});
    r.mismatches.push_back(Mismatch{{0, 1, 0, 0}, 3, 0, 2, "I_0(1)"});
    r.passed = false;
    r.elapsed_seconds = 0.125;
    r.seed = 77;

    const auto j = to_json(r);
    const auto text = j.dump();
    const VerifyReport back = report_from_json(nlohmann::json::parse(text));
    CHECK(back.subject == r.subject);
    CHECK(back.checked_cells == r.checked_cells);
    CHECK(back.mismatch_total == r.mismatch_total);
    CHECK(back.passed == r.passed);
    CHECK(back.elapsed_seconds == r.elapsed_seconds);
    CHECK(back.seed == r.seed);
    CHECK(back.mismatches == r.mismatches);
}

TEST_CASE("verification runs are deterministic") {
    const FieldSpec f4(4);
    VerifyOptions a, b;
    a.workers = 1;
    b.workers = 4;
    const auto ra = verify_entrywise(f4, TableKind::fbdt, a);
    const auto rb = verify_entrywise(f4, TableKind::fbdt, b);
    CHECK(ra.checked_cells == rb.checked_cells);
    CHECK(ra.mismatch_total == rb.mismatch_total);
    CHECK(ra.passed == rb.passed);
}
