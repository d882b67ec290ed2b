#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "gseforge/dense.hpp"
#include "gseforge/pauli.hpp"
#include "gseforge/rng.hpp"

using namespace gsef;

static PauliTerm random_term(std::size_t n, Rng& rng) {
    PauliTerm t(n);
    static const char letters[4] = {'I', 'X', 'Y', 'Z'};
    for (std::size_t q = 0; q < n; ++q) t.set_letter(q, letters[rng.integer(4)]);
    t.mul_phase_i(int(rng.integer(4)));
    return t;
}

TEST_CASE("single-qubit products") {
    PauliTerm X = PauliTerm::parse("X"), Y = PauliTerm::parse("Y"), Z = PauliTerm::parse("Z");
    CHECK((X * Z).str() == "-iY");
    CHECK((Z * X).str() == "iY");
    CHECK((X * Y).str() == "iZ");
    CHECK((Y * Z).str() == "iX");
    CHECK((X * X).str() == "I");
}

TEST_CASE("involution and identity") {
    PauliTerm xy = PauliTerm::parse("XY");
    PauliTerm prod = xy * xy;
    CHECK(prod.is_identity());
    CHECK(prod.phase_exponent() == 0);
    PauliTerm id = PauliTerm::identity(2);
    CHECK((xy * id) == xy);
    // a term times its adjoint is identity with phase +1
    PauliTerm t = PauliTerm::parse("-iXYZI");
    PauliTerm r = t * t.adjoint();
    CHECK(r.is_identity());
    CHECK(r.phase_exponent() == 0);
}

TEST_CASE("commutation") {
    CHECK(commutes(PauliTerm::parse("XI"), PauliTerm::parse("IZ")));
    CHECK(!commutes(PauliTerm::parse("X"), PauliTerm::parse("Z")));
    CHECK(commutes(PauliTerm::parse("XX"), PauliTerm::parse("ZZ")));
    CHECK_THROWS_AS(commutes(PauliTerm::parse("X"), PauliTerm::parse("XX")), PauliError);
}

TEST_CASE("weight and parse/format round trips") {
    CHECK(PauliTerm::parse("-ZIZIII").weight() == 2);
    CHECK(PauliTerm::identity(38).weight() == 0);
    CHECK(PauliTerm::parse("iXYZI").str() == "iXYZI");
    CHECK(PauliTerm::parse("+XYZ").str() == "XYZ");
    CHECK(PauliTerm::parse("-iZ").str() == "-iZ");
    CHECK_THROWS_AS(PauliTerm::parse("XQZ"), PauliError);
    CHECK_THROWS_AS(PauliTerm::parse(""), PauliError);
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        PauliTerm t = random_term(1 + rng.integer(40), rng);
        CHECK(PauliTerm::parse(t.str()) == t);
    }
}

TEST_CASE("product sign matches commutation, phases stay in the group") {
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 1 + rng.integer(20);
        PauliTerm a = random_term(n, rng), b = random_term(n, rng);
        PauliTerm ab = a * b, ba = b * a;
        CHECK(ab.same_letters(ba));
        int diff = (ab.phase_exponent() - ba.phase_exponent() + 4) & 3;
        CHECK(diff % 2 == 0);
        CHECK((diff == 0) == commutes(a, b));
        CHECK(ab.phase_exponent() >= 0);
        CHECK(ab.phase_exponent() < 4);
    }
}

TEST_CASE("associativity") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.integer(12);
        PauliTerm a = random_term(n, rng), b = random_term(n, rng), c = random_term(n, rng);
        CHECK(((a * b) * c) == (a * (b * c)));
    }
}

TEST_CASE("multiply agrees with dense matrix multiplication") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + rng.integer(5);
        PauliTerm a = random_term(n, rng), b = random_term(n, rng);
        Mat ma = dense_pauli_matrix(a), mb = dense_pauli_matrix(b);
        Mat prod = ma * mb;
        Mat mc = dense_pauli_matrix(a * b);
        CHECK((prod - mc).norm() < 1e-12);
    }
}

TEST_CASE("weighted sums combine, drop residue, and round-trip text") {
    WeightedPauliSum s(3);
    s.add(0.5, PauliTerm::parse("XYZ"));
    s.add({0, 0.25}, PauliTerm::parse("ZZI"));
    s.add(0.5, PauliTerm::parse("-XYZ"));  // cancels the first entry
    s.compress();
    CHECK(s.size() == 1);
    CHECK(s.terms()[0].second.same_letters(PauliTerm::parse("ZZI")));

    WeightedPauliSum h(2);
    h.add(1.25, PauliTerm::parse("XI"));
    h.add(-0.75, PauliTerm::parse("ZZ"));
    h.add(0.25, PauliTerm::parse("iYI"));  // coefficient absorbs the phase
    WeightedPauliSum back = WeightedPauliSum::from_text(h.to_text());
    CHECK(back.size() == h.size());
    Mat d1 = dense_pauli_matrix(h), d2 = dense_pauli_matrix(back);
    CHECK((d1 - d2).norm() < 1e-12);
}

TEST_CASE("sum ordering in files is lexicographic on (z, x)") {
    WeightedPauliSum s(2);
    s.add(1.0, PauliTerm::parse("ZI"));
    s.add(2.0, PauliTerm::parse("XI"));
    s.add(3.0, PauliTerm::parse("IZ"));
    std::string text = s.sorted().to_text();
    auto px = text.find("XI"), pz = text.find("ZI"), piz = text.find("IZ");
    CHECK(px < piz);  // empty z-bits first
    CHECK(piz < pz);  // then compared from qubit 0 outward
}

TEST_CASE("adjoint of a sum") {
    WeightedPauliSum s(2);
    s.add({0.5, 0.25}, PauliTerm::parse("XY"));
    WeightedPauliSum a = s.adjoint();
    Mat d = dense_pauli_matrix(s);
    Mat da = dense_pauli_matrix(a);
    CHECK((d.adjoint() - da).norm() < 1e-12);
}
