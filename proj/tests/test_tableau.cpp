#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "gseforge/dense.hpp"
#include "gseforge/rng.hpp"
#include "gseforge/tableau.hpp"

using namespace gsef;

static Circuit random_clifford(int n, int gates, Rng& rng) {
    Circuit c(n);
    for (int i = 0; i < gates; ++i) {
        switch (rng.integer(5)) {
            case 0: c.h(int(rng.integer(n))); break;
            case 1: c.s(int(rng.integer(n))); break;
            case 2: c.sdg(int(rng.integer(n))); break;
            case 3: {
                int a = int(rng.integer(n)), b = int(rng.integer(n));
                if (a != b) c.cx(a, b);
                break;
            }
            default: {
                int a = int(rng.integer(n)), b = int(rng.integer(n));
                if (a != b) c.cz(a, b);
                break;
            }
        }
    }
    return c;
}

TEST_CASE("basic conjugations") {
    Circuit h(1);
    h.h(0);
    CHECK(conjugate(h, PauliTerm::parse("X")).str() == "Z");
    CHECK(conjugate(h, PauliTerm::parse("Z")).str() == "X");
    CHECK(conjugate(h, PauliTerm::parse("Y")).str() == "-Y");

    Circuit cz(2);
    cz.cz(0, 1);
    CHECK(conjugate(cz, PauliTerm::parse("XI")).str() == "XZ");
    CHECK(conjugate(cz, PauliTerm::parse("IX")).str() == "ZX");

    Circuit s(1);
    s.s(0);
    CHECK(conjugate(s, PauliTerm::parse("X")).str() == "Y");
    CHECK(conjugate(s, PauliTerm::parse("Y")).str() == "-X");
    Circuit sdg(1);
    sdg.sdg(0);
    CHECK(conjugate(sdg, PauliTerm::parse("X")).str() == "-Y");
    CHECK(conjugate(sdg, PauliTerm::parse("Y")).str() == "X");
}

TEST_CASE("conjugation is a group homomorphism") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + int(rng.integer(4));
        Circuit c = random_clifford(n, 20, rng);
        PauliTerm p(n), q(n);
        static const char letters[4] = {'I', 'X', 'Y', 'Z'};
        for (int i = 0; i < n; ++i) {
            p.set_letter(i, letters[rng.integer(4)]);
            q.set_letter(i, letters[rng.integer(4)]);
        }
        CHECK(conjugate(c, p * q) == (conjugate(c, p) * conjugate(c, q)));
    }
}

TEST_CASE("conjugate agrees with dense matrix conjugation") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + int(rng.integer(4));
        Circuit c = random_clifford(n, 15, rng);
        PauliTerm p(n);
        static const char letters[4] = {'I', 'X', 'Y', 'Z'};
        for (int i = 0; i < n; ++i) p.set_letter(i, letters[rng.integer(4)]);
        Mat u = circuit_unitary(c);
        Mat lhs = u * dense_pauli_matrix(p) * u.adjoint();
        Mat rhs = dense_pauli_matrix(conjugate(c, p));
        CHECK((lhs - rhs).norm() < 1e-10);
    }
}

TEST_CASE("deterministic measurements") {
    StabilizerState st(3);
    Rng rng(1);
    CHECK(st.measure(PauliTerm::parse("ZII"), rng) == 1);
    CHECK(st.measure(PauliTerm::parse("IZI"), rng) == 1);
    CHECK(st.measure(PauliTerm::parse("ZZI"), rng) == 1);
    CHECK_THROWS_AS(st.measure(PauliTerm::parse("iXII"), rng), TableauError);
}

TEST_CASE("random measurement statistics and collapse") {
    // measure X then Z on |0>: second outcome is a fair coin
    std::map<int, int> counts;
    for (int seed = 0; seed < 400; ++seed) {
        StabilizerState st(1);
        Rng rng(seed);
        st.measure(PauliTerm::parse("X"), rng);
        counts[st.measure(PauliTerm::parse("Z"), rng)]++;
    }
    CHECK(counts[+1] > 140);
    CHECK(counts[-1] > 140);
    // chi-square sanity at 1 dof: (O-E)^2/E summed < 10.8 (p ~ 0.001)
    double e = 200.0;
    double chi = (counts[+1] - e) * (counts[+1] - e) / e + (counts[-1] - e) * (counts[-1] - e) / e;
    CHECK(chi < 10.8);
}

TEST_CASE("repeat measurement is stable") {
    Rng rng(77);
    StabilizerState st(2);
    Circuit c(2);
    c.h(0);
    c.cx(0, 1);
    st.apply(c);
    int first = st.measure(PauliTerm::parse("ZI"), rng);
    CHECK(st.measure(PauliTerm::parse("ZI"), rng) == first);
    CHECK(st.measure(PauliTerm::parse("IZ"), rng) == first);  // Bell correlation
}

TEST_CASE("measurement Born statistics against dense simulation") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + int(rng.integer(3));
        Circuit c = random_clifford(n, 25, rng);
        PauliTerm obs(n);
        static const char letters[4] = {'I', 'X', 'Y', 'Z'};
        bool nontrivial = false;
        for (int i = 0; i < n; ++i) {
            char l = letters[rng.integer(4)];
            obs.set_letter(i, l);
            nontrivial |= l != 'I';
        }
        if (!nontrivial) continue;
        Vec psi = zero_state(n);
        apply_circuit_dense(c, psi);
        Vec tmp = Vec::Zero(psi.size());
        apply_pauli(obs, 1.0, psi, tmp);
        double expect = psi.dot(tmp).real();
        const int shots = 10000;
        int acc = 0;
        for (int s = 0; s < shots; ++s) {
            StabilizerState st(n);
            st.apply(c);
            Rng r2(Rng::mix(trial * 1000 + s, 5));
            acc += st.measure(obs, r2);
        }
        double mean = double(acc) / shots;
        double sigma = std::sqrt((1.0 - expect * expect) / shots) + 1e-9;
        CHECK(std::abs(mean - expect) < 5 * sigma + 1e-9);
    }
}

TEST_CASE("synthesize_prep round trips") {
    SUBCASE("computational basis") {
        StabilizerState st(3);
        Circuit c = synthesize_prep(st);
        StabilizerState redo(3);
        redo.apply(c);
        CHECK(same_stabilizer_group(redo, st));
    }
    SUBCASE("bell pair") {
        std::vector<PauliTerm> gens{PauliTerm::parse("XX"), PauliTerm::parse("ZZ")};
        StabilizerState st = StabilizerState::from_generators(gens);
        Circuit c = synthesize_prep(st);
        StabilizerState redo(2);
        redo.apply(c);
        CHECK(same_stabilizer_group(redo, st));
        for (const auto& g : gens) {
            auto det = redo.deterministic_outcome(g);
            REQUIRE(det.has_value());
            CHECK(*det == 1);
        }
    }
    SUBCASE("random 12-qubit states") {
        Rng rng(99);
        for (int trial = 0; trial < 10; ++trial) {
            StabilizerState st(12);
            st.apply(random_clifford(12, 150, rng));
            Circuit c = synthesize_prep(st);
            StabilizerState redo(12);
            redo.apply(c);
            CHECK(same_stabilizer_group(redo, st));
            CHECK(c.gates().size() < 12 * 12 * 6);  // O(n^2) synthesis
        }
    }
}

TEST_CASE("from_generators honors signs") {
    std::vector<PauliTerm> gens{PauliTerm::parse("-ZI"), PauliTerm::parse("IZ")};
    StabilizerState st = StabilizerState::from_generators(gens);
    Rng rng(3);
    CHECK(st.measure(PauliTerm::parse("ZI"), rng) == -1);
    CHECK(st.measure(PauliTerm::parse("IZ"), rng) == +1);
}

TEST_CASE("in_group membership") {
    std::vector<PauliTerm> gens{PauliTerm::parse("XX"), PauliTerm::parse("ZZ")};
    int ph = -1;
    CHECK(in_group(gens, PauliTerm::parse("-YY"), &ph));
    CHECK(ph == 0);  // XX * ZZ = -YY
    CHECK(in_group(gens, PauliTerm::parse("YY"), &ph));
    CHECK(ph == 2);
    CHECK(!in_group(gens, PauliTerm::parse("XI")));
}
