#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <bit>
#include <set>

#include "gseforge/dense.hpp"
#include "gseforge/fermion.hpp"

using namespace gsef;

TEST_CASE("minimal one-mode file") {
    auto H = FermionHamiltonian::from_json_text(
        R"({"M":1,"sectors":1,"constant":0.0,"h":[[0,0,0,-0.5]]})");
    CHECK(H.modes_per_sector() == 1);
    auto hops = hop_expansion(H);
    REQUIRE(hops.size() == 1);
    CHECK(hops[0].coeff == cplx(-0.5, 0.0));
    CHECK(hops[0].factors.size() == 1);
    Mat m = dense_fermion_matrix(H);
    CHECK(m(0, 0) == cplx(0, 0));
    CHECK(m(1, 1) == cplx(-0.5, 0));
}

TEST_CASE("hermiticity is enforced") {
    CHECK_THROWS_AS(FermionHamiltonian::from_json_text(
                        R"({"M":2,"sectors":1,"h":[[0,0,1,0.3]]})"),
                    FermionError);
    auto H = FermionHamiltonian::from_json_text(
        R"({"M":2,"sectors":1,"h":[[0,0,1,0.3],[0,1,0,0.3]]})");
    CHECK(H.one_body().size() == 2);
    CHECK_THROWS_AS(FermionHamiltonian::from_json_text(
                        R"({"M":2,"sectors":1,"h":[[0,0,2,0.3],[0,2,0,0.3]]})"),
                    FermionError);
}

TEST_CASE("hop expansion covers every nonzero integral") {
    auto H = FermionHamiltonian::from_json_text(R"({
        "M":4,"sectors":2,"constant":0.25,
        "h":[[0,0,1,0.3],[0,1,0,0.3],[1,2,2,-1.0]],
        "V":[[0,1,0,1,2,3,0.1],[0,1,1,0,3,2,0.1]]})");
    auto hops = hop_expansion(H);
    CHECK(hops.size() == H.one_body().size() + H.two_body().size());
    int two = 0;
    for (const auto& h : hops) two += h.factors.size() == 2;
    CHECK(two == 2);
}

TEST_CASE("dense matrix from the expansion is Hermitian") {
    auto H = FermionHamiltonian::from_json_text(R"({
        "M":3,"sectors":2,
        "h":[[0,0,1,0.2],[0,1,0,0.2],[1,0,2,-0.7],[1,2,0,-0.7],[0,0,0,0.9]],
        "V":[[0,1,0,1,1,2,0.05],[0,1,1,0,2,1,0.05],[0,0,0,0,1,1,0.3]]})");
    Mat m = dense_fermion_matrix(H);
    CHECK((m - m.adjoint()).norm() < 1e-12);
}

TEST_CASE("rotor: single rotor has no couplings, m^2 diagonal") {
    auto H = rotor_hamiltonian(1, 3, 0.7, 0.0);
    CHECK(H.two_body().empty());
    std::multiset<double> diag;
    for (const auto& [k, v] : H.one_body()) {
        CHECK(k[1] == k[2]);
        diag.insert(-v);  // H = C - h0
    }
    CHECK(diag == std::multiset<double>({1.0, 1.0}));  // m = -1, +1; m = 0 drops out
}

TEST_CASE("rotor term count and coefficient pattern") {
    auto H = rotor_hamiltonian(2, 3, 1.0, 0.0);
    CHECK(H.two_body().size() == 16);  // 4 (d_m - 1)^2 per adjacent rotor pair
    std::multiset<double> coeffs;
    for (const auto& [k, v] : H.two_body()) coeffs.insert(v);
    CHECK(coeffs.count(0.75) == 8);
    CHECK(coeffs.count(-0.25) == 8);
    CHECK_THROWS_AS(rotor_hamiltonian(2, 4, 1.0, 0.0), FermionError);
}

TEST_CASE("rotor hole spectrum: g=0 energies are sums of m^2") {
    // the unary encoding holds d_m - 1 electrons per rotor; with C = N sum m^2
    // the eigenvalues on that sector are sums of per-rotor hole m^2 values
    const int N = 2, dm = 3;
    double msum = 1.0 + 0.0 + 1.0;
    auto H = rotor_hamiltonian(N, dm, 0.0, N * msum);
    Mat m = dense_fermion_matrix(H);
    std::set<double> expect;
    for (double a : {1.0, 0.0})
        for (double b : {1.0, 0.0}) expect.insert(a + b);
    std::vector<std::size_t> idx;
    for (std::size_t b = 0; b < (std::size_t(1) << (N * dm)); ++b) {
        bool ok = true;
        for (int r = 0; r < N; ++r) {
            int cnt = std::popcount((b >> (r * dm)) & std::size_t(0x7));
            if (cnt != dm - 1) ok = false;
        }
        if (ok) idx.push_back(b);
    }
    REQUIRE(idx.size() == 9);
    Mat sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = m(idx[i], idx[j]);
    auto ev = eigenvalues(sub);
    for (int i = 0; i < ev.size(); ++i) {
        bool found = false;
        for (double e : expect)
            if (std::abs(ev[i] - e) < 1e-9) found = true;
        CHECK(found);
    }
}

TEST_CASE("rotor conserves per-rotor particle number") {
    auto H = rotor_hamiltonian(2, 3, 0.9, 0.0);
    Mat m = dense_fermion_matrix(H);
    FermionHamiltonian num(6, 1);
    for (int t = 0; t < 3; ++t) num.add_one_body(0, t, t, 1.0);
    Mat nm = dense_fermion_matrix(num);
    CHECK((m * nm - nm * m).norm() < 1e-12);
}

TEST_CASE("json round trip") {
    auto H = rotor_hamiltonian(2, 3, 0.9, 1.5);
    auto H2 = FermionHamiltonian::from_json_text(H.to_json_text());
    CHECK((dense_fermion_matrix(H) - dense_fermion_matrix(H2)).norm() < 1e-12);
}
