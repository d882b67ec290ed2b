#include "gseforge/fermion.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gsef {

using nlohmann::json;

void FermionHamiltonian::add_one_body(int sigma, int i, int j, double v) {
    if (sigma < 0 || sigma >= sectors_) throw FermionError("sector index out of range");
    if (i < 0 || i >= M_ || j < 0 || j >= M_) throw FermionError("mode index out of range");
    h_[{sigma, i, j}] += v;
}

void FermionHamiltonian::add_two_body(int s, int s2, int i, int j, int k, int l, double v) {
    if (s < 0 || s >= sectors_ || s2 < 0 || s2 >= sectors_)
        throw FermionError("sector index out of range");
    if (i < 0 || i >= M_ || j < 0 || j >= M_ || k < 0 || k >= M_ || l < 0 || l >= M_)
        throw FermionError("mode index out of range");
    // cross-sector factors commute; store lower sector first
    if (s > s2)
        V_[{s2, s, k, l, i, j}] += v;
    else
        V_[{s, s2, i, j, k, l}] += v;
}

void FermionHamiltonian::enforce_hermiticity(double tol) {
    std::map<std::array<int, 3>, double> h2;
    for (const auto& [key, v] : h_) {
        auto [s, i, j] = std::tuple(key[0], key[1], key[2]);
        std::array<int, 3> tkey{s, j, i};
        auto it = h_.find(tkey);
        double vt = (it == h_.end()) ? 0.0 : it->second;
        if (std::abs(v - vt) > tol)
            throw FermionError("one-body Hermiticity violation at (" + std::to_string(i) +
                               "," + std::to_string(j) + ")");
        h2[key] = 0.5 * (v + vt);
        h2[tkey] = 0.5 * (v + vt);
    }
    h_ = std::move(h2);
    // Two-body entries are identified up to commuting factor reorders, then
    // paired against their operator adjoints (a+_i a_j a+_k a_l)+ =
    // a+_l a_k a+_j a_i.
    auto factors_commute = [](const std::array<int, 6>& k) {
        return k[0] != k[1] || (k[3] != k[4] && k[2] != k[5]);
    };
    auto canon = [&](std::array<int, 6> k) {
        std::array<int, 6> swapped{k[1], k[0], k[4], k[5], k[2], k[3]};
        if (factors_commute(k) && swapped < k) return swapped;
        return k;
    };
    std::map<std::array<int, 6>, double> acc;
    for (const auto& [key, v] : V_) acc[canon(key)] += v;
    std::map<std::array<int, 6>, double> V2;
    for (const auto& [key, v] : acc) {
        std::array<int, 6> adj = canon({key[1], key[0], key[5], key[4], key[3], key[2]});
        auto it = acc.find(adj);
        double vt = (it == acc.end()) ? 0.0 : it->second;
        if (std::abs(v - vt) > tol) throw FermionError("two-body Hermiticity violation");
        V2[key] = 0.5 * (v + vt);
        V2[adj] = 0.5 * (v + vt);
    }
    V_ = std::move(V2);
}

FermionHamiltonian FermionHamiltonian::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FermionError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

FermionHamiltonian FermionHamiltonian::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw FermionError(std::string("Hamiltonian JSON parse error: ") + e.what());
    }
    if (!j.contains("M") || !j.contains("sectors"))
        throw FermionError("Hamiltonian JSON missing M/sectors");
    FermionHamiltonian H(j["M"].get<int>(), j["sectors"].get<int>());
    H.constant = j.value("constant", 0.0);
    if (j.contains("h"))
        for (const auto& row : j["h"]) {
            if (row.size() != 4) throw FermionError("h rows are [sigma,i,j,val]");
            H.add_one_body(row[0].get<int>(), row[1].get<int>(), row[2].get<int>(),
                           row[3].get<double>());
        }
    if (j.contains("V"))
        for (const auto& row : j["V"]) {
            if (row.size() != 7) throw FermionError("V rows are [s,s2,i,j,k,l,val]");
            H.add_two_body(row[0].get<int>(), row[1].get<int>(), row[2].get<int>(),
                           row[3].get<int>(), row[4].get<int>(), row[5].get<int>(),
                           row[6].get<double>());
        }
    H.enforce_hermiticity();
    return H;
}

std::string FermionHamiltonian::to_json_text() const {
    json j;
    j["M"] = M_;
    j["sectors"] = sectors_;
    j["constant"] = constant;
    j["h"] = json::array();
    for (const auto& [k, v] : h_) j["h"].push_back({k[0], k[1], k[2], v});
    j["V"] = json::array();
    for (const auto& [k, v] : V_) j["V"].push_back({k[0], k[1], k[2], k[3], k[4], k[5], v});
    return j.dump(2);
}

std::vector<HopTerm> hop_expansion(const FermionHamiltonian& H) {
    std::vector<HopTerm> out;
    out.reserve(H.one_body().size() + H.two_body().size());
    for (const auto& [k, v] : H.one_body())
        out.push_back({v, {{k[0], k[1], k[2]}}});
    for (const auto& [k, v] : H.two_body())
        out.push_back({v, {{k[0], k[2], k[3]}, {k[1], k[4], k[5]}}});
    return out;
}

FermionHamiltonian rotor_hamiltonian(int N, int d_m, double g, double C) {
    if (d_m < 1 || d_m % 2 == 0) throw FermionError("d_m must be odd");
    if (N < 1) throw FermionError("N must be >= 1");
    FermionHamiltonian H(N * d_m, 1);
    H.constant = C;
    int mmax = (d_m - 1) / 2;
    // H = C - h0 + h1 (unary hole encoding: with d_m-1 electrons per rotor
    // the spectrum of C - h0 is C - sum(m^2) + m_hole^2).
    for (int n = 0; n < N; ++n)
        for (int t = 0; t < d_m; ++t) {
            double m = double(t - mmax);
            if (m != 0.0) H.add_one_body(0, n * d_m + t, n * d_m + t, -m * m);
        }
    // Nearest-rotor products of nearest-neighbor intra-rotor hops. Summation
    // bounds fixed so every hop a+_i a_{i+1} stays inside its rotor.
    for (int n = 0; n + 1 < N; ++n)
        for (int i = (n + 1) * d_m; i <= (n + 2) * d_m - 2; ++i)
            for (int k = n * d_m; k <= (n + 1) * d_m - 2; ++k) {
                H.add_two_body(0, 0, i, i + 1, k, k + 1, 3.0 * g / 4.0);
                H.add_two_body(0, 0, i + 1, i, k + 1, k, 3.0 * g / 4.0);
                H.add_two_body(0, 0, i, i + 1, k + 1, k, -g / 4.0);
                H.add_two_body(0, 0, i + 1, i, k, k + 1, -g / 4.0);
            }
    H.enforce_hermiticity();
    return H;
}

}  // namespace gsef
