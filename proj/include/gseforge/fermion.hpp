#pragma once

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsef {

struct FermionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Second-quantized Hamiltonian in chemist ordering: all alpha modes before
// all beta modes, so no hop couples different spin sectors.
//
//   H = constant
//     + sum_{s,i,j}       h[s](i,j)        a+_{s,i} a_{s,j}
//     + sum_{s,s',ijkl}   V[s,s'](i,j,k,l) a+_{s,i} a_{s,j} a+_{s',k} a_{s',l}
//
// Mode indices are intra-sector (0..M-1); coefficients are real.
class FermionHamiltonian {
public:
    FermionHamiltonian() = default;
    FermionHamiltonian(int M, int sectors) : M_(M), sectors_(sectors) {
        if (M < 1 || (sectors != 1 && sectors != 2))
            throw FermionError("bad Hamiltonian shape");
    }

    int modes_per_sector() const { return M_; }
    int sectors() const { return sectors_; }
    int total_modes() const { return M_ * sectors_; }

    double constant = 0.0;

    void add_one_body(int sigma, int i, int j, double v);
    void add_two_body(int sigma, int sigma2, int i, int j, int k, int l, double v);

    const std::map<std::array<int, 3>, double>& one_body() const { return h_; }
    const std::map<std::array<int, 6>, double>& two_body() const { return V_; }

    // Symmetrizes h and V; throws if the asymmetry exceeds tol.
    void enforce_hermiticity(double tol = 1e-10);

    static FermionHamiltonian load(const std::string& path);
    static FermionHamiltonian from_json_text(const std::string& text);
    std::string to_json_text() const;

private:
    int M_ = 0;
    int sectors_ = 1;
    std::map<std::array<int, 3>, double> h_;   // (sigma,i,j) -> value
    std::map<std::array<int, 6>, double> V_;   // (s,s',i,j,k,l) -> value
};

// One product of hops: coeff * prod_f a+_{sigma_f, i_f} a_{sigma_f, j_f}.
struct HopTerm {
    std::complex<double> coeff;
    struct Factor {
        int sigma, i, j;
    };
    std::vector<Factor> factors;  // length 1 or 2
};

// Expands H (minus its constant) into an ordered list of HopTerms,
// one per nonzero integral.
std::vector<HopTerm> hop_expansion(const FermionHamiltonian& H);

// Dipolar-rotor Hamiltonian: N rotors, each with d_m (odd) angular momentum
// states unary-encoded into d_m modes holding d_m - 1 electrons.
// H = C - h0 + h1 with h0 the m^2 diagonal and h1 the nearest-rotor
// products weighted (g/4)*{+3,+3,-1,-1}; hops stay inside a rotor, so the
// interaction graph is N disjoint length-d_m lines.
FermionHamiltonian rotor_hamiltonian(int N, int d_m, double g, double C);

}  // namespace gsef
