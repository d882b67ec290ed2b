#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "gseforge/circuit.hpp"
#include "gseforge/fermion.hpp"
#include "gseforge/pauli.hpp"

namespace gsef {

struct DenseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// Basis convention: computational index b has qubit q in bit q (LSB = qubit 0).

inline void check_dense_guard(std::size_t n, std::size_t limit = 14) {
    if (n > limit) throw DenseError("dense oracle guard exceeded (n > 14)");
}

// y += c * (P x) for a Pauli term P.
void apply_pauli(const PauliTerm& p, cplx c, const Vec& x, Vec& y);

Mat dense_pauli_matrix(const PauliTerm& p);
Mat dense_pauli_matrix(const WeightedPauliSum& sum, double constant = 0.0);

// Dense second-quantized matrix in the occupation basis (mode g = sigma*M + i
// sits in bit g), with exact fermionic signs. Independent of any encoding.
Mat dense_fermion_matrix(const FermionHamiltonian& H);

// Occupation-basis indices with fixed particle-number parity per sector
// (parity +1 = even). parities[s] = 0 admits both.
std::vector<std::size_t> parity_sector_indices(int M, int sectors,
                                               const std::vector<int>& parities);

Eigen::VectorXd eigenvalues(const Mat& herm);

// `sum` compressed onto an orthonormal basis of the joint +1 eigenspace of
// the stabilizers. The basis is built by projecting computational basis
// vectors, so memory stays O(2^n * dim).
Mat codespace_matrix(const WeightedPauliSum& sum, double constant,
                     const std::vector<PauliTerm>& stabilizers);

// Eigenvalues of the codespace-restricted operator.
Eigen::VectorXd spectrum_in_codespace(const WeightedPauliSum& sum, double constant,
                                      const std::vector<PauliTerm>& stabilizers);

// --- statevector circuit simulation (non-Clifford allowed) -----------------

Vec zero_state(std::size_t n);
void apply_gate_dense(const Gate& g, Vec& psi, std::size_t n);
// Applies all unitary gates; measurements/noise annotations are skipped.
void apply_circuit_dense(const Circuit& c, Vec& psi);
// Full 2^n x 2^n unitary of the circuit (guarded).
Mat circuit_unitary(const Circuit& c);

// exp(-i c P) as a dense matrix, for Trotter verification.
Mat pauli_exponential(const PauliTerm& p, double angle);

}  // namespace gsef
