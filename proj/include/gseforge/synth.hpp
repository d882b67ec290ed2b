#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gseforge/circuit.hpp"
#include "gseforge/encoding.hpp"
#include "gseforge/pauli.hpp"
#include "gseforge/tableau.hpp"

namespace gsef {

struct SynthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exp(-i * angle * P) gadget: basis changes, ascending CX ladder, RZ, mirror.
// Appends onto `c`; per-qubit `clock` carries the merged-basis-layer depth
// schedule (a basis change counts one layer per side regardless of gates).
void append_pauli_rotation(Circuit& c, const PauliTerm& p, double angle,
                           std::vector<int>* clock = nullptr);

// First-order Trotter step: one rotation gadget per term, in the sum's stored
// order. Gadget unitaries compose to prod_t exp(-i c_t dt P_t). Sets
// depth_hint from the merged-basis ASAP schedule.
Circuit trotter_step(const WeightedPauliSum& hsum, double dt);

// --- state preparation -----------------------------------------------------

// Circuit preparing the codespace state with <B_v> = (-1)^occupation[v].
// Errors if the occupation parity conflicts with the codespace parity.
Circuit encode_state(const Encoding& enc, const std::vector<int>& occupation);

// StabilizerState stabilized by the encoding's generators plus signed B's.
StabilizerState codespace_state(const Encoding& enc, const std::vector<int>& occupation);

// --- rotation measurement ----------------------------------------------------

struct RotationPlan {
    Circuit circuit;                      // append after state prep
    std::vector<PauliTerm> term_images;   // Z-only, signed
    std::vector<PauliTerm> stab_images;   // Z-only, signed
    int overlap_count = 0;  // term images sharing support with a stab image
};

// Simulated-measurement construction: project a codespace state onto the
// commuting group, synthesize the prep of the projected state, return its
// inverse. Images of group terms and stabilizers are all Z.
RotationPlan rotation_measurement(const std::vector<PauliTerm>& stabilizers,
                                  const StabilizerState& base,
                                  const std::vector<PauliTerm>& group,
                                  std::uint64_t seed);

// Baseline: directly eliminate [stabilizers; group] to single-Z axes.
RotationPlan rotation_measurement_naive(const std::vector<PauliTerm>& stabilizers,
                                        const std::vector<PauliTerm>& group);

RotationPlan rotation_measurement(const Encoding& enc, const std::vector<PauliTerm>& group,
                                  std::uint64_t seed, bool naive = false);

// --- [[2N,N,2]] readout ------------------------------------------------------

struct ReadoutPlan {
    Circuit decode;                      // inverse vacuum circuit
    std::vector<PauliTerm> occ_images;   // B_v images (Z_{2v+1} up to sign)
    std::vector<PauliTerm> stab_images;  // Z-only stabilizer images
};
ReadoutPlan readout_2n_n_2(const Encoding& enc);

// --- fermionic Gaussian unitaries -------------------------------------------

enum class FguEncoding { Gse2n, Jw };

struct FguResult {
    Circuit circuit;
    std::vector<int> layout;  // logical qubit -> physical position
};

// Orbital rotation a'_i = sum_j U_ij a_j (U real orthogonal) compiled from
// adjacent Givens rotations. Under linear connectivity the [[2N,N,2]] variant
// uses the interleaved layout q0 q1 q3 q2 ... and only physically adjacent
// two-qubit rotations. baseline_swaps compiles each rotation sequentially
// with SWAP routing on the plain layout instead.
FguResult fgu_orbital_rotation(const Eigen::MatrixXd& U, FguEncoding enc, Connectivity conn,
                               bool baseline_swaps = false);

// --- rotor support ------------------------------------------------------------

// Per-mode 2-qubit Clifford swapping which rotor coupling family maps at
// weight 4 (found once by bounded search; deterministic).
Circuit rotor_mode_transform();

struct RotorCircuits {
    Circuit gse;       // [[2d_m, d_m, 2]] per rotor, family-split schedule
    Circuit jw;        // Jordan-Wigner on the same rotor chain graphs
    int gse_qubits = 0, jw_qubits = 0;
};
RotorCircuits rotor_trotter_circuits(int N, int d_m, double g, double dt);

}  // namespace gsef
