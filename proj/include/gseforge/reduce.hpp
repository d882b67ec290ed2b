#pragma once

#include <vector>

#include "gseforge/circuit.hpp"
#include "gseforge/tableau.hpp"
#include "gseforge/encoding.hpp"
#include "gseforge/pauli.hpp"

namespace gsef {

struct ReduceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Clifford frame moving the stabilizer content onto the first S qubits:
// every stabilizer generator conjugates to a Z/I pattern there (generator k
// lands exactly on +Z_k), every logical operator to I on their X parts.
struct LogicalFrame {
    Circuit frame;      // conjugation by `frame` maps stabilizer k to +Z_k
    std::size_t s = 0;  // stabilizer count
    std::size_t n = 0;

    PauliTerm to_frame(const PauliTerm& p) const { return conjugate(frame, p); }
    PauliTerm from_frame(const PauliTerm& p) const { return conjugate(inverse_frame, p); }
    Circuit inverse_frame;
};

LogicalFrame build_frame(const std::vector<PauliTerm>& stabilizers, std::size_t n_qubits);

// Rewrites each logical-equivalence class (terms equal up to stabilizer
// multiples) onto its minimum-weight representative; coefficients merge with
// the correct codespace-relative signs. Exact minimum over the 2^S
// stabilizer multipliers when S <= max_exact_s, otherwise greedy descent
// from the best class member.
WeightedPauliSum logical_reduce(const Encoding& enc, const WeightedPauliSum& hsum,
                                int max_exact_s = 12);
WeightedPauliSum logical_reduce(const std::vector<PauliTerm>& stabilizers,
                                const WeightedPauliSum& hsum, int max_exact_s = 12);

// Spin-parity compression for a JW-mapped chemist Hamiltonian on 2M qubits:
// any term with more than M/2 Z letters inside a sector is multiplied by that
// sector's full Z string, signed by the declared parity. Max weight <= M+2.
WeightedPauliSum jw_parity_compress(const WeightedPauliSum& hsum, int M, int parity_alpha,
                                    int parity_beta);

enum class GroupingMode { General, Qubitwise, SpinSeparated };

struct TermGroup {
    std::vector<std::size_t> term_indices;  // into the input sum's terms()
};

// Greedy sorted-insertion grouping (descending |coefficient|). SpinSeparated
// demands commutation within each sector's factor separately (sector split at
// qubit n/2).
std::vector<TermGroup> group_commuting(const WeightedPauliSum& hsum, GroupingMode mode);

struct DepthEstimate {
    std::size_t groups = 0;
    double avg_weight = 0;
    double estimate = 0;
};

// Conflict-graph greedy coloring (descending degree); estimate = colors *
// average weight.
DepthEstimate depth_estimate(const WeightedPauliSum& hsum);

}  // namespace gsef
