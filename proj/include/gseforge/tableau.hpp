#pragma once

#include <optional>
#include <vector>

#include "gseforge/circuit.hpp"
#include "gseforge/pauli.hpp"
#include "gseforge/rng.hpp"

namespace gsef {

struct TableauError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Heisenberg conjugation p -> g p g~ through one gate / a whole circuit.
void conjugate_in_place(const Gate& g, PauliTerm& p);
PauliTerm conjugate(const Circuit& c, const PauliTerm& p);

// Stabilizer state as a full CHP tableau (destabilizer + stabilizer rows).
class StabilizerState {
public:
    explicit StabilizerState(int n);  // |0...0>

    int n_qubits() const { return n_; }
    const std::vector<PauliTerm>& stabilizers() const { return stab_; }
    const std::vector<PauliTerm>& destabilizers() const { return destab_; }

    void apply(const Gate& g);
    void apply(const Circuit& c);

    // Projective measurement of a Hermitian Pauli. Deterministic outcomes
    // leave the state unchanged; random ones consume one coin from rng.
    int measure(const PauliTerm& p, Rng& rng);

    // +1 / -1 if p is (up to sign) in the stabilizer group, nullopt otherwise.
    std::optional<int> deterministic_outcome(const PauliTerm& p) const;

    // Builds the state stabilized by n independent commuting +-1 generators.
    static StabilizerState from_generators(const std::vector<PauliTerm>& gens);

    // True iff the two states' stabilizer groups are identical (signs included).
    friend bool same_stabilizer_group(const StabilizerState& a, const StabilizerState& b);

private:
    int n_ = 0;
    std::vector<PauliTerm> stab_, destab_;
};

// Circuit mapping |0...0> to the given state; O(n^2) gates.
Circuit synthesize_prep(const StabilizerState& state);

// Gaussian elimination helper: emits gates onto `ops` that send `rows`
// (mutated in place) to +Z_0 ... +Z_{rows-1}. Rows must be independent and
// commuting. Extra rows beyond `pivots` are only row-reduced.
void reduce_rows_to_z(std::vector<PauliTerm>& rows, std::size_t pivots, Circuit& ops);

// True iff p lies in the group generated by gens, up to sign;
// phase_out (if given) receives the exponent difference (0 or 2).
bool in_group(const std::vector<PauliTerm>& gens, const PauliTerm& p, int* phase_out = nullptr);

}  // namespace gsef
