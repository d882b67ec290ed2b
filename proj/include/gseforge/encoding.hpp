#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gseforge/fermion.hpp"
#include "gseforge/graph.hpp"
#include "gseforge/pauli.hpp"

namespace gsef {

struct EncodingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FamilyKind { JwChain, Cyclic, TernaryTree, Gse2N, Explicit };

struct Family {
    FamilyKind kind = FamilyKind::JwChain;
    int k = 0;  // cyclic shift parameter, d = 2k+1
    std::vector<std::vector<PauliTerm>> table;  // Explicit: per-vertex local Majoranas

    static Family jw_chain() { return {FamilyKind::JwChain, 0, {}}; }
    static Family cyclic(int k) { return {FamilyKind::Cyclic, k, {}}; }
    static Family ternary_tree() { return {FamilyKind::TernaryTree, 0, {}}; }
    static Family gse2n() { return {FamilyKind::Gse2N, 0, {}}; }
    static Family explicit_table(std::vector<std::vector<PauliTerm>> t) {
        return {FamilyKind::Explicit, 0, std::move(t)};
    }
    std::string name() const;
};

struct StabilizerInfo {
    PauliTerm op;
    enum class Source { Cycle, MultiEdge, SelfLoop } source;
};

// Embeds a block-local Pauli at a qubit offset inside a wider register.
PauliTerm embed(const PauliTerm& local, std::size_t offset, std::size_t n_total);

// A built fermion-to-qubit encoding over one interaction graph: per-vertex
// qubit blocks, local Majorana assignment, edge orientation signs, and the
// cycle stabilizer generators.
class Encoding {
public:
    const InteractionGraph& graph() const { return graph_; }
    const Family& family() const { return family_; }
    int n_qubits() const { return n_qubits_; }
    int block_size(int v) const { return block_[v]; }
    int qubit_offset(int v) const { return offset_[v]; }
    int n_local_majoranas(int v) const { return int(local_[v].size()); }
    // Local Majorana in family-canonical order, embedded at global width.
    const PauliTerm& local_majorana(int v, int idx) const { return local_[v][idx]; }

    // B_v = (-i)^m * product of the 2m local Majoranas.
    const PauliTerm& vertex_operator(int v) const { return B_[v]; }

    // A^c for the edge's stored orientation (tail -> head).
    PauliTerm edge_operator(int edge_id, int copy) const;
    // A^c traversed in the given direction; A_ji = -A_ij.
    PauliTerm directed_edge_operator(int edge_id, int copy, bool forward) const;
    // Self-loop stabilizer-style operator: -i * g1 * g2 (Hermitian).
    PauliTerm loop_operator(int v, int idx) const;

    // Mapped gamma-pair gamma_{2i} gamma_{2j} = i^p * prod of path edge ops.
    PauliTerm path_gamma_pair(const EdgePath& path) const;

    const std::vector<StabilizerInfo>& stabilizers() const { return stabs_; }
    std::vector<PauliTerm> stabilizer_ops() const;

    // Parity of the fermionic sector carried by the codespace, per connected
    // component: +1 even, -1 odd, 0 unconstrained (tree).
    const std::vector<int>& component_parity() const { return comp_parity_; }
    const std::vector<int>& component_of() const { return comp_of_; }
    // Overall parity when uniform across components (throws on mixed).
    int codespace_parity() const;

    std::string dump_json() const;

    friend Encoding build_encoding(const InteractionGraph& g, const Family& fam,
                                   std::optional<int> target_parity);

private:
    InteractionGraph graph_;
    Family family_;
    int n_qubits_ = 0;
    std::vector<int> block_, offset_;
    std::vector<std::vector<PauliTerm>> local_;            // [v][idx], global width
    std::vector<std::vector<std::pair<int, int>>> eslot_;  // [edge][copy] -> (idx@tail, idx@head)
    std::vector<std::vector<int>> esign_;                  // [edge][copy] orientation sign
    std::vector<std::vector<std::pair<int, int>>> lslot_;  // per vertex: loop Majorana pairs
    std::vector<PauliTerm> B_;
    std::vector<StabilizerInfo> stabs_;
    std::vector<int> comp_of_, comp_parity_;

    void compute_stabilizers();
    void compute_parity();
};

Encoding build_encoding(const InteractionGraph& g, const Family& fam,
                        std::optional<int> target_parity = std::nullopt);

// The [[2N, N, 2]] code: a line of N modes with doubled edges and end
// self-loops, two qubits per mode.
Encoding build_2n_n_2(int n_modes);

// --- Hamiltonian mapping ---------------------------------------------------

struct MapResult {
    WeightedPauliSum sum;  // identity removed
    double constant = 0.0;
};

// Maps H onto the per-sector encodings (sector s occupies a contiguous qubit
// range after sector s-1). Hops between non-adjacent modes run along
// policy-selected paths; diagonal hops become number operators.
MapResult map_hamiltonian(const std::vector<Encoding>& sector_encs,
                          const FermionHamiltonian& H, PathPolicy policy,
                          int fixed_copy = 0, bool parallel = true);

// Mapped a+_i a_j within one sector, embedded at `offset` in an
// `n_total`-qubit register. Exposed for tests and circuit construction.
WeightedPauliSum mapped_hop(const Encoding& enc, int i, int j, const EdgePath& path,
                            std::size_t offset, std::size_t n_total);

// --- code distance ----------------------------------------------------------

struct DistanceReport {
    int distance = 0;  // 0: none found up to w_max (distance > w_max)
    std::map<int, std::vector<std::string>> undetectable_by_weight;
};

// Exhaustively scans Pauli terms of weight <= w_max for undetectable logical
// operators (commute with all stabilizers, outside the stabilizer group).
// Guard: sum_w C(n,w) 3^w must stay within `budget`.
DistanceReport code_distance_scan(const Encoding& enc, int w_max, bool parallel = true,
                                  double budget = 1e7);

}  // namespace gsef
