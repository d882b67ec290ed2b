#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gseforge/circuit.hpp"
#include "gseforge/pauli.hpp"

namespace gsef {

struct SamplerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoiseModel {
    double two_qubit_depolarizing = 0.0;  // after every CX/CZ/SWAP
    double measurement_flip = 0.0;
};

// Shot bit-matrix, row-major packed; reproducible from (circuit, seed).
struct SampleSet {
    std::uint32_t n_columns = 0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::uint64_t circuit_hash = 0;
    std::vector<word_t> bits;

    std::size_t words_per_row() const { return (n_columns + 63) / 64; }
    bool get(std::uint64_t shot, std::uint32_t col) const {
        return (bits[shot * words_per_row() + (col >> 6)] >> (col & 63)) & 1u;
    }
    void set(std::uint64_t shot, std::uint32_t col, bool v) {
        word_t& w = bits[shot * words_per_row() + (col >> 6)];
        word_t m = word_t(1) << (col & 63);
        if (v)
            w |= m;
        else
            w &= ~m;
    }
    void write_file(const std::string& path) const;
    static SampleSet read_file(const std::string& path);
};

// Noisy stabilizer sampling via Pauli-frame propagation over a terminal-
// measurement Clifford circuit. The ideal outcome distribution is drawn
// exactly from the final state's Z-measurement affine structure; depolarizing
// faults ride a per-shot frame. Deterministic given the seed: shots are
// sharded with derived per-shard streams, independent of thread count.
SampleSet sample_circuit(const Circuit& c, const NoiseModel& noise, std::uint64_t shots,
                         std::uint64_t seed);
// Serial reference implementation (same output, no OpenMP).
SampleSet sample_circuit_serial(const Circuit& c, const NoiseModel& noise,
                                std::uint64_t shots, std::uint64_t seed);

// Statevector trajectory sampler for non-Clifford circuits (guarded size):
// per shot, faults are injected and the final state measured once.
SampleSet sample_circuit_trajectories(const Circuit& c, const NoiseModel& noise,
                                      std::uint64_t shots, std::uint64_t seed);

}  // namespace gsef
