#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsef {

struct CircuitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GateKind { H, S, Sdg, X, Y, Z, CX, CZ, Swap, Rz, Measure, Depol2 };

struct Gate {
    GateKind kind;
    int a = -1;
    int b = -1;        // second qubit for 2q gates
    double param = 0;  // RZ angle or DEPOL2 probability
};

inline bool is_two_qubit(GateKind k) {
    return k == GateKind::CX || k == GateKind::CZ || k == GateKind::Swap ||
           k == GateKind::Depol2;
}
inline bool is_clifford_1q(GateKind k) {
    return k == GateKind::H || k == GateKind::S || k == GateKind::Sdg || k == GateKind::X ||
           k == GateKind::Y || k == GateKind::Z;
}

// Ordered gate list. `depth_hint`, when >= 0, is the depth computed by the
// synthesizer's scheduler (merged single-qubit basis layers); depth() is the
// plain qubit-sharing DAG depth of the emitted gates.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(int n) : n_(n) {}

    int n_qubits() const { return n_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::vector<Gate>& gates() { return gates_; }

    void append(GateKind k, int a, int b = -1, double param = 0);
    void append(const Circuit& other);

    void h(int q) { append(GateKind::H, q); }
    void s(int q) { append(GateKind::S, q); }
    void sdg(int q) { append(GateKind::Sdg, q); }
    void x(int q) { append(GateKind::X, q); }
    void y(int q) { append(GateKind::Y, q); }
    void z(int q) { append(GateKind::Z, q); }
    void cx(int a, int b) { append(GateKind::CX, a, b); }
    void cz(int a, int b) { append(GateKind::CZ, a, b); }
    void swap(int a, int b) { append(GateKind::Swap, a, b); }
    void rz(double theta, int q) { append(GateKind::Rz, q, -1, theta); }
    void measure(int q) { append(GateKind::Measure, q); }

    // Inverse circuit (unitary part; measurements and noise are rejected).
    Circuit inverse() const;

    bool is_clifford() const;  // RZ only at multiples of pi/2
    int two_qubit_count() const;
    int measured_count() const;

    // Longest chain of gates sharing qubits, unit weight per gate.
    // Measurements and noise annotations are ignored.
    int depth() const;

    int depth_hint = -1;

    std::string to_text() const;
    static Circuit from_text(const std::string& text, int n_qubits = -1);
    std::uint64_t content_hash() const;

private:
    int n_ = 0;
    std::vector<Gate> gates_;
};

// Hardware adjacency used by the FGU synthesizer.
struct Connectivity {
    enum class Kind { AllToAll, Linear, Square } kind = Kind::AllToAll;
    int rows = 0, cols = 0;  // square only

    static Connectivity all_to_all() { return {Kind::AllToAll, 0, 0}; }
    static Connectivity linear() { return {Kind::Linear, 0, 0}; }
    static Connectivity square(int r, int c) { return {Kind::Square, r, c}; }

    bool adjacent(int a, int b) const {
        if (a == b) return false;
        switch (kind) {
            case Kind::AllToAll: return true;
            case Kind::Linear: return std::abs(a - b) == 1;
            case Kind::Square: {
                int ra = a / cols, ca = a % cols, rb = b / cols, cb = b % cols;
                return std::abs(ra - rb) + std::abs(ca - cb) == 1;
            }
        }
        return false;
    }
};

}  // namespace gsef
