#include "gseforge/tableau.hpp"

#include <algorithm>
#include <cmath>

namespace gsef {

void conjugate_in_place(const Gate& g, PauliTerm& p) {
    auto& x = p.x_ref();
    auto& z = p.z_ref();
    switch (g.kind) {
        case GateKind::H: {
            bool bx = x.get(g.a), bz = z.get(g.a);
            x.set(g.a, bz);
            z.set(g.a, bx);
            if (bx && bz) p.mul_phase_i(2);
            break;
        }
        case GateKind::S: {
            if (x.get(g.a)) {
                p.mul_phase_i(1);
                z.flip(g.a);
            }
            break;
        }
        case GateKind::Sdg: {
            if (x.get(g.a)) {
                p.mul_phase_i(3);
                z.flip(g.a);
            }
            break;
        }
        case GateKind::X:
            if (z.get(g.a)) p.mul_phase_i(2);
            break;
        case GateKind::Y:
            if (x.get(g.a) != z.get(g.a)) p.mul_phase_i(2);
            break;
        case GateKind::Z:
            if (x.get(g.a)) p.mul_phase_i(2);
            break;
        case GateKind::CX:
            // in the i^k X^x Z^z representation CX carries no phase
            x.set(g.b, x.get(g.b) ^ x.get(g.a));
            z.set(g.a, z.get(g.a) ^ z.get(g.b));
            break;
        case GateKind::CZ: {
            bool xa = x.get(g.a), xb = x.get(g.b);
            if (xa && xb) p.mul_phase_i(2);
            z.set(g.a, z.get(g.a) ^ xb);
            z.set(g.b, z.get(g.b) ^ xa);
            break;
        }
        case GateKind::Swap: {
            bool xa = x.get(g.a), za = z.get(g.a);
            x.set(g.a, x.get(g.b));
            z.set(g.a, z.get(g.b));
            x.set(g.b, xa);
            z.set(g.b, za);
            break;
        }
        case GateKind::Rz: {
            double r = g.param / (M_PI / 2);
            long k = std::lround(r);
            if (std::abs(r - double(k)) > 1e-9)
                throw TableauError("conjugate: RZ angle is not Clifford");
            // RZ(k*pi/2) == S^k up to global phase
            Gate s{GateKind::S, g.a, -1, 0};
            for (long t = 0; t < ((k % 4) + 4) % 4; ++t) conjugate_in_place(s, p);
            break;
        }
        case GateKind::Measure:
        case GateKind::Depol2:
            throw TableauError("conjugate: not a unitary gate");
    }
}

PauliTerm conjugate(const Circuit& c, const PauliTerm& p) {
    if (std::size_t(c.n_qubits()) != p.n_qubits())
        throw TableauError("conjugate: width mismatch");
    PauliTerm r = p;
    for (const auto& g : c.gates()) conjugate_in_place(g, r);
    return r;
}

StabilizerState::StabilizerState(int n) : n_(n) {
    stab_.reserve(n);
    destab_.reserve(n);
    for (int q = 0; q < n; ++q) {
        stab_.push_back(PauliTerm::single(n, q, 'Z'));
        destab_.push_back(PauliTerm::single(n, q, 'X'));
    }
}

void StabilizerState::apply(const Gate& g) {
    for (auto& r : stab_) conjugate_in_place(g, r);
    for (auto& r : destab_) conjugate_in_place(g, r);
}

void StabilizerState::apply(const Circuit& c) {
    for (const auto& g : c.gates()) {
        if (g.kind == GateKind::Measure || g.kind == GateKind::Depol2) continue;
        apply(g);
    }
}

std::optional<int> StabilizerState::deterministic_outcome(const PauliTerm& p) const {
    for (const auto& s : stab_)
        if (!commutes(s, p)) return std::nullopt;
    PauliTerm acc = PauliTerm::identity(n_);
    for (int i = 0; i < n_; ++i)
        if (!commutes(destab_[i], p)) acc *= stab_[i];
    if (!acc.same_letters(p)) throw TableauError("measure: operator outside Pauli group span");
    int d = (acc.phase_exponent() - p.phase_exponent() + 4) & 3;
    return d == 0 ? +1 : -1;
}

int StabilizerState::measure(const PauliTerm& p, Rng& rng) {
    if (!p.is_hermitian()) throw TableauError("measure: operator must be Hermitian");
    int pivot = -1;
    for (int i = 0; i < n_; ++i)
        if (!commutes(stab_[i], p)) {
            pivot = i;
            break;
        }
    if (pivot < 0) return *deterministic_outcome(p);
    int outcome = rng.coin() ? +1 : -1;
    for (int i = 0; i < n_; ++i) {
        if (i != pivot && !commutes(stab_[i], p)) stab_[i] *= stab_[pivot];
        if (!commutes(destab_[i], p) && i != pivot) destab_[i] *= stab_[pivot];
    }
    destab_[pivot] = stab_[pivot];
    PauliTerm meas = p;
    if (outcome < 0) meas.mul_phase_i(2);
    stab_[pivot] = meas;
    return outcome;
}

void reduce_rows_to_z(std::vector<PauliTerm>& rows, std::size_t pivots, Circuit& ops) {
    const std::size_t n = rows.empty() ? 0 : rows[0].n_qubits();
    for (std::size_t q = 0; q < pivots; ++q) {
        // want row q to become +Z_q using gates on qubits and free row swaps
        std::size_t r = q;
        auto has_support = [&](std::size_t row, std::size_t col) {
            return rows[row].x_bit(col) || rows[row].z_bit(col);
        };
        bool found = false;
        for (std::size_t col = q; col < n && !found; ++col)
            for (std::size_t row = q; row < rows.size(); ++row)
                if (has_support(row, col)) {
                    // move support to column q via SWAP if needed
                    if (col != q) {
                        ops.swap(int(q), int(col));
                        for (auto& rr : rows)
                            conjugate_in_place(Gate{GateKind::Swap, int(q), int(col), 0}, rr);
                    }
                    r = row;
                    found = true;
                    break;
                }
        if (!found) throw TableauError("reduce: generators not independent");
        std::swap(rows[q], rows[r]);
        // ensure an X at column q (H converts Z to X)
        if (!rows[q].x_bit(q)) {
            ops.h(int(q));
            for (auto& rr : rows) conjugate_in_place(Gate{GateKind::H, int(q), -1, 0}, rr);
        }
        // clear other X columns of row q
        for (std::size_t j = 0; j < n; ++j)
            if (j != q && rows[q].x_bit(j)) {
                ops.cx(int(q), int(j));
                for (auto& rr : rows)
                    conjugate_in_place(Gate{GateKind::CX, int(q), int(j), 0}, rr);
            }
        // clear Y at the pivot
        if (rows[q].z_bit(q)) {
            ops.s(int(q));
            for (auto& rr : rows) conjugate_in_place(Gate{GateKind::S, int(q), -1, 0}, rr);
        }
        // clear remaining Z columns of row q
        for (std::size_t j = 0; j < n; ++j)
            if (j != q && rows[q].z_bit(j)) {
                ops.cz(int(q), int(j));
                for (auto& rr : rows)
                    conjugate_in_place(Gate{GateKind::CZ, int(q), int(j), 0}, rr);
            }
        // row q is now +-X_q; rotate to +-Z_q
        ops.h(int(q));
        for (auto& rr : rows) conjugate_in_place(Gate{GateKind::H, int(q), -1, 0}, rr);
        // fix sign with X_q
        if (rows[q].phase_exponent() == 2) {
            ops.x(int(q));
            for (auto& rr : rows) conjugate_in_place(Gate{GateKind::X, int(q), -1, 0}, rr);
        }
        if (!(rows[q].same_letters(PauliTerm::single(n, q, 'Z')) &&
              rows[q].phase_exponent() == 0))
            throw TableauError("reduce: pivot normalization failed");
        // clear Z_q from the other rows by row multiplication
        for (std::size_t row = 0; row < rows.size(); ++row)
            if (row != q && rows[row].z_bit(q)) rows[row] *= rows[q];
    }
}

StabilizerState StabilizerState::from_generators(const std::vector<PauliTerm>& gens) {
    if (gens.empty()) throw TableauError("from_generators: empty set");
    const int n = int(gens[0].n_qubits());
    if (int(gens.size()) != n) throw TableauError("from_generators: need exactly n generators");
    for (const auto& g : gens)
        if (!g.is_hermitian()) throw TableauError("from_generators: non-Hermitian generator");
    std::vector<PauliTerm> rows = gens;
    Circuit ops(n);
    reduce_rows_to_z(rows, rows.size(), ops);
    // rows were reduced by U := ops; the state is U^-1 |0..0>
    Circuit undo = ops.inverse();
    StabilizerState st(n);
    st.apply(undo);
    return st;
}

Circuit synthesize_prep(const StabilizerState& state) {
    std::vector<PauliTerm> rows = state.stabilizers();
    Circuit ops(state.n_qubits());
    reduce_rows_to_z(rows, rows.size(), ops);
    return ops.inverse();
}

bool in_group(const std::vector<PauliTerm>& gens, const PauliTerm& p, int* phase_out) {
    if (gens.empty()) {
        if (!p.is_identity()) return false;
        if (phase_out) *phase_out = p.phase_exponent();
        return true;
    }
    const std::size_t n = gens[0].n_qubits();
    std::vector<PauliTerm> basis;
    std::vector<std::size_t> pivot;  // pivot index in [0, 2n): x side then z side
    auto bit_at = [&](const PauliTerm& t, std::size_t i) {
        return i < n ? t.x_bit(i) : t.z_bit(i - n);
    };
    auto reduce = [&](PauliTerm t) {
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (bit_at(t, pivot[b])) t *= basis[b];
        return t;
    };
    for (const auto& g : gens) {
        PauliTerm t = reduce(g);
        for (std::size_t i = 0; i < 2 * n; ++i)
            if (bit_at(t, i)) {
                basis.push_back(t);
                pivot.push_back(i);
                break;
            }
    }
    PauliTerm r = reduce(p);
    if (r.x_bits().any() || r.z_bits().any()) return false;
    if (phase_out) *phase_out = r.phase_exponent();
    return true;
}

bool same_stabilizer_group(const StabilizerState& a, const StabilizerState& b) {
    if (a.n_qubits() != b.n_qubits()) return false;
    for (const auto& g : b.stabilizers()) {
        int ph = 1;
        if (!in_group(a.stabilizers(), g, &ph) || ph != 0) return false;
    }
    return true;
}

}  // namespace gsef
