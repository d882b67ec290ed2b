#include "gseforge/dense.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace gsef {

void apply_pauli(const PauliTerm& p, cplx c, const Vec& x, Vec& y) {
    const std::size_t n = p.n_qubits();
    const std::size_t dim = std::size_t(1) << n;
    std::size_t xmask = 0, zmask = 0;
    for (std::size_t q = 0; q < n; ++q) {
        if (p.x_bit(q)) xmask |= std::size_t(1) << q;
        if (p.z_bit(q)) zmask |= std::size_t(1) << q;
    }
    // i^k X^x Z^z |b> = i^k (-1)^{|z & b|} |b ^ x>
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx base = c * ipow[p.raw_phase_exponent() & 3];
    for (std::size_t b = 0; b < dim; ++b) {
        cplx amp = x[b];
        if (amp == cplx(0.0)) continue;
        int zpar = std::popcount(b & zmask) & 1;
        y[b ^ xmask] += (zpar ? -base : base) * amp;
    }
}

Mat dense_pauli_matrix(const PauliTerm& p) {
    check_dense_guard(p.n_qubits(), 12);
    const std::size_t dim = std::size_t(1) << p.n_qubits();
    Mat m = Mat::Zero(dim, dim);
    Vec e = Vec::Zero(dim), col = Vec::Zero(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        e.setZero();
        e[b] = 1.0;
        col.setZero();
        apply_pauli(p, 1.0, e, col);
        m.col(b) = col;
    }
    return m;
}

Mat dense_pauli_matrix(const WeightedPauliSum& sum, double constant) {
    check_dense_guard(sum.n_qubits(), 12);
    const std::size_t dim = std::size_t(1) << sum.n_qubits();
    Mat m = Mat::Identity(dim, dim) * constant;
    Vec e = Vec::Zero(dim), col = Vec::Zero(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        e.setZero();
        e[b] = 1.0;
        col.setZero();
        for (const auto& [c, t] : sum.terms()) apply_pauli(t, c, e, col);
        m.col(b).noalias() += col;
    }
    return m;
}

// a_g / a+_g action with Jordan-Wigner sign (-1)^{n_0 + .. + n_{g-1}}.
static void apply_hop(int g_create, int g_destroy, double coeff,
                      const Vec& x, Vec& y) {
    const std::size_t dim = x.size();
    for (std::size_t b = 0; b < dim; ++b) {
        if (x[b] == cplx(0.0)) continue;
        if (!((b >> g_destroy) & 1)) continue;
        std::size_t b1 = b ^ (std::size_t(1) << g_destroy);
        int sign = std::popcount(b & ((std::size_t(1) << g_destroy) - 1)) & 1;
        if ((b1 >> g_create) & 1) continue;
        std::size_t b2 = b1 ^ (std::size_t(1) << g_create);
        sign ^= std::popcount(b1 & ((std::size_t(1) << g_create) - 1)) & 1;
        y[b2] += (sign ? -coeff : coeff) * x[b];
    }
}

Mat dense_fermion_matrix(const FermionHamiltonian& H) {
    const int L = H.total_modes();
    check_dense_guard(L, 12);
    const std::size_t dim = std::size_t(1) << L;
    const int M = H.modes_per_sector();
    Mat m = Mat::Identity(dim, dim) * H.constant;
    Vec e = Vec::Zero(dim), acc = Vec::Zero(dim), tmp = Vec::Zero(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        e.setZero();
        e[b] = 1.0;
        acc.setZero();
        for (const auto& [k, v] : H.one_body())
            apply_hop(k[0] * M + k[1], k[0] * M + k[2], v, e, acc);
        for (const auto& [k, v] : H.two_body()) {
            tmp.setZero();
            apply_hop(k[1] * M + k[4], k[1] * M + k[5], v, e, tmp);
            apply_hop(k[0] * M + k[2], k[0] * M + k[3], 1.0, tmp, acc);
        }
        m.col(b).noalias() += acc;
    }
    return m;
}

std::vector<std::size_t> parity_sector_indices(int M, int sectors,
                                               const std::vector<int>& parities) {
    std::vector<std::size_t> out;
    const std::size_t dim = std::size_t(1) << (M * sectors);
    for (std::size_t b = 0; b < dim; ++b) {
        bool ok = true;
        for (int s = 0; s < sectors; ++s) {
            if (parities[s] == 0) continue;
            std::size_t mask = ((std::size_t(1) << M) - 1) << (s * M);
            int par = (std::popcount(b & mask) & 1) ? -1 : +1;
            if (par != parities[s]) ok = false;
        }
        if (ok) out.push_back(b);
    }
    return out;
}

Eigen::VectorXd eigenvalues(const Mat& herm) {
    Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

Eigen::VectorXd spectrum_in_codespace(const WeightedPauliSum& sum, double constant,
                                      const std::vector<PauliTerm>& stabilizers) {
    return eigenvalues(codespace_matrix(sum, constant, stabilizers));
}

Mat codespace_matrix(const WeightedPauliSum& sum, double constant,
                     const std::vector<PauliTerm>& stabilizers) {
    const std::size_t n = sum.n_qubits();
    check_dense_guard(n);
    const std::size_t dim = std::size_t(1) << n;
    // independent stabilizer count fixes the codespace dimension
    std::size_t rank = 0;
    {
        std::vector<PauliTerm> basis;
        for (const auto& s : stabilizers) {
            PauliTerm t = s;
            for (const auto& b : basis) {
                // reduce on lowest set symplectic bit
                for (std::size_t i = 0; i < 2 * n; ++i) {
                    bool tb = i < n ? t.x_bit(i) : t.z_bit(i - n);
                    bool bb = i < n ? b.x_bit(i) : b.z_bit(i - n);
                    if (bb) {
                        if (tb) t = t * b;
                        break;
                    }
                    if (tb) break;
                }
            }
            if (t.x_bits().any() || t.z_bits().any()) basis.push_back(t);
        }
        rank = basis.size();
    }
    const std::size_t code_dim = dim >> rank;
    std::vector<Vec> basis;
    Vec v(dim), w(dim);
    for (std::size_t seed = 0; seed < dim && basis.size() < code_dim; ++seed) {
        v.setZero();
        v[seed] = 1.0;
        for (const auto& s : stabilizers) {
            w.setZero();
            apply_pauli(s, 1.0, v, w);
            v = 0.5 * (v + w);
        }
        for (const auto& b : basis) v -= b.dot(v) * b;
        double nrm = v.norm();
        if (nrm > 1e-8) basis.push_back(v / nrm);
    }
    if (basis.size() != code_dim) throw DenseError("codespace basis construction failed");
    Mat hc(code_dim, code_dim);
    std::vector<Vec> hb(code_dim, Vec::Zero(dim));
    for (std::size_t j = 0; j < code_dim; ++j) {
        for (const auto& [c, t] : sum.terms()) apply_pauli(t, c, basis[j], hb[j]);
        hb[j] += constant * basis[j];
    }
    for (std::size_t i = 0; i < code_dim; ++i)
        for (std::size_t j = 0; j < code_dim; ++j) hc(i, j) = basis[i].dot(hb[j]);
    return hc;
}

Vec zero_state(std::size_t n) {
    Vec psi = Vec::Zero(std::size_t(1) << n);
    psi[0] = 1.0;
    return psi;
}

void apply_gate_dense(const Gate& g, Vec& psi, std::size_t n) {
    const std::size_t dim = psi.size();
    const std::size_t ma = std::size_t(1) << g.a;
    const cplx I(0, 1);
    switch (g.kind) {
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            for (std::size_t b = 0; b < dim; ++b)
                if (!(b & ma)) {
                    cplx a0 = psi[b], a1 = psi[b | ma];
                    psi[b] = s * (a0 + a1);
                    psi[b | ma] = s * (a0 - a1);
                }
            break;
        }
        case GateKind::S:
            for (std::size_t b = 0; b < dim; ++b)
                if (b & ma) psi[b] *= I;
            break;
        case GateKind::Sdg:
            for (std::size_t b = 0; b < dim; ++b)
                if (b & ma) psi[b] *= -I;
            break;
        case GateKind::X:
            for (std::size_t b = 0; b < dim; ++b)
                if (!(b & ma)) std::swap(psi[b], psi[b | ma]);
            break;
        case GateKind::Y:
            for (std::size_t b = 0; b < dim; ++b)
                if (!(b & ma)) {
                    cplx a0 = psi[b];
                    psi[b] = -I * psi[b | ma];
                    psi[b | ma] = I * a0;
                }
            break;
        case GateKind::Z:
            for (std::size_t b = 0; b < dim; ++b)
                if (b & ma) psi[b] = -psi[b];
            break;
        case GateKind::Rz: {
            cplx e0 = std::exp(-I * (g.param / 2.0)), e1 = std::exp(I * (g.param / 2.0));
            for (std::size_t b = 0; b < dim; ++b) psi[b] *= (b & ma) ? e1 : e0;
            break;
        }
        case GateKind::CX: {
            const std::size_t mb = std::size_t(1) << g.b;
            for (std::size_t b = 0; b < dim; ++b)
                if ((b & ma) && !(b & mb)) std::swap(psi[b], psi[b | mb]);
            break;
        }
        case GateKind::CZ: {
            const std::size_t mb = std::size_t(1) << g.b;
            for (std::size_t b = 0; b < dim; ++b)
                if ((b & ma) && (b & mb)) psi[b] = -psi[b];
            break;
        }
        case GateKind::Swap: {
            const std::size_t mb = std::size_t(1) << g.b;
            for (std::size_t b = 0; b < dim; ++b)
                if ((b & ma) && !(b & mb)) std::swap(psi[b], psi[b ^ ma ^ mb]);
            break;
        }
        case GateKind::Measure:
        case GateKind::Depol2:
            break;  // no unitary action
    }
}

void apply_circuit_dense(const Circuit& c, Vec& psi) {
    for (const auto& g : c.gates()) apply_gate_dense(g, psi, c.n_qubits());
}

Mat circuit_unitary(const Circuit& c) {
    check_dense_guard(c.n_qubits(), 12);
    const std::size_t dim = std::size_t(1) << c.n_qubits();
    Mat u(dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        Vec e = Vec::Zero(dim);
        e[b] = 1.0;
        apply_circuit_dense(c, e);
        u.col(b) = e;
    }
    return u;
}

Mat pauli_exponential(const PauliTerm& p, double angle) {
    Mat pm = dense_pauli_matrix(p);
    const std::size_t dim = pm.rows();
    const cplx I(0, 1);
    return std::cos(angle) * Mat::Identity(dim, dim) - I * std::sin(angle) * pm;
}

}  // namespace gsef
