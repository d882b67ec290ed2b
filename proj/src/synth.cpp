#include "gseforge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace gsef {

void append_pauli_rotation(Circuit& c, const PauliTerm& p, double angle,
                           std::vector<int>* clock) {
    if (!p.is_hermitian()) throw SynthError("rotation target must be Hermitian");
    double a = angle * (p.phase_exponent() == 2 ? -1.0 : 1.0);
    std::vector<int> support;
    for (std::size_t q = 0; q < p.n_qubits(); ++q)
        if (p.letter(q) != 'I') support.push_back(int(q));
    if (support.empty()) return;  // global phase only

    auto tick1 = [&](int q) {
        if (clock) (*clock)[q] += 1;
    };
    auto tick2 = [&](int qa, int qb) {
        if (!clock) return;
        int t = std::max((*clock)[qa], (*clock)[qb]) + 1;
        (*clock)[qa] = t;
        (*clock)[qb] = t;
    };

    for (int q : support) {  // basis in: one merged layer per qubit
        char l = p.letter(q);
        if (l == 'X') {
            c.h(q);
            tick1(q);
        } else if (l == 'Y') {
            c.sdg(q);
            c.h(q);
            tick1(q);
        }
    }
    for (std::size_t s = 0; s + 1 < support.size(); ++s) {
        c.cx(support[s], support[s + 1]);
        tick2(support[s], support[s + 1]);
    }
    int last = support.back();
    c.rz(2.0 * a, last);
    tick1(last);
    for (std::size_t s = support.size() - 1; s-- > 0;) {
        c.cx(support[s], support[s + 1]);
        tick2(support[s], support[s + 1]);
    }
    for (int q : support) {  // basis out
        char l = p.letter(q);
        if (l == 'X') {
            c.h(q);
            tick1(q);
        } else if (l == 'Y') {
            c.h(q);
            c.s(q);
            tick1(q);
        }
    }
}

Circuit trotter_step(const WeightedPauliSum& hsum, double dt) {
    for (const auto& [coeff, t] : hsum.terms())
        if (std::abs(coeff.imag()) > 1e-10)
            throw SynthError("trotter_step needs real coefficients");
    Circuit c(int(hsum.n_qubits()));
    std::vector<int> clock(hsum.n_qubits(), 0);
    for (const auto& [coeff, t] : hsum.terms())
        append_pauli_rotation(c, t, coeff.real() * dt, &clock);
    c.depth_hint = clock.empty() ? 0 : *std::max_element(clock.begin(), clock.end());
    return c;
}

// exp(phi * gp) for an anti-Hermitian Majorana pair gp (phase +-i):
// gp = -i P with P Hermitian, so this is exp(-i phi P).
static void append_gamma_rotation(Circuit& c, PauliTerm gp, double phi,
                                  std::vector<int>* clock = nullptr) {
    gp.mul_phase_i(1);
    append_pauli_rotation(c, gp, phi, clock);
}

// --- state preparation -------------------------------------------------------

namespace {

// selects n independent generators from candidates; throws on sign conflicts
std::vector<PauliTerm> independent_generators(const std::vector<PauliTerm>& cands,
                                              std::size_t n) {
    std::vector<PauliTerm> basis;   // reduced forms
    std::vector<std::size_t> pivot;
    std::vector<PauliTerm> chosen;  // original forms
    auto bit_at = [&](const PauliTerm& t, std::size_t i) {
        return i < n ? t.x_bit(i) : t.z_bit(i - n);
    };
    for (const auto& cand : cands) {
        PauliTerm t = cand;
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (bit_at(t, pivot[b])) t *= basis[b];
        bool zero = !t.x_bits().any() && !t.z_bits().any();
        if (zero) {
            if (t.phase_exponent() != 0)
                throw SynthError("inconsistent constraints: occupation conflicts with stabilizers");
            continue;
        }
        for (std::size_t i = 0; i < 2 * n; ++i)
            if (bit_at(t, i)) {
                basis.push_back(t);
                pivot.push_back(i);
                break;
            }
        chosen.push_back(cand);
    }
    if (chosen.size() != n) throw SynthError("state constraints do not fix a unique state");
    return chosen;
}

}  // namespace

StabilizerState codespace_state(const Encoding& enc, const std::vector<int>& occupation) {
    const int nv = enc.graph().n_vertices();
    if (int(occupation.size()) != nv) throw SynthError("occupation length mismatch");
    // parity feasibility per component
    for (std::size_t comp = 0; comp < enc.component_parity().size(); ++comp) {
        int need = enc.component_parity()[comp];
        if (need == 0) continue;
        int par = +1;
        for (int v = 0; v < nv; ++v)
            if (enc.component_of()[v] == int(comp) && occupation[v]) par = -par;
        if (par != need)
            throw SynthError("inconsistent constraints: occupation parity not representable");
    }
    std::vector<PauliTerm> cands = enc.stabilizer_ops();
    for (int v = 0; v < nv; ++v) {
        PauliTerm b = enc.vertex_operator(v);
        if (occupation[v]) b.mul_phase_i(2);  // occupied: B = -1
        cands.push_back(b);
    }
    auto gens = independent_generators(cands, enc.n_qubits());
    return StabilizerState::from_generators(gens);
}

static Circuit encode_state_gse2n(const Encoding& enc, const std::vector<int>& occupation) {
    const auto& g = enc.graph();
    Circuit c(enc.n_qubits());
    // per component, the pair states follow sign s_j, flipped by occupations
    std::vector<bool> is_left(g.n_vertices(), false);
    for (const auto& l : g.loops())
        for (const auto& e : g.edges())
            if (e.tail == l.v) is_left[l.v] = true;
    std::vector<int> comp_start;
    for (int v = 0; v < g.n_vertices(); ++v)
        if (is_left[v]) comp_start.push_back(v);
    for (int start : comp_start) {
        int s = +1;
        for (int v = start; v < g.n_vertices() && enc.component_of()[v] == enc.component_of()[start];
             ++v) {
            int a = enc.qubit_offset(v), b = a + 1;
            if (occupation[v]) c.x(b);
            c.h(a);
            if ((s > 0) == (occupation[v] == 0))
                c.s(a);
            else
                c.sdg(a);
            // CZ entangler (CX = H CZ H on the target)
            c.h(b);
            c.cz(a, b);
            c.h(b);
            if (occupation[v]) s = -s;
        }
    }
    return c;
}

Circuit encode_state(const Encoding& enc, const std::vector<int>& occupation) {
    // validates parity and constraint consistency
    StabilizerState target = codespace_state(enc, occupation);
    if (enc.family().kind == FamilyKind::Gse2N) {
        Circuit c = encode_state_gse2n(enc, occupation);
        StabilizerState check(enc.n_qubits());
        check.apply(c);
        if (!same_stabilizer_group(check, target))
            throw SynthError("gse2n vacuum circuit mismatch");
        return c;
    }
    return synthesize_prep(target);
}

// --- rotation measurement ------------------------------------------------------

RotationPlan rotation_measurement(const std::vector<PauliTerm>& stabilizers,
                                  const StabilizerState& base,
                                  const std::vector<PauliTerm>& group,
                                  std::uint64_t seed) {
    for (std::size_t a = 0; a < group.size(); ++a) {
        if (!group[a].is_hermitian()) throw SynthError("group terms must be Hermitian");
        for (const auto& s : stabilizers)
            if (!commutes(group[a], s))
                throw SynthError("group term anticommutes with a stabilizer");
        for (std::size_t b = a + 1; b < group.size(); ++b)
            if (!commutes(group[a], group[b]))
                throw SynthError("group terms must pairwise commute");
    }
    StabilizerState st = base;
    Rng rng(seed);
    for (const auto& t : group) st.measure(t, rng);
    for (const auto& s : stabilizers) {
        auto det = st.deterministic_outcome(s);
        if (!det || *det != +1)
            throw SynthError("base state left the codespace during projection");
    }
    RotationPlan plan;
    plan.circuit = synthesize_prep(st).inverse();
    for (const auto& t : group) {
        PauliTerm img = conjugate(plan.circuit, t);
        if (!img.is_z_only()) throw SynthError("rotation image not Z-only");
        plan.term_images.push_back(img);
    }
    for (const auto& s : stabilizers) {
        PauliTerm img = conjugate(plan.circuit, s);
        if (!img.is_z_only()) throw SynthError("stabilizer image not Z-only");
        plan.stab_images.push_back(img);
    }
    BitVec stab_support(base.n_qubits());
    for (const auto& s : plan.stab_images) {
        stab_support |= s.z_bits();
    }
    for (const auto& t : plan.term_images)
        if (intersects(t.z_bits(), stab_support)) ++plan.overlap_count;
    return plan;
}

RotationPlan rotation_measurement_naive(const std::vector<PauliTerm>& stabilizers,
                                        const std::vector<PauliTerm>& group) {
    if (stabilizers.empty() && group.empty()) throw SynthError("empty rotation request");
    const std::size_t n =
        stabilizers.empty() ? group[0].n_qubits() : stabilizers[0].n_qubits();
    std::vector<PauliTerm> rows = stabilizers;
    // extend by independent group members
    std::vector<PauliTerm> cands = stabilizers;
    for (const auto& t : group) cands.push_back(t);
    {
        std::vector<PauliTerm> basis;
        std::vector<std::size_t> pivot;
        auto bit_at = [&](const PauliTerm& t, std::size_t i) {
            return i < n ? t.x_bit(i) : t.z_bit(i - n);
        };
        rows.clear();
        for (const auto& cand : cands) {
            PauliTerm t = cand;
            for (std::size_t b = 0; b < basis.size(); ++b)
                if (bit_at(t, pivot[b])) t *= basis[b];
            if (!t.x_bits().any() && !t.z_bits().any()) continue;
            for (std::size_t i = 0; i < 2 * n; ++i)
                if (bit_at(t, i)) {
                    basis.push_back(t);
                    pivot.push_back(i);
                    break;
                }
            rows.push_back(cand);
        }
    }
    Circuit ops{int(n)};
    std::vector<PauliTerm> work = rows;
    reduce_rows_to_z(work, work.size(), ops);
    RotationPlan plan;
    plan.circuit = ops;
    for (const auto& t : group) {
        PauliTerm img = conjugate(ops, t);
        if (!img.is_z_only()) throw SynthError("naive rotation image not Z-only");
        plan.term_images.push_back(img);
    }
    BitVec stab_support(n);
    for (const auto& s : stabilizers) {
        PauliTerm img = conjugate(ops, s);
        plan.stab_images.push_back(img);
        stab_support |= img.z_bits();
    }
    for (const auto& t : plan.term_images)
        if (intersects(t.z_bits(), stab_support)) ++plan.overlap_count;
    return plan;
}

RotationPlan rotation_measurement(const Encoding& enc, const std::vector<PauliTerm>& group,
                                  std::uint64_t seed, bool naive) {
    auto stabs = enc.stabilizer_ops();
    if (naive) return rotation_measurement_naive(stabs, group);
    // reference codespace state: fill one mode when a component needs odd parity
    std::vector<int> occ(enc.graph().n_vertices(), 0);
    for (std::size_t comp = 0; comp < enc.component_parity().size(); ++comp)
        if (enc.component_parity()[comp] == -1)
            for (int v = 0; v < enc.graph().n_vertices(); ++v)
                if (enc.component_of()[v] == int(comp)) {
                    occ[v] = 1;
                    break;
                }
    return rotation_measurement(stabs, codespace_state(enc, occ), group, seed);
}

ReadoutPlan readout_2n_n_2(const Encoding& enc) {
    if (enc.family().kind != FamilyKind::Gse2N)
        throw SynthError("readout plan needs a gse2n encoding");
    std::vector<int> vacuum(enc.graph().n_vertices(), 0);
    Circuit v = encode_state_gse2n(enc, vacuum);
    ReadoutPlan plan;
    plan.decode = v.inverse();
    for (int m = 0; m < enc.graph().n_vertices(); ++m) {
        PauliTerm img = conjugate(plan.decode, enc.vertex_operator(m));
        if (!img.is_z_only()) throw SynthError("occupation image not Z-only");
        plan.occ_images.push_back(img);
    }
    for (const auto& s : enc.stabilizers()) {
        PauliTerm img = conjugate(plan.decode, s.op);
        if (!img.is_z_only()) throw SynthError("stabilizer image not Z-only");
        plan.stab_images.push_back(img);
    }
    return plan;
}

// --- fermionic Gaussian unitaries ---------------------------------------------

namespace {

struct GivensRotation {
    int a, b;      // modes; adjacent (b = a+1) except in pivot mode
    double theta;
};

// Adjacent-row QR in the systolic wavefront order (parallel schedule), or
// Reck-style pivot-row elimination (each column chains through its pivot).
std::vector<GivensRotation> givens_decompose(Eigen::MatrixXd A, std::vector<int>& signs,
                                             bool pivot_style) {
    const int M = int(A.rows());
    std::vector<GivensRotation> rots;
    auto eliminate = [&](int rlow, int r, int cidx) {
        if (std::abs(A(r, cidx)) < 1e-14) return;
        double theta = std::atan2(A(r, cidx), A(rlow, cidx));
        double cs = std::cos(theta), sn = std::sin(theta);
        for (int j = 0; j < M; ++j) {
            double a = A(rlow, j), b = A(r, j);
            A(rlow, j) = cs * a + sn * b;
            A(r, j) = -sn * a + cs * b;
        }
        rots.push_back({rlow, r, theta});
    };
    if (pivot_style) {
        for (int c = 0; c < M - 1; ++c)
            for (int r = c + 1; r < M; ++r) eliminate(c, r, c);
    } else {
        for (int stage = 0;; ++stage) {
            bool any = false;
            for (int c = 0; c <= std::min(stage / 2, M - 2); ++c) {
                int r = M - 1 + 2 * c - stage;
                if (r > c && r <= M - 1) {
                    eliminate(r - 1, r, c);
                    any = true;
                }
            }
            if (!any && stage > 2 * M) break;
        }
    }
    signs.resize(M);
    for (int i = 0; i < M; ++i) signs[i] = A(i, i) < 0 ? -1 : +1;
    return rots;
}

}  // namespace

FguResult fgu_orbital_rotation(const Eigen::MatrixXd& U, FguEncoding mode, Connectivity conn,
                               bool baseline_swaps) {
    const int M = int(U.rows());
    if (U.cols() != M) throw SynthError("U must be square");
    if ((U.transpose() * U - Eigen::MatrixXd::Identity(M, M)).norm() > 1e-10)
        throw SynthError("U must be orthogonal");

    std::vector<int> signs;
    std::vector<GivensRotation> rots = givens_decompose(U, signs, baseline_swaps);

    const bool jw = mode == FguEncoding::Jw;
    Encoding enc = jw ? build_encoding(build_line(std::max(M, 2)), Family::jw_chain())
                      : build_2n_n_2(M);
    const int n = jw ? M : enc.n_qubits();

    FguResult res;
    std::vector<int> layout(n);
    for (int q = 0; q < n; ++q) layout[q] = q;
    bool interleave =
        !jw && conn.kind == Connectivity::Kind::Linear && !baseline_swaps;
    if (interleave)
        for (int b = 0; 4 * b + 3 < n; ++b) {
            layout[4 * b + 2] = 4 * b + 3;
            layout[4 * b + 3] = 4 * b + 2;
        }
    Circuit c(n);
    auto image = [&](const PauliTerm& logical) {
        PauliTerm out(n);
        for (int q = 0; q < n; ++q) out.set_letter(layout[q], logical.letter(q));
        out.mul_phase_i(logical.phase_exponent());
        return out;
    };
    auto gamma_even = [&](int p) {  // gamma_{2p} gamma_{2p+2}
        EdgePath path{p, p + 1, {{enc.graph().find_edge(p, p + 1), 0, true}}};
        return enc.path_gamma_pair(path);
    };
    auto gamma_odd = [&](int p) {  // gamma_{2p+1} gamma_{2p+3}
        PauliTerm g;
        if (jw) {
            g = gamma_even(p);
        } else {
            EdgePath path{p, p + 1, {{enc.graph().find_edge(p, p + 1), 1, true}}};
            g = enc.path_gamma_pair(path);
        }
        return enc.vertex_operator(p) * g * enc.vertex_operator(p + 1);
    };
    auto emit_b_rotation = [&](int mode_idx, double phi) {
        PauliTerm b = enc.vertex_operator(mode_idx);
        b.mul_phase_i(1);
        append_gamma_rotation(c, image(b), phi);
    };
    auto support_adjacent = [&](const PauliTerm& p) {
        std::vector<int> sup;
        for (int q = 0; q < n; ++q)
            if (p.letter(q) != 'I') sup.push_back(q);
        if (sup.size() < 2) return true;
        if (sup.size() > 2) return conn.kind == Connectivity::Kind::AllToAll;
        switch (conn.kind) {
            case Connectivity::Kind::AllToAll: return true;
            case Connectivity::Kind::Linear: return sup[1] - sup[0] == 1;
            case Connectivity::Kind::Square: return conn.adjacent(sup[0], sup[1]);
        }
        return false;
    };
    // adjacent Givens between the modes at positions (p, p+1)
    auto emit_givens = [&](int p, double theta) {
        PauliTerm ge = gamma_even(p);
        PauliTerm go = gamma_odd(p);
        for (int channel = 0; channel < 2; ++channel) {
            PauliTerm img = image(channel ? go : ge);
            if (support_adjacent(img)) {
                append_gamma_rotation(c, img, theta / 2);
            } else if (baseline_swaps) {
                // hop the outer qubit over with a swap sandwich
                std::vector<int> sup;
                for (int q = 0; q < n; ++q)
                    if (img.letter(q) != 'I') sup.push_back(q);
                c.swap(sup[0] + 1, sup[1]);
                Gate sg{GateKind::Swap, sup[0] + 1, sup[1], 0};
                conjugate_in_place(sg, img);
                append_gamma_rotation(c, img, theta / 2);
                c.swap(sup[0] + 1, sup[1]);
            } else {
                // rotate inside the B-plane conjugation mapping this channel
                // onto the partner's local image (the stabilizer dressing
                // acts trivially on the codespace)
                PauliTerm partner = image(channel ? ge : go);
                emit_b_rotation(p, M_PI / 4);
                emit_b_rotation(p + 1, M_PI / 4);
                append_gamma_rotation(c, partner, theta / 2);
                emit_b_rotation(p, -M_PI / 4);
                emit_b_rotation(p + 1, -M_PI / 4);
            }
        }
    };
    for (const auto& r : rots) {
        if (r.b == r.a + 1) {
            emit_givens(r.a, r.theta);
            continue;
        }
        // pivot-style rotation (a, b): fswap-route b down to a+1, rotate,
        // route back; a fermionic swap is a Givens at pi/2
        for (int m = r.b - 1; m > r.a; --m) emit_givens(m, M_PI / 2);
        emit_givens(r.a, r.theta);
        for (int m = r.a + 1; m < r.b; ++m) emit_givens(m, -M_PI / 2);
    }
    for (int i = 0; i < M; ++i)
        if (signs[i] < 0) emit_b_rotation(i, M_PI / 2);
    res.circuit = c;
    res.layout = layout;
    return res;
}

// --- rotor support --------------------------------------------------------------

Circuit rotor_mode_transform() {
    // bounded search over 2-qubit Cliffords for the family-swapping gate:
    // on a 2-mode rotor code, images of gamma_0 gamma_3 and gamma_1 gamma_2
    // must drop to weight <= 2, stabilizers must map into their own group,
    // and the gate must be an involution as a Pauli action.
    static Circuit cached = [] {
        Encoding enc = build_2n_n_2(2);
        EdgePath e0{0, 1, {{0, 0, true}}};
        EdgePath e1{0, 1, {{0, 1, true}}};
        PauliTerm u = enc.path_gamma_pair(e0);                      // g0 g2
        PauliTerm bnext = enc.vertex_operator(1);
        PauliTerm b0 = enc.vertex_operator(0);
        PauliTerm w = u * bnext;
        w.mul_phase_i(1);  // g0 g3 = (g0 g2)(g2 g3) = u * iB_1
        PauliTerm v = b0 * enc.path_gamma_pair(e1) * bnext;         // g1 g3
        PauliTerm x = v * bnext;
        x.mul_phase_i(3);  // g1 g2 = (g1 g3)(g3 g2) = v * (-i B_1)

        struct Node {
            Circuit c;
        };
        auto action_key = [](const Circuit& c) {
            std::string k;
            for (int q = 0; q < 2; ++q)
                for (char l : {'X', 'Z'}) {
                    PauliTerm p = conjugate(c, PauliTerm::single(2, q, l));
                    k += p.str();
                    k += '|';
                }
            return k;
        };
        std::vector<Circuit> frontier{Circuit(2)};
        std::set<std::string> seen{action_key(Circuit(2))};
        auto expand_pool = [](const Circuit& c) {
            std::vector<Circuit> out;
            for (int q = 0; q < 2; ++q)
                for (GateKind k : {GateKind::H, GateKind::S, GateKind::Sdg, GateKind::X,
                                   GateKind::Z}) {
                    Circuit a = c;
                    a.append(k, q);
                    out.push_back(a);
                }
            for (auto [ka, a, b] : {std::tuple{GateKind::CZ, 0, 1},
                                    {GateKind::CX, 0, 1},
                                    {GateKind::CX, 1, 0},
                                    {GateKind::Swap, 0, 1}}) {
                Circuit d = c;
                d.append(ka, a, b);
                out.push_back(d);
            }
            return out;
        };
        auto test = [&](const Circuit& t2) {
            // occupation readout must survive: ZZ stays fixed on the block
            if (!(conjugate(t2, PauliTerm::parse("ZZ")) == PauliTerm::parse("ZZ")))
                return false;
            // involution as a Pauli action
            Circuit twice = t2;
            twice.append(t2);
            for (int q = 0; q < 2; ++q)
                for (char l : {'X', 'Z'}) {
                    PauliTerm p = PauliTerm::single(2, q, l);
                    if (!(conjugate(twice, p) == p)) return false;
                }
            // apply per mode block: mixed-family pairs must drop to weight 2
            Circuit full(4);
            for (const auto& g : t2.gates()) {
                full.append(g.kind, g.a, g.b < 0 ? -1 : g.b, g.param);
                full.append(g.kind, g.a + 2, g.b < 0 ? -1 : g.b + 2, g.param);
            }
            if (conjugate(full, w).weight() > 2) return false;
            if (conjugate(full, x).weight() > 2) return false;
            return true;
        };
        for (int depth = 0; depth < 14; ++depth) {
            std::vector<Circuit> next;
            for (const auto& c : frontier) {
                if (test(c)) return c;
                for (auto& e2 : expand_pool(c)) {
                    auto k = action_key(e2);
                    if (seen.insert(k).second) next.push_back(std::move(e2));
                }
            }
            frontier = std::move(next);
        }
        throw SynthError("no family-swapping transform found");
    }();
    return cached;
}

RotorCircuits rotor_trotter_circuits(int N, int d_m, double g, double dt) {
    RotorCircuits out;
    const int Mtot = N * d_m;
    const int mmax = (d_m - 1) / 2;

    // --- GSE side: per-rotor [[2 d_m, d_m, 2]] with family-split schedule
    Encoding genc = build_encoding(build_gse2n_lines(N, d_m), Family::gse2n());
    const int gn = genc.n_qubits();
    out.gse_qubits = gn;
    auto gpair = [&](int mode_idx, int copy) {
        EdgePath path{mode_idx, mode_idx + 1,
                      {{genc.graph().find_edge(mode_idx, mode_idx + 1), copy, true}}};
        return genc.path_gamma_pair(path);
    };
    auto u_of = [&](int i) { return gpair(i, 0); };                                   // g2i g2i+2
    auto v_of = [&](int i) {
        return genc.vertex_operator(i) * gpair(i, 1) * genc.vertex_operator(i + 1);  // g2i+1 g2i+3
    };
    auto w_of = [&](int i) {
        PauliTerm t = u_of(i) * genc.vertex_operator(i + 1);
        t.mul_phase_i(1);  // g2i g2i+3
        return t;
    };
    auto x_of = [&](int i) {
        PauliTerm t = v_of(i) * genc.vertex_operator(i + 1);
        t.mul_phase_i(3);  // g2i+1 g2i+2
        return t;
    };
    WeightedPauliSum fam1(gn), fam2(gn);
    for (int n0 = 0; n0 < N; ++n0)
        for (int t = 0; t < d_m; ++t) {
            double m = double(t - mmax);
            if (m != 0.0) fam1.add(0.5 * m * m, genc.vertex_operator(n0 * d_m + t));
        }
    for (int n0 = 0; n0 + 1 < N; ++n0)
        for (int i = (n0 + 1) * d_m; i <= (n0 + 2) * d_m - 2; ++i)
            for (int k = n0 * d_m; k <= (n0 + 1) * d_m - 2; ++k) {
                // (g/4)[3PQ+3P+Q+ -PQ+ -P+Q] = (P+P+)(Q+Q+) + 2(P-P+)(Q-Q+)
                // family 1: (g/8)(u_i+v_i)(u_k+v_k); family 2: -(g/16)(w_i-x_i)(w_k-x_k)
                PauliTerm ui = u_of(i), vi = v_of(i), uk = u_of(k), vk = v_of(k);
                PauliTerm wi = w_of(i), xi = x_of(i), wk = w_of(k), xk = x_of(k);
                double c1 = g / 8.0, c2 = -g / 16.0;
                fam1.add(c1, ui * uk);
                fam1.add(c1, ui * vk);
                fam1.add(c1, vi * uk);
                fam1.add(c1, vi * vk);
                fam2.add(c2, wi * wk);
                fam2.add(-c2, wi * xk);
                fam2.add(-c2, xi * wk);
                fam2.add(c2, xi * xk);
            }
    fam1.compress();
    fam2.compress();
    Circuit t2 = rotor_mode_transform();
    Circuit gse(gn);
    std::vector<int> clock(gn, 0);
    for (const auto& [coeff, t] : fam1.terms())
        append_pauli_rotation(gse, t, coeff.real() * dt, &clock);
    Circuit tlayer(gn);
    for (int v = 0; v < Mtot; ++v)
        for (const auto& gt : t2.gates()) {
            int a = genc.qubit_offset(v) + gt.a;
            int b = gt.b < 0 ? -1 : genc.qubit_offset(v) + gt.b;
            tlayer.append(gt.kind, a, b, gt.param);
        }
    auto bump_clock = [&](const Circuit& layer) {
        for (const auto& gt : layer.gates()) {
            if (is_two_qubit(gt.kind)) {
                int t = std::max(clock[gt.a], clock[gt.b]) + 1;
                clock[gt.a] = clock[gt.b] = t;
            } else {
                clock[gt.a] += 1;
            }
        }
    };
    if (fam2.size()) {
        gse.append(tlayer);
        bump_clock(tlayer);
        for (const auto& [coeff, t] : fam2.terms())
            append_pauli_rotation(gse, conjugate(tlayer, t), coeff.real() * dt, &clock);
        Circuit tinv = tlayer.inverse();
        gse.append(tinv);
        bump_clock(tinv);
    }
    gse.depth_hint = clock.empty() ? 0 : *std::max_element(clock.begin(), clock.end());
    out.gse = gse;

    // --- JW side on the same rotor line graphs
    InteractionGraph lines(Mtot);
    for (int n0 = 0; n0 < N; ++n0)
        for (int v = 0; v + 1 < d_m; ++v) lines.add_edge(n0 * d_m + v, n0 * d_m + v + 1);
    Encoding jenc = build_encoding(lines, Family::jw_chain());
    out.jw_qubits = jenc.n_qubits();
    MapResult jw = map_hamiltonian({jenc}, rotor_hamiltonian(N, d_m, g, 0.0),
                                   PathPolicy::Shortest);
    out.jw = trotter_step(jw.sum, dt);
    return out;
}

}  // namespace gsef
