#include "gseforge/encoding.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "gseforge/tableau.hpp"
#include "json.hpp"

namespace gsef {

using nlohmann::json;

std::string Family::name() const {
    switch (kind) {
        case FamilyKind::JwChain: return "jw_chain";
        case FamilyKind::Cyclic: return "cyclic(" + std::to_string(k) + ")";
        case FamilyKind::TernaryTree: return "ternary_tree";
        case FamilyKind::Gse2N: return "gse2n";
        case FamilyKind::Explicit: return "explicit";
    }
    return "?";
}

PauliTerm embed(const PauliTerm& local, std::size_t offset, std::size_t n_total) {
    PauliTerm t(n_total);
    for (std::size_t q = 0; q < local.n_qubits(); ++q) t.set_letter(offset + q, local.letter(q));
    t.mul_phase_i(local.phase_exponent());
    return t;
}

// Chain Majoranas on m qubits: index 2t -> Z^t X I..., 2t+1 -> Z^t Y I...
static std::vector<PauliTerm> chain_majoranas_raw(int m) {
    std::vector<PauliTerm> out;
    out.reserve(2 * m);
    for (int t = 0; t < m; ++t)
        for (char letter : {'X', 'Y'}) {
            PauliTerm p(m);
            for (int q = 0; q < t; ++q) p.set_letter(q, 'Z');
            p.set_letter(t, letter);
            out.push_back(p);
        }
    return out;
}

static std::vector<PauliTerm> cyclic_majoranas(int k);

// Default block set: plain chains on one- and even-qubit blocks; odd blocks
// of 3+ qubits take the weight-balanced cyclic-shift set instead, so no local
// Majorana has weight 1 and edge operators keep the code distance at the
// graph degree (single-qubit blocks reproduce Jordan-Wigner).
static std::vector<PauliTerm> chain_majoranas(int m) {
    if (m >= 3 && m % 2 == 1) return cyclic_majoranas((m - 1) / 2);
    return chain_majoranas_raw(m);
}

// Ternary-tree Majoranas: 2m+1 pairwise anticommuting strings from the
// complete ternary tree on m qubits; the last (all-Z spine) is dropped.
static void ternary_walk(int node, int m, PauliTerm prefix, std::vector<PauliTerm>& out) {
    static const char axes[3] = {'X', 'Y', 'Z'};
    for (int a = 0; a < 3; ++a) {
        PauliTerm p = prefix;
        p.set_letter(node, axes[a]);
        int child = 3 * node + 1 + a;
        if (child < m)
            ternary_walk(child, m, p, out);
        else
            out.push_back(p);
    }
}

static std::vector<PauliTerm> ternary_majoranas(int m) {
    std::vector<PauliTerm> out;
    ternary_walk(0, m, PauliTerm(m), out);
    out.pop_back();  // 2m+1 leaves; drop the last to get an even set
    return out;
}

// Cyclic-shift Majoranas for d = 2k+1 on d qubits: shifts of Z^k Y I^k (m
// type) then of Z^k X I^k (n type).
static std::vector<PauliTerm> cyclic_majoranas(int k) {
    int d = 2 * k + 1;
    std::vector<PauliTerm> out;
    out.reserve(2 * d);
    for (char letter : {'Y', 'X'})
        for (int c = 0; c < d; ++c) {
            PauliTerm p(d);
            for (int t = 0; t < k; ++t) p.set_letter((c + t) % d, 'Z');
            p.set_letter((c + k) % d, letter);
            out.push_back(p);
        }
    return out;
}

static const std::vector<PauliTerm>& gse2n_majoranas() {
    // order (XI, YI, ZX, ZY); B = (-i)^2 * product = +ZZ
    static const std::vector<PauliTerm> set = {
        PauliTerm::parse("XI"), PauliTerm::parse("YI"), PauliTerm::parse("ZX"),
        PauliTerm::parse("ZY")};
    return set;
}

static void check_majorana_set(const std::vector<PauliTerm>& set, int needed) {
    if (int(set.size()) < needed) throw EncodingError("too few local Majoranas for incidence");
    for (std::size_t a = 0; a < set.size(); ++a) {
        if (!set[a].is_hermitian() || set[a].is_identity())
            throw EncodingError("local Majorana must be a Hermitian non-identity Pauli");
        if (set[a].phase_exponent() != 0)
            throw EncodingError("local Majorana must carry phase +1");
        for (std::size_t b = a + 1; b < set.size(); ++b)
            if (commutes(set[a], set[b]))
                throw EncodingError("local Majoranas must pairwise anticommute");
    }
}

PauliTerm Encoding::edge_operator(int edge_id, int copy) const {
    const auto& e = graph_.edges().at(edge_id);
    if (copy < 0 || copy >= e.multiplicity) throw EncodingError("edge copy out of range");
    auto [it, ih] = eslot_[edge_id][copy];
    PauliTerm a = local_[e.tail][it] * local_[e.head][ih];
    if (esign_[edge_id][copy] < 0) a.mul_phase_i(2);
    return a;
}

PauliTerm Encoding::directed_edge_operator(int edge_id, int copy, bool forward) const {
    PauliTerm a = edge_operator(edge_id, copy);
    if (!forward) a.mul_phase_i(2);
    return a;
}

PauliTerm Encoding::loop_operator(int v, int idx) const {
    const auto& pairs = lslot_.at(v);
    auto [i1, i2] = pairs.at(idx);
    PauliTerm p = local_[v][i1] * local_[v][i2];
    p.mul_phase_i(3);  // -i g1 g2
    return p;
}

PauliTerm Encoding::path_gamma_pair(const EdgePath& path) const {
    PauliTerm g = PauliTerm::identity(n_qubits_);
    for (const auto& s : path.steps) g *= directed_edge_operator(s.edge_id, s.copy, s.forward);
    g.mul_phase_i(int(path.steps.size() & 3));
    return g;
}

std::vector<PauliTerm> Encoding::stabilizer_ops() const {
    std::vector<PauliTerm> out;
    out.reserve(stabs_.size());
    for (const auto& s : stabs_) out.push_back(s.op);
    return out;
}

void Encoding::compute_stabilizers() {
    stabs_.clear();
    std::vector<int> next_loop(graph_.n_vertices(), 0);
    for (const auto& cyc : cycle_basis(graph_)) {
        StabilizerInfo info{PauliTerm::identity(n_qubits_), StabilizerInfo::Source::Cycle};
        if (cyc.steps.empty()) {
            info.op = loop_operator(cyc.start, next_loop[cyc.start]++);
            info.source = StabilizerInfo::Source::SelfLoop;
        } else {
            info.op = path_gamma_pair(cyc);  // i^p * prod A along the closed walk
            info.source = (cyc.steps.size() == 2 &&
                           cyc.steps[0].edge_id == cyc.steps[1].edge_id)
                              ? StabilizerInfo::Source::MultiEdge
                              : StabilizerInfo::Source::Cycle;
        }
        if (!info.op.is_hermitian())
            throw EncodingError("cycle stabilizer came out non-Hermitian");
        stabs_.push_back(std::move(info));
    }
    for (std::size_t a = 0; a < stabs_.size(); ++a)
        for (std::size_t b = a + 1; b < stabs_.size(); ++b)
            if (!commutes(stabs_[a].op, stabs_[b].op))
                throw EncodingError("stabilizer generators do not commute");
}

void Encoding::compute_parity() {
    int nc = graph_.n_components();
    comp_of_.assign(graph_.n_vertices(), -1);
    auto adj = graph_.adjacency();
    int cid = 0;
    for (int s = 0; s < graph_.n_vertices(); ++s) {
        if (comp_of_[s] >= 0) continue;
        std::vector<int> stack{s};
        comp_of_[s] = cid;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (comp_of_[w] < 0) {
                    comp_of_[w] = cid;
                    stack.push_back(w);
                }
        }
        ++cid;
    }
    comp_parity_.assign(nc, 0);
    auto gens = stabilizer_ops();
    for (int c = 0; c < nc; ++c) {
        PauliTerm prod = PauliTerm::identity(n_qubits_);
        for (int v = 0; v < graph_.n_vertices(); ++v)
            if (comp_of_[v] == c) prod *= B_[v];
        int ph = 0;
        if (in_group(gens, prod, &ph))
            comp_parity_[c] = (ph == 0) ? +1 : -1;
        else
            comp_parity_[c] = 0;
    }
}

int Encoding::codespace_parity() const {
    int p = comp_parity_.empty() ? 0 : comp_parity_[0];
    for (int q : comp_parity_)
        if (q != p) throw EncodingError("mixed component parities");
    return p;
}

std::string Encoding::dump_json() const {
    json j;
    j["n_qubits"] = n_qubits_;
    j["family"] = family_.name();
    j["blocks"] = json::array();
    for (int v = 0; v < graph_.n_vertices(); ++v)
        j["blocks"].push_back({{"vertex", v}, {"offset", offset_[v]}, {"size", block_[v]}});
    j["majoranas"] = json::array();
    for (int v = 0; v < graph_.n_vertices(); ++v) {
        json row = json::array();
        for (const auto& g : local_[v]) row.push_back(g.str());
        j["majoranas"].push_back(row);
    }
    j["vertex_operators"] = json::array();
    for (const auto& b : B_) j["vertex_operators"].push_back(b.str());
    j["orientation"] = json::array();
    for (const auto& e : graph_.edges()) j["orientation"].push_back({e.tail, e.head});
    j["stabilizers"] = json::array();
    for (const auto& s : stabs_) {
        const char* src = s.source == StabilizerInfo::Source::Cycle        ? "cycle"
                          : s.source == StabilizerInfo::Source::MultiEdge ? "multi_edge"
                                                                          : "self_loop";
        j["stabilizers"].push_back({{"op", s.op.str()}, {"source", src}});
    }
    j["component_parity"] = comp_parity_;
    return j.dump(2);
}

Encoding build_encoding(const InteractionGraph& g, const Family& fam,
                        std::optional<int> target_parity) {
    Encoding enc;
    enc.graph_ = g;
    enc.family_ = fam;
    const int nv = g.n_vertices();
    enc.block_.resize(nv);
    enc.offset_.resize(nv);

    // local Majorana sets (block-local width at first)
    std::vector<std::vector<PauliTerm>> local(nv);
    for (int v = 0; v < nv; ++v) {
        int D = g.incidence(v);
        if (D == 0) D = 1;  // isolated vertex still carries a mode
        int m = (D + 1) / 2;
        switch (fam.kind) {
            case FamilyKind::JwChain: local[v] = chain_majoranas(m); break;
            case FamilyKind::TernaryTree: local[v] = ternary_majoranas(m); break;
            case FamilyKind::Cyclic: {
                int d = 2 * fam.k + 1;
                if (D != 2 * d)
                    throw EncodingError("cyclic(k) needs uniform incidence 2(2k+1)");
                local[v] = cyclic_majoranas(fam.k);
                m = d;
                break;
            }
            case FamilyKind::Gse2N: {
                if (D != 4) throw EncodingError("gse2n needs incidence 4 everywhere");
                local[v] = gse2n_majoranas();
                m = 2;
                break;
            }
            case FamilyKind::Explicit: {
                if (v >= int(fam.table.size())) throw EncodingError("explicit table too short");
                local[v] = fam.table[v];
                m = int(local[v][0].n_qubits());
                break;
            }
        }
        check_majorana_set(local[v], D);
        enc.block_[v] = m;
    }
    int off = 0;
    for (int v = 0; v < nv; ++v) {
        enc.offset_[v] = off;
        off += enc.block_[v];
    }
    enc.n_qubits_ = off;

    enc.local_.assign(nv, {});
    for (int v = 0; v < nv; ++v)
        for (const auto& p : local[v])
            enc.local_[v].push_back(embed(p, enc.offset_[v], enc.n_qubits_));

    // slot assignment
    const auto& edges = g.edges();
    enc.eslot_.assign(edges.size(), {});
    enc.esign_.assign(edges.size(), {});
    enc.lslot_.assign(nv, {});
    for (std::size_t e = 0; e < edges.size(); ++e) {
        enc.eslot_[e].resize(edges[e].multiplicity, {-1, -1});
        enc.esign_[e].assign(edges[e].multiplicity, +1);
    }

    if (fam.kind == FamilyKind::Cyclic) {
        // tail side uses the Y-type shifts m_c (indices 0..d-1),
        // head side the X-type shifts n_c (indices d..2d-1)
        int d = 2 * fam.k + 1;
        std::vector<int> out_used(nv, 0), in_used(nv, 0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            for (int c = 0; c < edges[e].multiplicity; ++c)
                enc.eslot_[e][c] = {c, d + c};
            out_used[edges[e].tail] += edges[e].multiplicity;
            in_used[edges[e].head] += edges[e].multiplicity;
        }
        for (int v = 0; v < nv; ++v)
            if (out_used[v] != d || in_used[v] != d)
                throw EncodingError("cyclic family needs d outgoing and d incoming copies per vertex");
    } else if (fam.kind == FamilyKind::Gse2N) {
        // rightward edges use (XI, ZX) at the tail, (YI, ZY) at the head;
        // end self-loops pick up the unused pair with the sign-fixing order
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (edges[e].multiplicity != 2) throw EncodingError("gse2n needs double edges");
            enc.eslot_[e][0] = {0, 1};  // XI -- YI
            enc.eslot_[e][1] = {2, 3};  // ZX -- ZY
        }
        for (const auto& l : g.loops()) {
            bool has_out = false, has_in = false;
            for (const auto& e : edges) {
                if (e.tail == l.v) has_out = true;
                if (e.head == l.v) has_in = true;
            }
            if (l.count != 1 || (has_out && has_in))
                throw EncodingError("gse2n loops belong on chain end-points");
            if (has_out)
                enc.lslot_[l.v].push_back({1, 3});  // left end: -i YI*ZY = +XY
            else
                enc.lslot_[l.v].push_back({2, 0});  // right end: -i ZX*XI = +YX
        }
    } else {
        // slot-sorted families: edges toward higher neighbors fill slots from
        // the front (ascending neighbor), edges toward lower neighbors from
        // the back (descending neighbor); self-loops take the gap between.
        // On a line this realizes A_{i,i+1} = X_i Y_{i+1} end to end.
        for (int v = 0; v < nv; ++v) {
            struct Inc {
                int neighbor, copy, edge_id;
            };
            std::vector<Inc> hi, lo;
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (edges[e].u != v && edges[e].v != v) continue;
                int nb = edges[e].u == v ? edges[e].v : edges[e].u;
                for (int c = 0; c < edges[e].multiplicity; ++c)
                    (nb > v ? hi : lo).push_back({nb, c, int(e)});
            }
            std::sort(hi.begin(), hi.end(), [](const Inc& a, const Inc& b) {
                return a.neighbor != b.neighbor ? a.neighbor < b.neighbor : a.copy < b.copy;
            });
            std::sort(lo.begin(), lo.end(), [](const Inc& a, const Inc& b) {
                return a.neighbor != b.neighbor ? a.neighbor > b.neighbor : a.copy > b.copy;
            });
            const int n_slots = 2 * enc.block_[v];
            auto place = [&](const Inc& r, int slot) {
                const auto& e = edges[r.edge_id];
                if (e.tail == v)
                    enc.eslot_[r.edge_id][r.copy].first = slot;
                else
                    enc.eslot_[r.edge_id][r.copy].second = slot;
            };
            int front = 0, back = n_slots - 1;
            for (const auto& r : hi) place(r, front++);
            for (const auto& r : lo) place(r, back--);
            for (const auto& l : g.loops())
                if (l.v == v)
                    for (int c = 0; c < l.count; ++c) {
                        enc.lslot_[v].push_back({front, front + 1});
                        front += 2;
                    }
        }
    }

    // vertex operators: B = (-i)^m * product in canonical local order
    enc.B_.clear();
    for (int v = 0; v < nv; ++v) {
        PauliTerm b = PauliTerm::identity(enc.n_qubits_);
        for (const auto& gmm : enc.local_[v]) b *= gmm;
        b.mul_phase_i((4 - enc.block_[v] % 4) % 4 * 1);  // (-i)^m = i^(-m)
        if (!b.is_hermitian()) throw EncodingError("vertex operator non-Hermitian");
        enc.B_.push_back(std::move(b));
    }

    enc.compute_stabilizers();
    enc.compute_parity();

    if (target_parity) {
        for (std::size_t c = 0; c < enc.comp_parity_.size(); ++c) {
            if (enc.comp_parity_[c] == 0 || enc.comp_parity_[c] == *target_parity) continue;
            bool fixed = false;
            // candidate sign flips local to this component, most surgical first
            for (int v = 0; v < nv && !fixed; ++v) {
                if (enc.comp_of_[v] != int(c)) continue;
                for (auto& pr : enc.lslot_[v]) {
                    std::swap(pr.first, pr.second);
                    enc.compute_stabilizers();
                    enc.compute_parity();
                    if (enc.comp_parity_[c] == *target_parity) {
                        fixed = true;
                        break;
                    }
                    std::swap(pr.first, pr.second);
                }
            }
            for (std::size_t e = 0; e < edges.size() && !fixed; ++e) {
                if (enc.comp_of_[edges[e].u] != int(c)) continue;
                for (int cc = edges[e].multiplicity - 1; cc >= 0 && !fixed; --cc) {
                    enc.esign_[e][cc] = -enc.esign_[e][cc];
                    enc.compute_stabilizers();
                    enc.compute_parity();
                    if (enc.comp_parity_[c] == *target_parity)
                        fixed = true;
                    else
                        enc.esign_[e][cc] = -enc.esign_[e][cc];
                }
            }
            if (!fixed) throw EncodingError("could not reach requested codespace parity");
        }
        enc.compute_stabilizers();
        enc.compute_parity();
    }
    return enc;
}

Encoding build_2n_n_2(int n_modes) {
    if (n_modes < 2) throw EncodingError("[[2N,N,2]] needs at least 2 modes");
    return build_encoding(build_gse2n_lines(1, n_modes), Family::gse2n());
}

WeightedPauliSum mapped_hop(const Encoding& enc, int i, int j, const EdgePath& path,
                            std::size_t offset, std::size_t n_total) {
    WeightedPauliSum out(n_total);
    auto emb = [&](const PauliTerm& p) { return embed(p, offset, n_total); };
    if (i == j) {
        out.add(0.5, PauliTerm::identity(n_total));
        out.add(-0.5, emb(enc.vertex_operator(i)));
        return out;
    }
    PauliTerm g = emb(enc.path_gamma_pair(path));
    if (path.start != i) g.mul_phase_i(2);  // gamma_{2j} gamma_{2i} = -gamma_{2i} gamma_{2j}
    PauliTerm bi = emb(enc.vertex_operator(i));
    PauliTerm bj = emb(enc.vertex_operator(j));
    // a+_i a_j = 1/4 (1 - B_i) G (1 - B_j)
    out.add(0.25, g);
    out.add(-0.25, g * bj);
    out.add(-0.25, bi * g);
    out.add(0.25, bi * g * bj);
    return out;
}

MapResult map_hamiltonian(const std::vector<Encoding>& sector_encs,
                          const FermionHamiltonian& H, PathPolicy policy, int fixed_copy,
                          bool parallel) {
    if (int(sector_encs.size()) != H.sectors())
        throw EncodingError("sector count mismatch between encodings and Hamiltonian");
    for (const auto& e : sector_encs)
        if (e.graph().n_vertices() != H.modes_per_sector())
            throw EncodingError("mode not on graph");
    std::vector<std::size_t> sector_off(sector_encs.size() + 1, 0);
    for (std::size_t s = 0; s < sector_encs.size(); ++s)
        sector_off[s + 1] = sector_off[s] + sector_encs[s].n_qubits();
    const std::size_t width = sector_off.back();

    std::uint64_t rr_counter = 0;
    auto pick_path = [&](int sector, int a, int b) {
        switch (policy) {
            case PathPolicy::Shortest:
                return find_path(sector_encs[sector].graph(), a, b, PathPolicy::Shortest);
            case PathPolicy::ShortestWithCopy:
                return find_path(sector_encs[sector].graph(), a, b,
                                 PathPolicy::ShortestWithCopy, fixed_copy);
            case PathPolicy::RoundRobinCopies:
                return find_path(sector_encs[sector].graph(), a, b,
                                 PathPolicy::RoundRobinCopies, 0, &rr_counter);
        }
        throw EncodingError("bad policy");
    };

    WeightedPauliSum total(width);
    // one-body: diagonal entries and Hermitian pairs
    std::map<std::array<int, 3>, double> seen;
    for (const auto& [key, val] : H.one_body()) {
        auto [s, i, j] = std::tuple(key[0], key[1], key[2]);
        const Encoding& enc = sector_encs[s];
        if (i == j) {
            total.add(0.5 * val, PauliTerm::identity(width));
            total.add(-0.5 * val, embed(enc.vertex_operator(i), sector_off[s], width));
            continue;
        }
        if (i > j) continue;  // handled with the (i<j) partner
        // h_ij (a+_i a_j + a+_j a_i) = -h/2 (G1 Bj + Bi G2); G1, G2 may ride
        // different edge copies, each piece is Hermitian on its own
        PauliTerm g1 = embed(enc.path_gamma_pair(pick_path(s, i, j)), sector_off[s], width);
        PauliTerm g2 = embed(enc.path_gamma_pair(pick_path(s, i, j)), sector_off[s], width);
        PauliTerm bi = embed(enc.vertex_operator(i), sector_off[s], width);
        PauliTerm bj = embed(enc.vertex_operator(j), sector_off[s], width);
        total.add(-0.5 * val, g1 * bj);
        total.add(-0.5 * val, bi * g2);
    }
    // two-body: product of mapped hops; canonical paths keep the sum Hermitian
    std::vector<const std::pair<const std::array<int, 6>, double>*> vs;
    for (const auto& kv : H.two_body()) vs.push_back(&kv);
    auto canonical_path = [&](int sector, int a, int b) {
        int lo = std::min(a, b), hi = std::max(a, b);
        if (policy == PathPolicy::ShortestWithCopy)
            return find_path(sector_encs[sector].graph(), lo, hi, policy, fixed_copy);
        return find_path(sector_encs[sector].graph(), lo, hi, PathPolicy::Shortest);
    };
    const int nt = parallel ? omp_get_max_threads() : 1;
    std::vector<WeightedPauliSum> partial(nt, WeightedPauliSum(width));
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (std::size_t idx = 0; idx < vs.size(); ++idx) {
        const auto& [key, val] = *vs[idx];
        int s = key[0], s2 = key[1], i = key[2], j = key[3], k = key[4], l = key[5];
        WeightedPauliSum hop1 =
            (i == j) ? mapped_hop(sector_encs[s], i, i, {}, sector_off[s], width)
                     : mapped_hop(sector_encs[s], i, j, canonical_path(s, i, j),
                                  sector_off[s], width);
        WeightedPauliSum hop2 =
            (k == l) ? mapped_hop(sector_encs[s2], k, k, {}, sector_off[s2], width)
                     : mapped_hop(sector_encs[s2], k, l, canonical_path(s2, k, l),
                                  sector_off[s2], width);
        partial[omp_get_thread_num()].add_sum(hop1 * hop2, val);
    }
    for (const auto& p : partial) total.add_sum(p);
    total.compress();
    MapResult r{WeightedPauliSum(width), H.constant};
    r.sum = std::move(total);
    r.constant += r.sum.extract_identity().real();
    return r;
}

DistanceReport code_distance_scan(const Encoding& enc, int w_max, bool parallel,
                                  double budget) {
    const int n = enc.n_qubits();
    double cost = 0;
    {
        double binom = 1;
        double p3 = 1;
        for (int w = 1; w <= w_max; ++w) {
            binom = binom * double(n - w + 1) / double(w);
            p3 *= 3;
            cost += binom * p3;
        }
    }
    if (cost > budget) throw EncodingError("distance scan budget exceeded");

    auto gens = enc.stabilizer_ops();
    DistanceReport rep;
    for (int w = 1; w <= w_max; ++w) {
        // all supports of size w
        std::vector<std::vector<int>> supports;
        std::vector<int> comb(w);
        for (int i = 0; i < w; ++i) comb[i] = i;
        while (true) {
            supports.push_back(comb);
            int i = w - 1;
            while (i >= 0 && comb[i] == n - w + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < w; ++j) comb[j] = comb[j - 1] + 1;
        }
        long p3 = 1;
        for (int i = 0; i < w; ++i) p3 *= 3;
        std::vector<std::vector<std::string>> found(supports.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
        for (std::size_t si = 0; si < supports.size(); ++si) {
            static const char letters[3] = {'X', 'Y', 'Z'};
            for (long code = 0; code < p3; ++code) {
                PauliTerm t(n);
                long c = code;
                for (int i = 0; i < w; ++i) {
                    t.set_letter(supports[si][i], letters[c % 3]);
                    c /= 3;
                }
                bool commuting = true;
                for (const auto& g : gens)
                    if (!commutes(g, t)) {
                        commuting = false;
                        break;
                    }
                if (!commuting) continue;
                if (in_group(gens, t)) continue;
                found[si].push_back(t.unsigned_form().str());
            }
        }
        auto& bucket = rep.undetectable_by_weight[w];
        for (auto& f : found)
            for (auto& s : f) bucket.push_back(std::move(s));
        if (bucket.empty()) rep.undetectable_by_weight.erase(w);
        if (rep.distance == 0 && rep.undetectable_by_weight.count(w)) rep.distance = w;
    }
    return rep;
}

}  // namespace gsef
