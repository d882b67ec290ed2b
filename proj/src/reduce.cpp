#include "gseforge/reduce.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "gseforge/tableau.hpp"

namespace gsef {

LogicalFrame build_frame(const std::vector<PauliTerm>& stabilizers, std::size_t n_qubits) {
    LogicalFrame f;
    f.s = stabilizers.size();
    f.n = n_qubits;
    std::vector<PauliTerm> rows = stabilizers;
    Circuit ops{int(n_qubits)};
    reduce_rows_to_z(rows, rows.size(), ops);
    f.frame = ops;
    f.inverse_frame = ops.inverse();
    return f;
}

namespace {

struct ClassKey {
    std::vector<word_t> bits;
    bool operator<(const ClassKey& o) const { return bits < o.bits; }
};

ClassKey logical_key(const PauliTerm& framed, std::size_t s) {
    // letters on qubits s..n-1
    const std::size_t n = framed.n_qubits();
    ClassKey k;
    for (std::size_t q = s; q < n; ++q) {
        if (k.bits.empty()) k.bits.assign(2 * ((n - s + 63) / 64), 0);
        std::size_t i = q - s;
        if (framed.x_bit(q)) k.bits[i >> 6] |= word_t(1) << (i & 63);
        if (framed.z_bit(q)) k.bits[(n - s + 63) / 64 + (i >> 6)] |= word_t(1) << (i & 63);
    }
    return k;
}

}  // namespace

WeightedPauliSum logical_reduce(const Encoding& enc, const WeightedPauliSum& hsum,
                                int max_exact_s) {
    return logical_reduce(enc.stabilizer_ops(), hsum, max_exact_s);
}

WeightedPauliSum logical_reduce(const std::vector<PauliTerm>& stabilizers,
                                const WeightedPauliSum& hsum, int max_exact_s) {
    const std::size_t n = hsum.n_qubits();
    if (stabilizers.empty()) return hsum;
    for (const auto& [c, t] : hsum.terms())
        for (const auto& s : stabilizers)
            if (!commutes(t, s))
                throw ReduceError("term anticommutes with a stabilizer; not a logical operator");
    LogicalFrame f = build_frame(stabilizers, n);
    const std::size_t S = f.s;

    // partition by logical content in the frame
    std::map<ClassKey, std::vector<std::size_t>> classes;
    std::vector<PauliTerm> framed;
    framed.reserve(hsum.size());
    for (std::size_t i = 0; i < hsum.size(); ++i) {
        framed.push_back(f.to_frame(hsum.terms()[i].second));
        classes[logical_key(framed[i], S)].push_back(i);
    }

    std::vector<const std::vector<std::size_t>*> class_list;
    for (const auto& [k, v] : classes) class_list.push_back(&v);
    std::vector<std::pair<cplx, PauliTerm>> results(class_list.size(),
                                                    {0.0, PauliTerm(n)});

#pragma omp parallel for schedule(dynamic)
    for (std::size_t ci = 0; ci < class_list.size(); ++ci) {
        const auto& members = *class_list[ci];
        // candidate representative: minimum weight in the original form
        PauliTerm logical_part(n);  // frame image with stabilizer qubits cleared
        {
            PauliTerm fr = framed[members[0]];
            for (std::size_t q = 0; q < S; ++q) fr.set_letter(q, 'I');
            logical_part = fr.unsigned_form();
        }
        PauliTerm best(n);
        bool have_best = false;
        auto consider = [&](const PauliTerm& framed_candidate) {
            PauliTerm orig = f.from_frame(framed_candidate).unsigned_form();
            if (!have_best || orig.weight() < best.weight() ||
                (orig.weight() == best.weight() && compare(orig, best) < 0)) {
                best = orig;
                have_best = true;
            }
        };
        if (int(S) <= max_exact_s) {
            // exact minimum over all 2^S stabilizer-qubit Z patterns
            for (std::size_t mask = 0; mask < (std::size_t(1) << S); ++mask) {
                PauliTerm cand = logical_part;
                for (std::size_t q = 0; q < S; ++q)
                    if ((mask >> q) & 1) cand.set_letter(q, 'Z');
                consider(cand);
            }
        } else {
            // class members plus greedy single-stabilizer descent
            for (std::size_t m : members) consider(framed[m]);
            PauliTerm cur = f.to_frame(best);
            bool improved = true;
            while (improved) {
                improved = false;
                for (std::size_t q = 0; q < S; ++q) {
                    PauliTerm cand = cur;
                    cand.set_letter(q, cand.letter(q) == 'Z' ? 'I' : 'Z');
                    PauliTerm orig = f.from_frame(cand).unsigned_form();
                    if (orig.weight() < best.weight()) {
                        best = orig;
                        cur = cand;
                        improved = true;
                    }
                }
            }
        }
        // merge coefficients with codespace-relative signs: on the codespace
        // every term acts as phase(framed image restricted to +Z stab qubits)
        // times the logical part, so coefficients transfer with sign ratios.
        PauliTerm best_framed = f.to_frame(best);
        int best_sign = best_framed.phase_exponent() == 0 ? +1 : -1;
        cplx acc = 0.0;
        for (std::size_t m : members) {
            int sgn = framed[m].phase_exponent() == 0 ? +1 : -1;
            acc += hsum.terms()[m].first * double(sgn * best_sign);
        }
        results[ci] = {acc, best};
    }

    WeightedPauliSum out(n);
    for (const auto& [c, t] : results) out.add(c, t);
    out.compress();
    return out;
}

WeightedPauliSum jw_parity_compress(const WeightedPauliSum& hsum, int M, int parity_alpha,
                                    int parity_beta) {
    if (hsum.n_qubits() != std::size_t(2 * M))
        throw ReduceError("jw_parity_compress expects 2M qubits");
    PauliTerm zalpha(2 * M), zbeta(2 * M);
    for (int q = 0; q < M; ++q) {
        zalpha.set_letter(q, 'Z');
        zbeta.set_letter(M + q, 'Z');
    }
    WeightedPauliSum out(2 * M);
    for (const auto& [c, t] : hsum.terms()) {
        PauliTerm cur = t;
        cplx coeff = c;
        for (int sector = 0; sector < 2; ++sector) {
            int zcount = 0, nonz = 0;
            for (int q = 0; q < M; ++q) {
                int qq = sector * M + q;
                if (cur.x_bit(qq))
                    ++nonz;
                else if (cur.z_bit(qq))
                    ++zcount;
            }
            // multiplying by the sector parity string complements the Z
            // pattern (X/Y letters swap in place); take the lighter form
            if (M - zcount < zcount + nonz) {
                cur = cur * (sector == 0 ? zalpha : zbeta);
                coeff *= double(sector == 0 ? parity_alpha : parity_beta);
            }
        }
        out.add(coeff, cur);
    }
    out.compress();
    return out;
}

namespace {

bool sector_commutes(const PauliTerm& a, const PauliTerm& b, std::size_t lo, std::size_t hi) {
    int anti = 0;
    for (std::size_t q = lo; q < hi; ++q) {
        char la = a.letter(q), lb = b.letter(q);
        if (la != 'I' && lb != 'I' && la != lb) anti ^= 1;
    }
    return anti == 0;
}

bool qubitwise_compatible(const PauliTerm& a, const PauliTerm& b) {
    for (std::size_t q = 0; q < a.n_qubits(); ++q) {
        char la = a.letter(q), lb = b.letter(q);
        if (la != 'I' && lb != 'I' && la != lb) return false;
    }
    return true;
}

}  // namespace

std::vector<TermGroup> group_commuting(const WeightedPauliSum& hsum, GroupingMode mode) {
    const std::size_t n = hsum.n_qubits();
    const std::size_t half = n / 2;
    std::vector<std::size_t> order(hsum.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(hsum.terms()[a].first) > std::abs(hsum.terms()[b].first);
    });
    std::vector<TermGroup> groups;
    auto fits = [&](const TermGroup& g, std::size_t cand) {
        const PauliTerm& t = hsum.terms()[cand].second;
        for (std::size_t m : g.term_indices) {
            const PauliTerm& u = hsum.terms()[m].second;
            switch (mode) {
                case GroupingMode::General:
                    if (!commutes(t, u)) return false;
                    break;
                case GroupingMode::Qubitwise:
                    if (!qubitwise_compatible(t, u)) return false;
                    break;
                case GroupingMode::SpinSeparated:
                    if (!sector_commutes(t, u, 0, half) ||
                        !sector_commutes(t, u, half, n))
                        return false;
                    break;
            }
        }
        return true;
    };
    for (std::size_t cand : order) {
        bool placed = false;
        for (auto& g : groups)
            if (fits(g, cand)) {
                g.term_indices.push_back(cand);
                placed = true;
                break;
            }
        if (!placed) groups.push_back({{cand}});
    }
    return groups;
}

DepthEstimate depth_estimate(const WeightedPauliSum& hsum) {
    const std::size_t m = hsum.size();
    DepthEstimate de;
    de.avg_weight = hsum.average_weight();
    if (m == 0) return de;
    std::vector<std::vector<std::size_t>> conflict(m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            const auto& ta = hsum.terms()[a].second;
            const auto& tb = hsum.terms()[b].second;
            bool share = false;
            for (std::size_t w = 0; w < ta.x_bits().words().size() && !share; ++w) {
                word_t sa = ta.x_bits().words()[w] | ta.z_bits().words()[w];
                word_t sb = tb.x_bits().words()[w] | tb.z_bits().words()[w];
                if (sa & sb) share = true;
            }
            if (share) {
                conflict[a].push_back(b);
                conflict[b].push_back(a);
            }
        }
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return conflict[a].size() > conflict[b].size();
    });
    std::vector<int> color(m, -1);
    int colors = 0;
    for (std::size_t v : order) {
        std::vector<bool> used(colors, false);
        for (std::size_t w : conflict[v])
            if (color[w] >= 0) used[color[w]] = true;
        int c = 0;
        while (c < colors && used[c]) ++c;
        if (c == colors) ++colors;
        color[v] = c;
    }
    de.groups = std::size_t(colors);
    de.estimate = double(colors) * de.avg_weight;
    return de;
}

}  // namespace gsef
