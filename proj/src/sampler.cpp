#include "gseforge/sampler.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "gseforge/dense.hpp"
#include "gseforge/rng.hpp"
#include "gseforge/tableau.hpp"

namespace gsef {

void SampleSet::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SamplerError("cannot open " + path);
    const char magic[8] = {'G', 'S', 'E', 'F', 'S', 'M', 'P', '1'};
    out.write(magic, 8);
    auto put64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    put64(n_columns);
    put64(shots);
    put64(seed);
    put64(circuit_hash);
    out.write(reinterpret_cast<const char*>(bits.data()), std::streamsize(bits.size() * 8));
}

SampleSet SampleSet::read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SamplerError("cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (std::memcmp(magic, "GSEFSMP1", 8) != 0) throw SamplerError("bad sample file magic");
    auto get64 = [&]() {
        std::uint64_t v;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    SampleSet s;
    s.n_columns = std::uint32_t(get64());
    s.shots = get64();
    s.seed = get64();
    s.circuit_hash = get64();
    s.bits.resize(s.words_per_row() * s.shots);
    in.read(reinterpret_cast<char*>(s.bits.data()), std::streamsize(s.bits.size() * 8));
    if (!in) throw SamplerError("truncated sample file");
    return s;
}

namespace {

struct FrameOp {
    enum Kind { H, SLike, CX, CZ, Swap, Noise } kind;
    int a, b;
    double p;
};

struct SamplerPlan {
    int n = 0;
    std::vector<FrameOp> ops;       // frame-relevant gates in order
    std::vector<int> measure_cols;  // qubit measured per column
    std::vector<word_t> x0;         // particular ideal outcome
    std::vector<std::vector<word_t>> null_basis;
    double meas_flip = 0;
    std::uint64_t circuit_hash = 0;
};

SamplerPlan build_plan(const Circuit& c, const NoiseModel& noise) {
    if (!c.is_clifford()) throw SamplerError("sampler needs a Clifford circuit");
    SamplerPlan plan;
    plan.n = c.n_qubits();
    plan.meas_flip = noise.measurement_flip;
    plan.circuit_hash = c.content_hash();
    bool measuring = false;
    StabilizerState st(plan.n);
    for (const auto& g : c.gates()) {
        if (g.kind == GateKind::Measure) {
            measuring = true;
            plan.measure_cols.push_back(g.a);
            continue;
        }
        if (measuring) throw SamplerError("sampler needs terminal measurements");
        switch (g.kind) {
            case GateKind::H: plan.ops.push_back({FrameOp::H, g.a, -1, 0}); break;
            case GateKind::S:
            case GateKind::Sdg: plan.ops.push_back({FrameOp::SLike, g.a, -1, 0}); break;
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z: break;  // phase only for the frame
            case GateKind::Rz: {
                long k = std::lround(g.param / (M_PI / 2));
                if (((k % 4) + 4) % 4 % 2 == 1)
                    plan.ops.push_back({FrameOp::SLike, g.a, -1, 0});
                break;
            }
            case GateKind::CX:
                plan.ops.push_back({FrameOp::CX, g.a, g.b, 0});
                if (noise.two_qubit_depolarizing > 0)
                    plan.ops.push_back({FrameOp::Noise, g.a, g.b, noise.two_qubit_depolarizing});
                break;
            case GateKind::CZ:
                plan.ops.push_back({FrameOp::CZ, g.a, g.b, 0});
                if (noise.two_qubit_depolarizing > 0)
                    plan.ops.push_back({FrameOp::Noise, g.a, g.b, noise.two_qubit_depolarizing});
                break;
            case GateKind::Swap:
                plan.ops.push_back({FrameOp::Swap, g.a, g.b, 0});
                if (noise.two_qubit_depolarizing > 0)
                    plan.ops.push_back({FrameOp::Noise, g.a, g.b, noise.two_qubit_depolarizing});
                break;
            case GateKind::Depol2:
                plan.ops.push_back({FrameOp::Noise, g.a, g.b, g.param});
                break;
            case GateKind::Measure: break;
        }
        if (g.kind != GateKind::Measure && g.kind != GateKind::Depol2) st.apply(g);
    }
    if (plan.measure_cols.empty()) throw SamplerError("circuit has no measurements");

    // Ideal Z-measurement affine structure: eliminate X parts from the final
    // stabilizers; the surviving Z-only rows constrain outcome parities.
    const int n = plan.n;
    std::vector<PauliTerm> rows = st.stabilizers();
    std::vector<bool> active(rows.size(), true);
    for (int q = 0; q < n; ++q) {
        int pivot = -1;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (active[r] && rows[r].x_bit(q)) {
                pivot = int(r);
                break;
            }
        if (pivot < 0) continue;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (int(r) != pivot && active[r] && rows[r].x_bit(q)) rows[r] *= rows[pivot];
        active[pivot] = false;
    }
    // Gaussian solve of <s,x> = b over the Z-only rows
    struct Constraint {
        std::vector<word_t> s;
        int b;
    };
    const std::size_t words = (n + 63) / 64;
    std::vector<Constraint> cons;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!active[r]) continue;
        if (rows[r].x_bits().any()) throw SamplerError("X elimination failed");
        Constraint k{std::vector<word_t>(words, 0), rows[r].phase_exponent() == 2 ? 1 : 0};
        for (int q = 0; q < n; ++q)
            if (rows[r].z_bit(q)) k.s[q >> 6] |= word_t(1) << (q & 63);
        cons.push_back(std::move(k));
    }
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (int q = 0; q < n && rank < cons.size(); ++q) {
        std::size_t pr = rank;
        while (pr < cons.size() && !((cons[pr].s[q >> 6] >> (q & 63)) & 1)) ++pr;
        if (pr == cons.size()) continue;
        std::swap(cons[rank], cons[pr]);
        for (std::size_t r = 0; r < cons.size(); ++r) {
            if (r == rank) continue;
            if ((cons[r].s[q >> 6] >> (q & 63)) & 1) {
                for (std::size_t w = 0; w < words; ++w) cons[r].s[w] ^= cons[rank].s[w];
                cons[r].b ^= cons[rank].b;
            }
        }
        pivot_col.push_back(q);
        ++rank;
    }
    for (std::size_t r = rank; r < cons.size(); ++r)
        if (cons[r].b) throw SamplerError("contradictory measurement constraints");
    std::vector<bool> is_pivot(n, false);
    for (int q : pivot_col) is_pivot[q] = true;
    plan.x0.assign(words, 0);
    for (std::size_t r = 0; r < rank; ++r)
        if (cons[r].b) plan.x0[pivot_col[r] >> 6] |= word_t(1) << (pivot_col[r] & 63);
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<word_t> v(words, 0);
        v[f >> 6] |= word_t(1) << (f & 63);
        for (std::size_t r = 0; r < rank; ++r)
            if ((cons[r].s[f >> 6] >> (f & 63)) & 1)
                v[pivot_col[r] >> 6] ^= word_t(1) << (pivot_col[r] & 63);
        plan.null_basis.push_back(std::move(v));
    }
    return plan;
}

void run_shard(const SamplerPlan& plan, SampleSet& out, std::uint64_t first,
               std::uint64_t count, std::uint64_t stream_seed) {
    Rng rng(stream_seed);
    const int n = plan.n;
    const std::size_t words = (n + 63) / 64;
    std::vector<word_t> x(words), fx(words), fz(words);
    auto getbit = [&](const std::vector<word_t>& w, int q) {
        return (w[q >> 6] >> (q & 63)) & 1u;
    };
    auto flipbit = [&](std::vector<word_t>& w, int q) { w[q >> 6] ^= word_t(1) << (q & 63); };
    auto setbit = [&](std::vector<word_t>& w, int q, bool v) {
        word_t m = word_t(1) << (q & 63);
        if (v)
            w[q >> 6] |= m;
        else
            w[q >> 6] &= ~m;
    };
    for (std::uint64_t s = 0; s < count; ++s) {
        x = plan.x0;
        for (const auto& v : plan.null_basis)
            if (rng.coin())
                for (std::size_t w = 0; w < words; ++w) x[w] ^= v[w];
        std::fill(fx.begin(), fx.end(), 0);
        std::fill(fz.begin(), fz.end(), 0);
        for (const auto& op : plan.ops) {
            switch (op.kind) {
                case FrameOp::H: {
                    bool bx = getbit(fx, op.a), bz = getbit(fz, op.a);
                    setbit(fx, op.a, bz);
                    setbit(fz, op.a, bx);
                    break;
                }
                case FrameOp::SLike:
                    if (getbit(fx, op.a)) flipbit(fz, op.a);
                    break;
                case FrameOp::CX:
                    if (getbit(fx, op.a)) flipbit(fx, op.b);
                    if (getbit(fz, op.b)) flipbit(fz, op.a);
                    break;
                case FrameOp::CZ:
                    if (getbit(fx, op.a)) flipbit(fz, op.b);
                    if (getbit(fx, op.b)) flipbit(fz, op.a);
                    break;
                case FrameOp::Swap: {
                    bool xa = getbit(fx, op.a), za = getbit(fz, op.a);
                    setbit(fx, op.a, getbit(fx, op.b));
                    setbit(fz, op.a, getbit(fz, op.b));
                    setbit(fx, op.b, xa);
                    setbit(fz, op.b, za);
                    break;
                }
                case FrameOp::Noise:
                    if (rng.uniform() < op.p) {
                        int code = 1 + int(rng.integer(15));
                        if (code & 1) flipbit(fx, op.a);
                        if (code & 2) flipbit(fz, op.a);
                        if (code & 4) flipbit(fx, op.b);
                        if (code & 8) flipbit(fz, op.b);
                    }
                    break;
            }
        }
        for (std::size_t col = 0; col < plan.measure_cols.size(); ++col) {
            int q = plan.measure_cols[col];
            bool bit = getbit(x, q) ^ getbit(fx, q);
            if (plan.meas_flip > 0 && rng.uniform() < plan.meas_flip) bit = !bit;
            out.set(first + s, std::uint32_t(col), bit);
        }
    }
}

constexpr std::uint64_t kShardSize = 4096;

SampleSet sample_with_threads(const Circuit& c, const NoiseModel& noise,
                              std::uint64_t shots, std::uint64_t seed, bool parallel) {
    SamplerPlan plan = build_plan(c, noise);
    SampleSet out;
    out.n_columns = std::uint32_t(plan.measure_cols.size());
    out.shots = shots;
    out.seed = seed;
    out.circuit_hash = plan.circuit_hash;
    out.bits.assign(out.words_per_row() * shots, 0);
    const std::uint64_t shards = (shots + kShardSize - 1) / kShardSize;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::uint64_t sh = 0; sh < shards; ++sh) {
        std::uint64_t first = sh * kShardSize;
        std::uint64_t count = std::min(kShardSize, shots - first);
        run_shard(plan, out, first, count, Rng::mix(seed, sh));
    }
    return out;
}

}  // namespace

SampleSet sample_circuit(const Circuit& c, const NoiseModel& noise, std::uint64_t shots,
                         std::uint64_t seed) {
    return sample_with_threads(c, noise, shots, seed, true);
}

SampleSet sample_circuit_serial(const Circuit& c, const NoiseModel& noise,
                                std::uint64_t shots, std::uint64_t seed) {
    return sample_with_threads(c, noise, shots, seed, false);
}

SampleSet sample_circuit_trajectories(const Circuit& c, const NoiseModel& noise,
                                      std::uint64_t shots, std::uint64_t seed) {
    const int n = c.n_qubits();
    if (n > 16) throw SamplerError("trajectory sampler guarded at 16 qubits");
    std::vector<int> cols;
    std::vector<Gate> unitary;
    for (const auto& g : c.gates()) {
        if (g.kind == GateKind::Measure)
            cols.push_back(g.a);
        else
            unitary.push_back(g);
    }
    if (cols.empty()) throw SamplerError("circuit has no measurements");
    SampleSet out;
    out.n_columns = std::uint32_t(cols.size());
    out.shots = shots;
    out.seed = seed;
    out.circuit_hash = c.content_hash();
    out.bits.assign(out.words_per_row() * shots, 0);
    const std::uint64_t shards = (shots + 255) / 256;
#pragma omp parallel for schedule(dynamic)
    for (std::uint64_t sh = 0; sh < shards; ++sh) {
        Rng rng(Rng::mix(seed, sh));
        std::uint64_t first = sh * 256, count = std::min<std::uint64_t>(256, shots - first);
        Vec psi;
        for (std::uint64_t s = 0; s < count; ++s) {
            psi = zero_state(n);
            for (const auto& g : unitary) {
                if (g.kind == GateKind::Depol2) {
                    if (rng.uniform() < g.param) {
                        int code = 1 + int(rng.integer(15));
                        auto flip = [&](int q, int bits) {
                            if (bits == 1) apply_gate_dense({GateKind::X, q, -1, 0}, psi, n);
                            if (bits == 2) apply_gate_dense({GateKind::Z, q, -1, 0}, psi, n);
                            if (bits == 3) apply_gate_dense({GateKind::Y, q, -1, 0}, psi, n);
                        };
                        flip(g.a, code & 3);
                        flip(g.b, (code >> 2) & 3);
                    }
                    continue;
                }
                apply_gate_dense(g, psi, n);
                if (is_two_qubit(g.kind) && noise.two_qubit_depolarizing > 0 &&
                    rng.uniform() < noise.two_qubit_depolarizing) {
                    int code = 1 + int(rng.integer(15));
                    auto flip = [&](int q, int bits) {
                        if (bits == 1) apply_gate_dense({GateKind::X, q, -1, 0}, psi, n);
                        if (bits == 2) apply_gate_dense({GateKind::Z, q, -1, 0}, psi, n);
                        if (bits == 3) apply_gate_dense({GateKind::Y, q, -1, 0}, psi, n);
                    };
                    flip(g.a, code & 3);
                    flip(g.b, (code >> 2) & 3);
                }
            }
            // one measurement draw from |psi|^2
            double u = rng.uniform();
            double accum = 0;
            std::size_t picked = 0;
            for (std::size_t b = 0; b < std::size_t(psi.size()); ++b) {
                accum += std::norm(psi[b]);
                if (u <= accum) {
                    picked = b;
                    break;
                }
            }
            for (std::size_t col = 0; col < cols.size(); ++col) {
                bool bit = (picked >> cols[col]) & 1;
                if (noise.measurement_flip > 0 && rng.uniform() < noise.measurement_flip)
                    bit = !bit;
                out.set(first + s, std::uint32_t(col), bit);
            }
        }
    }
    return out;
}

}  // namespace gsef
