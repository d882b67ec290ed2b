#include "gseforge/estimate.hpp"

#include <cmath>

namespace gsef {

ZObservable z_observable(const PauliTerm& image, const std::vector<int>& measure_order) {
    if (!image.is_z_only()) throw EstimateError("observable image must be Z-only");
    ZObservable obs;
    obs.sign = image.phase_exponent() == 2 ? -1 : +1;
    for (std::size_t q = 0; q < image.n_qubits(); ++q) {
        if (!image.z_bit(q)) continue;
        int col = -1;
        for (std::size_t c = 0; c < measure_order.size(); ++c)
            if (measure_order[c] == int(q)) col = int(c);
        if (col < 0) throw EstimateError("image touches an unmeasured qubit");
        obs.columns.push_back(col);
    }
    return obs;
}

static int shot_parity(const SampleSet& s, std::uint64_t shot, const std::vector<int>& cols) {
    int par = 0;
    for (int c : cols) par ^= s.get(shot, std::uint32_t(c)) ? 1 : 0;
    return par;
}

PostselectResult postselect(const SampleSet& samples, const std::vector<ZObservable>& checks) {
    for (const auto& ch : checks)
        for (int c : ch.columns)
            if (c < 0 || c >= int(samples.n_columns))
                throw EstimateError("stabilizer column out of range");
    PostselectResult res;
    res.kept.n_columns = samples.n_columns;
    res.kept.seed = samples.seed;
    res.kept.circuit_hash = samples.circuit_hash;
    std::uint64_t kept = 0;
    const std::size_t wpr = samples.words_per_row();
    for (std::uint64_t s = 0; s < samples.shots; ++s) {
        bool ok = true;
        for (const auto& ch : checks) {
            int want = ch.sign > 0 ? 0 : 1;
            if (shot_parity(samples, s, ch.columns) != want) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (std::size_t w = 0; w < wpr; ++w)
            res.kept.bits.push_back(samples.bits[s * wpr + w]);
        ++kept;
    }
    res.kept.shots = kept;
    res.acceptance = samples.shots ? double(kept) / double(samples.shots) : 0.0;
    return res;
}

double observable_mean(const SampleSet& samples, const ZObservable& obs) {
    if (samples.shots == 0) throw EstimateError("insufficient samples");
    std::int64_t acc = 0;
    for (std::uint64_t s = 0; s < samples.shots; ++s)
        acc += shot_parity(samples, s, obs.columns) ? -1 : +1;
    return double(obs.sign) * double(acc) / double(samples.shots);
}

EnergyEstimate estimate_energy(const std::vector<MeasuredGroup>& groups,
                               const std::vector<SampleSet>& samples, double constant) {
    if (groups.size() != samples.size()) throw EstimateError("group/sample count mismatch");
    EnergyEstimate est;
    est.value = constant;
    double var = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        PostselectResult ps = postselect(samples[g], groups[g].stab_checks);
        est.group_acceptance.push_back(ps.acceptance);
        est.group_kept.push_back(ps.kept.shots);
        if (ps.kept.shots == 0)
            throw EstimateError("insufficient post-selected samples in group " +
                                std::to_string(g));
        // per-shot group energy contribution
        double mean = 0, m2 = 0;
        for (std::uint64_t s = 0; s < ps.kept.shots; ++s) {
            double e = 0;
            for (std::size_t t = 0; t < groups[g].coefficients.size(); ++t) {
                const auto& obs = groups[g].observables[t];
                int v = shot_parity(ps.kept, s, obs.columns) ? -obs.sign : obs.sign;
                e += groups[g].coefficients[t] * v;
            }
            double delta = e - mean;
            mean += delta / double(s + 1);
            m2 += delta * (e - mean);
        }
        est.value += mean;
        if (ps.kept.shots > 1) var += m2 / double(ps.kept.shots - 1) / double(ps.kept.shots);
    }
    est.stderr_ = std::sqrt(var);
    return est;
}

OccupationEstimate estimate_occupations(const SampleSet& samples,
                                        const std::vector<ZObservable>& b_images,
                                        const std::vector<double>& reference) {
    if (samples.shots == 0) throw EstimateError("insufficient samples");
    OccupationEstimate est;
    for (const auto& obs : b_images)
        est.occupations.push_back(0.5 * (1.0 - observable_mean(samples, obs)));
    if (!reference.empty()) {
        if (reference.size() != est.occupations.size())
            throw EstimateError("reference length mismatch");
        double sq = 0;
        for (std::size_t i = 0; i < reference.size(); ++i) {
            double d = est.occupations[i] - reference[i];
            sq += d * d;
        }
        est.rmse = std::sqrt(sq / double(reference.size()));
    }
    return est;
}

}  // namespace gsef
