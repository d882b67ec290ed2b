#pragma once

#include <string>
#include <vector>

#include "gseforge/pauli.hpp"
#include "gseforge/sampler.hpp"

namespace gsef {

struct EstimateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Z-product observable over sample columns: value per shot is
// sign * (-1)^(parity of the marked bits).
struct ZObservable {
    std::vector<int> columns;
    int sign = +1;
};

// Maps a Z-only Pauli image onto sample columns (column c reads qubit
// measure_order[c]).
ZObservable z_observable(const PauliTerm& image, const std::vector<int>& measure_order);

struct PostselectResult {
    SampleSet kept;
    double acceptance = 0.0;
};

// Keeps shots where every stabilizer check parity matches its sign.
PostselectResult postselect(const SampleSet& samples, const std::vector<ZObservable>& checks);

double observable_mean(const SampleSet& samples, const ZObservable& obs);

struct MeasuredGroup {
    std::vector<double> coefficients;
    std::vector<ZObservable> observables;  // one per coefficient
    std::vector<ZObservable> stab_checks;
};

struct EnergyEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::vector<double> group_acceptance;
    std::vector<std::uint64_t> group_kept;
};

// Energy = constant + sum over groups of post-selected term means; stderr by
// per-group shot-variance propagation. Throws on an empty post-selected group.
EnergyEstimate estimate_energy(const std::vector<MeasuredGroup>& groups,
                               const std::vector<SampleSet>& samples, double constant);

struct OccupationEstimate {
    std::vector<double> occupations;
    double rmse = 0.0;  // against the reference, when given
};

// occupations[v] = (1 - <B_v image>)/2 from post-selected samples.
OccupationEstimate estimate_occupations(const SampleSet& samples,
                                        const std::vector<ZObservable>& b_images,
                                        const std::vector<double>& reference = {});

}  // namespace gsef
