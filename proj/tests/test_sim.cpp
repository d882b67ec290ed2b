#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <map>

#include "gseforge/dense.hpp"
#include "gseforge/encoding.hpp"
#include "gseforge/estimate.hpp"
#include "gseforge/reduce.hpp"
#include "gseforge/rng.hpp"
#include "gseforge/sampler.hpp"
#include "gseforge/synth.hpp"

using namespace gsef;

TEST_CASE("noiseless sampling reproduces occupations exactly") {
    Encoding enc = build_2n_n_2(4);
    std::vector<int> occ{1, 0, 1, 0};
    Circuit c = encode_state(enc, occ);
    ReadoutPlan plan = readout_2n_n_2(enc);
    c.append(plan.decode);
    for (int q = 0; q < enc.n_qubits(); ++q) c.measure(q);
    SampleSet s = sample_circuit(c, {}, 2000, 7);
    std::vector<int> order;
    for (int q = 0; q < enc.n_qubits(); ++q) order.push_back(q);
    std::vector<ZObservable> b_images;
    for (const auto& img : plan.occ_images) b_images.push_back(z_observable(img, order));
    auto est = estimate_occupations(s, b_images, {1, 0, 1, 0});
    CHECK(est.rmse == doctest::Approx(0.0));
    for (int v = 0; v < 4; ++v) CHECK(est.occupations[v] == doctest::Approx(double(occ[v])));
}

TEST_CASE("fixed seed gives byte-identical samples; shards match serial") {
    Encoding enc = build_2n_n_2(3);
    Circuit c = encode_state(enc, {1, 1, 0});
    c.append(readout_2n_n_2(enc).decode);
    for (int q = 0; q < enc.n_qubits(); ++q) c.measure(q);
    NoiseModel noise{0.05, 0.01};
    SampleSet a = sample_circuit(c, noise, 9000, 123);
    SampleSet b = sample_circuit(c, noise, 9000, 123);
    CHECK(a.bits == b.bits);
    SampleSet ser = sample_circuit_serial(c, noise, 9000, 123);
    CHECK(a.bits == ser.bits);
    SampleSet other = sample_circuit(c, noise, 9000, 124);
    CHECK(a.bits != other.bits);
    // round trip through the binary file format
    a.write_file("/tmp/gsef_samples.bin");
    SampleSet back = SampleSet::read_file("/tmp/gsef_samples.bin");
    CHECK(back.bits == a.bits);
    CHECK(back.n_columns == a.n_columns);
    CHECK(back.circuit_hash == a.circuit_hash);
    std::remove("/tmp/gsef_samples.bin");
}

TEST_CASE("sampler needs Clifford circuits and terminal measurements") {
    Circuit c(1);
    c.rz(0.3, 0);
    c.measure(0);
    CHECK_THROWS_AS(sample_circuit(c, {}, 10, 1), SamplerError);
    Circuit c2(1);
    c2.measure(0);
    c2.h(0);
    CHECK_THROWS_AS(sample_circuit(c2, {}, 10, 1), SamplerError);
    Circuit c3(2);
    c3.h(0);
    CHECK_THROWS_AS(sample_circuit(c3, {}, 10, 1), SamplerError);
}

TEST_CASE("random measurement structure matches Born statistics") {
    // GHZ-like state: outcomes are 000/111-correlated
    Circuit c(3);
    c.h(0);
    c.cx(0, 1);
    c.cx(1, 2);
    for (int q = 0; q < 3; ++q) c.measure(q);
    SampleSet s = sample_circuit(c, {}, 20000, 5);
    int all0 = 0, all1 = 0;
    for (std::uint64_t i = 0; i < s.shots; ++i) {
        int b0 = s.get(i, 0), b1 = s.get(i, 1), b2 = s.get(i, 2);
        CHECK(b0 == b1);
        CHECK(b1 == b2);
        all0 += !b0;
        all1 += b0;
    }
    CHECK(std::abs(all0 - all1) < 700);  // 5 sigma at 20k shots
}

TEST_CASE("p=1 depolarizing after CX matches the dense channel oracle") {
    Circuit c(2);
    c.cx(0, 1);
    for (int q = 0; q < 2; ++q) c.measure(q);
    NoiseModel noise{1.0, 0.0};
    const std::uint64_t shots = 100000;
    SampleSet s = sample_circuit(c, noise, shots, 77);
    std::map<int, int> counts;
    for (std::uint64_t i = 0; i < shots; ++i)
        counts[s.get(i, 0) + 2 * s.get(i, 1)]++;
    // uniform mixture over the 15 non-identity Paulis on |00>:
    // 3 leave the bits, 4 flip each single bit, 4 flip both
    std::map<int, double> expect{{0, 3.0 / 15}, {1, 4.0 / 15}, {2, 4.0 / 15}, {3, 4.0 / 15}};
    for (auto [k, p] : expect) {
        double sigma = std::sqrt(p * (1 - p) * shots);
        CHECK(std::abs(counts[k] - p * shots) < 5 * sigma);
    }
}

TEST_CASE("postselection keeps everything at p=0 and filters parity at p>0") {
    Encoding enc = build_2n_n_2(4);
    Circuit c = encode_state(enc, {0, 0, 0, 0});
    ReadoutPlan plan = readout_2n_n_2(enc);
    c.append(plan.decode);
    for (int q = 0; q < enc.n_qubits(); ++q) c.measure(q);
    std::vector<int> order;
    for (int q = 0; q < enc.n_qubits(); ++q) order.push_back(q);
    std::vector<ZObservable> checks;
    for (const auto& img : plan.stab_images) checks.push_back(z_observable(img, order));

    SampleSet clean = sample_circuit(c, {}, 4000, 3);
    auto ps0 = postselect(clean, checks);
    CHECK(ps0.acceptance == doctest::Approx(1.0));

    SampleSet noisy = sample_circuit(c, {0.02, 0.0}, 40000, 3);
    auto ps = postselect(noisy, checks);
    CHECK(ps.acceptance < 1.0);
    CHECK(ps.acceptance > 0.5);
    // kept shots satisfy every check
    for (std::uint64_t i = 0; i < ps.kept.shots; ++i)
        for (const auto& ch : checks) {
            int par = 0;
            for (int col : ch.columns) par ^= ps.kept.get(i, col);
            CHECK(par == (ch.sign > 0 ? 0 : 1));
        }
    CHECK_THROWS_AS(postselect(clean, {ZObservable{{99}, 1}}), EstimateError);
}

TEST_CASE("estimator basics and linearity") {
    SampleSet s;
    s.n_columns = 2;
    s.shots = 8;
    s.bits.assign(s.words_per_row() * 8, 0);  // all zeros
    ZObservable z0{{0}, +1};
    CHECK(observable_mean(s, z0) == doctest::Approx(1.0));
    MeasuredGroup g1{{1.0}, {z0}, {}};
    MeasuredGroup g2{{0.5}, {ZObservable{{0, 1}, -1}}, {}};
    auto e1 = estimate_energy({g1}, {s}, 0.0);
    CHECK(e1.value == doctest::Approx(1.0));
    auto e2 = estimate_energy({g2}, {s}, 0.0);
    CHECK(e2.value == doctest::Approx(-0.5));
    auto both = estimate_energy({g1, g2}, {s, s}, 0.25);
    CHECK(both.value == doctest::Approx(0.25 + 1.0 - 0.5));
}

namespace {

double fermionic_expectation(const FermionHamiltonian& H, const std::vector<int>& occ) {
    Mat m = dense_fermion_matrix(H);
    std::size_t idx = 0;
    for (std::size_t v = 0; v < occ.size(); ++v)
        if (occ[v]) idx |= std::size_t(1) << v;
    return m(idx, idx).real();
}

}  // namespace

TEST_CASE("noiseless rotation pipeline reproduces the dense expectation") {
    Rng rng(17);
    Encoding enc = build_encoding(build_loop(4, 3), Family::cyclic(1), +1);
    FermionHamiltonian H(4, 1);
    for (int i = 0; i < 4; ++i) H.add_one_body(0, i, i, 0.4 * (i + 1));
    H.add_one_body(0, 0, 1, 0.3);
    H.add_one_body(0, 1, 0, 0.3);
    H.add_one_body(0, 1, 3, -0.2);
    H.add_one_body(0, 3, 1, -0.2);
    H.add_two_body(0, 0, 0, 0, 1, 1, 0.15);
    H.enforce_hermiticity();
    MapResult mapped = map_hamiltonian({enc}, H, PathPolicy::Shortest);
    std::vector<int> occ{1, 1, 0, 0};
    double expect = fermionic_expectation(H, occ);

    auto groups = group_commuting(mapped.sum, GroupingMode::General);
    Circuit prep = encode_state(enc, occ);
    StabilizerState base = codespace_state(enc, occ);
    std::vector<int> order;
    for (int q = 0; q < enc.n_qubits(); ++q) order.push_back(q);
    std::vector<MeasuredGroup> mgroups;
    std::vector<SampleSet> samples;
    const std::uint64_t shots = 100000;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        std::vector<PauliTerm> terms;
        std::vector<double> coeffs;
        for (std::size_t idx : groups[gi].term_indices) {
            terms.push_back(mapped.sum.terms()[idx].second);
            coeffs.push_back(mapped.sum.terms()[idx].first.real());
        }
        RotationPlan plan = rotation_measurement(enc.stabilizer_ops(), base, terms,
                                                 1000 + gi);
        Circuit c(enc.n_qubits());
        c.append(prep);
        c.append(plan.circuit);
        for (int q = 0; q < enc.n_qubits(); ++q) c.measure(q);
        MeasuredGroup mg;
        mg.coefficients = coeffs;
        for (const auto& img : plan.term_images) mg.observables.push_back(z_observable(img, order));
        for (const auto& img : plan.stab_images) mg.stab_checks.push_back(z_observable(img, order));
        mgroups.push_back(std::move(mg));
        samples.push_back(sample_circuit(c, {}, shots, 55 + gi));
    }
    auto est = estimate_energy(mgroups, samples, mapped.constant);
    for (double acc : est.group_acceptance) CHECK(acc == doctest::Approx(1.0));
    CHECK(std::abs(est.value - expect) < 5 * est.stderr_ + 1e-6);
}

TEST_CASE("trajectory sampler agrees with the frame sampler on Clifford circuits") {
    Encoding enc = build_2n_n_2(3);
    Circuit c = encode_state(enc, {1, 0, 1});
    c.append(readout_2n_n_2(enc).decode);
    for (int q = 0; q < enc.n_qubits(); ++q) c.measure(q);
    NoiseModel noise{0.05, 0.0};
    const std::uint64_t shots = 40000;
    SampleSet frame = sample_circuit(c, noise, shots, 9);
    SampleSet traj = sample_circuit_trajectories(c, noise, shots, 10);
    // compare per-column means within 5 sigma
    for (std::uint32_t col = 0; col < frame.n_columns; ++col) {
        double m1 = 0, m2 = 0;
        for (std::uint64_t i = 0; i < shots; ++i) {
            m1 += frame.get(i, col);
            m2 += traj.get(i, col);
        }
        m1 /= shots;
        m2 /= shots;
        double sigma = std::sqrt(2.0 * 0.25 / shots);
        CHECK(std::abs(m1 - m2) < 5 * sigma + 1e-3);
    }
}

TEST_CASE("acceptance decreases with code distance at fixed noise") {
    // deeper codes reject more shots under the same depolarizing rate
    std::vector<double> acceptance;
    for (int d : {2, 3}) {
        Encoding enc = build_encoding(build_complete_even(4, d), Family::jw_chain(), +1);
        std::vector<int> occ{1, 1, 0, 0};
        Circuit prep = encode_state(enc, occ);
        StabilizerState base = codespace_state(enc, occ);
        // measure the vertex operators through a rotation plan
        std::vector<PauliTerm> group;
        for (int v = 0; v < 4; ++v) group.push_back(enc.vertex_operator(v));
        RotationPlan plan = rotation_measurement(enc.stabilizer_ops(), base, group, 21);
        Circuit c(enc.n_qubits());
        c.append(prep);
        c.append(plan.circuit);
        for (int q = 0; q < enc.n_qubits(); ++q) c.measure(q);
        std::vector<int> order;
        for (int q = 0; q < enc.n_qubits(); ++q) order.push_back(q);
        std::vector<ZObservable> checks;
        for (const auto& img : plan.stab_images) checks.push_back(z_observable(img, order));
        SampleSet s = sample_circuit(c, {0.001, 0.0}, 50000, 31);
        acceptance.push_back(postselect(s, checks).acceptance);
    }
    CHECK(acceptance[1] < acceptance[0]);
}
