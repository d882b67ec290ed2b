// gseforge: build generalized superfast encodings, map fermionic
// Hamiltonians to Pauli sums, synthesize circuits, and run noisy
// post-selected estimation experiments.

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gseforge/dense.hpp"
#include "gseforge/encoding.hpp"
#include "gseforge/estimate.hpp"
#include "gseforge/fermion.hpp"
#include "gseforge/graph.hpp"
#include "gseforge/reduce.hpp"
#include "gseforge/sampler.hpp"
#include "gseforge/synth.hpp"
#include "json.hpp"

using namespace gsef;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "gseforge 0.1.0";

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitBudget = 4;

struct EncSpec {
    std::string graph_kind = "line";
    int graph_param = 1;
    std::string graph_file;
    std::string family = "jw_chain";
    int cyclic_k = 1;
    int parity = 0;  // 0: leave free, otherwise +-1
    int prune_degree = 0;
    int prune_hops = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--graph", graph_kind,
                        "interaction graph: complete|loop|line|line_with_end_loops|"
                        "complete_even|gse2n|custom")
            ->capture_default_str();
        cmd->add_option("--graph-param", graph_param,
                        "edge multiplicity / distance parameter for the graph kind")
            ->capture_default_str();
        cmd->add_option("--graph-file", graph_file, "custom graph JSON file");
        cmd->add_option("--family", family,
                        "local Majorana family: jw_chain|cyclic|ternary_tree|gse2n")
            ->capture_default_str();
        cmd->add_option("--cyclic-k", cyclic_k, "cyclic family shift parameter (d = 2k+1)")
            ->capture_default_str();
        cmd->add_option("--parity", parity, "target codespace parity per sector (+1 or -1)");
        cmd->add_option("--prune-degree", prune_degree, "prune to this even degree");
        cmd->add_option("--prune-hops", prune_hops, "max hops allowed after pruning");
    }

    InteractionGraph build_graph(int M, std::uint64_t seed) const {
        std::string custom;
        if (!graph_file.empty()) {
            std::ifstream in(graph_file);
            if (!in) throw GraphError("cannot open " + graph_file);
            std::stringstream ss;
            ss << in.rdbuf();
            custom = ss.str();
        }
        InteractionGraph g = gsef::build_graph(graph_kind, M, graph_param, custom);
        if (prune_degree > 0) g = prune(g, prune_degree, prune_hops, seed);
        return g;
    }

    Family build_family() const {
        if (family == "jw_chain") return Family::jw_chain();
        if (family == "cyclic") return Family::cyclic(cyclic_k);
        if (family == "ternary_tree") return Family::ternary_tree();
        if (family == "gse2n") return Family::gse2n();
        throw EncodingError("unknown family: " + family);
    }

    std::vector<Encoding> build(const FermionHamiltonian& H, std::uint64_t seed) const {
        std::optional<int> target;
        if (parity != 0) target = parity;
        std::vector<Encoding> encs;
        for (int s = 0; s < H.sectors(); ++s)
            encs.push_back(build_encoding(build_graph(H.modes_per_sector(), seed),
                                          build_family(), target));
        return encs;
    }

    json config() const {
        return json{{"graph", graph_kind},     {"graph_param", graph_param},
                    {"graph_file", graph_file}, {"family", family},
                    {"cyclic_k", cyclic_k},     {"parity", parity},
                    {"prune_degree", prune_degree}, {"prune_hops", prune_hops}};
    }
};

PathPolicy parse_policy(const std::string& name) {
    if (name == "shortest") return PathPolicy::Shortest;
    if (name == "copy") return PathPolicy::ShortestWithCopy;
    if (name == "round_robin") return PathPolicy::RoundRobinCopies;
    throw EncodingError("unknown path policy: " + name);
}

GroupingMode parse_grouping(const std::string& name) {
    if (name == "general") return GroupingMode::General;
    if (name == "qubitwise") return GroupingMode::Qubitwise;
    if (name == "spin_separated") return GroupingMode::SpinSeparated;
    throw ReduceError("unknown grouping mode: " + name);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
}

std::vector<int> parse_occupation(const std::string& bits) {
    std::vector<int> occ;
    for (char b : bits) {
        if (b != '0' && b != '1') throw FermionError("occupation must be a 0/1 string");
        occ.push_back(b - '0');
    }
    return occ;
}

json report_for(const WeightedPauliSum& sum, double constant, int qubits) {
    DepthEstimate de = depth_estimate(sum);
    return json{{"qubits", qubits},
                {"terms", sum.size()},
                {"constant", constant},
                {"average_term_weight", sum.average_weight()},
                {"max_term_weight", sum.max_weight()},
                {"coloring_groups", de.groups},
                {"depth_estimate", de.estimate}};
}

// measurement pipeline shared by `experiment`: group, rotate, sample,
// post-select, estimate
struct ExperimentResult {
    EnergyEstimate energy;
    json detail;
};

ExperimentResult run_experiment(const std::vector<Encoding>& encs, const MapResult& mapped,
                                const std::vector<int>& occupation, GroupingMode grouping,
                                std::uint64_t shots, double noise_p, std::uint64_t seed) {
    const std::size_t width = mapped.sum.n_qubits();
    std::vector<PauliTerm> stabs;
    std::size_t off = 0;
    for (const auto& e : encs) {
        for (const auto& s : e.stabilizer_ops()) stabs.push_back(embed(s, off, width));
        off += e.n_qubits();
    }
    // joint prep across sectors
    Circuit prep{int(width)};
    off = 0;
    std::vector<PauliTerm> base_gens;
    for (std::size_t s = 0; s < encs.size(); ++s) {
        std::vector<int> occ_s(occupation.begin() + s * encs[s].graph().n_vertices(),
                               occupation.begin() + (s + 1) * encs[s].graph().n_vertices());
        Circuit c = encode_state(encs[s], occ_s);
        for (const auto& g : c.gates())
            prep.append(g.kind, g.a + int(off), g.b < 0 ? -1 : g.b + int(off), g.param);
        StabilizerState st = codespace_state(encs[s], occ_s);
        for (const auto& gen : st.stabilizers()) base_gens.push_back(embed(gen, off, width));
        off += encs[s].n_qubits();
    }
    StabilizerState base = StabilizerState::from_generators(base_gens);

    auto groups = group_commuting(mapped.sum, grouping);
    std::vector<int> order;
    for (std::size_t q = 0; q < width; ++q) order.push_back(int(q));
    std::vector<MeasuredGroup> mgroups;
    std::vector<SampleSet> samples;
    std::uint64_t per_group = std::max<std::uint64_t>(1, shots / groups.size());
    json detail = json::array();
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        std::vector<PauliTerm> terms;
        std::vector<double> coeffs;
        for (std::size_t idx : groups[gi].term_indices) {
            terms.push_back(mapped.sum.terms()[idx].second);
            coeffs.push_back(mapped.sum.terms()[idx].first.real());
        }
        RotationPlan plan = rotation_measurement(stabs, base, terms, Rng::mix(seed, 7 * gi + 1));
        Circuit c{int(width)};
        c.append(prep);
        c.append(plan.circuit);
        for (std::size_t q = 0; q < width; ++q) c.measure(int(q));
        MeasuredGroup mg;
        mg.coefficients = coeffs;
        for (const auto& img : plan.term_images)
            mg.observables.push_back(z_observable(img, order));
        for (const auto& img : plan.stab_images)
            mg.stab_checks.push_back(z_observable(img, order));
        mgroups.push_back(std::move(mg));
        samples.push_back(
            sample_circuit(c, {noise_p, 0.0}, per_group, Rng::mix(seed, 1000 + gi)));
        json dg;
        dg["group"] = gi;
        dg["terms"] = terms.size();
        dg["shots"] = per_group;
        dg["circuit_depth"] = c.depth();
        detail.push_back(std::move(dg));
    }
    ExperimentResult res{estimate_energy(mgroups, samples, mapped.constant), std::move(detail)};
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized superfast encoding compiler and verification toolkit"};
    app.set_version_flag("--version", kVersion);
    app.fallthrough();
    std::uint64_t seed = 1;
    int threads = 0;
    app.add_option("--seed", seed, "global random seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads (default: all)");

    // ---- graph ----
    auto* cmd_graph = app.add_subcommand("graph", "build or prune an interaction graph");
    EncSpec graph_spec;
    int graph_M = 4;
    std::string graph_out;
    graph_spec.attach(cmd_graph);
    cmd_graph->add_option("--modes", graph_M, "vertex count")->capture_default_str();
    cmd_graph->add_option("--out", graph_out, "output JSON path (default stdout)");

    // ---- map / reduce ----
    auto* cmd_map = app.add_subcommand("map", "map a Hamiltonian to a Pauli sum");
    EncSpec map_spec;
    std::string map_hfile, map_out, map_report, map_policy = "shortest";
    int map_copy = 0;
    bool map_reduce = false;
    map_spec.attach(cmd_map);
    cmd_map->add_option("--hamiltonian", map_hfile, "Hamiltonian JSON file")->required();
    cmd_map->add_option("--policy", map_policy, "path policy: shortest|copy|round_robin")
        ->capture_default_str();
    cmd_map->add_option("--copy", map_copy, "fixed edge copy for --policy copy");
    cmd_map->add_flag("--reduce", map_reduce, "apply logical weight reduction");
    cmd_map->add_option("--out", map_out, "Pauli sum output (default stdout)");
    cmd_map->add_option("--report", map_report, "report JSON path");

    auto* cmd_reduce = app.add_subcommand("reduce", "logical weight reduction of a mapped sum");
    EncSpec red_spec;
    std::string red_hfile, red_out, red_report;
    red_spec.attach(cmd_reduce);
    cmd_reduce->add_option("--hamiltonian", red_hfile, "Hamiltonian JSON file")->required();
    cmd_reduce->add_option("--out", red_out, "Pauli sum output (default stdout)");
    cmd_reduce->add_option("--report", red_report, "report JSON path");

    // ---- trotter ----
    auto* cmd_trotter = app.add_subcommand("trotter", "synthesize a Trotter step circuit");
    EncSpec tro_spec;
    std::string tro_hfile, tro_out;
    double tro_dt = 0.01;
    bool tro_reduce = false;
    tro_spec.attach(cmd_trotter);
    cmd_trotter->add_option("--hamiltonian", tro_hfile)->required();
    cmd_trotter->add_option("--dt", tro_dt, "time step")->capture_default_str();
    cmd_trotter->add_flag("--reduce", tro_reduce, "reduce before synthesis");
    cmd_trotter->add_option("--out", tro_out, "circuit output (default stdout)");

    // ---- rotate ----
    auto* cmd_rotate = app.add_subcommand(
        "rotate", "emit rotation-measurement circuits for commuting groups");
    EncSpec rot_spec;
    std::string rot_hfile, rot_out, rot_grouping = "spin_separated", rot_occ;
    rot_spec.attach(cmd_rotate);
    cmd_rotate->add_option("--hamiltonian", rot_hfile)->required();
    cmd_rotate->add_option("--grouping", rot_grouping)->capture_default_str();
    cmd_rotate->add_option("--occupation", rot_occ, "base occupation bits, e.g. 1100");
    cmd_rotate->add_option("--out", rot_out, "output JSON (default stdout)");

    // ---- distance ----
    auto* cmd_distance = app.add_subcommand("distance", "exhaustive code distance scan");
    EncSpec dist_spec;
    int dist_M = 4, dist_wmax = 2;
    std::string dist_out;
    dist_spec.attach(cmd_distance);
    cmd_distance->add_option("--modes", dist_M, "modes per sector")->capture_default_str();
    cmd_distance->add_option("--wmax", dist_wmax, "max scanned weight")->capture_default_str();
    cmd_distance->add_option("--out", dist_out, "report JSON (default stdout)");

    // ---- fgu ----
    auto* cmd_fgu = app.add_subcommand("fgu", "fermionic Gaussian orbital rotation circuit");
    int fgu_modes = 4;
    std::string fgu_enc = "gse2n", fgu_conn = "linear", fgu_ufile, fgu_out;
    bool fgu_baseline = false;
    cmd_fgu->add_option("--modes", fgu_modes)->capture_default_str();
    cmd_fgu->add_option("--encoding", fgu_enc, "jw|gse2n")->capture_default_str();
    cmd_fgu->add_option("--connectivity", fgu_conn, "all|linear|square")->capture_default_str();
    cmd_fgu->add_option("--u-file", fgu_ufile, "JSON row-major orthogonal matrix");
    cmd_fgu->add_flag("--baseline", fgu_baseline, "swap-routed pivot compilation");
    cmd_fgu->add_option("--out", fgu_out, "circuit output (default stdout)");

    // ---- experiment ----
    auto* cmd_exp = app.add_subcommand(
        "experiment", "group, rotate, sample, post-select, and estimate the energy");
    EncSpec exp_spec;
    std::string exp_hfile, exp_occ, exp_grouping = "spin_separated", exp_out;
    std::uint64_t exp_shots = 100000;
    double exp_p = 0.0;
    bool exp_reduce = false;
    exp_spec.attach(cmd_exp);
    cmd_exp->add_option("--hamiltonian", exp_hfile)->required();
    cmd_exp->add_option("--occupation", exp_occ, "prepared occupation bits")->required();
    cmd_exp->add_option("--shots", exp_shots)->capture_default_str();
    cmd_exp->add_option("--noise", exp_p, "two-qubit depolarizing probability")
        ->capture_default_str();
    cmd_exp->add_option("--grouping", exp_grouping)->capture_default_str();
    cmd_exp->add_flag("--reduce", exp_reduce, "reduce the mapped sum first");
    cmd_exp->add_option("--out", exp_out, "report JSON (default stdout)");

    // ---- rotor ----
    auto* cmd_rotor = app.add_subcommand("rotor", "dipolar rotor circuit comparison");
    int rotor_N = 2, rotor_dm = 3;
    double rotor_g = 1.0, rotor_dt = 0.05;
    std::string rotor_out, rotor_circuits;
    cmd_rotor->add_option("--rotors", rotor_N)->capture_default_str();
    cmd_rotor->add_option("--dm", rotor_dm, "odd angular momentum states per rotor")
        ->capture_default_str();
    cmd_rotor->add_option("--g", rotor_g, "coupling")->capture_default_str();
    cmd_rotor->add_option("--dt", rotor_dt)->capture_default_str();
    cmd_rotor->add_option("--out", rotor_out, "report JSON (default stdout)");
    cmd_rotor->add_option("--circuits", rotor_circuits, "prefix for circuit text files");

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    if (const char* env = std::getenv("GSEFORGE_THREADS"); env && threads == 0)
        threads = std::atoi(env);
    if (threads > 0) omp_set_num_threads(threads);

    json config{{"version", kVersion}, {"seed", seed}, {"threads", threads}};

    try {
        if (*cmd_graph) {
            config["command"] = "graph";
            config["spec"] = graph_spec.config();
            InteractionGraph g = graph_spec.build_graph(graph_M, seed);
            json out = json::parse(g.to_json_text());
            out["config"] = config;
            out["diameter"] = g.diameter();
            write_text(graph_out, out.dump(2) + "\n");
        } else if (*cmd_map || *cmd_reduce) {
            const bool reducing = bool(*cmd_reduce);
            EncSpec& spec = reducing ? red_spec : map_spec;
            const std::string hfile = reducing ? red_hfile : map_hfile;
            config["command"] = reducing ? "reduce" : "map";
            config["spec"] = spec.config();
            config["hamiltonian"] = hfile;
            FermionHamiltonian H = FermionHamiltonian::load(hfile);
            auto encs = spec.build(H, seed);
            PathPolicy policy = reducing ? PathPolicy::Shortest : parse_policy(map_policy);
            MapResult mapped = map_hamiltonian(encs, H, policy, map_copy);
            int qubits = 0;
            for (const auto& e : encs) qubits += e.n_qubits();
            json report{{"before", report_for(mapped.sum, mapped.constant, qubits)}};
            if (reducing || map_reduce) {
                std::vector<PauliTerm> stabs;
                std::size_t off = 0;
                for (const auto& e : encs) {
                    for (const auto& s : e.stabilizer_ops())
                        stabs.push_back(embed(s, off, mapped.sum.n_qubits()));
                    off += e.n_qubits();
                }
                mapped.sum = logical_reduce(stabs, mapped.sum);
                report["after"] = report_for(mapped.sum, mapped.constant, qubits);
            }
            report["config"] = config;
            std::ostringstream head;
            head << "# " << kVersion << " " << config.dump() << "\n";
            head << "# constant " << mapped.constant << "\n";
            write_text(reducing ? red_out : map_out, head.str() + mapped.sum.to_text());
            const std::string rpath = reducing ? red_report : map_report;
            if (!rpath.empty()) write_text(rpath, report.dump(2) + "\n");
        } else if (*cmd_trotter) {
            config["command"] = "trotter";
            config["spec"] = tro_spec.config();
            FermionHamiltonian H = FermionHamiltonian::load(tro_hfile);
            auto encs = tro_spec.build(H, seed);
            MapResult mapped = map_hamiltonian(encs, H, PathPolicy::Shortest);
            if (tro_reduce) {
                std::vector<PauliTerm> stabs;
                std::size_t off = 0;
                for (const auto& e : encs) {
                    for (const auto& s : e.stabilizer_ops())
                        stabs.push_back(embed(s, off, mapped.sum.n_qubits()));
                    off += e.n_qubits();
                }
                mapped.sum = logical_reduce(stabs, mapped.sum);
            }
            Circuit c = trotter_step(mapped.sum, tro_dt);
            std::ostringstream head;
            head << "# " << kVersion << " " << config.dump() << "\n";
            head << "# depth " << c.depth_hint << " two_qubit " << c.two_qubit_count() << "\n";
            write_text(tro_out, head.str() + c.to_text());
        } else if (*cmd_rotate) {
            config["command"] = "rotate";
            config["spec"] = rot_spec.config();
            FermionHamiltonian H = FermionHamiltonian::load(rot_hfile);
            auto encs = rot_spec.build(H, seed);
            MapResult mapped = map_hamiltonian(encs, H, PathPolicy::Shortest);
            const std::size_t width = mapped.sum.n_qubits();
            std::vector<PauliTerm> stabs;
            std::size_t off = 0;
            for (const auto& e : encs) {
                for (const auto& s : e.stabilizer_ops())
                    stabs.push_back(embed(s, off, width));
                off += e.n_qubits();
            }
            std::vector<int> occ(H.modes_per_sector() * H.sectors(), 0);
            if (!rot_occ.empty()) occ = parse_occupation(rot_occ);
            std::vector<PauliTerm> base_gens;
            off = 0;
            for (std::size_t s = 0; s < encs.size(); ++s) {
                std::vector<int> osec(occ.begin() + s * H.modes_per_sector(),
                                      occ.begin() + (s + 1) * H.modes_per_sector());
                for (const auto& gen : codespace_state(encs[s], osec).stabilizers())
                    base_gens.push_back(embed(gen, off, width));
                off += encs[s].n_qubits();
            }
            StabilizerState base = StabilizerState::from_generators(base_gens);
            auto groups = group_commuting(mapped.sum, parse_grouping(rot_grouping));
            json out;
            out["config"] = config;
            out["groups"] = json::array();
            for (std::size_t gi = 0; gi < groups.size(); ++gi) {
                std::vector<PauliTerm> terms;
                for (std::size_t idx : groups[gi].term_indices)
                    terms.push_back(mapped.sum.terms()[idx].second);
                RotationPlan plan =
                    rotation_measurement(stabs, base, terms, Rng::mix(seed, gi));
                json jg;
                jg["circuit"] = plan.circuit.to_text();
                jg["term_images"] = json::array();
                for (const auto& img : plan.term_images) jg["term_images"].push_back(img.str());
                jg["stab_images"] = json::array();
                for (const auto& img : plan.stab_images) jg["stab_images"].push_back(img.str());
                jg["overlap_count"] = plan.overlap_count;
                out["groups"].push_back(std::move(jg));
            }
            write_text(rot_out, out.dump(2) + "\n");
        } else if (*cmd_distance) {
            config["command"] = "distance";
            config["spec"] = dist_spec.config();
            InteractionGraph g = dist_spec.build_graph(dist_M, seed);
            Encoding enc = build_encoding(g, dist_spec.build_family());
            DistanceReport rep = code_distance_scan(enc, dist_wmax);
            json out{{"config", config},
                     {"qubits", enc.n_qubits()},
                     {"distance", rep.distance},
                     {"scanned_up_to", dist_wmax}};
            out["undetectable"] = json::object();
            for (const auto& [w, ops] : rep.undetectable_by_weight)
                out["undetectable"][std::to_string(w)] = ops;
            write_text(dist_out, out.dump(2) + "\n");
        } else if (*cmd_fgu) {
            config["command"] = "fgu";
            Eigen::MatrixXd u;
            if (!fgu_ufile.empty()) {
                std::ifstream in(fgu_ufile);
                if (!in) throw SynthError("cannot open " + fgu_ufile);
                json ju = json::parse(in);
                int M = int(ju.size());
                u.resize(M, M);
                for (int i = 0; i < M; ++i)
                    for (int j = 0; j < M; ++j) u(i, j) = ju[i][j].get<double>();
            } else {
                Rng rng(seed);
                u = Eigen::MatrixXd::Identity(fgu_modes, fgu_modes);
                for (int t = 0; t < 2 * fgu_modes * fgu_modes; ++t) {
                    int p = int(rng.integer(fgu_modes - 1));
                    double th = rng.gaussian();
                    Eigen::MatrixXd gm = Eigen::MatrixXd::Identity(fgu_modes, fgu_modes);
                    gm(p, p) = gm(p + 1, p + 1) = std::cos(th);
                    gm(p, p + 1) = -std::sin(th);
                    gm(p + 1, p) = std::sin(th);
                    u = gm * u;
                }
            }
            Connectivity conn = fgu_conn == "linear"   ? Connectivity::linear()
                                : fgu_conn == "square" ? Connectivity::square(2, int(u.rows()))
                                                       : Connectivity::all_to_all();
            FguResult res = fgu_orbital_rotation(
                u, fgu_enc == "jw" ? FguEncoding::Jw : FguEncoding::Gse2n, conn, fgu_baseline);
            std::ostringstream head;
            config["encoding"] = fgu_enc;
            config["connectivity"] = fgu_conn;
            config["baseline"] = fgu_baseline;
            head << "# " << kVersion << " " << config.dump() << "\n";
            head << "# depth " << res.circuit.depth() << " two_qubit "
                 << res.circuit.two_qubit_count() << "\n";
            write_text(fgu_out, head.str() + res.circuit.to_text());
        } else if (*cmd_exp) {
            config["command"] = "experiment";
            config["spec"] = exp_spec.config();
            config["shots"] = exp_shots;
            config["noise"] = exp_p;
            FermionHamiltonian H = FermionHamiltonian::load(exp_hfile);
            std::vector<int> occ = parse_occupation(exp_occ);
            if (int(occ.size()) != H.total_modes())
                throw FermionError("occupation length must equal total modes");
            // pick the codespace parity from the occupation
            EncSpec spec = exp_spec;
            if (spec.parity == 0) {
                int par = +1;
                for (std::size_t v = 0; v < std::size_t(H.modes_per_sector()); ++v)
                    if (occ[v]) par = -par;
                spec.parity = par;
            }
            auto encs = spec.build(H, seed);
            MapResult mapped = map_hamiltonian(encs, H, PathPolicy::Shortest);
            if (exp_reduce) {
                std::vector<PauliTerm> stabs;
                std::size_t off = 0;
                for (const auto& e : encs) {
                    for (const auto& s : e.stabilizer_ops())
                        stabs.push_back(embed(s, off, mapped.sum.n_qubits()));
                    off += e.n_qubits();
                }
                mapped.sum = logical_reduce(stabs, mapped.sum);
            }
            ExperimentResult res = run_experiment(encs, mapped, occ,
                                                  parse_grouping(exp_grouping), exp_shots,
                                                  exp_p, seed);
            json out{{"config", config},
                     {"energy", res.energy.value},
                     {"stderr", res.energy.stderr_},
                     {"group_acceptance", res.energy.group_acceptance},
                     {"group_kept", res.energy.group_kept},
                     {"groups", res.detail}};
            write_text(exp_out, out.dump(2) + "\n");
        } else if (*cmd_rotor) {
            config["command"] = "rotor";
            config["rotors"] = rotor_N;
            config["dm"] = rotor_dm;
            RotorCircuits rc = rotor_trotter_circuits(rotor_N, rotor_dm, rotor_g, rotor_dt);
            json out{{"config", config},
                     {"depth_gse", rc.gse.depth_hint},
                     {"depth_jw", rc.jw.depth_hint},
                     {"gates_gse", rc.gse.two_qubit_count()},
                     {"gates_jw", rc.jw.two_qubit_count()},
                     {"qubits_gse", rc.gse_qubits},
                     {"qubits_jw", rc.jw_qubits}};
            out["depth_ratio"] = double(rc.gse.depth_hint) / double(rc.jw.depth_hint);
            out["gate_ratio"] =
                double(rc.gse.two_qubit_count()) / double(rc.jw.two_qubit_count());
            if (!rotor_circuits.empty()) {
                write_text(rotor_circuits + "_gse.txt", rc.gse.to_text());
                write_text(rotor_circuits + "_jw.txt", rc.jw.to_text());
            }
            write_text(rotor_out, out.dump(2) + "\n");
        }
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::string(e.what()).find("prune:") == 0 ? kExitInfeasible : kExitValidation;
    } catch (const EstimateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::string(e.what()).find("insufficient") != std::string::npos
                   ? kExitInfeasible
                   : kExitValidation;
    } catch (const EncodingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::string(e.what()).find("budget") != std::string::npos ? kExitBudget
                                                                         : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
