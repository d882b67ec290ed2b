#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsef {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Interaction multigraph: vertices are fermionic modes, parallel edge copies
// raise the code distance, self-loops add end-point stabilizers. Canonical
// storage keeps u <= v except where an explicit orientation overrides it.
class InteractionGraph {
public:
    struct Edge {
        int u, v;          // canonical u <= v
        int multiplicity;  // >= 1
        int tail;          // orientation: A acts tail -> head
        int head;
    };
    struct Loop {
        int v;
        int count;
    };

    InteractionGraph() = default;
    explicit InteractionGraph(int n) : n_(n) {
        if (n < 1) throw GraphError("graph needs at least one vertex");
    }

    int n_vertices() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Loop>& loops() const { return loops_; }

    int add_edge(int u, int v, int multiplicity = 1);
    void add_loop(int v, int count = 1);
    void set_orientation(int edge_id, int tail);
    void remove_one_copy(int edge_id);

    int find_edge(int u, int v) const;  // -1 if absent

    // Incidence degree: edge multiplicities plus 2 per self-loop.
    int incidence(int v) const;
    // Plain edge degree (multiplicities, no loops).
    int degree(int v) const;

    std::vector<std::vector<int>> adjacency() const;  // distinct neighbors
    bool connected() const;
    int n_components() const;
    // Hop count between u and v; -1 if disconnected. BFS scans ascending.
    int distance(int u, int v) const;
    int diameter() const;  // -1 if disconnected

    std::string to_json_text() const;
    static InteractionGraph from_json_text(const std::string& text);

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<Loop> loops_;
};

// Directed walk over edge copies; consecutive edges share a vertex.
struct EdgePath {
    struct Step {
        int edge_id;
        int copy;
        bool forward;  // true: traversed tail -> head
    };
    int start = -1, end = -1;
    std::vector<Step> steps;
};

bool validate_path(const InteractionGraph& g, const EdgePath& p);

// --- builders ------------------------------------------------------------

InteractionGraph build_complete(int M);
InteractionGraph build_loop(int M, int multiplicity);
InteractionGraph build_line(int M);
InteractionGraph build_line_with_end_loops(int M, int multiplicity = 2);
// N disjoint length-L lines with doubled edges and end self-loops; the
// [[2N,N,2]] layout (one component per rotor when used for rotor systems).
InteractionGraph build_gse2n_lines(int n_components, int L);
// Complete graph on even M with edge multiplicities assigned over perfect
// matchings so every vertex has incidence exactly 2*distance.
InteractionGraph build_complete_even(int M, int distance);
// Kind dispatch: complete | loop | line | line_with_end_loops | custom.
InteractionGraph build_graph(const std::string& kind, int M, int param,
                             const std::string& json_text = "");

// --- operations ----------------------------------------------------------

// Removes edges from a graph until every degree <= target_degree while all
// pairs stay within max_hops. Seeded restarts; throws GraphError on failure.
InteractionGraph prune(const InteractionGraph& g, int target_degree, int max_hops,
                       std::uint64_t seed = 0, int max_restarts = 64);

enum class PathPolicy { Shortest, ShortestWithCopy, RoundRobinCopies };

// Shortest path i -> j with lexicographic tie-breaking. Copy selection per
// policy; round_robin uses *counter (uniform copy = counter mod multiplicity)
// and advances it by the path length.
EdgePath find_path(const InteractionGraph& g, int i, int j, PathPolicy policy,
                   int copy = 0, std::uint64_t* counter = nullptr);

// Independent cycles: fundamental cycles of a BFS spanning forest built over
// copy 0 of each edge, one 2-cycle per extra edge copy (c, c+1), and one
// degenerate cycle per self-loop (empty step list, start = end = vertex).
std::vector<EdgePath> cycle_basis(const InteractionGraph& g);

}  // namespace gsef
