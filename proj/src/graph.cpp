#include "gseforge/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>

#include "json.hpp"

namespace gsef {

using nlohmann::json;

int InteractionGraph::add_edge(int u, int v, int multiplicity) {
    if (u == v) throw GraphError("use add_loop for self-loops");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw GraphError("vertex out of range");
    if (multiplicity < 1) throw GraphError("multiplicity must be >= 1");
    int lo = std::min(u, v), hi = std::max(u, v);
    for (auto& e : edges_)
        if (e.u == lo && e.v == hi) {
            e.multiplicity += multiplicity;
            return int(&e - edges_.data());
        }
    edges_.push_back({lo, hi, multiplicity, lo, hi});
    return int(edges_.size()) - 1;
}

void InteractionGraph::add_loop(int v, int count) {
    if (v < 0 || v >= n_) throw GraphError("vertex out of range");
    for (auto& l : loops_)
        if (l.v == v) {
            l.count += count;
            return;
        }
    loops_.push_back({v, count});
}

void InteractionGraph::set_orientation(int edge_id, int tail) {
    Edge& e = edges_.at(edge_id);
    if (tail != e.u && tail != e.v) throw GraphError("tail not on edge");
    e.tail = tail;
    e.head = (tail == e.u) ? e.v : e.u;
}

void InteractionGraph::remove_one_copy(int edge_id) {
    Edge& e = edges_.at(edge_id);
    if (--e.multiplicity == 0) edges_.erase(edges_.begin() + edge_id);
}

int InteractionGraph::find_edge(int u, int v) const {
    int lo = std::min(u, v), hi = std::max(u, v);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].u == lo && edges_[i].v == hi) return int(i);
    return -1;
}

int InteractionGraph::incidence(int v) const {
    int d = 0;
    for (const auto& e : edges_)
        if (e.u == v || e.v == v) d += e.multiplicity;
    for (const auto& l : loops_)
        if (l.v == v) d += 2 * l.count;
    return d;
}

int InteractionGraph::degree(int v) const {
    int d = 0;
    for (const auto& e : edges_)
        if (e.u == v || e.v == v) d += e.multiplicity;
    return d;
}

std::vector<std::vector<int>> InteractionGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n_);
    for (const auto& e : edges_) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

static std::vector<int> bfs_dist(const std::vector<std::vector<int>>& adj, int src) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> q{src};
    dist[src] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

bool InteractionGraph::connected() const { return n_components() == 1; }

int InteractionGraph::n_components() const {
    auto adj = adjacency();
    std::vector<bool> seen(n_, false);
    int comps = 0;
    for (int s = 0; s < n_; ++s) {
        if (seen[s]) continue;
        ++comps;
        auto d = bfs_dist(adj, s);
        for (int v = 0; v < n_; ++v)
            if (d[v] >= 0) seen[v] = true;
    }
    return comps;
}

int InteractionGraph::distance(int u, int v) const { return bfs_dist(adjacency(), u)[v]; }

int InteractionGraph::diameter() const {
    auto adj = adjacency();
    int dia = 0;
    for (int s = 0; s < n_; ++s) {
        auto d = bfs_dist(adj, s);
        for (int v = 0; v < n_; ++v) {
            if (d[v] < 0) return -1;
            dia = std::max(dia, d[v]);
        }
    }
    return dia;
}

std::string InteractionGraph::to_json_text() const {
    json j;
    j["n"] = n_;
    j["edges"] = json::array();
    for (const auto& e : edges_) j["edges"].push_back({e.u, e.v, e.multiplicity});
    j["loops"] = json::array();
    for (const auto& l : loops_) j["loops"].push_back({l.v, l.count});
    return j.dump(2);
}

InteractionGraph InteractionGraph::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw GraphError(std::string("graph JSON parse error: ") + e.what());
    }
    InteractionGraph g(j.at("n").get<int>());
    if (j.contains("edges"))
        for (const auto& row : j["edges"])
            g.add_edge(row[0].get<int>(), row[1].get<int>(),
                       row.size() > 2 ? row[2].get<int>() : 1);
    if (j.contains("loops"))
        for (const auto& row : j["loops"])
            g.add_loop(row[0].get<int>(), row.size() > 1 ? row[1].get<int>() : 1);
    return g;
}

bool validate_path(const InteractionGraph& g, const EdgePath& p) {
    int at = p.start;
    for (const auto& s : p.steps) {
        if (s.edge_id < 0 || s.edge_id >= int(g.edges().size())) return false;
        const auto& e = g.edges()[s.edge_id];
        if (s.copy < 0 || s.copy >= e.multiplicity) return false;
        int from = s.forward ? e.tail : e.head;
        int to = s.forward ? e.head : e.tail;
        if (from != at) return false;
        at = to;
    }
    return at == p.end;
}

InteractionGraph build_complete(int M) {
    InteractionGraph g(M);
    for (int u = 0; u < M; ++u)
        for (int v = u + 1; v < M; ++v) g.add_edge(u, v);
    return g;
}

InteractionGraph build_loop(int M, int multiplicity) {
    if (M < 3) throw GraphError("loop needs at least 3 vertices");
    InteractionGraph g(M);
    for (int v = 0; v + 1 < M; ++v) g.add_edge(v, v + 1, multiplicity);
    int wrap = g.add_edge(0, M - 1, multiplicity);
    g.set_orientation(wrap, M - 1);  // tail-biting edge runs M-1 -> 0
    return g;
}

InteractionGraph build_line(int M) {
    InteractionGraph g(M);
    for (int v = 0; v + 1 < M; ++v) g.add_edge(v, v + 1);
    return g;
}

InteractionGraph build_line_with_end_loops(int M, int multiplicity) {
    if (M < 2) throw GraphError("need at least 2 vertices");
    InteractionGraph g(M);
    for (int v = 0; v + 1 < M; ++v) g.add_edge(v, v + 1, multiplicity);
    g.add_loop(0);
    g.add_loop(M - 1);
    return g;
}

InteractionGraph build_gse2n_lines(int n_components, int L) {
    if (L < 2) throw GraphError("component length must be >= 2");
    InteractionGraph g(n_components * L);
    for (int c = 0; c < n_components; ++c) {
        int base = c * L;
        for (int v = 0; v + 1 < L; ++v) g.add_edge(base + v, base + v + 1, 2);
        g.add_loop(base);
        g.add_loop(base + L - 1);
    }
    return g;
}

InteractionGraph build_complete_even(int M, int distance) {
    if (M % 2 != 0) throw GraphError("complete_even needs even M");
    if (distance < 2) throw GraphError("distance must be >= 2");
    InteractionGraph g(M);
    for (int u = 0; u < M; ++u)
        for (int v = u + 1; v < M; ++v) g.add_edge(u, v);
    // Round-robin 1-factorization of K_M: matching r pairs (M-1, r) and
    // (r+k, r-k) mod M-1. Each extra matching copy raises all incidences by 1.
    int extra = 2 * distance - (M - 1);
    if (extra < 0) throw GraphError("distance too small for complete graph");
    int n1 = M - 1;
    for (int t = 0; t < extra; ++t) {
        int r = t % n1;
        g.add_edge(M - 1, r, 1);
        for (int k = 1; k <= (M - 2) / 2 + 0; ++k) {
            int a = (r + k) % n1, b = (r - k + n1) % n1;
            if (a == b) continue;
            g.add_edge(a, b, 1);
        }
    }
    return g;
}

InteractionGraph build_graph(const std::string& kind, int M, int param,
                             const std::string& json_text) {
    if (kind == "complete") return build_complete(M);
    if (kind == "loop") return build_loop(M, param < 1 ? 1 : param);
    if (kind == "line") return build_line(M);
    if (kind == "line_with_end_loops") return build_line_with_end_loops(M, param < 1 ? 2 : param);
    if (kind == "complete_even") return build_complete_even(M, param);
    if (kind == "gse2n") return build_gse2n_lines(1, M);
    if (kind == "custom") return InteractionGraph::from_json_text(json_text);
    throw GraphError("unknown graph kind: " + kind);
}

InteractionGraph prune(const InteractionGraph& g0, int target_degree, int max_hops,
                       std::uint64_t seed, int max_restarts) {
    if (target_degree % 2 != 0) throw GraphError("target degree must be even");
    for (int attempt = 0; attempt < max_restarts; ++attempt) {
        InteractionGraph g = g0;
        std::mt19937_64 rng(seed + attempt);
        bool stuck = false;
        while (!stuck) {
            int worst = -1, worst_deg = target_degree;
            for (int v = 0; v < g.n_vertices(); ++v) {
                int d = g.degree(v);
                if (d > worst_deg) {
                    worst_deg = d;
                    worst = v;
                }
            }
            if (worst < 0) break;  // all degrees within target
            // candidate edges at the worst vertex, highest-degree neighbor first
            std::vector<int> cand;
            for (std::size_t i = 0; i < g.edges().size(); ++i)
                if (g.edges()[i].u == worst || g.edges()[i].v == worst) cand.push_back(int(i));
            std::sort(cand.begin(), cand.end(), [&](int a, int b) {
                const auto& ea = g.edges()[a];
                const auto& eb = g.edges()[b];
                int na = (ea.u == worst) ? ea.v : ea.u;
                int nb = (eb.u == worst) ? eb.v : eb.u;
                return g.degree(na) > g.degree(nb);
            });
            if (attempt > 0) std::shuffle(cand.begin(), cand.end(), rng);
            stuck = true;
            for (int eid : cand) {
                InteractionGraph trial = g;
                trial.remove_one_copy(eid);
                int dia = trial.diameter();
                if (dia >= 0 && dia <= max_hops) {
                    g = trial;
                    stuck = false;
                    break;
                }
            }
        }
        bool ok = true;
        for (int v = 0; v < g.n_vertices(); ++v)
            if (g.degree(v) > target_degree) ok = false;
        if (ok && g.diameter() >= 0 && g.diameter() <= max_hops) return g;
    }
    throw GraphError("prune: no degree-" + std::to_string(target_degree) + " graph within " +
                     std::to_string(max_hops) + " hops found");
}

EdgePath find_path(const InteractionGraph& g, int i, int j, PathPolicy policy, int copy,
                   std::uint64_t* counter) {
    if (i == j) throw GraphError("path endpoints must differ");
    auto adj = g.adjacency();
    // BFS from i; scanning neighbors in ascending order fixes tie-breaking.
    std::vector<int> parent(g.n_vertices(), -1), dist(g.n_vertices(), -1);
    std::deque<int> q{i};
    dist[i] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                q.push_back(w);
            }
    }
    if (dist[j] < 0) throw GraphError("path: vertices are disconnected");
    std::vector<int> verts;
    for (int v = j; v != -1; v = parent[v]) verts.push_back(v);
    std::reverse(verts.begin(), verts.end());

    int chosen = copy;
    if (policy == PathPolicy::Shortest) chosen = 0;
    if (policy == PathPolicy::RoundRobinCopies) {
        if (!counter) throw GraphError("round_robin needs a counter");
        chosen = int(*counter);
        *counter += verts.size() - 1;
    }
    EdgePath p;
    p.start = i;
    p.end = j;
    for (std::size_t s = 0; s + 1 < verts.size(); ++s) {
        int eid = g.find_edge(verts[s], verts[s + 1]);
        const auto& e = g.edges()[eid];
        int c = chosen % e.multiplicity;
        if (policy == PathPolicy::ShortestWithCopy && copy >= e.multiplicity)
            throw GraphError("copy index exceeds multiplicity");
        p.steps.push_back({eid, c, e.tail == verts[s]});
    }
    return p;
}

std::vector<EdgePath> cycle_basis(const InteractionGraph& g) {
    std::vector<EdgePath> cycles;
    auto adj = g.adjacency();
    // BFS spanning forest over copy 0; roots at the lowest vertex of each component
    std::vector<int> parent(g.n_vertices(), -1), parent_edge(g.n_vertices(), -1);
    std::vector<bool> seen(g.n_vertices(), false);
    std::vector<bool> tree_edge(g.edges().size(), false);
    for (int root = 0; root < g.n_vertices(); ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::deque<int> q{root};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    parent[w] = v;
                    int eid = g.find_edge(v, w);
                    parent_edge[w] = eid;
                    tree_edge[eid] = true;
                    q.push_back(w);
                }
        }
    }
    auto tree_walk = [&](int from, int to) {
        // path through the tree: from -> lca -> to, as vertex list
        std::vector<int> up{from}, down{to};
        std::vector<int> fa;
        for (int v = from; v != -1; v = parent[v]) fa.push_back(v);
        auto on_fa = [&](int v) { return std::find(fa.begin(), fa.end(), v) != fa.end(); };
        int lca = to;
        while (!on_fa(lca)) lca = parent[lca];
        std::vector<int> verts;
        for (int v = from; v != lca; v = parent[v]) verts.push_back(v);
        verts.push_back(lca);
        std::vector<int> tail;
        for (int v = to; v != lca; v = parent[v]) tail.push_back(v);
        std::reverse(tail.begin(), tail.end());
        for (int v : tail) verts.push_back(v);
        return verts;
    };
    // fundamental cycles: one per non-tree edge (copy 0)
    for (std::size_t eid = 0; eid < g.edges().size(); ++eid) {
        if (tree_edge[eid]) continue;
        const auto& e = g.edges()[eid];
        EdgePath c;
        c.start = c.end = e.tail;
        c.steps.push_back({int(eid), 0, true});
        auto verts = tree_walk(e.head, e.tail);
        for (std::size_t s = 0; s + 1 < verts.size(); ++s) {
            int id = g.find_edge(verts[s], verts[s + 1]);
            c.steps.push_back({id, 0, g.edges()[id].tail == verts[s]});
        }
        cycles.push_back(std::move(c));
    }
    // 2-cycles pairing copies (c, c+1) of every multi-edge
    for (std::size_t eid = 0; eid < g.edges().size(); ++eid) {
        const auto& e = g.edges()[eid];
        for (int c = 0; c + 1 < e.multiplicity; ++c) {
            EdgePath p;
            p.start = p.end = e.tail;
            p.steps.push_back({int(eid), c, true});
            p.steps.push_back({int(eid), c + 1, false});
            cycles.push_back(std::move(p));
        }
    }
    // degenerate self-loop cycles
    for (const auto& l : g.loops())
        for (int c = 0; c < l.count; ++c) {
            EdgePath p;
            p.start = p.end = l.v;
            cycles.push_back(std::move(p));
        }
    return cycles;
}

}  // namespace gsef
