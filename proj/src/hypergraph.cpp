#include "hyperspec/hypergraph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <string>

#include "hyperspec/errors.hpp"
#include "json.hpp"

namespace hyperspec {

Hypergraph build_hypergraph(int n, std::vector<std::vector<int>> edges, int d, int k) {
    if (k < 2 || d < 1 || n < 1)
        throw InvalidParameters("build_hypergraph: need n >= 1, d >= 1, k >= 2");
    if (static_cast<long long>(n) * d % k != 0 ||
        static_cast<long long>(edges.size()) != static_cast<long long>(n) * d / k)
        throw CountMismatch("build_hypergraph: edge count must equal n*d/k");

    std::vector<int> degree(n, 0);
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        if (static_cast<int>(e.size()) != k ||
            std::adjacent_find(e.begin(), e.end()) != e.end())
            throw NotUniform("build_hypergraph: hyperedge is not a k-set");
        for (int v : e) {
            if (v < 0 || v >= n) throw VertexOutOfRange("build_hypergraph: vertex out of range");
            ++degree[v];
        }
    }
    for (int v = 0; v < n; ++v)
        if (degree[v] != d)
            throw NotRegular("build_hypergraph: vertex " + std::to_string(v) + " has degree " +
                             std::to_string(degree[v]) + ", expected " + std::to_string(d));

    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw DuplicateHyperedge("build_hypergraph: repeated hyperedge");

    return Hypergraph{n, d, k, std::move(edges)};
}

DenseMatrix adjacency_matrix(const Hypergraph& h) {
    DenseMatrix a(h.n, h.n);
    for (const auto& e : h.edges)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                a(e[i], e[j]) += 1.0;
                a(e[j], e[i]) += 1.0;
            }
    return a;
}

BipartiteGraph to_bipartite(const Hypergraph& h) {
    const int m = h.edge_count();
    DenseMatrix x(h.n, m);
    for (int j = 0; j < m; ++j)
        for (int v : h.edges[j]) x(v, j) = 1.0;
    return BipartiteGraph{h.n, m, h.d, h.k, std::move(x)};
}

Hypergraph from_bipartite(const BipartiteGraph& g) {
    std::vector<std::vector<int>> edges(g.n2);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
            if (g.x(i, j) != 0.0) edges[j].push_back(i);
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            throw MultipleHyperedges("from_bipartite: two columns share a neighborhood");
    return build_hypergraph(g.n1, std::move(edges), g.d1, g.d2);
}

namespace {

struct IncidenceIndex {
    std::vector<std::vector<int>> edges_of;  // vertex -> edge ids
    explicit IncidenceIndex(const Hypergraph& h) : edges_of(h.n) {
        for (int j = 0; j < h.edge_count(); ++j)
            for (int v : h.edges[j]) edges_of[v].push_back(j);
    }
};

// Counts ordered rooted cycle representations by depth-first search.
long long cycle_reps(const Hypergraph& h, const IncidenceIndex& inc, int l) {
    long long count = 0;
    std::vector<char> v_used(h.n, 0), e_used(h.edge_count(), 0);
    std::vector<int> path;

    auto dfs = [&](auto&& self, int v0, int v, int depth) -> void {
        if (depth == l) return;
        for (int e : inc.edges_of[v]) {
            if (e_used[e]) continue;
            e_used[e] = 1;
            for (int u : h.edges[e]) {
                if (u == v) continue;
                if (depth == l - 1) {
                    if (u == v0) ++count;
                } else if (!v_used[u]) {
                    v_used[u] = 1;
                    self(self, v0, u, depth + 1);
                    v_used[u] = 0;
                }
            }
            e_used[e] = 0;
        }
    };

    for (int v0 = 0; v0 < h.n; ++v0) {
        v_used[v0] = 1;
        dfs(dfs, v0, v0, 0);
        v_used[v0] = 0;
    }
    return count;
}

}  // namespace

long long count_cycles(const Hypergraph& h, int l) {
    if (l < 1 || l > 8) throw LengthTooLarge("count_cycles: l must be in [1, 8]");
    const IncidenceIndex inc(h);
    const long long reps = cycle_reps(h, inc, l);
    // ordered rooted representations, divided by rotations and reflection
    return reps / (2LL * l);
}

bool is_connected(const Hypergraph& h) {
    const int m = h.edge_count();
    const int total = h.n + m;
    if (total == 0) return true;
    const IncidenceIndex inc(h);
    std::vector<char> seen(total, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        if (u < h.n) {
            for (int e : inc.edges_of[u]) {
                if (!seen[h.n + e]) {
                    seen[h.n + e] = 1;
                    ++reached;
                    q.push(h.n + e);
                }
            }
        } else {
            for (int v : h.edges[u - h.n]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    ++reached;
                    q.push(v);
                }
            }
        }
    }
    return reached == total;
}

std::string to_json(const Hypergraph& h) {
    nlohmann::ordered_json j;
    j["n"] = h.n;
    j["d"] = h.d;
    j["k"] = h.k;
    j["edges"] = h.edges;
    return j.dump();
}

Hypergraph hypergraph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    return build_hypergraph(j.at("n").get<int>(),
                            j.at("edges").get<std::vector<std::vector<int>>>(),
                            j.at("d").get<int>(), j.at("k").get<int>());
}

}  // namespace hyperspec
