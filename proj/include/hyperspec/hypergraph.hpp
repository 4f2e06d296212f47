#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperspec/matrix.hpp"

namespace hyperspec {

// d-regular, k-uniform hypergraph on vertices [0, n). Hyperedges are
// stored as sorted vertex lists and the edge list is kept in canonical
// (lexicographic) order; equality is multiset equality of edge sets.
struct Hypergraph {
    int n = 0;
    int d = 0;
    int k = 0;
    std::vector<std::vector<int>> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }
    bool operator==(const Hypergraph&) const = default;
};

// Bipartite biregular graph given by its 0/1 biadjacency matrix:
// n1 rows of degree d1, n2 columns of degree d2.
struct BipartiteGraph {
    int n1 = 0;
    int n2 = 0;
    int d1 = 0;
    int d2 = 0;
    DenseMatrix x;  // n1 x n2
};

// Validates all regularity invariants eagerly.
Hypergraph build_hypergraph(int n, std::vector<std::vector<int>> edges, int d, int k);

// A_ij = number of hyperedges containing both i and j, zero diagonal.
DenseMatrix adjacency_matrix(const Hypergraph& h);

// Incidence/biadjacency view: X_{i,e} = 1 iff vertex i lies in edge e.
BipartiteGraph to_bipartite(const Hypergraph& h);

// Inverse of to_bipartite; throws MultipleHyperedges when two columns
// share a support (the graph is outside the simple-hypergraph class).
Hypergraph from_bipartite(const BipartiteGraph& g);

// Number of cycles of length l: closed walks with l distinct edges and
// l distinct vertices, counted once per dihedral orbit (ordered rooted
// representations divided by 2l). Brute force, capped at l <= 8.
long long count_cycles(const Hypergraph& h, int l);

bool is_connected(const Hypergraph& h);

// Canonical JSON: {"n":..,"d":..,"k":..,"edges":[[..],..]}.
std::string to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const std::string& text);

}  // namespace hyperspec
