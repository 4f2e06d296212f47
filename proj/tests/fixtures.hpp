#pragma once

// Small hand-checkable instances shared across the test suite.

#include "hyperspec/hypergraph.hpp"

inline hyperspec::Hypergraph triangle() {
    return hyperspec::build_hypergraph(3, {{0, 1}, {1, 2}, {0, 2}}, 2, 2);
}

// all four 3-subsets of {0,1,2,3}: (3,3)-regular, adjacency 2(J - I)
inline hyperspec::Hypergraph complete_3_uniform_4() {
    return hyperspec::build_hypergraph(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, 3, 3);
}

inline hyperspec::Hypergraph four_cycle() {
    return hyperspec::build_hypergraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 2, 2);
}

inline hyperspec::Hypergraph two_triangles() {
    return hyperspec::build_hypergraph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}},
                                       2, 2);
}
