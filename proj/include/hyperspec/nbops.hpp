#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "hyperspec/eigen.hpp"
#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

// Oriented incidences (vertex, edge) with vertex in edge, ordered
// lexicographically by (edge, vertex) so the direct B_H construction
// and the bipartite M*N factorization index identically.
struct OrientedIncidence {
    std::vector<std::pair<int, int>> pairs;  // (vertex, edge)
    int index_of(int vertex, int edge) const;
};

OrientedIncidence oriented_incidence(const Hypergraph& h);

// B_{(i,e),(j,f)} = 1 iff j in e\{i} and f != e; nd x nd, row sums (k-1)(d-1).
DenseMatrix nb_operator_hypergraph(const Hypergraph& h);

struct BipartiteNB {
    DenseMatrix b;  // 2|E| x 2|E|, blocks (0 M; N 0)
    DenseMatrix m;  // V1->V2 edges to V2->V1 edges
    DenseMatrix n;  // V2->V1 edges to V1->V2 edges
};

BipartiteNB nb_operator_bipartite(const BipartiteGraph& g);

// Checks the block identity B_H = M N entrywise in integers.
bool verify_bmn(const Hypergraph& h);

struct NBClassification {
    // categories 1-3 of the classification: (value, multiplicity)
    std::vector<std::pair<double, long long>> fixed_eigs;
    // category 4: two roots per nonzero +-xi pair of A_G
    std::vector<std::complex<double>> quadratic_eigs;
    int rank_x = 0;
    bool reconciled = false;
    std::string discrepancy_log;
};

// Builds the candidate spectrum from the classification theorem
// (quadratic lambda^2 - (xi^2 - d - k + 2) lambda + (k-1)(d-1) = 0; the
// +2 sign is the one under which the Perron pair xi^2 = dk reproduces
// (d-1)(k-1) exactly) and reconciles it against the direct eigenvalues
// of B_H. The oracle is authoritative; multiplicity discrepancies of
// the literal category 1-3 bookkeeping are logged, never masked.
NBClassification classify_nb_spectrum(const Hypergraph& h);

struct NBGapResult {
    double lambda2_modulus = 0.0;
    double bound = 0.0;  // sqrt((k-1)(d-1)) + slack
    bool ok = false;
};

// Second-largest modulus among B_H eigenvalues vs sqrt((k-1)(d-1)) + slack.
NBGapResult nb_gap_check(const Hypergraph& h, double slack = 0.5);

std::string to_json(const NBClassification& c);

}  // namespace hyperspec
