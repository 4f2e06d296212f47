#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperspec/hypergraph.hpp"
#include "hyperspec/spectra.hpp"

namespace hyperspec {

struct ExpansionReport {
    int n = 0;
    int d = 0;
    int k = 0;
    int trials = 0;
    int violations = 0;  // trials with slack < -1e-9
    // min over trials of bound - quantity
    double worst_slack = 0.0;
    double lambda = 0.0;
};

// e(V1,V2) = <1_{V1}, A 1_{V2}>: hyperedges between the two sets
// counted with multiplicity |e cap V1| * |e cap V2| minus diagonal pairs.
long long edge_count(const Hypergraph& h, const std::vector<int>& v1,
                     const std::vector<int>& v2);

// N(S): vertices sharing a hyperedge with some member of S (as a pair
// {i,j}, i != j; N(S) may intersect S).
std::vector<int> neighborhood(const Hypergraph& h, const std::vector<int>& s);

// |e(V1,V2) - d(k-1)|V1||V2|/n| <= lambda sqrt(|V1||V2|(1-|V1|/n)(1-|V2|/n))
// over seeded random subset pairs.
ExpansionReport verify_expander_mixing(const Hypergraph& h, const GapReport& gap, int trials,
                                       std::uint64_t seed);

// |N(S)|/|S| >= 1 / (1 - (1 - lambda^2/(d(k-1))^2)(1 - |S|/n))
// over seeded random subsets.
ExpansionReport verify_vertex_expansion(const Hypergraph& h, const GapReport& gap, int trials,
                                        std::uint64_t seed);

std::string to_json(const ExpansionReport& r);

}  // namespace hyperspec
