#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

struct SampleConfig {
    int n = 0;
    int d = 0;
    int k = 0;
    std::uint64_t seed = 0;
    int max_retries = 1000;
};

struct SampleReport {
    int attempts = 0;
    int multiedge_rejections = 0;
    int duplicate_neighborhood_rejections = 0;
    // RNG algorithm plus the matching scheme actually used, recorded so
    // experiments are reproducible across implementations.
    std::string rng = "mt19937_64";
    std::string scheme;  // "rejection" or "rejection+repair"
};

// Uniform simple bipartite biregular graph via the configuration model:
// a seeded random perfect matching of vertex stubs to edge stubs, with
// full restart on any multi-edge. For dense parameters where the simple
// probability is vanishing (expected collisions (d-1)(k-1)/2 > 8) the
// matching is repaired by stub swaps instead of restarted; see
// SampleReport::scheme.
std::pair<BipartiteGraph, SampleReport> sample_bipartite_biregular(const SampleConfig& cfg);

// Additionally rejects draws with duplicate column neighborhoods, then
// converts; the result is a simple (d,k)-regular hypergraph.
std::pair<Hypergraph, SampleReport> sample_regular_hypergraph(const SampleConfig& cfg);

}  // namespace hyperspec
