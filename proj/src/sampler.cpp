#include "hyperspec/sampler.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "hyperspec/errors.hpp"

namespace hyperspec {

namespace {

// Unbiased bounded draw by rejection, to keep samples byte-identical
// across standard library implementations.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

void fisher_yates(std::mt19937_64& rng, std::vector<int>& a) {
    for (std::size_t i = a.size() - 1; i > 0; --i) {
        const std::size_t j = bounded(rng, i + 1);
        std::swap(a[i], a[j]);
    }
}

// d >= k only matters on the hypergraph side (callers wanting k > d
// sample the dual); plain bipartite graphs allow either orientation.
void validate(const SampleConfig& cfg, bool hypergraph) {
    if (cfg.k < 2 || cfg.d < 1 || cfg.n < 1 ||
        (static_cast<long long>(cfg.n) * cfg.d) % cfg.k != 0)
        throw InvalidParameters("sampler: need k >= 2, d >= 1, and k dividing n*d");
    if (hypergraph && cfg.d < cfg.k)
        throw InvalidParameters("sampler: need d >= k (sample the dual for k > d)");
    if (cfg.max_retries < 1) throw InvalidParameters("sampler: max_retries must be >= 1");
}

// Expected multi-edge collision count (d-1)(k-1)/2 above this makes the
// full-rejection success probability vanishing; switch to repair.
bool use_repair(int d, int k) { return (d - 1) * (k - 1) > 16; }

struct Pairing {
    // assignment[s] = edge id matched to vertex stub s; vertex of stub s is s / d.
    std::vector<int> assignment;
};

// counts(v, e) over incidences; multi-edge means some count >= 2.
std::vector<int> incidence_counts(const Pairing& p, int n, int m, int d) {
    std::vector<int> c(static_cast<std::size_t>(n) * m, 0);
    for (std::size_t s = 0; s < p.assignment.size(); ++s)
        ++c[static_cast<std::size_t>(s / d) * m + p.assignment[s]];
    return c;
}

bool has_collision(const std::vector<int>& counts) {
    return std::any_of(counts.begin(), counts.end(), [](int c) { return c > 1; });
}

// Resolve multi-edges by swapping stub assignments; a swap is accepted
// only when both target cells are free, so violations never increase.
bool repair(std::mt19937_64& rng, Pairing& p, std::vector<int>& counts, int n, int m, int d) {
    const std::size_t stubs = p.assignment.size();
    const long long cap = 200LL * static_cast<long long>(stubs);
    for (long long iter = 0; iter < cap; ++iter) {
        // find a stub sitting in an overfull cell
        std::size_t bad = stubs;
        for (std::size_t s = 0; s < stubs; ++s) {
            if (counts[static_cast<std::size_t>(s / d) * m + p.assignment[s]] > 1) {
                bad = s;
                break;
            }
        }
        if (bad == stubs) return true;
        for (int tries = 0; tries < 200; ++tries) {
            const std::size_t other = bounded(rng, stubs);
            const int v1 = static_cast<int>(bad / d), v2 = static_cast<int>(other / d);
            const int e1 = p.assignment[bad], e2 = p.assignment[other];
            if (v1 == v2 || e1 == e2) continue;
            if (counts[static_cast<std::size_t>(v1) * m + e2] > 0 ||
                counts[static_cast<std::size_t>(v2) * m + e1] > 0)
                continue;
            --counts[static_cast<std::size_t>(v1) * m + e1];
            --counts[static_cast<std::size_t>(v2) * m + e2];
            ++counts[static_cast<std::size_t>(v1) * m + e2];
            ++counts[static_cast<std::size_t>(v2) * m + e1];
            p.assignment[bad] = e2;
            p.assignment[other] = e1;
            break;
        }
    }
    return !has_collision(counts);
}

enum class Mode { bipartite_only, simple_hypergraph };

std::pair<BipartiteGraph, SampleReport> draw(const SampleConfig& cfg, Mode mode) {
    validate(cfg, mode == Mode::simple_hypergraph);
    const int n = cfg.n, d = cfg.d, k = cfg.k;
    const int m = static_cast<int>(static_cast<long long>(n) * d / k);
    std::mt19937_64 rng(cfg.seed);

    SampleReport report;
    report.scheme = use_repair(d, k) ? "rejection+repair" : "rejection";

    std::vector<int> edge_stubs(static_cast<std::size_t>(n) * d);
    for (std::size_t s = 0; s < edge_stubs.size(); ++s)
        edge_stubs[s] = static_cast<int>(s / k);

    while (report.attempts < cfg.max_retries) {
        ++report.attempts;
        Pairing p;
        p.assignment = edge_stubs;
        fisher_yates(rng, p.assignment);

        std::vector<int> counts = incidence_counts(p, n, m, d);
        if (has_collision(counts)) {
            if (!use_repair(d, k) || !repair(rng, p, counts, n, m, d)) {
                ++report.multiedge_rejections;
                continue;
            }
        }
        if (mode == Mode::simple_hypergraph) {
            // duplicate column neighborhoods put the draw outside the
            // simple-hypergraph class; restart
            std::vector<std::vector<int>> cols(m);
            for (int j = 0; j < m; ++j)
                for (int i = 0; i < n; ++i)
                    if (counts[static_cast<std::size_t>(i) * m + j]) cols[j].push_back(i);
            std::sort(cols.begin(), cols.end());
            if (std::adjacent_find(cols.begin(), cols.end()) != cols.end()) {
                ++report.duplicate_neighborhood_rejections;
                continue;
            }
        }
        DenseMatrix x(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                x(i, j) = counts[static_cast<std::size_t>(i) * m + j];
        return {BipartiteGraph{n, m, d, k, std::move(x)}, report};
    }
    throw RetryLimitExceeded("sampler: no simple draw within max_retries (parameters too dense?)");
}

}  // namespace

std::pair<BipartiteGraph, SampleReport> sample_bipartite_biregular(const SampleConfig& cfg) {
    return draw(cfg, Mode::bipartite_only);
}

std::pair<Hypergraph, SampleReport> sample_regular_hypergraph(const SampleConfig& cfg) {
    auto [g, report] = draw(cfg, Mode::simple_hypergraph);
    return {from_bipartite(g), report};
}

}  // namespace hyperspec
