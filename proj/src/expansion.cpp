#include "hyperspec/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hyperspec/errors.hpp"
#include "json.hpp"

namespace hyperspec {

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

// size uniform in [1, n], then a uniform subset of that size
std::vector<int> random_subset(std::mt19937_64& rng, int n) {
    const int size = 1 + static_cast<int>(bounded(rng, n));
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (int i = 0; i < size; ++i) {
        const int j = i + static_cast<int>(bounded(rng, n - i));
        std::swap(all[i], all[j]);
    }
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
}

void check_sets(const Hypergraph& h, const std::vector<int>& s) {
    for (int v : s)
        if (v < 0 || v >= h.n) throw VertexOutOfRange("expansion: vertex out of range");
}

}  // namespace

long long edge_count(const Hypergraph& h, const std::vector<int>& v1,
                     const std::vector<int>& v2) {
    check_sets(h, v1);
    check_sets(h, v2);
    std::vector<char> in2(h.n, 0);
    for (int v : v2) in2[v] = 1;
    const DenseMatrix a = adjacency_matrix(h);
    long long total = 0;
    for (int i : v1)
        for (int j = 0; j < h.n; ++j)
            if (in2[j]) total += static_cast<long long>(a(i, j));
    return total;
}

std::vector<int> neighborhood(const Hypergraph& h, const std::vector<int>& s) {
    if (s.empty()) throw EmptySet("neighborhood: S must be nonempty");
    check_sets(h, s);
    std::vector<char> in_s(h.n, 0), in_n(h.n, 0);
    for (int v : s) in_s[v] = 1;
    for (const auto& e : h.edges) {
        const bool touches = std::any_of(e.begin(), e.end(), [&](int v) { return in_s[v]; });
        if (!touches) continue;
        for (int i : e)
            for (int j : e)
                if (i != j && in_s[j]) in_n[i] = 1;
    }
    std::vector<int> out;
    for (int v = 0; v < h.n; ++v)
        if (in_n[v]) out.push_back(v);
    return out;
}

ExpansionReport verify_expander_mixing(const Hypergraph& h, const GapReport& gap, int trials,
                                       std::uint64_t seed) {
    if (trials < 1) throw InvalidParameters("verify_expander_mixing: trials must be >= 1");
    std::mt19937_64 rng(seed);
    const DenseMatrix a = adjacency_matrix(h);
    const double n = h.n;
    const double deg = static_cast<double>(h.d) * (h.k - 1);

    ExpansionReport r{h.n, h.d, h.k, trials, 0, std::numeric_limits<double>::infinity(),
                      gap.lambda};
    std::vector<char> in2(h.n);
    for (int t = 0; t < trials; ++t) {
        const std::vector<int> v1 = random_subset(rng, h.n);
        const std::vector<int> v2 = random_subset(rng, h.n);
        std::fill(in2.begin(), in2.end(), 0);
        for (int v : v2) in2[v] = 1;
        long long e12 = 0;
        for (int i : v1)
            for (int j = 0; j < h.n; ++j)
                if (in2[j]) e12 += static_cast<long long>(a(i, j));
        const double s1 = static_cast<double>(v1.size()), s2 = static_cast<double>(v2.size());
        const double lhs = std::fabs(e12 - deg * s1 * s2 / n);
        const double rhs =
            gap.lambda * std::sqrt(s1 * s2 * (1.0 - s1 / n) * (1.0 - s2 / n));
        const double slack = rhs - lhs;
        r.worst_slack = std::min(r.worst_slack, slack);
        if (slack < -1e-9) ++r.violations;
    }
    return r;
}

ExpansionReport verify_vertex_expansion(const Hypergraph& h, const GapReport& gap, int trials,
                                        std::uint64_t seed) {
    if (trials < 1) throw InvalidParameters("verify_vertex_expansion: trials must be >= 1");
    std::mt19937_64 rng(seed);
    const double n = h.n;
    const double deg = static_cast<double>(h.d) * (h.k - 1);
    const double shrink = 1.0 - gap.lambda * gap.lambda / (deg * deg);

    ExpansionReport r{h.n, h.d, h.k, trials, 0, std::numeric_limits<double>::infinity(),
                      gap.lambda};
    for (int t = 0; t < trials; ++t) {
        const std::vector<int> s = random_subset(rng, h.n);
        const double ratio =
            static_cast<double>(neighborhood(h, s).size()) / static_cast<double>(s.size());
        const double bound = 1.0 / (1.0 - shrink * (1.0 - s.size() / n));
        const double slack = ratio - bound;
        r.worst_slack = std::min(r.worst_slack, slack);
        if (slack < -1e-9) ++r.violations;
    }
    return r;
}

std::string to_json(const ExpansionReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["d"] = r.d;
    j["k"] = r.k;
    j["trials"] = r.trials;
    j["violations"] = r.violations;
    j["worst_slack"] = r.worst_slack;
    j["lambda"] = r.lambda;
    return j.dump();
}

}  // namespace hyperspec
