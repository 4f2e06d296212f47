#include "hyperspec/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

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

double stochastic_sup(const DenseMatrix& p) {
    const double target = 1.0 / static_cast<double>(p.rows());
    double sup = 0.0;
    for (double v : p.data()) sup = std::max(sup, std::fabs(v - target));
    return sup;
}

}  // namespace

DenseMatrix srw_transition(const Hypergraph& h) {
    return scale(adjacency_matrix(h), 1.0 / (static_cast<double>(h.d) * (h.k - 1)));
}

double srw_mixing_exact(const GapReport& gap, int d, int k) {
    const double top = static_cast<double>(d) * (k - 1);
    if (gap.lambda >= top - 1e-8)
        throw NoSpectralGap("srw_mixing_exact: lambda reaches d(k-1)");
    return gap.lambda / top;
}

MixingReport srw_mixing_empirical(const Hypergraph& h, int l_max) {
    if (l_max < 10) throw InvalidParameters("srw_mixing_empirical: l_max must be >= 10");
    MixingReport r;
    r.exact_rate = srw_mixing_exact(adjacency_gap(h), h.d, h.k);
    r.l_max = l_max;

    const DenseMatrix p = srw_transition(h);
    DenseMatrix pl = p;
    for (int l = 1; l <= l_max; ++l) {
        r.per_length_sup.emplace_back(l, stochastic_sup(pl));
        if (l < l_max) pl = multiply(pl, p);
    }
    // on small instances the deviation reaches the rounding-noise floor
    // of the matrix powers (~1e-16) well before l_max; lengths past that
    // floor carry no rate information, so estimate at the last length
    // still clearly above it
    constexpr double kResolutionFloor = 1e-13;
    std::size_t last = r.per_length_sup.size();
    while (last > 1 && r.per_length_sup[last - 1].second <= kResolutionFloor) --last;
    const auto& [lstar, sup_star] = r.per_length_sup[last - 1];
    r.empirical_rate = std::pow(sup_star, 1.0 / lstar);

    // log-linear fit of sup(l) over the last half of the informative range
    const std::size_t start = last / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    std::size_t cnt = 0;
    for (std::size_t i = start; i < last; ++i) {
        const auto& [l, sup] = r.per_length_sup[i];
        if (sup <= 0.0) continue;
        const double x = l, y = std::log(sup);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++cnt;
    }
    if (cnt >= 2) {
        const double n = static_cast<double>(cnt);
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        r.fitted_rate = std::exp(slope);
        const double denom = (n * sxx - sx * sx) * (n * syy - sy * sy);
        r.fit_r2 = denom > 0.0 ? (n * sxy - sx * sy) * (n * sxy - sx * sy) / denom : 1.0;
    }
    return r;
}

WalkCounts nb_walk_counts(const Hypergraph& h, int l) {
    if (l < 1) throw InvalidParameters("nb_walk_counts: l must be >= 1");
    const DenseMatrix a = adjacency_matrix(h);
    const double kd = static_cast<double>(h.k - 1) * h.d;
    const double kq = static_cast<double>(h.k - 1) * (h.d - 1);

    DenseMatrix prev = a;  // A^(1)
    if (l == 1) return {1, std::move(prev)};
    // extending a walk by one step over-counts in two ways: staying on
    // the final edge ((k-2) ways to re-end an existing walk) and a true
    // backtrack ((k-1)(d-1) per walk one step shorter); both terms are
    // verified entrywise against exhaustive enumeration
    const double ks = static_cast<double>(h.k - 2);
    DenseMatrix cur = subtract(subtract(multiply(a, a), scale(a, ks)),
                               scale(DenseMatrix::identity(h.n), kd));  // A^(2)
    for (int step = 2; step < l; ++step) {
        DenseMatrix next =
            subtract(subtract(multiply(a, cur), scale(cur, ks)), scale(prev, kq));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {l, std::move(cur)};
}

double chebyshev_Q(int l, double x, int d) {
    if (l < 1) throw InvalidParameters("chebyshev_Q: l must be >= 1");
    // U_{-1} = 0, U_0 = 1
    double um1 = 0.0, u = 1.0;
    double ul = 0.0, ulm2 = 0.0;
    for (int i = 1; i <= l; ++i) {
        const double next = 2.0 * x * u - um1;
        um1 = u;
        u = next;
        if (i == l - 2) ulm2 = u;
        if (i == l) ul = u;
    }
    if (l == 1) ulm2 = 0.0;       // U_{-1}
    else if (l == 2) ulm2 = 1.0;  // U_0
    const double dd = d;
    return std::sqrt((dd - 1.0) / dd) * ul - ulm2 / std::sqrt(dd * (dd - 1.0));
}

DenseMatrix nbrw_transition(const Hypergraph& h, int l) {
    if (h.d == 2 && h.k == 2)
        throw DegenerateParameters("nbrw_transition: (2,2) walks do not mix");
    if (h.d < 2) throw DegenerateParameters("nbrw_transition: need d >= 2");
    WalkCounts wc = nb_walk_counts(h, l);
    const double total =
        h.d * std::pow(static_cast<double>(h.d - 1), l - 1) * std::pow(static_cast<double>(h.k - 1), l);
    return scale(wc.matrix, 1.0 / total);
}

double psi(double x) {
    if (x < 0.0) throw NegativeInput("psi: negative input");
    return x <= 1.0 ? 1.0 : x + std::sqrt(x * x - 1.0);
}

double nbrw_mixing_exact(const GapReport& gap, int d, int k) {
    if (d == 2 && k == 2) throw DegenerateParameters("nbrw_mixing_exact: (2,2) walks do not mix");
    const double top = static_cast<double>(d) * (k - 1);
    if (gap.lambda >= top - 1e-8)
        throw NoSpectralGap("nbrw_mixing_exact: lambda reaches d(k-1)");
    const double sq = std::sqrt(static_cast<double>(d - 1) * (k - 1));
    return psi(gap.lambda / (2.0 * sq)) / sq;
}

std::vector<int> nbrw_simulate(const Hypergraph& h, int v0, int l, std::uint64_t seed) {
    if (h.d == 2 && h.k == 2)
        throw DegenerateParameters("nbrw_simulate: (2,2) walks do not mix");
    if (h.d < 2) throw DegenerateParameters("nbrw_simulate: need d >= 2");
    if (v0 < 0 || v0 >= h.n) throw VertexOutOfRange("nbrw_simulate: bad start vertex");

    std::vector<std::vector<int>> edges_of(h.n);
    for (int j = 0; j < h.edge_count(); ++j)
        for (int v : h.edges[j]) edges_of[v].push_back(j);

    std::mt19937_64 rng(seed);
    std::vector<int> path{v0};
    int v = v0;
    int e = edges_of[v0][bounded(rng, edges_of[v0].size())];
    for (int step = 0; step < l; ++step) {
        // next vertex: uniform over e \ {v}
        const auto& members = h.edges[e];
        int u;
        do {
            u = members[bounded(rng, members.size())];
        } while (u == v);
        // next hyperedge: uniform over edges of u minus e
        const auto& cand = edges_of[u];
        int f;
        do {
            f = cand[bounded(rng, cand.size())];
        } while (f == e);
        path.push_back(u);
        v = u;
        e = f;
    }
    return path;
}

std::string to_json(const MixingReport& r) {
    nlohmann::ordered_json j;
    j["exact_rate"] = r.exact_rate;
    j["empirical_rate"] = r.empirical_rate;
    j["fitted_rate"] = r.fitted_rate;
    j["fit_r2"] = r.fit_r2;
    j["l_min"] = r.l_min;
    j["l_max"] = r.l_max;
    j["per_length_sup"] = nlohmann::ordered_json::array();
    for (auto& [l, sup] : r.per_length_sup) j["per_length_sup"].push_back({l, sup});
    return j.dump();
}

std::string mixing_csv(const MixingReport& r) {
    std::ostringstream out;
    out << "l,sup,exact_rate_pow_l\n";
    for (auto& [l, sup] : r.per_length_sup)
        out << l << "," << sup << "," << std::pow(r.exact_rate, l) << "\n";
    return out.str();
}

}  // namespace hyperspec
