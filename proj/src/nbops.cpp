#include "hyperspec/nbops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperspec/errors.hpp"
#include "json.hpp"

namespace hyperspec {

int OrientedIncidence::index_of(int vertex, int edge) const {
    const auto key = std::make_pair(edge, vertex);
    auto lo = std::lower_bound(pairs.begin(), pairs.end(), key,
                               [](const std::pair<int, int>& p, const std::pair<int, int>& k) {
                                   return std::make_pair(p.second, p.first) < k;
                               });
    return static_cast<int>(lo - pairs.begin());
}

OrientedIncidence oriented_incidence(const Hypergraph& h) {
    OrientedIncidence oi;
    oi.pairs.reserve(static_cast<std::size_t>(h.n) * h.d);
    for (int j = 0; j < h.edge_count(); ++j)
        for (int v : h.edges[j]) oi.pairs.emplace_back(v, j);
    return oi;
}

DenseMatrix nb_operator_hypergraph(const Hypergraph& h) {
    const OrientedIncidence oi = oriented_incidence(h);
    const int dim = static_cast<int>(oi.pairs.size());
    std::vector<std::vector<int>> edges_of(h.n);
    for (int j = 0; j < h.edge_count(); ++j)
        for (int v : h.edges[j]) edges_of[v].push_back(j);

    DenseMatrix b(dim, dim);
    for (int row = 0; row < dim; ++row) {
        const auto [i, e] = oi.pairs[row];
        for (int j : h.edges[e]) {
            if (j == i) continue;
            for (int f : edges_of[j]) {
                if (f == e) continue;
                b(row, oi.index_of(j, f)) = 1.0;
            }
        }
    }
    return b;
}

BipartiteNB nb_operator_bipartite(const BipartiteGraph& g) {
    // oriented edges, V1->V2 first; both halves ordered by (column, row)
    // so the forward half indexes exactly like OrientedIncidence
    std::vector<std::pair<int, int>> fw;  // (i, e): i in V1, e in V2
    for (int e = 0; e < g.n2; ++e)
        for (int i = 0; i < g.n1; ++i)
            if (g.x(i, e) != 0.0) fw.emplace_back(i, e);
    const int ne = static_cast<int>(fw.size());

    DenseMatrix m(ne, ne), n(ne, ne);
    for (int r = 0; r < ne; ++r) {
        const auto [i, e] = fw[r];
        for (int c = 0; c < ne; ++c) {
            const auto [j, f] = fw[c];
            // M: (i->e) to (e->j), head e matches, no reversal
            if (f == e && j != i) m(r, c) = 1.0;
            // N: (e->j) to (j->f), head j matches, no reversal
            if (j == i && f != e) n(r, c) = 1.0;
        }
    }
    DenseMatrix b(2 * ne, 2 * ne);
    for (int r = 0; r < ne; ++r)
        for (int c = 0; c < ne; ++c) {
            b(r, ne + c) = m(r, c);
            b(ne + r, c) = n(r, c);
        }
    return {std::move(b), std::move(m), std::move(n)};
}

bool verify_bmn(const Hypergraph& h) {
    const DenseMatrix direct = nb_operator_hypergraph(h);
    const BipartiteNB nb = nb_operator_bipartite(to_bipartite(h));
    return multiply(nb.m, nb.n) == direct;
}

namespace {

std::vector<std::complex<double>> sorted_by_modulus(std::vector<std::complex<double>> v) {
    std::stable_sort(v.begin(), v.end(),
                     [](const std::complex<double>& x, const std::complex<double>& y) {
                         const double mx = std::abs(x), my = std::abs(y);
                         if (mx != my) return mx > my;
                         if (x.real() != y.real()) return x.real() > y.real();
                         return x.imag() > y.imag();
                     });
    return v;
}

bool multiset_match(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b,
                    double tol) {
    if (a.size() != b.size()) return false;
    a = sorted_by_modulus(std::move(a));
    b = sorted_by_modulus(std::move(b));
    // greedy pairing within the modulus-sorted order; adequate at 1e-5
    std::vector<char> used(b.size(), 0);
    for (const auto& x : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && std::abs(x - b[j]) <= tol) {
                used[j] = 1;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

NBClassification classify_nb_spectrum(const Hypergraph& h) {
    const long long n = h.n, d = h.d, k = h.k, m = h.edge_count();
    NBClassification c;

    const BipartiteGraph g = to_bipartite(h);
    c.rank_x = numeric_rank(g.x);

    c.fixed_eigs.emplace_back(1.0, n * (d - 1) - m);
    c.fixed_eigs.emplace_back(-(double(d) - 1.0), m - c.rank_x);
    c.fixed_eigs.emplace_back(-(double(k) - 1.0), c.rank_x);

    // nonzero +-xi pairs of A_G from the singular values of X
    const std::vector<double> sv = singular_values(g.x);
    const double cut = sv.empty() ? 0.0 : 1e-8 * sv.front();
    const double q = double(k - 1) * (d - 1);
    for (double xi : sv) {
        if (xi <= cut) break;
        const double tr = xi * xi - d - k + 2;
        const double disc = tr * tr - 4.0 * q;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            c.quadratic_eigs.emplace_back(0.5 * (tr + s), 0.0);
            c.quadratic_eigs.emplace_back(0.5 * (tr - s), 0.0);
        } else {
            const double s = std::sqrt(-disc);
            c.quadratic_eigs.emplace_back(0.5 * tr, 0.5 * s);
            c.quadratic_eigs.emplace_back(0.5 * tr, -0.5 * s);
        }
    }

    // oracle: direct eigenvalues of B_H (throws DimensionTooLarge past the cap)
    const ComplexSpectrum oracle = nonsymmetric_eigenvalues_small(nb_operator_hypergraph(h));

    std::vector<std::complex<double>> candidate = c.quadratic_eigs;
    for (auto& [value, mult] : c.fixed_eigs)
        for (long long i = 0; i < mult; ++i) candidate.emplace_back(value, 0.0);

    c.reconciled = multiset_match(candidate, oracle.values, 1e-5);
    if (!c.reconciled) {
        std::ostringstream log;
        log << "classification multiset (" << candidate.size()
            << " values: categories 1-3 contribute " << candidate.size() - c.quadratic_eigs.size()
            << ", category 4 contributes " << c.quadratic_eigs.size()
            << ") differs from dim(B_H) = " << oracle.values.size() << " oracle eigenvalues";
        if (multiset_match(c.quadratic_eigs, oracle.values, 1e-5))
            log << "; category-4 roots alone reproduce the oracle spectrum exactly, the "
                   "category 1-3 multiplicities over-count";
        c.discrepancy_log = log.str();
    }
    return c;
}

NBGapResult nb_gap_check(const Hypergraph& h, double slack) {
    const ComplexSpectrum sp = nonsymmetric_eigenvalues_small(nb_operator_hypergraph(h));
    NBGapResult r;
    r.bound = std::sqrt(double(h.k - 1) * (h.d - 1)) + slack;
    // values are modulus-sorted; drop the single Perron eigenvalue
    r.lambda2_modulus = sp.values.size() > 1 ? std::abs(sp.values[1]) : 0.0;
    r.ok = r.lambda2_modulus <= r.bound;
    return r;
}

std::string to_json(const NBClassification& c) {
    nlohmann::ordered_json j;
    j["fixed_eigs"] = nlohmann::ordered_json::array();
    for (auto& [value, mult] : c.fixed_eigs) j["fixed_eigs"].push_back({value, mult});
    j["quadratic_eigs"] = nlohmann::ordered_json::array();
    for (auto& z : c.quadratic_eigs) j["quadratic_eigs"].push_back({z.real(), z.imag()});
    j["rank_x"] = c.rank_x;
    j["reconciled"] = c.reconciled;
    j["discrepancy_log"] = c.discrepancy_log;
    return j.dump();
}

}  // namespace hyperspec
