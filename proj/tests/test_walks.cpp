#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "hyperspec/eigen.hpp"
#include "hyperspec/errors.hpp"
#include "hyperspec/sampler.hpp"
#include "hyperspec/spectra.hpp"
#include "hyperspec/walks.hpp"

using namespace hyperspec;

namespace {

// Exhaustive count of non-backtracking walks v0,e1,v1,...,el,vl with
// v_{t-1},v_t in e_t, v_{t-1} != v_t, e_t != e_{t+1}. Independent oracle
// for the three-term recurrence.
long long brute_nb_walks(const Hypergraph& h, int from, int to, int l) {
    std::vector<std::vector<int>> edges_of(h.n);
    for (int j = 0; j < h.edge_count(); ++j)
        for (int v : h.edges[j]) edges_of[v].push_back(j);

    long long total = 0;
    auto extend = [&](auto&& self, int v, int last_edge, int steps_left) -> void {
        if (steps_left == 0) {
            if (v == to) ++total;
            return;
        }
        for (int e : edges_of[v]) {
            if (e == last_edge) continue;
            for (int u : h.edges[e])
                if (u != v) self(self, u, e, steps_left - 1);
        }
    };
    extend(extend, from, -1, l);
    return total;
}

}  // namespace

TEST_CASE("simple random walk transition matrix") {
    const DenseMatrix tri = srw_transition(triangle());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(tri(i, j) == (i == j ? 0.0 : 0.5));

    const DenseMatrix k4 = srw_transition(complete_3_uniform_4());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(k4(i, j) == doctest::Approx(i == j ? 0.0 : 1.0 / 3.0));
    for (double s : k4.row_sums()) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact mixing rates") {
    CHECK(srw_mixing_exact(adjacency_gap(complete_3_uniform_4()), 3, 3) ==
          doctest::Approx(1.0 / 3.0));
    CHECK(srw_mixing_exact(adjacency_gap(triangle()), 2, 2) == doctest::Approx(0.5));
    CHECK_THROWS_AS(srw_mixing_exact(adjacency_gap(two_triangles()), 2, 2), NoSpectralGap);
}

TEST_CASE("empirical mixing rate tracks the exact rate") {
    const MixingReport k4 = srw_mixing_empirical(complete_3_uniform_4(), 50);
    CHECK(std::fabs(k4.empirical_rate - 1.0 / 3.0) < 0.02);

    const MixingReport tri = srw_mixing_empirical(triangle(), 60);
    CHECK(std::fabs(tri.empirical_rate - 0.5) < 0.02);

    CHECK_THROWS_AS(srw_mixing_empirical(triangle(), 5), InvalidParameters);
}

TEST_CASE("geometric decay of the deviation sup") {
    auto [h, rep] = sample_regular_hypergraph({30, 5, 3, 4});
    REQUIRE(is_connected(h));
    const MixingReport r = srw_mixing_empirical(h, 40);
    CHECK(r.fit_r2 > 0.99);
    CHECK(std::fabs(r.fitted_rate - r.exact_rate) < 0.05);
}

TEST_CASE("walk counts: small closed forms") {
    const Hypergraph k4 = complete_3_uniform_4();
    CHECK(nb_walk_counts(k4, 1).matrix == adjacency_matrix(k4));

    // diagonal: 3 edges * 2 ways out and back on the same edge are
    // forbidden, leaving 6 two-step returns; off-diagonal likewise 6
    // (A^2 has 8, minus the 2 length-2 walks that stay on one edge)
    const WalkCounts w2 = nb_walk_counts(k4, 2);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(w2.matrix(i, j) == 6.0);

    CHECK_THROWS_AS(nb_walk_counts(k4, 0), InvalidParameters);
}

TEST_CASE("walk counts match exhaustive enumeration") {
    auto [h, rep] = sample_regular_hypergraph({6, 3, 3, 1});
    for (int l = 1; l <= 4; ++l) {
        const WalkCounts w = nb_walk_counts(h, l);
        for (int i = 0; i < h.n; ++i)
            for (int j = 0; j < h.n; ++j)
                CHECK(w.matrix(i, j) == static_cast<double>(brute_nb_walks(h, i, j, l)));
    }
}

TEST_CASE("walk count row sums are exact up to l = 8") {
    for (auto hg : {complete_3_uniform_4(), triangle()}) {
        for (int l = 1; l <= 8; ++l) {
            const double expected = hg.d * (hg.k - 1) *
                                    std::pow(static_cast<double>((hg.k - 1) * (hg.d - 1)), l - 1);
            for (double s : nb_walk_counts(hg, l).matrix.row_sums())
                CHECK(s == expected);  // exact integers in doubles
        }
    }
}

TEST_CASE("chebyshev closed forms for small l") {
    for (int d : {3, 5}) {
        const double c = std::sqrt((d - 1.0) / d);
        for (double x : {-0.7, 0.0, 0.4, 1.3}) {
            CHECK(chebyshev_Q(1, x, d) == doctest::Approx(2.0 * c * x).epsilon(1e-12));
            CHECK(chebyshev_Q(2, x, d) ==
                  doctest::Approx(c * (4.0 * x * x - 1.0) - 1.0 / std::sqrt(d * (d - 1.0)))
                      .epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(chebyshev_Q(0, 0.5, 3), InvalidParameters);
}

namespace {

// sqrt((k-1)^l d(d-1)^{l-1}) Q_l(A / (2 sqrt((k-1)(d-1)))) evaluated
// through the eigendecomposition of A
DenseMatrix chebyshev_transform(const Hypergraph& h, int l) {
    const int d = h.d, k = h.k;
    const double q = (d - 1.0) * (k - 1.0);
    const EigenDecomposition ed = symmetric_eigendecomposition(adjacency_matrix(h));
    const double front = std::sqrt(std::pow(k - 1.0, l) * d * std::pow(d - 1.0, l - 1));
    DenseMatrix out(h.n, h.n);
    for (int i = 0; i < h.n; ++i)
        for (int j = 0; j < h.n; ++j) {
            double sum = 0.0;
            for (int t = 0; t < h.n; ++t)
                sum += front * chebyshev_Q(l, ed.spectrum.values[t] / (2.0 * std::sqrt(q)), d) *
                       ed.vectors(i, t) * ed.vectors(j, t);
            out(i, j) = sum;
        }
    return out;
}

// companion sequence S(1)=A, S(2)=A^2-(k-1)dI,
// S(l+1)=A S(l)-(k-1)(d-1)S(l-1): the sequence the Chebyshev transform
// reproduces exactly; it coincides with the walk counts iff k=2
DenseMatrix companion_sequence(const Hypergraph& h, int l) {
    const DenseMatrix a = adjacency_matrix(h);
    if (l == 1) return a;
    DenseMatrix prev = a;
    DenseMatrix cur =
        subtract(multiply(a, a), scale(DenseMatrix::identity(h.n), h.d * (h.k - 1.0)));
    for (int step = 2; step < l; ++step) {
        DenseMatrix next =
            subtract(multiply(a, cur), scale(prev, (h.d - 1.0) * (h.k - 1.0)));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

TEST_CASE("chebyshev transform reproduces its three-term sequence") {
    std::vector<Hypergraph> instances;
    // entries grow like ((d-1)(k-1))^l, so an absolute 1e-6 tolerance at
    // l=10 needs small products; larger parameters are covered relative
    // to the entry magnitude
    instances.push_back(sample_regular_hypergraph({6, 3, 3, 2}).first);
    instances.push_back(sample_regular_hypergraph({8, 4, 2, 1}).first);
    instances.push_back(sample_regular_hypergraph({8, 3, 2, 1}).first);
    for (const auto& h : instances)
        for (int l = 1; l <= 10; ++l)
            CHECK(max_abs_diff(chebyshev_transform(h, l), companion_sequence(h, l)) < 1e-6);

    const Hypergraph big = sample_regular_hypergraph({12, 5, 3, 1}).first;
    for (int l = 1; l <= 10; ++l) {
        const DenseMatrix seq = companion_sequence(big, l);
        CHECK(max_abs_diff(chebyshev_transform(big, l), seq) < 1e-10 * (1.0 + seq.max_abs()));
    }
}

TEST_CASE("chebyshev transform equals true walk counts on graphs") {
    // at k=2 a repeated edge forces an immediate vertex return, so the
    // companion sequence and the walk counts agree
    auto [h, rep] = sample_regular_hypergraph({8, 4, 2, 1});
    for (int l = 1; l <= 8; ++l) {
        CHECK(max_abs_diff(chebyshev_transform(h, l), nb_walk_counts(h, l).matrix) < 1e-6);
        CHECK(companion_sequence(h, l) == nb_walk_counts(h, l).matrix);
    }
}

TEST_CASE("l-step non-backtracking transition matrices") {
    const DenseMatrix p1 = nbrw_transition(complete_3_uniform_4(), 1);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(p1(i, j) == doctest::Approx(i == j ? 0.0 : 1.0 / 3.0));

    auto [h, rep] = sample_regular_hypergraph({6, 3, 3, 3});
    for (int l = 1; l <= 6; ++l) {
        const DenseMatrix p = nbrw_transition(h, l);
        for (double s : p.row_sums()) CHECK(std::fabs(s - 1.0) < 1e-10);
        for (double s : p.col_sums()) CHECK(std::fabs(s - 1.0) < 1e-10);
    }

    CHECK_THROWS_AS(nbrw_transition(triangle(), 2), DegenerateParameters);
}

TEST_CASE("psi plateau function") {
    CHECK(psi(0.5) == 1.0);
    CHECK(psi(1.0) == 1.0);
    CHECK(psi(1.25) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(psi(-0.1), NegativeInput);
}

TEST_CASE("non-backtracking exact mixing rate") {
    // lambda = 2 below the plateau threshold 2 sqrt(4) = 4, so the rate
    // is 1/sqrt(q) = 1/2
    CHECK(nbrw_mixing_exact(adjacency_gap(complete_3_uniform_4()), 3, 3) ==
          doctest::Approx(0.5));

    // hyperbolic parametrization: lambda = 2 sqrt(q) cosh(t) -> e^t / sqrt(q)
    const double q = 8.0, t = 0.4;
    GapReport fake;
    fake.lambda = 2.0 * std::sqrt(q) * std::cosh(t);
    CHECK(nbrw_mixing_exact(fake, 5, 3) == doctest::Approx(std::exp(t) / std::sqrt(q)));

    CHECK_THROWS_AS(nbrw_mixing_exact(adjacency_gap(triangle()), 2, 2), DegenerateParameters);
}

TEST_CASE("simulated trajectories are valid and deterministic") {
    auto [h, rep] = sample_regular_hypergraph({6, 3, 3, 1});
    for (std::uint64_t seed = 1; seed <= 10000; ++seed) {
        const std::vector<int> path = nbrw_simulate(h, static_cast<int>(seed % 6), 5, seed);
        REQUIRE(path.size() == 6);
        for (std::size_t t = 1; t < path.size(); ++t) CHECK(path[t] != path[t - 1]);
    }
    CHECK(nbrw_simulate(h, 0, 8, 99) == nbrw_simulate(h, 0, 8, 99));
    CHECK_THROWS_AS(nbrw_simulate(h, 6, 3, 1), VertexOutOfRange);
    CHECK_THROWS_AS(nbrw_simulate(triangle(), 0, 3, 1), DegenerateParameters);
}

TEST_CASE("simulated end distribution approaches the transition row") {
    auto [h, rep] = sample_regular_hypergraph({6, 3, 3, 1});
    const int l = 6, trials = 20000, v0 = 0;
    std::vector<double> freq(h.n, 0.0);
    for (std::uint64_t seed = 1; seed <= trials; ++seed)
        freq[nbrw_simulate(h, v0, l, seed).back()] += 1.0 / trials;
    const DenseMatrix p = nbrw_transition(h, l);
    double tv = 0.0;
    for (int j = 0; j < h.n; ++j) tv += 0.5 * std::fabs(freq[j] - p(v0, j));
    CHECK(tv < 0.05);
}

TEST_CASE("mixing report serialization") {
    const MixingReport r = srw_mixing_empirical(complete_3_uniform_4(), 12);
    const std::string j = to_json(r);
    CHECK(j.find("\"exact_rate\":") != std::string::npos);
    CHECK(j.find("\"per_length_sup\":") != std::string::npos);
    const std::string csv = mixing_csv(r);
    CHECK(csv.rfind("l,sup,exact_rate_pow_l\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
}
