#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperspec/hypergraph.hpp"
#include "hyperspec/spectra.hpp"

namespace hyperspec {

// A^(l): entry (i,j) counts non-backtracking walks of length l from i
// to j. Values are exact integers held in doubles; they stay exact as
// long as every entry is below 2^53 (row sums grow like
// d(k-1)((k-1)(d-1))^{l-1}, so l ~ 8 is safe for desk parameters).
struct WalkCounts {
    int l = 0;
    DenseMatrix matrix;
};

struct MixingReport {
    double exact_rate = 0.0;
    // l-th root of the worst deviation at the last length where the
    // deviation is still resolvable in double precision (at most l_max)
    double empirical_rate = 0.0;
    // geometric-decay slope fitted on the last half of the range;
    // less transient bias than the raw root, both are reported
    double fitted_rate = 0.0;
    double fit_r2 = 0.0;
    int l_min = 1;
    int l_max = 0;
    std::vector<std::pair<int, double>> per_length_sup;  // (l, max_ij |P^l_ij - 1/n|)
};

// P = A / (d(k-1)), row stochastic.
DenseMatrix srw_transition(const Hypergraph& h);

// rho(H) = lambda / (d(k-1)); throws NoSpectralGap when lambda reaches
// d(k-1) (disconnected or bipartite-like multigraph).
double srw_mixing_exact(const GapReport& gap, int d, int k);

MixingReport srw_mixing_empirical(const Hypergraph& h, int l_max);

// Recurrence A^(1)=A, A^(2)=A^2-(k-2)A-(k-1)dI,
// A^(l+1)=A A^(l)-(k-2)A^(l)-(k-1)(d-1)A^(l-1); for k=2 the (k-2)
// terms vanish and this is the familiar graph recurrence.
WalkCounts nb_walk_counts(const Hypergraph& h, int l);

// Q_l(x) = sqrt((d-1)/d) U_l(x) - U_{l-2}(x)/sqrt(d(d-1)), evaluated
// through the Chebyshev recurrence with U_{-1}=0, U_0=1.
double chebyshev_Q(int l, double x, int d);

// Doubly stochastic l-step non-backtracking transition matrix
// A^(l) / (d(d-1)^{l-1}(k-1)^l). Undefined for (d,k)=(2,2).
DenseMatrix nbrw_transition(const Hypergraph& h, int l);

// psi(x) = x + sqrt(x^2-1) for x >= 1, 1 on [0,1].
double psi(double x);

// rho~(H) = psi(lambda / (2 sqrt(q))) / sqrt(q), q = (d-1)(k-1).
double nbrw_mixing_exact(const GapReport& gap, int d, int k);

// Simulates the non-backtracking chain on oriented incidences; returns
// the vertex sequence v_0..v_l. Deterministic given seed.
std::vector<int> nbrw_simulate(const Hypergraph& h, int v0, int l, std::uint64_t seed);

std::string to_json(const MixingReport& r);
// rows of (l, sup, exact_rate^l)
std::string mixing_csv(const MixingReport& r);

}  // namespace hyperspec
