#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hyperspec/eigen.hpp"
#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

struct GapReport {
    int n = 0;
    int d = 0;
    int k = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda_min = 0.0;
    // max{lambda2, |lambda_min|}
    double lambda = 0.0;
    // 2 sqrt((d-1)(k-1)) minus the worst |lambda_i - k + 2| over
    // eigenvalues other than the Perron value; positive means the
    // Li-Sole Ramanujan condition holds.
    double ramanujan_margin = 0.0;
};

GapReport adjacency_gap(const Hypergraph& h);

// Weighted empirical distribution: equally weighted atoms plus optional
// point masses, total mass 1.
struct ESD {
    std::vector<double> atoms;  // sorted ascending
    std::vector<std::pair<double, double>> point_masses;

    double atom_weight() const;
    double cdf(double x) const;       // P(X <= x)
    double cdf_left(double x) const;  // P(X < x)
    double mass_in(double lo, double hi) const;  // closed interval
};

ESD esd_of(const RealSpectrum& spectrum, double shift, double scale);

// Mixed continuous/discrete reference distribution. Each continuous
// branch carries a sqrt-vanishing edge factor, so integration
// substitutes x = mid + half_width*cos(theta) to keep the integrand
// smooth.
struct Density {
    struct Branch {
        double lo;
        double hi;
        std::function<double(double)> pdf;
    };
    std::vector<Branch> branches;
    std::vector<std::pair<double, double>> point_masses;

    double support_lo() const;
    double support_hi() const;
    double pdf(double x) const;
    // integral of the continuous part over [a, b]
    double integral(double a, double b) const;
    double cdf(double x) const;
    double mass_in(double lo, double hi) const;  // closed interval, with point masses
    double normalization() const;
};

// Limiting bulk density of (A - (k-2))/sqrt((d-1)(k-1)) at fixed d >= k.
double feng_li_density(double x, int d, int k);
// Growing-degree limit with d/k -> alpha >= 1.
double alpha_density(double x, double alpha);
// Bipartite biregular global law on +-[a, b]; returns (density, zero point mass).
std::pair<double, double> bipartite_density(double x, double alpha);
// ESD limit of X X^T / k on [a^2, b^2].
double gram_density(double x, double alpha);

Density make_feng_li_density(int d, int k);
Density make_alpha_density(double alpha);
Density make_bipartite_density(double alpha);
Density make_gram_density(double alpha);

// Kolmogorov distance between an ESD and a reference density; the
// density must normalize to 1 within 1e-6 (verified by quadrature).
double ks_distance(const ESD& e, const Density& density);

struct LocalLawParams {
    double h = 0.0;
    double r = 0.0;
    double eta = 0.0;
};

LocalLawParams local_law_params(long long n, int k);

struct LocalLawCheck {
    double lhs = 0.0;            // |mu_n(I) - mu(I)|
    double allowed_width = 0.0;  // minimum admissible interval length
    bool ok = false;             // width precondition satisfied
    // lhs / (delta |I|): the constant C_eps is existential in the bound,
    // so the ratio is reported for inspection rather than thresholded.
    double ratio = 0.0;
};

LocalLawCheck local_law_check(const ESD& e, const Density& density, double lo, double hi,
                              const LocalLawParams& params, double alpha, double delta);

std::string to_json(const GapReport& r);
std::string to_json(const ESD& e);
// rows of (bin_left, bin_right, mass)
std::string histogram_csv(const ESD& e, double lo, double hi, int bins);

}  // namespace hyperspec
