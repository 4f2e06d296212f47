#include "hyperspec/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperspec/errors.hpp"

namespace hyperspec {

namespace {

constexpr double kOffdiagShrink = 1e-12;
constexpr int kMaxSweeps = 64;

double offdiag_norm(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

// c,s of the Jacobi rotation zeroing a_pq.
void rotation_for(const DenseMatrix& a, std::size_t p, std::size_t q, double& c, double& s) {
    const double apq = a(p, q);
    if (apq == 0.0) {
        c = 1.0;
        s = 0.0;
        return;
    }
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    double t;
    if (std::fabs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
    }
    c = 1.0 / std::sqrt(t * t + 1.0);
    s = t * c;
}

void check_symmetric_input(const DenseMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("symmetric_eigenvalues: matrix is not square");
    if (m.asymmetry() > kSymmetryTol)
        throw NotSymmetric("symmetric_eigenvalues: asymmetry above tolerance");
}

void sort_descending(std::vector<double>& ev, DenseMatrix* vectors) {
    const std::size_t n = ev.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return ev[i] > ev[j]; });
    std::vector<double> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = ev[order[i]];
    ev = std::move(sorted);
    if (vectors) {
        DenseMatrix v(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) v(i, j) = (*vectors)(i, order[j]);
        *vectors = std::move(v);
    }
}

// Round-robin ordered Jacobi. Each round rotates a set of disjoint
// index pairs; the row and column updates are applied as two bulk
// phases so pairs within a round can run in parallel.
void jacobi_parallel(DenseMatrix& a, DenseMatrix* vectors) {
    const std::size_t n = a.rows();
    if (n < 2) return;
    const double off0 = offdiag_norm(a);
    if (off0 == 0.0) return;
    const double target = kOffdiagShrink * off0;

    // Circle-method tournament schedule over n (+1 dummy when odd) slots.
    const std::size_t slots = (n % 2 == 0) ? n : n + 1;
    std::vector<std::size_t> arr(slots);
    for (std::size_t i = 0; i < slots; ++i) arr[i] = i;

    std::vector<double> cs(slots / 2), sn(slots / 2);
    std::vector<std::size_t> ps(slots / 2), qs(slots / 2);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        for (std::size_t round = 0; round + 1 < slots; ++round) {
            std::size_t npairs = 0;
            for (std::size_t i = 0; i < slots / 2; ++i) {
                std::size_t p = arr[i], q = arr[slots - 1 - i];
                if (p >= n || q >= n) continue;  // dummy slot
                if (p > q) std::swap(p, q);
                if (a(p, q) == 0.0) continue;
                ps[npairs] = p;
                qs[npairs] = q;
                rotation_for(a, p, q, cs[npairs], sn[npairs]);
                ++npairs;
            }
#pragma omp parallel for schedule(static)
            for (long long t = 0; t < static_cast<long long>(npairs); ++t) {
                const std::size_t p = ps[t], q = qs[t];
                const double c = cs[t], s = sn[t];
                double* rp = a.row(p);
                double* rq = a.row(q);
                for (std::size_t j = 0; j < n; ++j) {
                    const double x = rp[j], y = rq[j];
                    rp[j] = c * x - s * y;
                    rq[j] = s * x + c * y;
                }
            }
#pragma omp parallel for schedule(static)
            for (long long t = 0; t < static_cast<long long>(npairs); ++t) {
                const std::size_t p = ps[t], q = qs[t];
                const double c = cs[t], s = sn[t];
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = a(i, p), y = a(i, q);
                    a(i, p) = c * x - s * y;
                    a(i, q) = s * x + c * y;
                }
                if (vectors) {
                    for (std::size_t i = 0; i < n; ++i) {
                        const double x = (*vectors)(i, p), y = (*vectors)(i, q);
                        (*vectors)(i, p) = c * x - s * y;
                        (*vectors)(i, q) = s * x + c * y;
                    }
                }
            }
            // advance schedule: fix slot 0, rotate the rest
            std::size_t last = arr[slots - 1];
            for (std::size_t i = slots - 1; i > 1; --i) arr[i] = arr[i - 1];
            arr[1] = last;
        }
        if (offdiag_norm(a) < target) return;
    }
    throw ConvergenceFailure("jacobi: no convergence in " + std::to_string(kMaxSweeps) +
                             " sweeps");
}

void jacobi_serial(DenseMatrix& a) {
    const std::size_t n = a.rows();
    if (n < 2) return;
    const double off0 = offdiag_norm(a);
    if (off0 == 0.0) return;
    const double target = kOffdiagShrink * off0;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                double c, s;
                rotation_for(a, p, q, c, s);
                for (std::size_t j = 0; j < n; ++j) {
                    const double x = a(p, j), y = a(q, j);
                    a(p, j) = c * x - s * y;
                    a(q, j) = s * x + c * y;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = a(i, p), y = a(i, q);
                    a(i, p) = c * x - s * y;
                    a(i, q) = s * x + c * y;
                }
            }
        }
        if (offdiag_norm(a) < target) return;
    }
    throw ConvergenceFailure("jacobi (serial): no convergence");
}

std::vector<double> diagonal(const DenseMatrix& a) {
    std::vector<double> d(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) d[i] = a(i, i);
    return d;
}

double sign_like(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

// Reduction to upper Hessenberg form by stabilized elementary
// transformations; entries below the subdiagonal are zeroed afterwards.
void hessenberg(DenseMatrix& a) {
    const long long n = static_cast<long long>(a.rows());
    for (long long m = 1; m < n - 1; ++m) {
        double x = 0.0;
        long long i = m;
        for (long long j = m; j < n; ++j) {
            if (std::fabs(a(j, m - 1)) > std::fabs(x)) {
                x = a(j, m - 1);
                i = j;
            }
        }
        if (i != m) {
            for (long long j = m - 1; j < n; ++j) std::swap(a(i, j), a(m, j));
            for (long long j = 0; j < n; ++j) std::swap(a(j, i), a(j, m));
        }
        if (x != 0.0) {
            for (i = m + 1; i < n; ++i) {
                double y = a(i, m - 1);
                if (y != 0.0) {
                    y /= x;
                    a(i, m - 1) = y;
                    for (long long j = m; j < n; ++j) a(i, j) -= y * a(m, j);
                    for (long long j = 0; j < n; ++j) a(j, m) += y * a(j, i);
                }
            }
        }
    }
    for (long long i = 2; i < n; ++i)
        for (long long j = 0; j < i - 1; ++j) a(i, j) = 0.0;
}

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues
// only. Deflates 1x1 and 2x2 trailing blocks.
void hqr(DenseMatrix& a, std::vector<double>& wr, std::vector<double>& wi) {
    const long long n = static_cast<long long>(a.rows());
    wr.assign(n, 0.0);
    wi.assign(n, 0.0);
    double anorm = 0.0;
    for (long long i = 0; i < n; ++i)
        for (long long j = std::max<long long>(i - 1, 0); j < n; ++j)
            anorm += std::fabs(a(i, j));
    long long nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        long long l;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::fabs(a(l, l - 1)) + s == s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 0) l = 0;
            double x = a(nn, nn);
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                --nn;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_like(z, p);
                        wr[nn - 1] = wr[nn] = x + z;
                        if (z != 0.0) wr[nn] = x - w / z;
                        wi[nn - 1] = wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = wr[nn] = x + p;
                        wi[nn] = z;
                        wi[nn - 1] = -z;
                    }
                    nn -= 2;
                } else {
                    if (its == 60)
                        throw ConvergenceFailure("hqr: too many QR iterations");
                    if (its == 10 || its == 20 || its == 30 || its == 40 || its == 50) {
                        t += x;
                        for (long long i = 0; i <= nn; ++i) a(i, i) -= x;
                        double s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    long long m;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (m = nn - 2; m >= l; --m) {
                        z = a(m, m);
                        double rr = x - z;
                        double ss = y - z;
                        p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - rr - ss;
                        r = a(m + 2, m + 1);
                        double sc = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= sc;
                        q /= sc;
                        r /= sc;
                        if (m == l) break;
                        double u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                        double v = std::fabs(p) * (std::fabs(a(m - 1, m - 1)) + std::fabs(z) +
                                                   std::fabs(a(m + 1, m + 1)));
                        if (u + v == v) break;
                    }
                    for (long long i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (long long k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k != nn - 1) r = a(k + 2, k - 1);
                            x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        double s = sign_like(std::sqrt(p * p + q * q + r * r), p);
                        if (s != 0.0) {
                            if (k == m) {
                                if (l != m) a(k, k - 1) = -a(k, k - 1);
                            } else {
                                a(k, k - 1) = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (long long j = k; j <= nn; ++j) {
                                double pp = a(k, j) + q * a(k + 1, j);
                                if (k != nn - 1) {
                                    pp += r * a(k + 2, j);
                                    a(k + 2, j) -= pp * z;
                                }
                                a(k + 1, j) -= pp * y;
                                a(k, j) -= pp * x;
                            }
                            const long long mmin = std::min(nn, k + 3);
                            for (long long i = l; i <= mmin; ++i) {
                                double pp = x * a(i, k) + y * a(i, k + 1);
                                if (k != nn - 1) {
                                    pp += z * a(i, k + 2);
                                    a(i, k + 2) -= pp * r;
                                }
                                a(i, k + 1) -= pp * q;
                                a(i, k) -= pp;
                            }
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
}

}  // namespace

RealSpectrum symmetric_eigenvalues(const DenseMatrix& m) {
    check_symmetric_input(m);
    DenseMatrix a = m;
    jacobi_parallel(a, nullptr);
    RealSpectrum sp{diagonal(a)};
    sort_descending(sp.values, nullptr);
    return sp;
}

RealSpectrum symmetric_eigenvalues_serial(const DenseMatrix& m) {
    check_symmetric_input(m);
    DenseMatrix a = m;
    jacobi_serial(a);
    RealSpectrum sp{diagonal(a)};
    sort_descending(sp.values, nullptr);
    return sp;
}

EigenDecomposition symmetric_eigendecomposition(const DenseMatrix& m) {
    check_symmetric_input(m);
    DenseMatrix a = m;
    DenseMatrix v = DenseMatrix::identity(m.rows());
    jacobi_parallel(a, &v);
    EigenDecomposition d{RealSpectrum{diagonal(a)}, std::move(v)};
    sort_descending(d.spectrum.values, &d.vectors);
    return d;
}

ComplexSpectrum nonsymmetric_eigenvalues_small(const DenseMatrix& m) {
    if (m.rows() != m.cols())
        throw NotSquare("nonsymmetric_eigenvalues_small: matrix is not square");
    if (m.rows() > kNonsymmetricCap)
        throw DimensionTooLarge("nonsymmetric_eigenvalues_small: dimension " +
                                std::to_string(m.rows()) + " exceeds cap " +
                                std::to_string(kNonsymmetricCap));
    ComplexSpectrum sp;
    if (m.rows() == 0) return sp;
    DenseMatrix a = m;
    hessenberg(a);
    std::vector<double> wr, wi;
    hqr(a, wr, wi);
    sp.values.reserve(wr.size());
    for (std::size_t i = 0; i < wr.size(); ++i) sp.values.emplace_back(wr[i], wi[i]);
    std::stable_sort(sp.values.begin(), sp.values.end(),
                     [](const std::complex<double>& x, const std::complex<double>& y) {
                         const double mx = std::abs(x), my = std::abs(y);
                         if (mx != my) return mx > my;
                         if (x.real() != y.real()) return x.real() > y.real();
                         return x.imag() > y.imag();
                     });
    return sp;
}

std::vector<double> singular_values(const DenseMatrix& m) {
    const DenseMatrix g = (m.rows() <= m.cols()) ? gram_left(m) : gram_left(m.transpose());
    RealSpectrum ev = symmetric_eigenvalues(g);
    std::vector<double> sv(ev.values.size());
    for (std::size_t i = 0; i < sv.size(); ++i)
        sv[i] = std::sqrt(std::max(0.0, ev.values[i]));
    return sv;
}

int numeric_rank(const DenseMatrix& m, double tol) {
    if (tol <= 0.0) throw InvalidParameters("numeric_rank: tol must be positive");
    const std::vector<double> sv = singular_values(m);
    if (sv.empty() || sv.front() == 0.0) return 0;
    const double cut = tol * sv.front();
    int r = 0;
    for (double s : sv)
        if (s > cut) ++r;
    return r;
}

}  // namespace hyperspec
