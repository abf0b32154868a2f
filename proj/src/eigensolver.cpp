#include "fchain/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fchain {

namespace {

// Implicit-shift QL iteration for a symmetric tridiagonal matrix.
// d: diagonal (overwritten with eigenvalues), e: subdiagonal, e[n-1] scratch.
// If z is non-null it must hold an n x n matrix (column j = vector j) that the
// plane rotations are accumulated into.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z) {
    const int n = int(d.size());
    if (n == 0) return;
    e.resize(n);
    e[n - 1] = 0.0;
    constexpr int kMaxIter = 50;
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    // Absolute deflation floor: off-diagonals below eps * ||T|| are numerical
    // noise (e.g. the near-zero cluster of a correlation-matrix spectrum) and
    // would otherwise never pass the purely local test below.
    double anorm = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = std::abs(d[i]) + std::abs(e[i]);
        if (i > 0) r += std::abs(e[i - 1]);
        anorm = std::max(anorm, r);
    }
    const double floor_tol = kEps * anorm;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= kEps * dd || std::abs(e[m]) <= floor_tol) break;
            }
            if (m != l) {
                if (iter++ == kMaxIter)
                    throw std::runtime_error(
                        "tridiagonal QL failed to converge at index " + std::to_string(l));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);  // Wilkinson shift
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        double* zc = z->data();
                        for (int k = 0; k < n; ++k) {
                            f = zc[std::size_t(k) * n + i + 1];
                            zc[std::size_t(k) * n + i + 1] = s * zc[std::size_t(k) * n + i] + c * f;
                            zc[std::size_t(k) * n + i] = c * zc[std::size_t(k) * n + i] - s * f;
                        }
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// Householder reduction of a dense symmetric matrix (row-major, destroyed)
// to tridiagonal form; eigenvectors are not accumulated.
void householder_tridiag(std::vector<double>& a, int n,
                         std::vector<double>& d, std::vector<double>& e) {
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    auto at = [&](int i, int j) -> double& { return a[std::size_t(i) * n + j]; };
    for (int i = n - 1; i > 0; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = at(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k)
                        at(j, k) -= f * e[k] + g * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    for (int i = 0; i < n; ++i) d[i] = at(i, i);
    // shift e down: off-diagonal between i and i+1 lives in e[i]
    for (int i = 0; i + 1 < n; ++i) e[i] = e[i + 1];
    e[n - 1] = 0.0;
}

}  // namespace

Spectrum diagonalize(const ChainSpec& chain) {
    const int n = chain.n_sites;
    std::vector<double> d = chain.potentials;
    std::vector<double> e(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) e[i] = -chain.hoppings[i];

    std::vector<double> z(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) z[std::size_t(i) * n + i] = 1.0;
    ql_implicit(d, e, &z);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

    Spectrum sp;
    sp.energies.resize(n);
    sp.modes.resize(std::size_t(n) * n);
    for (int k = 0; k < n; ++k) {
        const int j = order[k];
        sp.energies[k] = d[j];
        double* row = &sp.modes[std::size_t(k) * n];
        for (int i = 0; i < n; ++i) row[i] = z[std::size_t(i) * n + j];
        // deterministic gauge: first nonzero component positive
        for (int i = 0; i < n; ++i) {
            if (row[i] != 0.0) {
                if (row[i] < 0.0)
                    for (int t = 0; t < n; ++t) row[t] = -row[t];
                break;
            }
        }
    }
    return sp;
}

SpectrumReport verify_spectrum(const Spectrum& spectrum, const ChainSpec& chain) {
    const int n = chain.n_sites;
    if (spectrum.size() != n || spectrum.modes.size() != std::size_t(n) * n)
        throw std::invalid_argument("verify_spectrum: shape mismatch");
    SpectrumReport rep;
    rep.ascending = std::is_sorted(spectrum.energies.begin(), spectrum.energies.end(),
                                   [](double a, double b) { return a <= b; });
    for (int k = 0; k < n; ++k) {
        const double* u = &spectrum.modes[std::size_t(k) * n];
        for (int i = 0; i < n; ++i) {
            double hu = chain.potentials[i] * u[i];
            if (i > 0) hu -= chain.hoppings[i - 1] * u[i - 1];
            if (i + 1 < n) hu -= chain.hoppings[i] * u[i + 1];
            rep.max_residual = std::max(rep.max_residual,
                                        std::abs(hu - spectrum.energies[k] * u[i]));
        }
    }
    for (int k = 0; k < n; ++k) {
        const double* uk = &spectrum.modes[std::size_t(k) * n];
        for (int l = k; l < n; ++l) {
            const double* ul = &spectrum.modes[std::size_t(l) * n];
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += uk[i] * ul[i];
            if (k == l) dot -= 1.0;
            rep.max_ortho_defect = std::max(rep.max_ortho_defect, std::abs(dot));
        }
    }
    return rep;
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
    if (e.size() + 1 != d.size())
        throw std::invalid_argument("tridiagonal_eigenvalues: |e| must be |d| - 1");
    ql_implicit(d, e, nullptr);
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> symmetric_eigenvalues(std::span<const double> a, int n) {
    if (int(a.size()) != n * n)
        throw std::invalid_argument("symmetric_eigenvalues: size mismatch");
    std::vector<double> work(a.begin(), a.end());
    std::vector<double> d, e;
    householder_tridiag(work, n, d, e);
    e.pop_back();
    return tridiagonal_eigenvalues(std::move(d), std::move(e));
}

}  // namespace fchain
