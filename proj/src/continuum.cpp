#include "fchain/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fchain {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_kfa(double kFa) {
    if (!(kFa > 0.0 && kFa < kHalfPi))
        throw std::domain_error("kFa must lie in (0, pi/2)");
    if (kHalfPi - kFa < 1e-3)
        throw std::domain_error("massless limit; Schrodinger approximation invalid");
}

double turning_threshold(double fermi_energy, double kFa) {
    const double c = std::cos(kFa);
    return std::abs(fermi_energy) * c / (1.0 + c * c);
}

}  // namespace

std::vector<double> transform_coordinate(const HoppingProfile& profile,
                                         std::span<const double> grid) {
    if (grid.empty()) return {};
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("transform_coordinate: grid must be ascending");
    if (grid.front() < 0.0 || grid.back() > 1.0)
        throw std::domain_error("transform_coordinate: grid outside [0,1]");

    // integrate in u = sqrt(s): ds J^{-1/2} = du 2u J(u^2)^{-1/2}; the
    // integrand is regular at the origin even when J(0) = 0. Midpoint rule so
    // u = 0 (where 2u / sqrt(J) is a 0/0 limit for vanishing J) is never
    // evaluated; sub-steps capped at 5e-4 in u for coarse grids.
    constexpr int kRefine = 10;
    std::vector<double> xt(grid.size());
    double acc = 0.0;
    double u_prev = 0.0;
    auto integrand = [&](double u) {
        const double j = profile(std::min(u * u, 1.0));
        if (!(j > 0.0))
            throw std::runtime_error("transform_coordinate: J <= 0 on the refinement");
        return 2.0 * u / std::sqrt(j);
    };
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double u_next = std::sqrt(grid[g]);
        if (u_next > u_prev) {
            const int steps =
                std::max(kRefine, int(std::ceil((u_next - u_prev) / 5e-4)));
            const double h = (u_next - u_prev) / steps;
            for (int k = 0; k < steps; ++k)
                acc += h * integrand(u_prev + (k + 0.5) * h);
            u_prev = u_next;
        }
        xt[g] = acc;
    }
    return xt;
}

double effective_potential(const HoppingProfile& profile, double x, double kFa,
                           int order, double lattice_spacing) {
    check_kfa(kFa);
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("effective_potential: x must lie in (0,1)");
    const double c = std::cos(kFa);
    const double s2 = 1.0 - c * c;
    const auto d = profile.derivatives(x);
    double v = -(1.0 + c * c) / c * d.j;
    if (order == 0) return v;
    if (order != 2) throw std::invalid_argument("effective_potential: order must be 0 or 2");
    const double a = lattice_spacing;
    // transformed-coordinate derivatives via the chain rule:
    //   dJ/dxt = J' sqrt(J),   (dJ/dxt / J)^2 = J'^2 / J,
    //   d2J/dxt2 / J = J'' + J'^2 / (2J)
    v += (a / c) * d.dj;
    const double jp2_over_j = d.dj * d.dj / d.j;
    v -= (a * a / 4.0) * ((s2 / c - c / 4.0) * jp2_over_j +
                          c * (d.d2j + 0.5 * jp2_over_j));
    return v;
}

std::vector<double> turning_points(const HoppingProfile& profile, double fermi_energy,
                                   double kFa) {
    check_kfa(kFa);
    const double thr = turning_threshold(fermi_energy, kFa);
    constexpr int kScan = 10000;
    std::vector<double> roots;
    double x0 = 1.0 / kScan;
    double f0 = profile(x0) - thr;
    for (int i = 2; i < kScan; ++i) {
        const double x1 = double(i) / kScan;
        const double f1 = profile(x1) - thr;
        if ((f0 < 0.0) != (f1 < 0.0)) {
            double lo = x0, hi = x1, flo = f0;
            while (hi - lo > 1e-8) {
                const double mid = 0.5 * (lo + hi);
                const double fm = profile(mid) - thr;
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

WkbEnvelope wkb_envelope(const HoppingProfile& profile, double mode_energy, double kFa,
                         std::span<const double> grid) {
    check_kfa(kFa);
    const double c = std::cos(kFa);
    const double e = std::abs(mode_energy);
    const std::size_t n = grid.size();
    WkbEnvelope env;
    env.value.assign(n, 0.0);
    env.allowed.assign(n, false);
    env.masked.assign(n, false);

    std::vector<double> rad(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double j = profile(grid[i]);
        rad[i] = ((1.0 + c * c) / c * j - e) / (c * c);
        env.allowed[i] = rad[i] > 0.0;
    }
    if (std::none_of(env.allowed.begin(), env.allowed.end(), [](bool b) { return b; }))
        throw std::runtime_error("wkb_envelope: entirely forbidden domain");

    // mask the WKB divergence near each turning point (2% of the x-range)
    const double span = grid.back() - grid.front();
    const double margin = 0.02 * span;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (env.allowed[i] != env.allowed[i + 1]) {
            const double xt = 0.5 * (grid[i] + grid[i + 1]);
            for (std::size_t k = 0; k < n; ++k)
                if (std::abs(grid[k] - xt) <= margin) env.masked[k] = true;
        }
    }

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!env.allowed[i]) continue;
        const double j = profile(grid[i]);
        env.value[i] = 1.0 / (std::sqrt(std::sqrt(rad[i])) * std::sqrt(std::sqrt(j)));
        norm += env.value[i] * env.value[i];
    }
    const double inv = 1.0 / std::sqrt(norm);
    for (double& v : env.value) v *= inv;
    return env;
}

std::vector<double> semiclassical_density(std::span<const double> site_j, double fermi_energy,
                                          int particles) {
    const double e = std::abs(fermi_energy);
    std::vector<double> rho(site_j.size(), 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < site_j.size(); ++i) {
        const double r = 2.0 - e / site_j[i];
        if (r > 0.0) {
            rho[i] = std::sqrt(r);
            sum += rho[i];
        }
    }
    if (sum <= 0.0)
        throw std::runtime_error("semiclassical_density: empty allowed set (E >= 2 max J)");
    const double amp = particles / sum;
    for (double& v : rho) v *= amp;
    return rho;
}

namespace {

double fit_rmse_at(std::span<const double> obs, std::span<const double> site_j, double b,
                   double* amplitude) {
    double ff = 0.0, fo = 0.0;
    const std::size_t n = obs.size();
    std::vector<double> f(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = b - 1.0 / site_j[i];
        if (r > 0.0) f[i] = std::sqrt(r);
        ff += f[i] * f[i];
        fo += f[i] * obs[i];
    }
    const double a = (ff > 0.0) ? fo / ff : 0.0;
    double se = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a * f[i] - obs[i];
        se += d * d;
    }
    if (amplitude) *amplitude = a;
    return std::sqrt(se / double(n));
}

}  // namespace

DensityFit fit_density(std::span<const double> observed, std::span<const double> site_j) {
    if (observed.size() != site_j.size() || observed.empty())
        throw std::invalid_argument("fit_density: size mismatch");
    if (std::all_of(observed.begin(), observed.end(), [](double v) { return v == 0.0; }))
        throw std::invalid_argument("fit_density: degenerate observed data");

    const auto [jmin_it, jmax_it] = std::minmax_element(site_j.begin(), site_j.end());
    const double b_lo = 1.0 / *jmax_it * (1.0 + 1e-9);
    const double b_hi = 1.0 / *jmin_it + 1.0 / *jmax_it;
    constexpr int kScan = 600;
    double best_b = b_lo, best_r = fit_rmse_at(observed, site_j, b_lo, nullptr);
    const double ratio = std::pow(b_hi / b_lo, 1.0 / (kScan - 1));
    double b = b_lo;
    for (int i = 1; i < kScan; ++i) {
        b *= ratio;
        const double r = fit_rmse_at(observed, site_j, b, nullptr);
        if (r < best_r) {
            best_r = r;
            best_b = b;
        }
    }
    // golden-section refinement around the coarse optimum
    double lo = best_b / ratio, hi = best_b * ratio;
    constexpr double kGold = 0.6180339887498949;
    double x1 = hi - kGold * (hi - lo), x2 = lo + kGold * (hi - lo);
    double f1 = fit_rmse_at(observed, site_j, x1, nullptr);
    double f2 = fit_rmse_at(observed, site_j, x2, nullptr);
    for (int it = 0; it < 120 && hi - lo > 1e-13 * best_b; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGold * (hi - lo);
            f1 = fit_rmse_at(observed, site_j, x1, nullptr);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGold * (hi - lo);
            f2 = fit_rmse_at(observed, site_j, x2, nullptr);
        }
    }
    DensityFit fit;
    fit.offset = 0.5 * (lo + hi);
    fit.rmse = fit_rmse_at(observed, site_j, fit.offset, &fit.amplitude);
    if (best_r < fit.rmse) {  // coarse optimum sat on a plateau edge
        fit.offset = best_b;
        fit.rmse = fit_rmse_at(observed, site_j, best_b, &fit.amplitude);
    }
    return fit;
}

std::vector<double> sliding_mean(std::span<const double> values, int width) {
    const int n = int(values.size());
    if (width <= 0) width = std::max(1, n / 40);
    const int h = width / 2;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const int a = std::max(0, i - h), b = std::min(n, i + h + 1);
        double s = 0.0;
        for (int k = a; k < b; ++k) s += values[k];
        out[i] = s / (b - a);
    }
    return out;
}

ContinuumModel make_continuum_model(const HoppingProfile& profile, int n_sites, int particles,
                                    double fermi_energy) {
    ContinuumModel m;
    m.kFa = std::numbers::pi * double(particles) / n_sites;
    check_kfa(m.kFa);
    m.a = 1.0 / n_sites;
    m.grid.resize(n_sites);
    for (int i = 1; i <= n_sites; ++i) m.grid[i - 1] = double(i) / n_sites;
    m.xt = transform_coordinate(profile, m.grid);
    m.potential.resize(n_sites);
    for (int i = 0; i < n_sites; ++i) {
        const double x = std::min(m.grid[i], 1.0 - 1e-12);
        m.potential[i] = effective_potential(profile, x, m.kFa, 0);
    }
    m.mass = 2.0 / std::cos(m.kFa);
    m.fermi_energy = fermi_energy;
    return m;
}

}  // namespace fchain
