#include "fchain/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fchain {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_domain(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("HoppingProfile: x outside [0,1]");
}

// Fritsch-Carlson monotone-cubic slopes: interpolant stays within the data
// range on each cell, so a strictly positive table yields a positive J.
std::vector<double> monotone_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
        m[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            m[i] = m[i + 1] = 0.0;
            continue;
        }
        const double a = m[i] / d[i], b = m[i + 1] / d[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double t = 3.0 / std::sqrt(s);
            m[i] = t * a * d[i];
            m[i + 1] = t * b * d[i];
        }
    }
    return m;
}

}  // namespace

HoppingProfile HoppingProfile::minkowski() {
    HoppingProfile p;
    p.kind_ = ProfileKind::minkowski;
    return p;
}

HoppingProfile HoppingProfile::rindler(double c) {
    if (c < 0.0) throw std::invalid_argument("rindler: offset c must be >= 0");
    HoppingProfile p;
    p.kind_ = ProfileKind::rindler;
    p.c_ = c;
    return p;
}

HoppingProfile HoppingProfile::sine(double j0, double j1) {
    if (!(j0 > 0.0) || !(std::abs(j1) < j0))
        throw std::invalid_argument("sine: need J0 > 0 and |J1| < J0");
    HoppingProfile p;
    p.kind_ = ProfileKind::sine;
    p.j0_ = j0;
    p.j1_ = j1;
    return p;
}

HoppingProfile HoppingProfile::rainbow(double h) {
    if (h < 0.0) throw std::invalid_argument("rainbow: h must be >= 0");
    HoppingProfile p;
    p.kind_ = ProfileKind::rainbow;
    p.h_ = h;
    return p;
}

HoppingProfile HoppingProfile::custom(std::vector<std::pair<double, double>> table) {
    if (table.size() < 2) throw std::invalid_argument("custom: need at least 2 points");
    std::sort(table.begin(), table.end());
    HoppingProfile p;
    p.kind_ = ProfileKind::custom;
    for (const auto& [x, j] : table) {
        p.tx_.push_back(x);
        p.ty_.push_back(j);
    }
    if (p.tx_.front() > 1e-12 || p.tx_.back() < 1.0 - 1e-12)
        throw std::invalid_argument("custom: table must span [0,1]");
    for (std::size_t i = 0; i + 1 < p.tx_.size(); ++i)
        if (p.tx_[i + 1] - p.tx_[i] <= 0.0)
            throw std::invalid_argument("custom: x values must be strictly increasing");
    p.tm_ = monotone_slopes(p.tx_, p.ty_);
    // dense positivity check
    for (int i = 0; i <= 4096; ++i) {
        if (!(p(i / 4096.0) > 0.0))
            throw std::invalid_argument("custom: interpolated J must stay positive on [0,1]");
    }
    return p;
}

double HoppingProfile::operator()(double x) const {
    check_domain(x);
    switch (kind_) {
        case ProfileKind::minkowski:
            return 1.0;
        case ProfileKind::rindler:
            return c_ + x;
        case ProfileKind::sine:
            return j0_ + j1_ * std::cos(kTwoPi * x);
        case ProfileKind::rainbow:
            return std::exp(-h_ * std::abs(x - 0.5));
        case ProfileKind::custom: {
            auto it = std::upper_bound(tx_.begin(), tx_.end(), x);
            std::size_t i = (it == tx_.begin()) ? 0 : std::size_t(it - tx_.begin()) - 1;
            if (i + 1 >= tx_.size()) i = tx_.size() - 2;
            const double hx = tx_[i + 1] - tx_[i];
            const double t = (x - tx_[i]) / hx;
            const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
            const double h10 = t * (1 - t) * (1 - t);
            const double h01 = t * t * (3 - 2 * t);
            const double h11 = t * t * (t - 1);
            return h00 * ty_[i] + h10 * hx * tm_[i] + h01 * ty_[i + 1] + h11 * hx * tm_[i + 1];
        }
    }
    throw std::logic_error("unreachable");
}

HoppingProfile::Derivatives HoppingProfile::derivatives(double x) const {
    check_domain(x);
    Derivatives out;
    out.j = (*this)(x);
    switch (kind_) {
        case ProfileKind::minkowski:
            break;
        case ProfileKind::rindler:
            out.dj = 1.0;
            break;
        case ProfileKind::sine:
            out.dj = -kTwoPi * j1_ * std::sin(kTwoPi * x);
            out.d2j = -kTwoPi * kTwoPi * j1_ * std::cos(kTwoPi * x);
            break;
        case ProfileKind::rainbow: {
            if (x == 0.5) {
                // one-sided slopes +-h average to zero at the curvature singularity
                out.dj = 0.0;
                out.d2j = h_ * h_;
                out.kink = true;
            } else {
                const double s = (x < 0.5) ? 1.0 : -1.0;
                out.dj = s * h_ * out.j;
                out.d2j = h_ * h_ * out.j;
            }
            break;
        }
        case ProfileKind::custom: {
            const double step = 1e-5;
            const double lo = std::max(0.0, x - step), hi = std::min(1.0, x + step);
            const double jl = (*this)(lo), jh = (*this)(hi);
            out.dj = (jh - jl) / (hi - lo);
            out.d2j = ((*this)(hi) - 2.0 * out.j + (*this)(lo)) / (step * step);
            if (hi - x != x - lo)  // clamped at a boundary; second difference unusable
                out.d2j = 0.0;
            break;
        }
    }
    return out;
}

std::vector<double> HoppingProfile::sample(int n_sites) const {
    if (n_sites < 2 || n_sites % 2 != 0)
        throw std::invalid_argument("sample: N must be even and >= 2");
    std::vector<double> j(n_sites - 1);
    for (int i = 1; i < n_sites; ++i) j[i - 1] = (*this)(double(i) / n_sites);
    for (double v : j)
        if (!(v > 0.0)) throw std::invalid_argument("sample: nonpositive hopping");
    return j;
}

double HoppingProfile::param(const std::string& name) const {
    if (name == "c") return c_;
    if (name == "J0") return j0_;
    if (name == "J1") return j1_;
    if (name == "h") return h_;
    throw std::invalid_argument("unknown profile parameter: " + name);
}

namespace {
std::string trim_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}
}  // namespace

std::string HoppingProfile::label() const {
    switch (kind_) {
        case ProfileKind::minkowski: return "minkowski";
        case ProfileKind::rindler: return "rindler_c" + trim_num(c_);
        case ProfileKind::sine: return "sine_J0" + trim_num(j0_) + "_J1" + trim_num(j1_);
        case ProfileKind::rainbow: return "rainbow_h" + trim_num(h_);
        case ProfileKind::custom: return "custom";
    }
    return "profile";
}

}  // namespace fchain
