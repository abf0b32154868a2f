#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fchain {

enum class ProfileKind { minkowski, rindler, sine, rainbow, custom };

/// Smooth positive hopping function J(x) on [0,1] (the space-time "metric").
/// Immutable after construction; safe for concurrent reads.
class HoppingProfile {
public:
    struct Derivatives {
        double j = 0.0;
        double dj = 0.0;
        double d2j = 0.0;
        bool kink = false;  // set at the rainbow center, where one-sided limits differ
    };

    static HoppingProfile minkowski();
    static HoppingProfile rindler(double c);            // J(x) = c + x, c >= 0
    static HoppingProfile sine(double j0, double j1);   // J(x) = J0 + J1 cos(2 pi x)
    static HoppingProfile rainbow(double h);            // J(x) = exp(-h |x - 1/2|)
    // Tabulated (x, J) pairs on [0,1]; monotone-cubic interpolation keeps J > 0.
    static HoppingProfile custom(std::vector<std::pair<double, double>> table);

    double operator()(double x) const;  // throws std::domain_error outside [0,1]
    Derivatives derivatives(double x) const;

    // Lattice sample {J(i/N)}, i = 1..N-1. N must be even and >= 2.
    std::vector<double> sample(int n_sites) const;

    ProfileKind kind() const { return kind_; }
    double param(const std::string& name) const;
    std::string label() const;  // filename-friendly tag, e.g. "rainbow_h4"

private:
    HoppingProfile() = default;

    ProfileKind kind_ = ProfileKind::minkowski;
    double c_ = 0.0;   // rindler offset
    double j0_ = 1.0;  // sine
    double j1_ = 0.0;
    double h_ = 0.0;   // rainbow
    // custom table and precomputed monotone-cubic slopes
    std::vector<double> tx_, ty_, tm_;
};

}  // namespace fchain
