#pragma once

#include <span>
#include <vector>

#include "fchain/profiles.hpp"

namespace fchain {

/// Semiclassical description of one chain at a given filling: the transformed
/// coordinate, the effective Schrodinger data and the lattice Fermi energy.
struct ContinuumModel {
    double kFa = 0.0;  // Fermi phase pi*nu, in (0, pi/2)
    double a = 0.0;    // lattice spacing 1/N
    std::vector<double> grid;       // ascending x samples in [0,1]
    std::vector<double> xt;         // matching transformed coordinate samples
    std::vector<double> potential;  // effective potential on the grid
    double mass = 0.0;              // 2 / cos(kFa)
    double fermi_energy = 0.0;      // eps_m from the lattice spectrum
};

// xt(x) = integral_0^x J(s)^{-1/2} ds for each grid point. Midpoint rule on
// a sqrt-graded refinement (>= 10 subdivisions per cell), which stays accurate
// when J vanishes at the origin (rindler).
std::vector<double> transform_coordinate(const HoppingProfile& profile,
                                         std::span<const double> grid);

// Effective Schrodinger potential at x. order 0 keeps -(1+cos^2)/cos * J;
// order 2 adds the first- and second-order lattice-spacing corrections with
// the transformed-coordinate derivatives folded back through the chain rule.
double effective_potential(const HoppingProfile& profile, double x, double kFa,
                           int order = 0, double lattice_spacing = 0.0);

// Roots of J(x) = |EF| cos(kFa) / (1 + cos^2(kFa)) in (0,1); empty result
// means no classically forbidden region.
std::vector<double> turning_points(const HoppingProfile& profile, double fermi_energy,
                                   double kFa);

struct WkbEnvelope {
    std::vector<double> value;   // |Psi| envelope, 0 in the forbidden region
    std::vector<bool> allowed;   // classically allowed points
    std::vector<bool> masked;    // within 2% of the x-range of a turning point
};

// Envelope ~ p^{-1/2} J^{-1/4}, normalized so the squared envelope sums to 1
// over the allowed region. The mode energy enters by magnitude.
WkbEnvelope wkb_envelope(const HoppingProfile& profile, double mode_energy, double kFa,
                         std::span<const double> grid);

// rho(x) a = A sqrt(max(2 - E/J, 0)), E = |eps_F|, normalized so the samples
// sum to the particle count m. site_j holds J at each lattice site.
std::vector<double> semiclassical_density(std::span<const double> site_j, double fermi_energy,
                                          int particles);

struct DensityFit {
    double amplitude = 0.0;  // A
    double offset = 0.0;     // B
    double rmse = 0.0;
};

// Least-squares fit of rho a = A sqrt(max(B - 1/J, 0)): coarse geometric scan
// in B refined by golden section, A closed-form at each B.
DensityFit fit_density(std::span<const double> observed, std::span<const double> site_j);

// Sliding-window mean with the window shrinking at the edges; width 0 means
// the N/40 convention used to mask Friedel oscillations.
std::vector<double> sliding_mean(std::span<const double> values, int width = 0);

ContinuumModel make_continuum_model(const HoppingProfile& profile, int n_sites, int particles,
                                    double fermi_energy);

}  // namespace fchain
