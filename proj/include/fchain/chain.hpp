#pragma once

#include <optional>
#include <span>
#include <vector>

namespace fchain {

/// Finite open chain: N sites, hoppings J_i (i = 1..N-1, all positive) and
/// on-site potentials mu_i (i = 1..N). The single-particle matrix assembled
/// downstream is tridiagonal with diagonal +mu_i and off-diagonal -J_i.
struct ChainSpec {
    int n_sites = 0;
    std::vector<double> hoppings;
    std::vector<double> potentials;
};

ChainSpec build_chain(std::vector<double> hoppings,
                      std::optional<std::vector<double>> potentials = std::nullopt);

// Value of J at each site: neighbor average (J_{i-1}+J_i)/2 in the bulk,
// the lone neighbor hopping at the two boundary sites.
std::vector<double> site_hoppings(std::span<const double> hoppings);

// mu_i = 2 cos(pi nu) * site-averaged J_i; flattens the density at filling nu.
std::vector<double> compensating_potential(std::span<const double> hoppings, double filling);

// Homogeneous chain (J_i = 1) with mu_i = mu0 / site-averaged J_i^orig.
// mu0 < 0 is interpreted as "auto": |eps_F| of the original chain at this filling.
ChainSpec mimicking_chain(std::span<const double> original_hoppings, double filling,
                          std::optional<double> mu0 = std::nullopt);

}  // namespace fchain
