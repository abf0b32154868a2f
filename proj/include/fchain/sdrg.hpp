#pragma once

#include <span>
#include <vector>

namespace fchain {

/// One decimated bond: a bonding/antibonding orbital over a pair of sites.
struct Bond {
    int left = 0;           // 1-based site indices, left < right
    int right = 0;
    double strength = 0.0;  // |coupling| at selection time
    int sign = +1;          // parity of accumulated perturbative minus signs
    int rank = 0;           // selection order, 1 = strongest
};

using BondSet = std::vector<Bond>;

// Dasgupta-Ma decimation of an open chain with the given positive hoppings.
// Repeatedly removes the strongest active link (ties within relative 1e-12
// prefer the longer-span renormalized bond, then the leftmost) and joins its
// neighbors with the effective coupling -J_L J_R / J_sel. Produces exactly
// N/2 site-disjoint bonds covering all sites.
BondSet run_sdrg(std::span<const double> hoppings);

// Occupation prediction at particle count m: for m <= N/2 the m strongest
// bonds carry 1/2 on each endpoint; above half filling every bond is singly
// occupied and the m - N/2 weakest bonds are upgraded to double occupation.
std::vector<double> sdrg_density(const BondSet& bonds, int m, int n_sites);

}  // namespace fchain
