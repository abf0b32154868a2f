#pragma once

#include <span>
#include <vector>

#include "fchain/eigensolver.hpp"

namespace fchain {

/// Ground state at fixed particle number: the lowest m modes filled.
struct OccupiedState {
    const Spectrum* spectrum = nullptr;
    int particles = 0;

    OccupiedState(const Spectrum& sp, int m);
    int sites() const { return spectrum->size(); }
    double filling() const { return double(particles) / sites(); }
};

// C_ij = sum_{k<=m} U_ki U_kj; symmetric, eigenvalues in [0,1], trace m.
// Row-major N x N.
std::vector<double> correlation_matrix(const OccupiedState& state);

// n_i = C_ii.
std::vector<double> density(const OccupiedState& state);

// Von Neumann entropy (nats) of the block [1..l] from the leading l x l
// principal submatrix of the correlation matrix.
double block_entropy(std::span<const double> correlation, int n, int block_len);

// S(l) for l = 1..N-1, reusing one correlation matrix. Blocks are evaluated
// in parallel; the result ordering is deterministic.
std::vector<double> entropy_profile(const OccupiedState& state, int jobs = 0);

}  // namespace fchain
