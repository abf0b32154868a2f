#pragma once

#include <span>
#include <vector>

#include "fchain/chain.hpp"

namespace fchain {

/// Full eigen-decomposition of the single-particle Hamiltonian.
/// energies are strictly ascending; modes is row-major N x N with row k the
/// orthonormal mode of energy eps_k, gauge-fixed so its first nonzero
/// component is positive.
struct Spectrum {
    std::vector<double> energies;
    std::vector<double> modes;  // modes[k*N + i]

    int size() const { return int(energies.size()); }
    double mode(int k, int i) const { return modes[std::size_t(k) * energies.size() + i]; }
};

Spectrum diagonalize(const ChainSpec& chain);

struct SpectrumReport {
    double max_residual = 0.0;      // max_k ||H u_k - eps_k u_k||_inf
    double max_ortho_defect = 0.0;  // max |U U^T - I|
    bool ascending = false;
};

SpectrumReport verify_spectrum(const Spectrum& spectrum, const ChainSpec& chain);

// Eigenvalues (ascending) of a symmetric tridiagonal matrix with diagonal d
// and off-diagonal e (|e| = |d| - 1). Implicit-shift QL, no eigenvectors.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e);

// Eigenvalues (ascending) of a dense symmetric matrix, row-major n x n.
// Householder tridiagonalization followed by the QL kernel.
std::vector<double> symmetric_eigenvalues(std::span<const double> a, int n);

}  // namespace fchain
