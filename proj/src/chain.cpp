#include "fchain/chain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fchain/eigensolver.hpp"

namespace fchain {

ChainSpec build_chain(std::vector<double> hoppings,
                      std::optional<std::vector<double>> potentials) {
    if (hoppings.empty()) throw std::invalid_argument("build_chain: empty hopping list");
    for (double j : hoppings)
        if (!(j > 0.0)) throw std::invalid_argument("build_chain: hoppings must be positive");
    ChainSpec c;
    c.n_sites = int(hoppings.size()) + 1;
    c.hoppings = std::move(hoppings);
    if (potentials) {
        if (int(potentials->size()) != c.n_sites)
            throw std::invalid_argument("build_chain: potentials length must be hoppings length + 1");
        c.potentials = std::move(*potentials);
    } else {
        c.potentials.assign(c.n_sites, 0.0);
    }
    return c;
}

std::vector<double> site_hoppings(std::span<const double> hoppings) {
    const int n = int(hoppings.size()) + 1;
    std::vector<double> s(n);
    s[0] = hoppings.front();
    s[n - 1] = hoppings.back();
    for (int i = 1; i < n - 1; ++i) s[i] = 0.5 * (hoppings[i - 1] + hoppings[i]);
    return s;
}

namespace {
void check_filling(double filling) {
    if (!(filling > 0.0 && filling < 1.0))
        throw std::domain_error("filling fraction must lie in (0,1)");
}
}  // namespace

std::vector<double> compensating_potential(std::span<const double> hoppings, double filling) {
    check_filling(filling);
    const double mu0 = 2.0 * std::cos(std::numbers::pi * filling);  // 2 cos(k_F a), k_F a = pi nu
    std::vector<double> mu = site_hoppings(hoppings);
    for (double& v : mu) v *= mu0;
    return mu;
}

ChainSpec mimicking_chain(std::span<const double> original_hoppings, double filling,
                          std::optional<double> mu0) {
    check_filling(filling);
    for (double j : original_hoppings)
        if (!(j > 0.0)) throw std::invalid_argument("mimicking_chain: hoppings must be positive");
    const int n = int(original_hoppings.size()) + 1;
    double scale;
    if (mu0) {
        scale = *mu0;
    } else {
        // auto: |eps_F| of the original chain, eps_F the m-th ascending eigenvalue
        const double mN = filling * n;
        const int m = int(std::lround(mN));
        if (std::abs(mN - m) > 1e-9 || m < 1 || m > n)
            throw std::domain_error("mimicking_chain: nu*N must be an integer in [1,N]");
        ChainSpec orig = build_chain({original_hoppings.begin(), original_hoppings.end()});
        Spectrum sp = diagonalize(orig);
        scale = std::abs(sp.energies[m - 1]);
    }
    std::vector<double> mu = site_hoppings(original_hoppings);
    for (double& v : mu) v = scale / v;
    return build_chain(std::vector<double>(n - 1, 1.0), mu);
}

}  // namespace fchain
