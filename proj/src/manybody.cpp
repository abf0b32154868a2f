#include "fchain/manybody.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace fchain {

OccupiedState::OccupiedState(const Spectrum& sp, int m) : spectrum(&sp), particles(m) {
    if (m < 0 || m > sp.size())
        throw std::domain_error("OccupiedState: particle count must lie in [0,N]");
}

std::vector<double> correlation_matrix(const OccupiedState& state) {
    const int n = state.sites();
    const int m = state.particles;
    std::vector<double> c(std::size_t(n) * n, 0.0);
    for (int k = 0; k < m; ++k) {
        const double* u = &state.spectrum->modes[std::size_t(k) * n];
        for (int i = 0; i < n; ++i) {
            const double ui = u[i];
            double* row = &c[std::size_t(i) * n];
            for (int j = i; j < n; ++j) row[j] += ui * u[j];
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) c[std::size_t(i) * n + j] = c[std::size_t(j) * n + i];
    return c;
}

std::vector<double> density(const OccupiedState& state) {
    const int n = state.sites();
    std::vector<double> d(n, 0.0);
    for (int k = 0; k < state.particles; ++k) {
        const double* u = &state.spectrum->modes[std::size_t(k) * n];
        for (int i = 0; i < n; ++i) d[i] += u[i] * u[i];
    }
    return d;
}

double block_entropy(std::span<const double> correlation, int n, int block_len) {
    if (block_len < 1 || block_len > n - 1)
        throw std::domain_error("block_entropy: block length must lie in [1, N-1]");
    std::vector<double> block(std::size_t(block_len) * block_len);
    for (int i = 0; i < block_len; ++i)
        for (int j = 0; j < block_len; ++j)
            block[std::size_t(i) * block_len + j] = correlation[std::size_t(i) * n + j];
    std::vector<double> lam = symmetric_eigenvalues(block, block_len);
    double s = 0.0;
    for (double v : lam) {
        v = std::clamp(v, 1e-12, 1.0 - 1e-12);  // x ln x is singular at the endpoints
        s += -v * std::log(v) - (1.0 - v) * std::log(1.0 - v);
    }
    return s;
}

std::vector<double> entropy_profile(const OccupiedState& state, int jobs) {
    const int n = state.sites();
    const std::vector<double> c = correlation_matrix(state);
    std::vector<double> s(n - 1, 0.0);
    if (jobs <= 0) jobs = int(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    std::atomic<int> next{1};
    auto worker = [&] {
        for (int l = next.fetch_add(1); l < n; l = next.fetch_add(1))
            s[l - 1] = block_entropy(c, n, l);
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return s;
}

}  // namespace fchain
