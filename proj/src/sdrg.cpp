#include "fchain/sdrg.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace fchain {

namespace {

struct Link {
    int l = 0, r = 0;   // 1-based sites joined by this coupling
    double c = 0.0;     // signed coupling
    bool alive = false;
};

struct HeapEntry {
    double mag;
    int id;
    bool operator<(const HeapEntry& o) const { return mag < o.mag; }
};

constexpr double kTieTol = 1e-12;

}  // namespace

BondSet run_sdrg(std::span<const double> hoppings) {
    const int n = int(hoppings.size()) + 1;
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("run_sdrg: N must be even and >= 2");
    for (double j : hoppings)
        if (!(j > 0.0)) throw std::invalid_argument("run_sdrg: couplings must be positive");

    std::vector<Link> links;
    links.reserve(std::size_t(2) * n);
    std::vector<int> prev(n + 1, 0), next(n + 1, 0);
    std::vector<int> link_l(n + 1, -1), link_r(n + 1, -1);
    std::priority_queue<HeapEntry> heap;

    for (int i = 1; i <= n; ++i) {
        prev[i] = i - 1;
        next[i] = (i < n) ? i + 1 : 0;
    }
    for (int i = 1; i < n; ++i) {
        links.push_back({i, i + 1, hoppings[i - 1], true});
        const int id = int(links.size()) - 1;
        link_r[i] = id;
        link_l[i + 1] = id;
        heap.push({hoppings[i - 1], id});
    }

    BondSet bonds;
    bonds.reserve(n / 2);
    while (int(bonds.size()) < n / 2) {
        // strongest active link; fp-exact ties between a renormalized bond and
        // lateral originals occur for rainbow samples, so near-ties resolve by
        // span (renormalized bonds win), then leftmost
        std::vector<int> cand;
        while (!heap.empty() && !links[heap.top().id].alive) heap.pop();
        if (heap.empty()) throw std::logic_error("run_sdrg: heap exhausted");
        const double top = heap.top().mag;
        cand.push_back(heap.top().id);
        heap.pop();
        while (!heap.empty()) {
            if (!links[heap.top().id].alive) {
                heap.pop();
                continue;
            }
            if (heap.top().mag < top * (1.0 - kTieTol)) break;
            cand.push_back(heap.top().id);
            heap.pop();
        }
        int sel = cand[0];
        for (std::size_t k = 1; k < cand.size(); ++k) {
            const Link& a = links[cand[k]];
            const Link& b = links[sel];
            const int sa = a.r - a.l, sb = b.r - b.l;
            if (sa > sb || (sa == sb && a.l < b.l)) sel = cand[k];
        }
        for (int id : cand)
            if (id != sel) heap.push({std::abs(links[id].c), id});

        Link& s = links[sel];
        s.alive = false;
        bonds.push_back({s.l, s.r, std::abs(s.c), s.c > 0.0 ? +1 : -1, int(bonds.size()) + 1});

        const int L = prev[s.l], R = next[s.r];
        const int lk = link_l[s.l], rk = link_r[s.r];
        if (lk >= 0) links[lk].alive = false;
        if (rk >= 0) links[rk].alive = false;
        if (L > 0 && R > 0) {
            next[L] = R;
            prev[R] = L;
            links.push_back({L, R, -links[lk].c * links[rk].c / s.c, true});
            const int id = int(links.size()) - 1;
            link_r[L] = id;
            link_l[R] = id;
            heap.push({std::abs(links[id].c), id});
        } else {
            if (L > 0) {
                next[L] = 0;
                link_r[L] = -1;
            }
            if (R > 0) {
                prev[R] = 0;
                link_l[R] = -1;
            }
        }
    }
    return bonds;
}

std::vector<double> sdrg_density(const BondSet& bonds, int m, int n_sites) {
    if (m < 0 || m > n_sites)
        throw std::domain_error("sdrg_density: particle count must lie in [0,N]");
    if (int(bonds.size()) != n_sites / 2)
        throw std::invalid_argument("sdrg_density: bond set does not cover the chain");
    std::vector<double> d(n_sites, 0.0);
    const int half = n_sites / 2;
    const int singly = std::min(m, half);
    for (int k = 0; k < singly; ++k) {
        d[bonds[k].left - 1] += 0.5;
        d[bonds[k].right - 1] += 0.5;
    }
    // above half filling the weakest bonds are promoted to double occupation
    for (int k = 0; k < m - half; ++k) {
        const Bond& b = bonds[half - 1 - k];
        d[b.left - 1] += 0.5;
        d[b.right - 1] += 0.5;
    }
    return d;
}

}  // namespace fchain
