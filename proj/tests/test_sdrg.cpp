#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fchain/profiles.hpp"
#include "fchain/sdrg.hpp"

using namespace fchain;

TEST_CASE("hand-traced decimations") {
    SUBCASE("strong bond first") {
        auto b = run_sdrg(std::vector<double>{2.0, 0.1, 1.0});
        REQUIRE(b.size() == 2);
        CHECK(b[0].left == 1);
        CHECK(b[0].right == 2);
        CHECK(b[0].strength == doctest::Approx(2.0));
        CHECK(b[0].sign == 1);
        CHECK(b[0].rank == 1);
        CHECK(b[1].left == 3);
        CHECK(b[1].right == 4);
        CHECK(b[1].strength == doctest::Approx(1.0));
        CHECK(b[1].rank == 2);
    }
    SUBCASE("renormalized long bond with a minus sign") {
        const double e1 = std::exp(-1.0);
        auto b = run_sdrg(std::vector<double>{e1, 1.0, e1});
        REQUIRE(b.size() == 2);
        CHECK(b[0].left == 2);
        CHECK(b[0].right == 3);
        CHECK(b[0].strength == doctest::Approx(1.0));
        CHECK(b[1].left == 1);
        CHECK(b[1].right == 4);
        CHECK(b[1].strength == doctest::Approx(std::exp(-2.0)));
        CHECK(b[1].sign == -1);
    }
    SUBCASE("exact tie of equal originals goes leftmost") {
        auto b = run_sdrg(std::vector<double>{1.0, 1.0, 1.0});
        REQUIRE(b.size() == 2);
        CHECK(b[0].left == 1);
        CHECK(b[0].right == 2);
        CHECK(b[1].left == 3);
        CHECK(b[1].right == 4);
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS(run_sdrg(std::vector<double>{1.0, 0.0, 1.0}));
    CHECK_THROWS(run_sdrg(std::vector<double>{1.0, -0.5, 1.0}));
    CHECK_THROWS(run_sdrg(std::vector<double>{1.0, 1.0}));  // odd site count
}

TEST_CASE("bonds cover every site exactly once") {
    for (double h : {1.0, 4.0, 9.0}) {
        const int n = 80;
        auto b = run_sdrg(HoppingProfile::rainbow(h).sample(n));
        REQUIRE(int(b.size()) == n / 2);
        std::vector<int> hit(n + 1, 0);
        for (const auto& bond : b) {
            CHECK(bond.left < bond.right);
            ++hit[bond.left];
            ++hit[bond.right];
        }
        for (int i = 1; i <= n; ++i) CHECK(hit[i] == 1);
        for (int k = 0; k + 1 < int(b.size()); ++k)
            CHECK(b[k].strength >= b[k + 1].strength * (1.0 - 1e-12));
        for (int k = 0; k < int(b.size()); ++k) CHECK(b[k].rank == k + 1);
    }
}

TEST_CASE("rainbow chains decimate into the nested pattern") {
    for (int n : {8, 20, 64}) {
        for (double h : {2.0, 6.0, 12.0}) {
            auto b = run_sdrg(HoppingProfile::rainbow(h).sample(n));
            REQUIRE(int(b.size()) == n / 2);
            // bond k (1-based rank) joins sites n/2+1-k and n/2+k
            for (int k = 0; k < n / 2; ++k) {
                CHECK(b[k].left == n / 2 - k);
                CHECK(b[k].right == n / 2 + 1 + k);
            }
        }
    }
}

TEST_CASE("mirror symmetry of the hopping pattern is preserved") {
    // asymmetric profile: no ties, so reversal must mirror the decimation
    auto j = HoppingProfile::rindler(0.25).sample(40);
    auto b = run_sdrg(j);
    std::vector<double> jr(j.rbegin(), j.rend());
    auto br = run_sdrg(jr);
    const int n = 40;
    REQUIRE(b.size() == br.size());
    for (std::size_t k = 0; k < b.size(); ++k) {
        CHECK(br[k].left == n + 1 - b[k].right);
        CHECK(br[k].right == n + 1 - b[k].left);
        CHECK(br[k].strength == doctest::Approx(b[k].strength).epsilon(1e-12));
    }
}

TEST_CASE("sdrg density occupation rules") {
    auto b = run_sdrg(std::vector<double>{2.0, 0.1, 1.0});

    auto d0 = sdrg_density(b, 0, 4);
    for (double v : d0) CHECK(v == 0.0);

    auto d1 = sdrg_density(b, 1, 4);
    CHECK(d1 == std::vector<double>{0.5, 0.5, 0.0, 0.0});

    auto d2 = sdrg_density(b, 2, 4);
    for (double v : d2) CHECK(v == 0.5);

    // above half filling the weakest bond doubles up first
    auto d3 = sdrg_density(b, 3, 4);
    CHECK(d3 == std::vector<double>{0.5, 0.5, 1.0, 1.0});

    auto d4 = sdrg_density(b, 4, 4);
    for (double v : d4) CHECK(v == 1.0);

    CHECK_THROWS(sdrg_density(b, 5, 4));
    CHECK_THROWS(sdrg_density(b, -1, 4));
}

TEST_CASE("sdrg density sums to the particle number") {
    const int n = 64;
    auto b = run_sdrg(HoppingProfile::rainbow(8.0).sample(n));
    for (int m : {1, 7, 32, 50, 64}) {
        auto d = sdrg_density(b, m, n);
        const double s = std::accumulate(d.begin(), d.end(), 0.0);
        CHECK(s == doctest::Approx(m));
    }
}
