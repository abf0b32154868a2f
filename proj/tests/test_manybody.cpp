#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fchain/chain.hpp"
#include "fchain/manybody.hpp"
#include "fchain/profiles.hpp"

#include "support/sturm.hpp"

using namespace fchain;

TEST_CASE("correlation matrix limits") {
    auto sp = diagonalize(build_chain({1.0}));

    auto c1 = correlation_matrix(OccupiedState(sp, 1));
    for (double v : c1) CHECK(v == doctest::Approx(0.5));

    auto c0 = correlation_matrix(OccupiedState(sp, 0));
    for (double v : c0) CHECK(v == 0.0);

    auto cf = correlation_matrix(OccupiedState(sp, 2));
    CHECK(cf[0] == doctest::Approx(1.0));
    CHECK(cf[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cf[3] == doctest::Approx(1.0));

    CHECK_THROWS_AS(OccupiedState(sp, 3), std::domain_error);
}

TEST_CASE("correlation trace equals particle number") {
    const int n = 60;
    auto sp = diagonalize(build_chain(HoppingProfile::rainbow(3.0).sample(n)));
    for (int m : {1, 15, 30, 59}) {
        auto c = correlation_matrix(OccupiedState(sp, m));
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += c[std::size_t(i) * n + i];
        CHECK(tr == doctest::Approx(m).epsilon(1e-9));
    }
}

TEST_CASE("density at half filling is exactly homogeneous") {
    for (const auto& p : {HoppingProfile::rindler(0.0), HoppingProfile::sine(1.0, 0.5),
                          HoppingProfile::rainbow(4.0)}) {
        const int n = 100;
        auto sp = diagonalize(build_chain(p.sample(n)));
        auto d = density(OccupiedState(sp, n / 2));
        for (double v : d) CHECK(std::abs(v - 0.5) < 1e-10);
    }
}

TEST_CASE("rindler N=4 single-particle density from the recurrence oracle") {
    auto c = build_chain({0.25, 0.5, 0.75});
    auto sp = diagonalize(c);
    auto d = density(OccupiedState(sp, 1));

    std::vector<double> e = {-0.25, -0.5, -0.75};
    auto lam = testing::sturm_eigenvalues(c.potentials, e);
    auto v = testing::recurrence_eigenvector(c.potentials, e, lam[0]);
    for (int i = 0; i < 4; ++i) CHECK(d[i] == doctest::Approx(v[i] * v[i]).epsilon(1e-9));

    auto d2 = density(OccupiedState(sp, 1));
    double sum = 0.0;
    for (double x : d2) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mirror filling identity and bounds") {
    const int n = 64;
    auto sp = diagonalize(build_chain(HoppingProfile::rainbow(6.0).sample(n)));
    for (int m : {5, 16, 31}) {
        auto a = density(OccupiedState(sp, m));
        auto b = density(OccupiedState(sp, n - m));
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(a[i] + b[i] - 1.0) < 1e-8);
            CHECK(a[i] >= -1e-12);
            CHECK(a[i] <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("block entropy basics") {
    auto sp = diagonalize(build_chain({1.0}));
    auto c = correlation_matrix(OccupiedState(sp, 1));
    CHECK(block_entropy(c, 2, 1) == doctest::Approx(std::log(2.0)));

    auto c0 = correlation_matrix(OccupiedState(sp, 0));
    CHECK(block_entropy(c0, 2, 1) == doctest::Approx(0.0).epsilon(1e-10));

    CHECK_THROWS_AS(block_entropy(c, 2, 0), std::domain_error);
    CHECK_THROWS_AS(block_entropy(c, 2, 2), std::domain_error);
}

TEST_CASE("homogeneous half-filled half cut matches the conformal estimate") {
    const int n = 100;
    auto sp = diagonalize(build_chain(std::vector<double>(n - 1, 1.0)));
    auto c = correlation_matrix(OccupiedState(sp, n / 2));
    const double s = block_entropy(c, n, n / 2);
    const double estimate =
        (1.0 / 6.0) * std::log((2.0 * n / M_PI) * std::sin(M_PI * 0.5)) + 0.365;
    CHECK(std::abs(s - estimate) < 0.05);
}

TEST_CASE("entropy profile and complement symmetry") {
    auto sp2 = diagonalize(build_chain({1.0}));
    auto prof2 = entropy_profile(OccupiedState(sp2, 1));
    REQUIRE(prof2.size() == 1);
    CHECK(prof2[0] == doctest::Approx(std::log(2.0)));

    const int n = 48;
    auto sp = diagonalize(build_chain(HoppingProfile::rainbow(4.0).sample(n)));
    auto prof = entropy_profile(OccupiedState(sp, n / 2), 2);
    for (int l = 1; l < n; ++l) {
        CHECK(prof[l - 1] >= 0.0);
        CHECK(std::abs(prof[l - 1] - prof[n - l - 1]) < 1e-8);  // S(A) = S(complement)
    }
    // deterministic under different worker counts
    auto again = entropy_profile(OccupiedState(sp, n / 2), 5);
    CHECK(prof == again);
}
