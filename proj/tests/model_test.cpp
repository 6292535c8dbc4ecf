#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "vortex/model.hpp"

using namespace vortex;

TEST_CASE("circulations carry the derived totals") {
    Circulations circ(2.0);
    CHECK(circ.gamma[0] == 1.0);
    CHECK(circ.gamma[3] == 2.0);
    CHECK(circ.total == doctest::Approx(5.0));
    CHECK(circ.momentum == doctest::Approx(9.0));
}

TEST_CASE("pairwise distances follow the fixed pair order") {
    const std::array<double, 4> x = {-1.0, 1.0, 3.0, 5.0};
    const auto r = pairwise_distances(x);
    CHECK(r[0] == doctest::Approx(2.0));  // r12
    CHECK(r[1] == doctest::Approx(4.0));  // r13
    CHECK(r[2] == doctest::Approx(6.0));  // r14
    CHECK(r[3] == doctest::Approx(2.0));  // r23
    CHECK(r[4] == doctest::Approx(4.0));  // r24
    CHECK(r[5] == doctest::Approx(2.0));  // r34
}

TEST_CASE("hamiltonian at a spaced configuration") {
    const std::array<double, 4> x = {-1.0, 1.0, 3.0, 5.0};
    Circulations circ(1.0);
    // product of the six distances is 2*4*6*2*4*2 = 768
    CHECK(hamiltonian(x, circ) == doctest::Approx(-std::log(768.0)).epsilon(1e-14));
    CHECK(hamiltonian(x, circ) ==
          doctest::Approx(static_cast<double>(oracle::direct_hamiltonian(x, 1.0))));
}

TEST_CASE("hamiltonian rejects collisions") {
    Circulations circ(1.0);
    const std::array<double, 4> touching = {-1.0, 1.0, 1.0 + 1e-12, 5.0};
    CHECK_THROWS_AS(hamiltonian(touching, circ), std::domain_error);
}

TEST_CASE("angular impulse at a spaced configuration") {
    const std::array<double, 4> x = {-1.0, 1.0, 3.0, 5.0};
    Circulations circ(1.0);
    // (4+16+36+4+16+4)/4 = 20
    CHECK(angular_impulse(x, circ) == doctest::Approx(20.0).epsilon(1e-14));
}

TEST_CASE("mutual-distance impulse agrees with direct summation") {
    std::mt19937 rng(20260819u);
    std::uniform_real_distribution<double> pos(-6.0, 6.0);
    std::uniform_real_distribution<double> mass(-2.8, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::array<double, 4> x = {-1.0, 1.0, pos(rng), pos(rng)};
        double m = mass(rng);
        if (std::abs(m + 3.0) < 0.1) m = 1.0;
        bool clash = false;
        for (int i = 0; i < 4 && !clash; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (std::abs(x[i] - x[j]) < 1e-3) clash = true;
        if (clash) continue;
        Circulations circ(m);
        const double expected = static_cast<double>(oracle::direct_angular_impulse(x, m));
        CHECK(angular_impulse(x, circ) ==
              doctest::Approx(expected).epsilon(1e-11).scale(std::max(1.0, std::abs(expected))));
    }
}

TEST_CASE("angular velocity is momentum over impulse") {
    const std::array<double, 4> x = {-1.0, 1.0, 3.0, 5.0};
    Circulations circ(1.0);
    CHECK(angular_velocity(x, circ) == doctest::Approx(6.0 / 20.0).epsilon(1e-14));
    CHECK_THROWS_AS(angular_velocity(x, Circulations(-3.0)), std::domain_error);
}

TEST_CASE("center of vorticity reduces to the weighted average") {
    Circulations circ(0.5);
    CHECK(center_of_vorticity({-1.0, 1.0, 2.0, -4.0}, circ) == doctest::Approx(0.0));
    CHECK(center_of_vorticity({-1.0, 1.0, 3.0, 5.0}, Circulations(1.0)) ==
          doctest::Approx(2.0));
    CHECK_THROWS_AS(center_of_vorticity({-1.0, 1.0, 3.0, 5.0}, Circulations(-3.0)),
                    std::domain_error);
}

TEST_CASE("residuals vanish at the exact unit-ratio equilibrium") {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    Configuration cfg;
    cfg.x = {-1.0, 1.0, -1.0 + s2 + s6, 1.0 + s2 + s6};
    cfg.c = (s2 + s6) / 2.0;
    cfg.omega = 3.0 / (6.0 + 2.0 * s3);
    Circulations circ(1.0);
    CHECK(residual_norm(cfg, circ) < 1e-12);
}

TEST_CASE("circulation-weighted residual sum vanishes identically") {
    // sum_i Gamma_i res_i telescopes to omega * sum_i Gamma_i (x_i - c),
    // which is zero whenever c is the center of vorticity, equilibrium or not.
    std::mt19937 rng(77031u);
    std::uniform_real_distribution<double> pos(-5.0, 5.0);
    std::uniform_real_distribution<double> mass(-0.9, 3.0);
    std::uniform_real_distribution<double> spin(0.1, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::array<double, 4> x = {-1.0, 1.0, pos(rng), pos(rng)};
        bool clash = false;
        for (int i = 0; i < 4 && !clash; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (std::abs(x[i] - x[j]) < 1e-3) clash = true;
        if (clash) continue;
        Circulations circ(mass(rng));
        const double c = center_of_vorticity(x, circ);
        const auto res = residuals(x, c, spin(rng), circ);
        double weighted = 0.0, scale = 1.0;
        for (int i = 0; i < 4; ++i) {
            weighted += circ.gamma[i] * res[i];
            scale = std::max(scale, std::abs(res[i]));
        }
        CHECK(std::abs(weighted) < 1e-9 * scale);
    }
}

TEST_CASE("ordering labels and group tags") {
    Ordering ord{{1, 2, 3, 4}, Group::I};
    CHECK(ord.label() == "1234");
    Ordering other{{1, 2, 4, 3}, Group::II};
    CHECK(other.label() == "1243");
    CHECK(ord == ord);
    CHECK_FALSE(ord == other);
}
