#include <cmath>
#include <random>

#include "doctest.h"
#include "morse_gpe/analytic.hpp"
#include "morse_gpe/errors.hpp"
#include "morse_gpe/model.hpp"

using namespace morse_gpe;

TEST_CASE("noninteracting closed form") {
    const auto s3 = analytic::noninteracting_solution(3.0);
    CHECK(s3.alpha == 1.0);
    CHECK(s3.beta == 0.5);
    CHECK(s3.energy_over_ND == doctest::Approx(-4.0 / 9.0).epsilon(1e-15));

    const auto s2 = analytic::noninteracting_solution(2.0);
    CHECK(s2.alpha == 0.5);
    CHECK(s2.energy_over_ND == doctest::Approx(-0.25).epsilon(1e-15));

    const auto s5 = analytic::noninteracting_solution(5.0);
    CHECK(s5.alpha == 2.0);
    CHECK(s5.energy_over_ND == doctest::Approx(-16.0 / 25.0).epsilon(1e-15));
}

TEST_CASE("validity errors below k = 2") {
    CHECK_THROWS_AS(analytic::noninteracting_solution(1.99), ValidityError);
    CHECK_THROWS_AS(analytic::exact_morse_ground_energy(0.5), ValidityError);
}

TEST_CASE("property: the variational value is the exact Morse level and lies on the line") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ks(2.0, 50.0);
    for (int i = 0; i < 2000; ++i) {
        const double k = ks(rng);
        const auto s = analytic::noninteracting_solution(k);
        REQUIRE(std::abs(s.energy_over_ND - analytic::exact_morse_ground_energy(k)) <= 1e-14);
        REQUIRE(std::abs(s.beta - (s.alpha + 0.5) / k) <= 1e-14);
        const double e = model::energy(AnsatzParams(s.alpha, s.beta), DimensionlessSystem(k, 0.0)).total;
        REQUIRE(std::abs(e - s.energy_over_ND) <= 1e-13);
        REQUIRE(s.energy_over_ND > -1.0);
        REQUIRE(s.energy_over_ND <= -0.25);
    }
}

TEST_CASE("large k approaches the well depth") {
    CHECK(analytic::exact_morse_ground_energy(1e6) > -1.0);
    CHECK(analytic::exact_morse_ground_energy(1e6) < -0.99999);
}
