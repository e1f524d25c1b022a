#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/distributions/gamma.hpp>

#include "doctest.h"
#include "morse_gpe/errors.hpp"
#include "morse_gpe/model.hpp"

using namespace morse_gpe;

namespace {

std::vector<double> uniform_grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (double y = lo; y <= hi + 1e-12; y += step) g.push_back(y);
    return g;
}

}  // namespace

TEST_CASE("system and ansatz validation") {
    CHECK_NOTHROW(DimensionlessSystem(2.0, 0.0));
    CHECK_THROWS_AS(DimensionlessSystem(1.5, 0.1), ValidityError);
    CHECK_THROWS_AS(DimensionlessSystem(1.0, 0.0), ValidityError);
    CHECK_THROWS_AS(DimensionlessSystem(3.0, -0.1), ArgumentError);
    CHECK_THROWS_AS(DimensionlessSystem(NAN, 0.1), ArgumentError);
    CHECK_THROWS_AS(AnsatzParams(0.0, 1.0), ArgumentError);
    CHECK_THROWS_AS(AnsatzParams(1.0, -1.0), ArgumentError);
    const auto p = AnsatzParams::on_constraint(1.0, 3.0);
    CHECK(p.beta() == doctest::Approx(0.5));
}

TEST_CASE("morse potential landmarks") {
    for (double k : {2.0, 3.0, 7.5}) {
        CHECK(model::morse_potential(0.0, k) == doctest::Approx(-1.0));
        const double far = model::morse_potential(60.0 * k, k);
        CHECK(far < 0.0);
        CHECK(far > -1e-20);
    }
    CHECK(std::abs(model::morse_potential(-3.0 * std::numbers::ln2, 3.0)) < 1e-14);
}

TEST_CASE("C(alpha) exact values") {
    CHECK(model::c_of_alpha(1.0) == doctest::Approx(0.375).epsilon(1e-13));
    CHECK(model::c_of_alpha(2.0) == doctest::Approx(0.546875).epsilon(1e-13));
    CHECK(model::c_of_alpha(0.5) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK_THROWS_AS(model::c_of_alpha(0.0), DomainError);
    CHECK_THROWS_AS(model::c_of_alpha(-1.0), DomainError);
    // direct Gamma(4a) overflows near a ~ 43; the log form does not
    CHECK(std::isfinite(model::c_of_alpha(100.0)));
}

TEST_CASE("property: C(alpha) log form equals the duplication form") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> as(0.05, 50.0);
    for (int i = 0; i < 5000; ++i) {
        const double a = as(rng);
        const double direct = model::c_of_alpha(a);
        const double dup = model::c_of_alpha_duplication(a);
        REQUIRE(std::abs(direct - dup) <= 1e-12 * std::abs(dup));
    }
}

TEST_CASE("f1 values") {
    CHECK(model::f1(1.0, 3.0) == 0.0);
    CHECK(model::f1(2.0, 3.0) == doctest::Approx(0.64));
    CHECK(model::f1(1e6, 3.0) < 1.0);
    CHECK(model::f1(1e6, 3.0) > 1.0 - 1e-10);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ks(2.0, 40.0);
    for (int i = 0; i < 1000; ++i) {
        const double k = ks(rng);
        REQUIRE(std::abs(model::f1((k - 1.0) / 2.0, k)) <= 1e-15);
    }
}

TEST_CASE("f2 values") {
    // Psi(4) = 11/6 - gamma and Psi(8) = 363/140 - gamma, evaluated at 30 digits.
    CHECK(model::f2_paper(2.0, 3.0) == doctest::Approx(3.7925691104216514).epsilon(1e-12));
    CHECK(model::f2_paper(1.0, 2.0) == doctest::Approx(1.2526607297069074).epsilon(1e-12));
    CHECK(model::f2_paper(1e-3, 3.0) < 0.0);
    CHECK(model::f2_paper(1e-3, 3.0) == doctest::Approx(-1.581951368552137).epsilon(1e-10));
}

TEST_CASE("energy examples") {
    const auto e0 = model::energy(AnsatzParams(1.0, 0.5), DimensionlessSystem(3.0, 0.0));
    CHECK(e0.total == doctest::Approx(-4.0 / 9.0).epsilon(1e-14));
    CHECK(e0.interaction_part == 0.0);
    CHECK(e0.total == e0.oscillator_part + e0.interaction_part);

    const auto e1 = model::energy(AnsatzParams(2.0, 5.0 / 6.0), DimensionlessSystem(3.0, 0.1688));
    CHECK(e1.total == doctest::Approx(-0.25764336344813080).epsilon(1e-12));

    const auto e2 = model::energy(AnsatzParams(1.2, 17.0 / 30.0), DimensionlessSystem(3.0, 0.1));
    CHECK(e2.total == doctest::Approx(-0.39519939295311416).epsilon(1e-12));
}

TEST_CASE("energy on the constraint line") {
    CHECK(model::energy_on_constraint(1.0, DimensionlessSystem(3.0, 0.0)) ==
          doctest::Approx(-4.0 / 9.0).epsilon(1e-14));
    CHECK(model::energy_on_constraint(6.2, DimensionlessSystem(3.0, 0.0)) ==
          doctest::Approx(0.45240464344941957).epsilon(1e-13));
}

TEST_CASE("property: constrained energy equals the two-parameter energy on the line") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> as(0.02, 40.0), ks(2.0, 10.0), gs(0.0, 3.0);
    for (int i = 0; i < 5000; ++i) {
        const DimensionlessSystem sys(ks(rng), gs(rng));
        const double a = as(rng);
        const double full = model::energy(AnsatzParams::on_constraint(a, sys.k()), sys).total;
        REQUIRE(std::abs(model::energy_on_constraint(a, sys) - full) <= 1e-12);
    }
}

TEST_CASE("property: closed-form constrained slope matches central differences") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> as(0.05, 30.0), ks(2.0, 8.0), gs(0.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const DimensionlessSystem sys(ks(rng), gs(rng));
        const double a = as(rng);
        const double h = 1e-6 * std::max(1.0, a);
        const double fd = (model::energy_on_constraint(a + h, sys) -
                           model::energy_on_constraint(a - h, sys)) / (2.0 * h);
        REQUIRE(std::abs(fd - model::energy_on_constraint_slope(a, sys)) <= 1e-7);
    }
}

TEST_CASE("g' = 0: grid scan along the line bottoms out at the closed form") {
    for (double k : {2.0, 3.0, 5.0, 8.5}) {
        const DimensionlessSystem sys(k, 0.0);
        double best_a = 0.0;
        double best_e = 1e300;
        const double step = 1e-3;
        for (double a = 0.01; a < 20.0; a += step) {
            const double e = model::energy_on_constraint(a, sys);
            if (e < best_e) {
                best_e = e;
                best_a = a;
            }
        }
        CHECK(std::abs(best_a - (k - 1.0) / 2.0) <= step);
        const double exact = -std::pow((k - 1.0) / k, 2);
        CHECK(best_e >= exact - 1e-14);
        CHECK(best_e - exact < 1e-5);
    }
}

TEST_CASE("property: interaction part is non-negative and vanishes only at g' = 0") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> as(0.02, 40.0), bs(0.05, 5.0), gs(1e-6, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const AnsatzParams p(as(rng), bs(rng));
        REQUIRE(model::energy(p, DimensionlessSystem(3.0, gs(rng))).interaction_part > 0.0);
        REQUIRE(model::energy(p, DimensionlessSystem(3.0, 0.0)).interaction_part == 0.0);
    }
}

TEST_CASE("density peaks and normalisation") {
    CHECK(model::peak_location(AnsatzParams(1.0, 0.5)) == 2.0);
    CHECK(model::peak_location(AnsatzParams(2.0, 0.5)) == 4.0);
    CHECK(model::peak_location(AnsatzParams(3.0, 3.0)) == 1.0);

    const auto grid = uniform_grid(1e-4, 60.0, 1e-3);
    const auto prof = model::density(AnsatzParams(1.2, 0.56), grid);
    CHECK(std::abs(model::density_mass(prof) - 1.0) < 1e-6);

    // the sampled maximum sits at alpha/beta
    const auto fine = uniform_grid(0.001, 10.0, 0.001);
    const auto p3 = model::density(AnsatzParams(1.0, 0.5), fine);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < p3.d_values.size(); ++i) {
        if (p3.d_values[i] > p3.d_values[imax]) imax = i;
    }
    CHECK(std::abs(p3.y_values[imax] - 2.0) <= 0.001);
}

TEST_CASE("property: density integrates to one against dy/y") {
    // below alpha = 1 the integrand has a kink at y = 0 and the trapezoid rule converges slowly
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> as(1.0, 6.0), bs(0.3, 3.0);
    for (int i = 0; i < 50; ++i) {
        const AnsatzParams p(as(rng), bs(rng));
        const double hi = (2.0 * p.alpha() + 40.0) / (2.0 * p.beta()) + 10.0;
        const auto prof = model::density(p, uniform_grid(1e-5, hi, 2e-4));
        REQUIRE(std::abs(model::density_mass(prof) - 1.0) < 1e-6);
    }
}

TEST_CASE("density IQR matches gamma-distribution quartiles") {
    // d(y) dy / y is the Gamma(shape 2a, scale 1/(2b)) law in y.
    const AnsatzParams p(2.0, 5.0 / 6.0);
    const auto prof = model::density(p, uniform_grid(1e-4, 40.0, 1e-3));
    boost::math::gamma_distribution<double> law(2.0 * p.alpha(), 1.0 / (2.0 * p.beta()));
    const double iqr = boost::math::quantile(law, 0.75) - boost::math::quantile(law, 0.25);
    CHECK(model::density_iqr(prof) == doctest::Approx(iqr).epsilon(1e-4));
}

TEST_CASE("density grid errors") {
    const AnsatzParams p(1.0, 0.5);
    CHECK_THROWS_AS(model::density(p, std::vector<double>{}), ArgumentError);
    CHECK_THROWS_AS(model::density(p, std::vector<double>{0.0, 1.0}), ArgumentError);
    CHECK_THROWS_AS(model::density(p, std::vector<double>{1.0, 1.0}), ArgumentError);
    CHECK_THROWS_AS(model::density(p, std::vector<double>{2.0, 1.0}), ArgumentError);
}
