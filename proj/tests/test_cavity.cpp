#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cavsim/cavity.hpp"

using namespace cavsim;

namespace {
const CavityParams kTurchette{20.0, 75.0, 2.5};
const CavityParams kDayan{70.0, 165.0, 2.6};
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS((CavityParams{-1.0, 1.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CavityParams{1.0, 0.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((CavityParams{1.0, 1.0, -2.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS(
        (CavityParams{std::nan(""), 1.0, 1.0}.validate()), std::invalid_argument);
    CHECK_NOTHROW(kTurchette.validate());
    CHECK_THROWS_AS(reflection_coefficient(kTurchette, std::nan("")),
                    std::invalid_argument);
}

TEST_CASE("uncoupled resonant reflection is -1")
{
    const CavityParams p{0.0, 10.0, 3.7, 5.0, 1.0};
    CHECK(std::abs(reflection_coefficient(p, 5.0) - Complex{-1.0, 0.0}) < 1e-15);
    CHECK(std::abs(empty_cavity_reflection(p, 5.0) - Complex{-1.0, 0.0}) < 1e-15);
}

TEST_CASE("resonant coupled reflection closed form")
{
    // x = 1.5 gives (9-1)/(9+1)
    CavityParams p{1.5, 1.0, 1.0};
    CHECK(reflection_coefficient(p, 0.0).real() == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(std::abs(reflection_coefficient(p, 0.0).imag()) < 1e-15);

    // Turchette parameter set, x = 20/sqrt(187.5)
    CHECK(reflection_coefficient(kTurchette, 0.0).real()
          == doctest::Approx(0.790209790210).epsilon(1e-9));
}

TEST_CASE("empty cavity reflection values")
{
    CavityParams p{0.0, 8.0, 1.0};
    CHECK(std::abs(empty_cavity_reflection(p, 0.0) + 1.0) < 1e-15);

    // far-detuned limit approaches +1
    CHECK(empty_cavity_reflection(p, 1e12).real() == doctest::Approx(1.0).epsilon(1e-9));

    // detuning kappa/2 gives (i-1)/(i+1) = i
    p.omega_c = 4.0;
    const Complex r0 = empty_cavity_reflection(p, 0.0);
    CHECK(std::abs(r0 - Complex{0.0, 1.0}) < 1e-15);
}

TEST_CASE("empty cavity reflection has unit modulus everywhere")
{
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> rate(0.01, 200.0);
    std::uniform_real_distribution<double> det(-500.0, 500.0);
    for (int i = 0; i < 200; ++i) {
        const CavityParams p{0.0, rate(rng), rate(rng), det(rng), det(rng)};
        CHECK(std::abs(empty_cavity_reflection(p, det(rng)))
              == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("passivity and the g = 0 reduction")
{
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> rate(0.01, 150.0);
    std::uniform_real_distribution<double> det(-400.0, 400.0);
    for (int i = 0; i < 500; ++i) {
        const CavityParams p{rate(rng), rate(rng), rate(rng), det(rng), det(rng)};
        const double wp = det(rng);
        CHECK(std::abs(reflection_coefficient(p, wp)) <= 1.0 + 1e-12);

        CavityParams uncoupled = p;
        uncoupled.g = 0.0;
        CHECK(std::abs(reflection_coefficient(uncoupled, wp)
                       - empty_cavity_reflection(uncoupled, wp)) < 1e-13);
    }
}

TEST_CASE("resonant_reflection closed form")
{
    CHECK(resonant_reflection(0.0) == doctest::Approx(-1.0));
    CHECK(resonant_reflection(0.5) == doctest::Approx(0.0));
    CHECK(resonant_reflection(3.0) == doctest::Approx(35.0 / 37.0).epsilon(1e-14));
    CHECK_THROWS_AS(resonant_reflection(-0.1), std::invalid_argument);

    // monotone increasing, -1 at x=0, approaching 1
    double prev = -1.0;
    for (double x = 0.05; x < 50.0; x += 0.05) {
        const double r = resonant_reflection(x);
        CHECK(r > prev);
        CHECK(r < 1.0);
        prev = r;
    }
    CHECK(resonant_reflection(1e8) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("on resonance the full formula matches the closed form")
{
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> rate(0.01, 150.0);
    for (int i = 0; i < 200; ++i) {
        const CavityParams p{rate(rng), rate(rng), rate(rng)};
        const Complex r = reflection_coefficient(p, 0.0);
        CHECK(std::abs(r.real() - resonant_reflection(p.coupling_ratio())) < 1e-12);
        CHECK(std::abs(r.imag()) < 1e-12);
    }
}

TEST_CASE("regime check on the experimental parameter sets")
{
    const RegimeReport t = regime_check(kTurchette);
    CHECK(t.g2_over_kappa == doctest::Approx(400.0 / 75.0).epsilon(1e-12));
    CHECK(t.kappa_dominates);
    CHECK(t.g2_dominates);
    CHECK(t.bad_cavity);

    const RegimeReport d = regime_check(kDayan);
    CHECK(d.g2_over_kappa == doctest::Approx(4900.0 / 165.0).epsilon(1e-12));
    CHECK(d.bad_cavity);

    const RegimeReport flat = regime_check(CavityParams{1.0, 1.0, 1.0});
    CHECK_FALSE(flat.kappa_dominates);
    CHECK_FALSE(flat.bad_cavity);

    // a stricter margin can fail a set that passes at the default
    const RegimeReport strict = regime_check(kDayan, 6.0);
    CHECK_FALSE(strict.kappa_dominates);
}

TEST_CASE("reflection spectrum")
{
    CHECK_THROWS_AS(reflection_spectrum(kDayan, 0.0, 0.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(reflection_spectrum(kDayan, 1.0, -1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(reflection_spectrum(kDayan, -1.0, 1.0, 1), std::invalid_argument);

    const auto rows = reflection_spectrum(kDayan, -400.0, 400.0, 801);
    REQUIRE(rows.size() == 801);
    CHECK(rows.front().omega_p == doctest::Approx(-400.0));
    CHECK(rows.back().omega_p == doctest::Approx(400.0));
    for (const auto& row : rows) {
        CHECK(std::abs(row.r) <= 1.0 + 1e-12);
        CHECK(std::abs(row.r0) == doctest::Approx(1.0).epsilon(1e-13));
    }

    // the resonant row reproduces the closed form
    const auto& mid = rows[400];
    CHECK(mid.omega_p == doctest::Approx(0.0));
    CHECK(mid.r.real()
          == doctest::Approx(resonant_reflection(kDayan.coupling_ratio())).epsilon(1e-12));
}
