#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "cavsim/cavity.hpp"
#include "cavsim/metrics.hpp"

using namespace cavsim;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("closed-form CNOT metrics at pinned points")
{
    // r = 1 is the ideal gate for any input
    CHECK(cnot_fidelity_closed(1.0, {0.3, 0.7}) == Approx(1.0).epsilon(1e-14));
    CHECK(cnot_efficiency_closed(1.0, {0.3, 0.7}) == Approx(1.0).epsilon(1e-14));

    // r = 0 absorbs half of the cavity-arm amplitude
    CHECK(cnot_fidelity_closed(0.0, {kPi / 4, 0.0}) == Approx(0.75).epsilon(1e-14));
    CHECK(cnot_efficiency_closed(0.0, {kPi / 4, 0.0}) == Approx(0.75).epsilon(1e-14));
    CHECK(cnot_fidelity_closed(0.0, {kPi / 4, kPi / 4}) == Approx(0.5).epsilon(1e-14));
    CHECK(cnot_efficiency_closed(0.0, {kPi / 4, kPi / 4}) == Approx(0.5).epsilon(1e-14));

    // photon fully R: the gate is trivially perfect and lossless
    CHECK(cnot_fidelity_closed(0.3, {0.0, 1.1}) == Approx(1.0).epsilon(1e-14));
    CHECK(cnot_efficiency_closed(0.3, {0.0, 1.1}) == Approx(1.0).epsilon(1e-14));

    CHECK(cnot_fidelity_closed(0.8, {0.3, 0.7})
          == Approx(0.9967307438099315).epsilon(1e-13));
    CHECK(cnot_efficiency_closed(0.8, {0.3, 0.7})
          == Approx(0.9687891379405438).epsilon(1e-13));
}

TEST_CASE("closed-form Toffoli metrics at pinned points")
{
    const InputAngles equal{kPi / 4, kPi / 4, kPi / 4};
    CHECK(toffoli_fidelity_closed(0.8, equal)
          == Approx(0.981145408842443).epsilon(1e-13));
    CHECK(toffoli_efficiency_closed(0.8, equal)
          == Approx(0.827281).epsilon(1e-13));
    CHECK(toffoli_xi_terms(0.8, equal).xi6 == Approx(0.006561).epsilon(1e-13));

    const InputAngles mixed{0.4, 0.9, 1.2};
    CHECK(toffoli_fidelity_closed(0.8, mixed)
          == Approx(0.994007405797357).epsilon(1e-13));
    CHECK(toffoli_efficiency_closed(0.8, mixed)
          == Approx(0.952272539764713).epsilon(1e-13));
    CHECK(toffoli_xi_terms(0.8, mixed).xi6
          == Approx(0.00128826043747965).epsilon(1e-12));

    CHECK(toffoli_fidelity_closed(1.0, mixed) == Approx(1.0).epsilon(1e-14));
    CHECK(toffoli_efficiency_closed(1.0, mixed) == Approx(1.0).epsilon(1e-14));
    CHECK(toffoli_xi_terms(1.0, mixed).xi6 == Approx(0.0));
}

TEST_CASE("xi terms are non-negative and sum to the surviving norm")
{
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> rdist(-1.0, 1.0);
    std::uniform_real_distribution<double> adist(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 500; ++trial) {
        const double r = rdist(rng);
        const InputAngles angles{adist(rng), adist(rng), adist(rng)};
        const ToffoliXi xi = toffoli_xi_terms(r, angles);
        CHECK(xi.xi1 >= 0.0);
        CHECK(xi.xi2 >= 0.0);
        CHECK(xi.xi3 >= 0.0);
        CHECK(xi.xi4 >= 0.0);
        CHECK(xi.xi5 >= 0.0);
        CHECK(xi.xi6 >= 0.0);
        CHECK(xi.sum() <= 1.0 + 1e-12);
        CHECK(xi.out_port() == Approx(toffoli_efficiency_closed(r, angles)));
    }
}

TEST_CASE("closed-form and engine routes agree to 1e-12")
{
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> rdist(-1.0, 1.0);
    std::uniform_real_distribution<double> adist(0.0, 2.0 * kPi);

    for (int trial = 0; trial < 1000; ++trial) {
        const double r = rdist(rng);
        const InputAngles angles{adist(rng), adist(rng), adist(rng)};

        const GateMetrics cm = metrics_from_engine(GateKind::Cnot, r, angles);
        CHECK(std::abs(cm.fidelity - cnot_fidelity_closed(r, angles)) < 1e-12);
        CHECK(std::abs(cm.efficiency - cnot_efficiency_closed(r, angles)) < 1e-12);

        const GateMetrics tm = metrics_from_engine(GateKind::Toffoli, r, angles);
        CHECK(std::abs(tm.fidelity - toffoli_fidelity_closed(r, angles)) < 1e-12);
        CHECK(std::abs(tm.efficiency - toffoli_efficiency_closed(r, angles)) < 1e-12);
    }
}

TEST_CASE("metrics stay in [0, 1] for real r in [-1, 1]")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> rdist(-1.0, 1.0);
    std::uniform_real_distribution<double> adist(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 500; ++trial) {
        const double r = rdist(rng);
        const InputAngles angles{adist(rng), adist(rng), adist(rng)};
        const double fc = cnot_fidelity_closed(r, angles);
        const double pc = cnot_efficiency_closed(r, angles);
        const double ft = toffoli_fidelity_closed(r, angles);
        const double pt = toffoli_efficiency_closed(r, angles);
        for (double v : {fc, pc, ft, pt}) {
            CHECK(v >= -1e-12);
            CHECK(v <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("near-degenerate inputs stay finite")
{
    // r = 0 with photon almost fully L and the atom along the dark
    // combination absorbs essentially the whole state; the fidelity ratio
    // must still come back finite, not NaN
    const double f = cnot_fidelity_closed(0.0, {kPi / 2, kPi / 4});
    CHECK(std::isfinite(f));
    CHECK(f < 1e-12);
    CHECK(cnot_efficiency_closed(0.0, {kPi / 2, kPi / 4}) < 1e-30);
}

TEST_CASE("averages at r = 1 are exactly unity")
{
    const AverageResult c = average_cnot(1.0, 16);
    CHECK(c.fidelity == Approx(1.0).epsilon(1e-14));
    CHECK(c.efficiency == Approx(1.0).epsilon(1e-14));
    const AverageResult t = average_toffoli(1.0, 8);
    CHECK(t.fidelity == Approx(1.0).epsilon(1e-14));
    CHECK(t.efficiency == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("average node counts are validated")
{
    CHECK_THROWS_AS(average_cnot(0.8, 3), std::invalid_argument);
    CHECK_THROWS_AS(average_cnot(0.8, 2), std::invalid_argument);
    CHECK_THROWS_AS(average_toffoli(0.8, 7), std::invalid_argument);
}

TEST_CASE("averages at the strong-coupling demonstration point")
{
    // (g, kappa, gamma)/2pi = (20, 75, 2.5) MHz gives r = 113/143
    const double r = resonant_reflection(20.0 / std::sqrt(75.0 * 2.5));
    CHECK(r == Approx(0.79020979020979).epsilon(1e-14));

    const AverageResult c = average_cnot(r);
    CHECK(c.fidelity == Approx(0.99428902306).epsilon(1e-9));
    CHECK(c.efficiency == Approx(0.906107878136).epsilon(1e-9));

    const AverageResult t = average_toffoli(r);
    CHECK(t.fidelity == Approx(0.988498108958).epsilon(1e-9));
    CHECK(t.efficiency == Approx(0.863101635433).epsilon(1e-9));
}

TEST_CASE("quadrature is converged: doubling the nodes changes nothing")
{
    const double r = 0.8;
    const AverageResult c1 = average_cnot(r, 64);
    const AverageResult c2 = average_cnot(r, 128);
    CHECK(std::abs(c1.fidelity - c2.fidelity) < 1e-10);
    CHECK(std::abs(c1.efficiency - c2.efficiency) < 1e-10);
    CHECK(c2.fidelity_err < 1e-10);
    CHECK(c2.efficiency_err < 1e-10);

    const AverageResult t1 = average_toffoli(r, 32);
    const AverageResult t2 = average_toffoli(r, 64);
    CHECK(std::abs(t1.fidelity - t2.fidelity) < 1e-10);
    CHECK(std::abs(t1.efficiency - t2.efficiency) < 1e-10);
    CHECK(t2.fidelity_err < 1e-10);
    CHECK(t2.efficiency_err < 1e-10);
}

TEST_CASE("averages grow monotonically with the coupling ratio")
{
    double prev_fc = 0.0, prev_pc = 0.0, prev_ft = 0.0, prev_pt = 0.0;
    for (double x : {0.6, 1.0, 1.5, 2.5, 4.0, 8.0}) {
        const double r = resonant_reflection(x);
        const AverageResult c = average_cnot(r, 32);
        const AverageResult t = average_toffoli(r, 16);
        CHECK(c.fidelity > prev_fc);
        CHECK(c.efficiency > prev_pc);
        CHECK(t.fidelity > prev_ft);
        CHECK(t.efficiency > prev_pt);
        prev_fc = c.fidelity;
        prev_pc = c.efficiency;
        prev_ft = t.fidelity;
        prev_pt = t.efficiency;
    }
}
