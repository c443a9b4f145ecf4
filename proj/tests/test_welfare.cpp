#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ccasc/welfare.hpp"

using namespace ccasc;

namespace {

ModelParams calib(double F) {
    ModelParams p;
    p.bonus = {BonusKind::Proportional, 0.0};
    p.cost_c = 0.6;
    p.cost_F = F;
    return p;
}

}  // namespace

TEST_CASE("belief distribution grid") {
    const BeliefDistribution dist;
    const auto pts = dist.points();
    REQUIRE(pts.size() == 97);
    CHECK(pts.front() == 0.02);
    CHECK(pts.back() == 0.98);
    CHECK(pts[48] == doctest::Approx(0.5).epsilon(1e-12));
    BeliefDistribution reversed;
    reversed.lo = 0.5;
    reversed.hi = 0.2;
    CHECK_THROWS_AS(reversed.validate(), std::invalid_argument);
    BeliefDistribution closed;
    closed.lo = 0.0;
    CHECK_THROWS_AS(closed.validate(), std::invalid_argument);
}

TEST_CASE("welfare record decomposition and lambda linearity") {
    for (double mu : {0.3, 0.5, 0.62}) {
        for (double k : {0.0, 0.4, 1.1}) {
            for (double lambda : {0.0, 0.5, 1.0}) {
                const WelfareRecord r = equilibrium_welfare(mu, k, lambda, calib(0.06));
                const double recon = r.correctness + lambda * r.bonus_expectation -
                                     r.precision_cost - r.fixed_cost;
                CHECK(std::abs(r.welfare - recon) <= 1e-12);
                CHECK(r.bonus_expectation >= 0.0);
            }
            const WelfareRecord w0 = equilibrium_welfare(mu, k, 0.0, calib(0.06));
            const WelfareRecord w1 = equilibrium_welfare(mu, k, 1.0, calib(0.06));
            CHECK(std::abs((w1.welfare - w0.welfare) - w1.bonus_expectation) <= 1e-12);
        }
    }
}

TEST_CASE("equilibrium welfare examples") {
    const WelfareRecord center = equilibrium_welfare(0.5, 0.0, 1.0, calib(0.06));
    CHECK(center.welfare == doctest::Approx(0.52091597803202).epsilon(1e-7));
    CHECK(center.bonus_expectation == 0.0);

    const WelfareRecord extreme = equilibrium_welfare(0.98, 0.0, 1.0, calib(0.06));
    CHECK(extreme.welfare == doctest::Approx(0.98).epsilon(1e-12));
    CHECK(extreme.rho_star == 0.0);
    CHECK(extreme.fixed_cost == 0.0);

    CHECK_THROWS_AS(equilibrium_welfare(0.5, 0.0, 1.5, calib(0.06)),
                    std::invalid_argument);
}

TEST_CASE("planner welfare coincides with preference-respecting equilibrium") {
    for (double mu : {0.35, 0.5, 0.8}) {
        for (double k : {0.0, 0.6}) {
            const WelfareRecord p = planner_welfare(mu, k, calib(0.06));
            const WelfareRecord e = equilibrium_welfare(mu, k, 1.0, calib(0.06));
            CHECK(p.welfare == e.welfare);
            CHECK(p.rho_star == e.rho_star);
        }
    }
    // prohibitive fixed cost: uninformed welfare
    ModelParams heavy = calib(1e6);
    const WelfareRecord r = planner_welfare(0.7, 0.0, heavy);
    CHECK(r.welfare == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("aggregate welfare") {
    const BeliefDistribution dist;
    // zero bonus at k=0 makes lambda irrelevant
    const AggregateWelfare a0 = aggregate_welfare(0.0, 0.0, calib(0.06), dist);
    const AggregateWelfare a1 = aggregate_welfare(0.0, 1.0, calib(0.06), dist);
    CHECK(a0.average == a1.average);
    CHECK(a0.min == a1.min);
    CHECK(a0.max == a1.max);
    CHECK(a0.max == doctest::Approx(0.98).epsilon(1e-12));
    CHECK(a0.min <= a0.average);
    CHECK(a0.average <= a0.max);

    // increasing F weakly lowers average welfare
    const double w_light = aggregate_welfare(0.3, 1.0, calib(0.06), dist).average;
    const double w_mid = aggregate_welfare(0.3, 1.0, calib(0.10), dist).average;
    const double w_heavy = aggregate_welfare(0.3, 1.0, calib(0.16), dist).average;
    CHECK(w_mid <= w_light + 1e-9);
    CHECK(w_heavy <= w_mid + 1e-9);
}

TEST_CASE("detect_shape classifies series") {
    const double tol = 1e-9;
    CHECK(detect_shape(std::vector<double>{1, 2, 3}, tol) == CurveShape::Increasing);
    CHECK(detect_shape(std::vector<double>{3, 2, 1}, tol) == CurveShape::Decreasing);
    CHECK(detect_shape(std::vector<double>{1, 3, 2}, tol) == CurveShape::InvertedU);
    CHECK(detect_shape(std::vector<double>{1, 2, 5, 4, 2}, tol) == CurveShape::InvertedU);
    CHECK(detect_shape(std::vector<double>{2, 1, 3}, tol) == CurveShape::Other);
    CHECK(detect_shape(std::vector<double>{1, 1, 2}, tol) == CurveShape::Other);
    CHECK(detect_shape(std::vector<double>{1, 2, 2, 1}, tol) == CurveShape::Other);
    CHECK(detect_shape(std::vector<double>{5, 5, 5}, tol) == CurveShape::Other);
    // sub-tolerance wiggles are flat
    CHECK(detect_shape(std::vector<double>{0.0, 5e-10, 1e-9}, tol) == CurveShape::Other);
    CHECK_THROWS_AS(detect_shape(std::vector<double>{1, 2}, tol), std::invalid_argument);
}

TEST_CASE("preference-respecting curve rises on the heavy calibration") {
    // with the bonus fully valued, average welfare increases in k here
    const BeliefDistribution dist;
    const std::vector<double> ks = {0.0, 0.3, 0.6, 0.9};
    const auto curve = welfare_curve(ks, 1.0, calib(0.16), dist);
    std::vector<double> values;
    for (const auto& pt : curve) values.push_back(pt.aggregate.average);
    CHECK(detect_shape(values) == CurveShape::Increasing);
}

TEST_CASE("local k-derivative") {
    // center, lambda = 1: bonus contributes exactly 1/2, rho* is flat in k
    const DerivativeEstimate d = local_k_derivative(0.5, 1.0, calib(0.06));
    CHECK(d.estimate == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(d.step_consistency < 1e-4);

    // lambda = 0 at an investing interior belief: envelope makes it ~0
    const DerivativeEstimate z = local_k_derivative(0.49, 0.0, calib(0.06));
    CHECK(std::abs(z.estimate) < 1e-4);

    // aggregate right-derivative is nonnegative for lambda = 1 (both calibrations)
    const BeliefDistribution dist;
    CHECK(local_k_derivative_aggregate(1.0, calib(0.06), dist).estimate >= -1e-6);
    CHECK(local_k_derivative_aggregate(1.0, calib(0.16), dist).estimate >= -1e-6);
}

TEST_CASE("eventual decline of downweighted welfare in k") {
    const BeliefDistribution dist;
    const std::vector<double> ks = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2};
    const auto curve = welfare_curve(ks, 0.0, calib(0.16), dist);
    double peak = curve.front().aggregate.average;
    for (const auto& pt : curve) peak = std::max(peak, pt.aggregate.average);
    const double tail = aggregate_welfare(2.0, 0.0, calib(0.16), dist).average;
    CHECK(tail < peak);
}

TEST_CASE("reference table rows") {
    const auto table = reference_welfare_table();
    REQUIRE(table.size() == 5);
    CHECK(table[0].k == 0.0);
    CHECK(table[0].avg == doctest::Approx(0.6569));
    CHECK(table[4].k == 0.8);
}
