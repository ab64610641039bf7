#include "doctest.h"

#include "nhse/bessel.hpp"
#include "nhse/errors.hpp"
#include "nhse/evolver.hpp"
#include "nhse/parallel.hpp"
#include "nhse/phase.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace nhse;

namespace {

constexpr double kOmega = 0.46;

Verdict verdict_of(double r0, double r1) { return classify(DriveField::from_ratios(r0, r1, kOmega)).verdict; }

}  // namespace

TEST_CASE("classify reproduces the reference points") {
    CHECK(verdict_of(0.5, 1.3) == Verdict::stark_localized);
    CHECK(verdict_of(1.0, 3.832) == Verdict::dynamically_localized);
    CHECK(verdict_of(1.0, 5.7) == Verdict::skin);
    CHECK(verdict_of(0.0, 2.405) == Verdict::dynamically_localized);
}

TEST_CASE("classify decision tree") {
    CHECK(classify(DriveField::none()).verdict == Verdict::skin);
    const auto dc = classify(DriveField::static_field(0.01));
    CHECK(dc.verdict == Verdict::stark_localized);
    CHECK(std::isinf(dc.e0_over_omega));
    CHECK_FALSE(dc.evidence.resonant);

    const auto pt = classify(DriveField::from_ratios(2.0, 1.0, kOmega));
    CHECK(pt.evidence.resonant);
    REQUIRE(pt.evidence.bessel_order);
    CHECK(*pt.evidence.bessel_order == 2);
    CHECK(*pt.evidence.bessel_value == doctest::Approx(0.11490348493190048).epsilon(1e-12));
    CHECK(pt.verdict == Verdict::skin);

    const auto near = classify(DriveField::from_ratios(1.0 + 1e-6, 3.832, kOmega));
    CHECK(near.verdict == Verdict::stark_localized);
    CHECK(near.evidence.near_resonant);

    CHECK_THROWS_AS(classify(DriveField{0.1, 0.5, 0.0}), std::invalid_argument);
}

TEST_CASE("verdict invariants") {
    for (double r0 : {0.0, 0.25, 1.0, 2.0, 3.0, 0.999}) {
        for (double r1 = 0.1; r1 < 20.0; r1 += 0.037) {
            const auto pt = classify(DriveField::from_ratios(r0, r1, kOmega));
            if (pt.verdict == Verdict::dynamically_localized) {
                CHECK(pt.evidence.resonant);
                CHECK(std::fabs(*pt.evidence.bessel_value) < 1e-3);
            }
            if (pt.verdict == Verdict::stark_localized) CHECK_FALSE(pt.evidence.resonant);
        }
    }
}

TEST_CASE("classify is scale invariant") {
    for (double r0 : {0.0, 0.5, 1.0, 2.0}) {
        for (double r1 : {1.3, 2.4048255576957728, 3.8317059702075123, 5.7}) {
            const DriveField d = DriveField::from_ratios(r0, r1, kOmega);
            const Verdict v = classify(d).verdict;
            for (double s : {0.125, 3.0, 1024.0}) {
                CHECK(classify(DriveField{d.dc * s, d.ac * s, d.omega * s}).verdict == v);
            }
        }
    }
}

TEST_CASE("pure ac localization set is the J0 zero table") {
    const BesselZeroTable table(0, 10);
    for (double z : table.zeros) CHECK(verdict_of(0.0, z) == Verdict::dynamically_localized);
    for (std::size_t k = 0; k + 1 < table.zeros.size(); ++k) {
        CHECK(verdict_of(0.0, 0.5 * (table.zeros[k] + table.zeros[k + 1])) == Verdict::skin);
    }
    const auto row = scan_phase_diagram({0.0}, table.zeros, LatticeParams::from_gamma(160, 1.0, 0.73), ScanMode::formula);
    REQUIRE(row.size() == table.zeros.size());
    for (std::size_t k = 0; k < row.size(); ++k) {
        CHECK(row[k].e1_over_omega == table.zeros[k]);
        CHECK(row[k].verdict == Verdict::dynamically_localized);
    }
}

TEST_CASE("oscillation range") {
    const LatticeParams p{100, 0.8, 1.0, 1.0};
    const double x_star = 0.66957196631903425777;
    CHECK(oscillation_range(p, 1.0) == doctest::Approx(4.0 / x_star).epsilon(1e-12));
    CHECK(oscillation_range(p, 0.5) == doctest::Approx(2.0 * oscillation_range(p, 1.0)).epsilon(1e-14));
    CHECK(oscillation_range(p, -1.0) == oscillation_range(p, 1.0));
    CHECK_THROWS_AS(oscillation_range(p, 0.0), std::domain_error);
    CHECK_THROWS_AS(oscillation_range(LatticeParams{100, 1.0, 1.0, 1.0}, 0.1), std::domain_error);

    const LatticeParams big = LatticeParams::from_gamma(160, 1.0, 0.769);
    CHECK(oscillation_range(big, 0.005) > 160.0);
    CHECK(finite_size_skin(big, 0.005));
    CHECK_FALSE(finite_size_skin(big, 0.5));
}

TEST_CASE("oscillation range bounds the integrated excursion") {
    // furthest site holding the last 0.1% of probability, maximised over one Bloch period
    const LatticeParams p{41, 0.8, 1.0, 1.0};
    const int n0 = 21;
    const double e0 = 1.0;
    EvolveOptions opt;
    opt.stride = 10;
    const auto res = integrate(p, DriveField::static_field(e0), InitialState::site(n0), 2.0 * std::numbers::pi / e0, opt);
    int excursion = 0;
    for (int row = 0; row < static_cast<int>(res.times.size()); ++row) {
        const Eigen::VectorXd prob = res.normalized_probabilities(row);
        double acc = 0.0;
        for (int i = 0; i < prob.size(); ++i) {
            acc += prob[i];
            if (acc >= 0.999) {
                excursion = std::max(excursion, i + 1 - n0);
                break;
            }
        }
    }
    const double range = oscillation_range(p, e0);
    MESSAGE("excursion " << excursion << " predicted " << range);
    CHECK(std::fabs(excursion / range - 1.0) < 0.25);
}

TEST_CASE("empty grid") {
    const LatticeParams p = LatticeParams::from_gamma(160, 1.0, 0.73);
    CHECK(scan_phase_diagram({}, {1.0}, p, ScanMode::formula).empty());
    CHECK(scan_phase_diagram({1.0}, {}, p, ScanMode::dynamics).empty());
}

TEST_CASE("short chain is a configuration error") {
    const LatticeParams p = LatticeParams::from_gamma(20, 1.0, 0.73);
    CHECK_THROWS_AS(classify_dynamics(p, DriveField::from_ratios(1.0, 5.7, kOmega)), ConfigError);
    CHECK_THROWS_AS(scan_phase_diagram({1.0}, {5.7}, p, ScanMode::dynamics), ConfigError);
}

TEST_CASE("dynamics and formula verdicts agree away from crossover bands") {
    const LatticeParams p = LatticeParams::from_gamma(160, 1.0, 0.73);
    const std::vector<double> e0w{0.5, 1.0, 2.0};
    const std::vector<double> e1w{1.3, 5.7};
    const auto formula = scan_phase_diagram(e0w, e1w, p, ScanMode::formula);
    const auto dynamics = scan_phase_diagram(e0w, e1w, p, ScanMode::dynamics, {}, default_threads());
    REQUIRE(formula.size() == dynamics.size());
    for (std::size_t i = 0; i < formula.size(); ++i) {
        CAPTURE(formula[i].e0_over_omega);
        CAPTURE(formula[i].e1_over_omega);
        CHECK(dynamics[i].e0_over_omega == formula[i].e0_over_omega);
        CHECK(dynamics[i].e1_over_omega == formula[i].e1_over_omega);
        CHECK(dynamics[i].verdict == formula[i].verdict);
        CHECK(dynamics[i].evidence.com_drift.has_value());
    }
}
