#include "doctest.h"

#include "nhse/bessel.hpp"
#include "nhse/errors.hpp"
#include "nhse/evolver.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

using namespace nhse;
using std::numbers::pi;

namespace {

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("initial slice and bookkeeping") {
    const auto p = LatticeParams::from_gamma(21, 1.0, 0.3);
    const auto res = integrate(p, DriveField::static_field(0.2), InitialState::site(11), 1.0, {0.01, 10});
    REQUIRE(res.times.size() == 11);
    CHECK(res.times.front() == 0.0);
    CHECK(res.times.back() == 1.0);
    for (std::size_t i = 1; i < res.times.size(); ++i) CHECK(res.times[i] > res.times[i - 1]);
    CHECK(res.amplitudes(0, 10) == cplx(1.0));
    CHECK(res.amplitudes.row(0).cwiseAbs().sum() == 1.0);
    CHECK(res.method == Method::rk4);

    const auto zero = integrate(p, DriveField::none(), InitialState::site(3), 0.0);
    CHECK(zero.times.size() == 1);
}

TEST_CASE("stride that does not divide the step count keeps the last step") {
    const auto p = LatticeParams::from_gamma(9, 1.0, 0.1);
    const auto res = integrate(p, DriveField::none(), InitialState::site(5), 1.0, {0.1, 3});
    REQUIRE(res.times.size() == 5);
    CHECK(res.times.back() == 1.0);
}

TEST_CASE("Hermitian zero-field matches Bessel") {
    const LatticeParams p{101, 1.0, 1.0, 1.0};
    const double t = 6.0;
    for (Frame fr : {Frame::lab, Frame::comoving}) {
        const auto res = integrate(p, DriveField::none(), InitialState::site(51), t, {1e-3, 1000, false, fr});
        const Eigen::VectorXd rho = res.probabilities(static_cast<int>(res.times.size()) - 1);
        double err = 0.0;
        for (int m = 1; m <= 101; ++m) {
            const double j = boost::math::cyl_bessel_j(static_cast<double>(m - 51), 2.0 * t);
            err = std::max(err, std::fabs(rho[m - 1] - j * j));
        }
        CHECK(err < 1e-8);
    }
}

TEST_CASE("rk4 matches the matrix exponential for a static field") {
    const LatticeParams p{31, 0.7, 1.2, 1.0};
    const double t = 2.5, e0 = 0.35;
    const Eigen::MatrixXcd h = build_hamiltonian(p, DriveField::static_field(e0), 0.0);
    const Eigen::MatrixXcd u = (cplx(0.0, -t) * h).exp();
    for (Frame fr : {Frame::lab, Frame::comoving}) {
        const auto res = integrate(p, DriveField::static_field(e0), InitialState::site(16), t, {1e-3, 2500, false, fr});
        CHECK(max_abs_diff(res.amplitudes.row(1).transpose(), u.col(15)) < 1e-9);
    }
}

TEST_CASE("fourth-order convergence") {
    const LatticeParams p{41, 1.0, 1.0, 1.0};
    const double t = 4.0;
    auto final_row = [&](double dt) {
        const auto r = integrate(p, DriveField::none(), InitialState::site(21), t, {dt, 1 << 30});
        return Eigen::VectorXcd(r.amplitudes.row(r.amplitudes.rows() - 1).transpose());
    };
    const double dt = 0.1;
    const auto ref = final_row(dt / 8.0);
    const double e1 = (final_row(dt) - ref).cwiseAbs().maxCoeff();
    const double e2 = (final_row(dt / 2.0) - ref).cwiseAbs().maxCoeff();
    CHECK(e1 / e2 > 14.0);
    CHECK(e1 / e2 < 18.0);
}

TEST_CASE("Hermitian norm conservation") {
    const LatticeParams p{60, 1.0, 1.0, 1.0};
    for (const DriveField& d : {DriveField::none(), DriveField::static_field(0.3), DriveField{0.2, 0.5, 0.8}}) {
        const auto res = integrate(p, d, InitialState::site(30), 100.0, {0.0, 500, false, Frame::comoving});
        for (int r = 0; r < static_cast<int>(res.times.size()); ++r) {
            CHECK(std::fabs(res.probabilities(r).sum() - 1.0) <= 1e-8);
        }
    }
}

TEST_CASE("renormalized runs recover the raw amplitudes") {
    const auto p = LatticeParams::from_gamma(40, 1.0, 0.6);
    const DriveField d{0.1, 0.3, 0.9};
    const auto raw = integrate(p, d, InitialState::site(20), 12.0, {0.002, 500});
    const auto nrm = integrate(p, d, InitialState::site(20), 12.0, {0.002, 500, true});
    CHECK(nrm.normalized);
    for (int r = 0; r < static_cast<int>(nrm.times.size()); ++r) {
        CHECK(std::fabs(nrm.probabilities(r).sum() - 1.0) < 1e-12);
        const Eigen::RowVectorXcd back = std::exp(nrm.log_norm[static_cast<std::size_t>(r)]) * nrm.amplitudes.row(r);
        CHECK((back - raw.amplitudes.row(r)).norm() < 1e-10 * raw.amplitudes.row(r).norm());
    }
}

TEST_CASE("overflow is reported") {
    const LatticeParams p{400, 0.01, 2.0, 1.0};
    CHECK_THROWS_AS(integrate(p, DriveField::none(), InitialState::site(200), 600.0, {0.01, 1 << 30, false,
                                                                                       Frame::comoving}),
                    OverflowError);
}

TEST_CASE("step size guard and argument checks") {
    const auto p = LatticeParams::from_gamma(161, 1.0, 0.2);
    const DriveField d = DriveField::static_field(1.0);
    CHECK_THROWS_AS(integrate(p, d, InitialState::site(81), 1.0, {0.1}), std::invalid_argument);
    CHECK_NOTHROW(integrate(p, d, InitialState::site(81), 1.0, {0.1, 1, false, Frame::comoving}));
    CHECK_THROWS_AS(integrate(p, d, InitialState::site(0), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate(p, d, InitialState::site(162), 1.0), std::invalid_argument);
    CHECK(recommended_dt(p, d) <= 0.05 / 161.0);
    const DriveField ac{0.0, 1.0, 0.46};
    const double dt = recommended_dt(p, ac, Frame::comoving);
    const double ratio = ac.period() / dt;
    CHECK(ratio == std::round(ratio));
    CHECK(ratio >= 4096.0);
}

TEST_CASE("safe window") {
    const double xs = solve_x_star(0.8, 1.0);
    CHECK(safe_window({161, 0.8, 1.0, 1.0}, 81) == doctest::Approx(75.0 * xs / 2.0).epsilon(1e-14));
    CHECK(safe_window({161, 1.0, 1.0, 1.0}, 81) == doctest::Approx(37.5).epsilon(1e-14));
    CHECK_THROWS_AS(safe_window({161, 0.8, 1.0, 1.0}, 1), std::domain_error);
    CHECK_THROWS_AS(safe_window({161, 0.8, 1.0, 1.0}, 158), std::domain_error);
}

TEST_CASE("center of mass") {
    const LatticeParams p{61, 1.0, 1.0, 1.0};
    const auto res = integrate(p, DriveField::none(), InitialState::site(31), 8.0, {0.005, 100});
    for (double c : center_of_mass(res)) CHECK(std::fabs(c - 31.0) < 1e-9);
    CHECK(std::fabs(com_drift(res)) < 1e-9);
}

TEST_CASE("strong dc keeps the packet near its start, weak dc lets it reach the edge") {
    const auto p = LatticeParams::from_gamma(160, 1.0, 0.769);
    const Frame cm = Frame::comoving;
    const auto strong = integrate(p, DriveField::static_field(0.5), InitialState::site(80), 200.0, {0.01, 100, true, cm});
    double max_right = 0.0;
    for (double c : center_of_mass(strong)) max_right = std::max(max_right, c - 80.0);
    CHECK(max_right < 30.0);

    const auto weak = integrate(p, DriveField::static_field(0.005), InitialState::site(80), 200.0, {0.01, 100, true, cm});
    const Eigen::VectorXd last = weak.normalized_probabilities(static_cast<int>(weak.times.size()) - 1);
    CHECK(last.tail(10).sum() > 0.9);
}

TEST_CASE("analytic amplitudes on the chain") {
    const LatticeParams p{161, 0.8, 1.0, 1.0};
    const auto a = analytic_on_chain(p, DriveField::none(), InitialState::site(81), {0.0, 1.0, 2.0});
    CHECK(a.method == Method::analytic);
    CHECK(a.amplitudes(0, 80) == cplx(1.0));
    CHECK_THROWS_AS(analytic_on_chain(p, DriveField::none(), InitialState::site(81), {1.0, 1.0}),
                    std::invalid_argument);
}
