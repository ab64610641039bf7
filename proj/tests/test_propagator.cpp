#include "doctest.h"

#include "nhse/bessel.hpp"
#include "nhse/errors.hpp"
#include "nhse/propagator.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <random>

using namespace nhse;
using std::numbers::pi;

namespace {

double jref(int n, double x) { return boost::math::cyl_bessel_j(static_cast<double>(n), x); }

// Direct quadrature of int_0^t f(s) ds with a high-order rule on unit panels.
template <class F>
double integral(F f, double t) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const int panels = std::max(1, static_cast<int>(std::ceil(t * 4.0)));
    double s = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = t * i / panels, b = t * (i + 1) / panels;
        s += GK::integrate(f, a, b, 6, 1e-12);
    }
    return s;
}

double eta_ref(const DriveField& d, double t) {
    return d.dc * t + (d.omega > 0 ? d.ac / d.omega * std::sin(d.omega * t) : 0.0);
}

// exp(-i H t) on an open chain, sites offset so that `center` maps to the middle.
Eigen::VectorXcd expm_chain(const LatticeParams& p, double e0, int n0_index, double t) {
    const Eigen::MatrixXcd h = build_hamiltonian(p, DriveField::static_field(e0), 0.0);
    Eigen::MatrixXcd a = cplx(0.0, -t) * h;
    const Eigen::MatrixXcd u = a.exp();
    return u.col(n0_index);
}

}  // namespace

TEST_CASE("eta closed form") {
    CHECK(eta(DriveField::none(), 3.0) == 0.0);
    CHECK(eta(DriveField::static_field(0.5), 4.0) == 2.0);
    const DriveField d{0.46, 1.10596, 0.46};
    CHECK(eta(d, 2.0 * pi / 0.46) == doctest::Approx(2.0 * pi).epsilon(1e-14));
}

TEST_CASE("uv special cases") {
    const UV z = uv(DriveField::none(), 5.0);
    CHECK(z.u == 5.0);
    CHECK(z.v == 0.0);
    const UV dc = uv(DriveField::static_field(1.0), 2.0 * pi);
    CHECK(std::fabs(dc.u) < 1e-15);
    CHECK(std::fabs(dc.v) < 1e-15);
    const UV dc2 = uv(DriveField::static_field(0.7), 1.3);
    CHECK(dc2.u == doctest::Approx(std::sin(0.91) / 0.7).epsilon(1e-14));
    CHECK(dc2.v == doctest::Approx((1.0 - std::cos(0.91)) / 0.7).epsilon(1e-13));
    const UV at0 = uv({0.3, 0.9, 0.4}, 0.0);
    CHECK(at0.u == 0.0);
    CHECK(at0.v == 0.0);
}

TEST_CASE("uv series agrees with direct quadrature") {
    const DriveField drives[] = {
        {0.0, 2.4048 * 0.46, 0.46}, {1.0, 2.0, 1.0}, {0.23, 0.598, 0.46},
        {0.46, 3.832 * 0.46, 0.46}, {0.3, 1.7, 0.9},   {-0.8, 0.4, 0.4},
    };
    for (const auto& d : drives) {
        for (double t : {0.01, 0.7, 3.3, 17.0, 61.5}) {
            const UV s = uv(d, t);
            const double u = integral([&](double x) { return std::cos(eta_ref(d, x)); }, t);
            const double v = integral([&](double x) { return std::sin(eta_ref(d, x)); }, t);
            CHECK(std::fabs(s.u - u) < 1e-10);
            CHECK(std::fabs(s.v - v) < 1e-10);
            const UV q = uv_quadrature(d, t);
            CHECK(std::fabs(q.u - u) < 1e-10);
            CHECK(std::fabs(q.v - v) < 1e-10);
        }
    }
}

TEST_CASE("resonant secular growth") {
    const DriveField d = DriveField::from_ratios(1.0, 2.0, 1.0);
    const double t1 = 50.0 * 2.0 * pi, t2 = 60.0 * 2.0 * pi;
    const UV a = uv(d, t1), b = uv(d, t2);
    // at stroboscopic times only (-1)^nu J_nu(E1/omega) t survives
    CHECK((b.u - a.u) / (t2 - t1) == doctest::Approx(-jref(1, 2.0)).epsilon(1e-10));
    CHECK(std::fabs(b.v - a.v) < 1e-9);
}

TEST_CASE("pure ac at a Bessel zero stays bounded") {
    const DriveField d = DriveField::from_ratios(0.0, 2.4048, 0.46);
    const double T = d.period();
    const UV w = uv(d, 50.0 * T);
    CHECK(std::fabs(w.u / (50.0 * T)) < 1e-4);
    CHECK(std::fabs(w.u / (50.0 * T) - jref(0, 2.4048)) < 1e-12);
}

TEST_CASE("U^2 + V^2 = u^2 + v^2 with U, V from their own integrals") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> ue0(-1.2, 1.2), ue1(0.0, 3.0), uw(0.2, 1.5), ut(0.0, 25.0);
    for (int i = 0; i < 200; ++i) {
        const DriveField d{ue0(rng), ue1(rng), uw(rng)};
        const double t = ut(rng);
        const DriveFunctionals f = drive_functionals(d, t);
        CHECK(std::fabs(f.U * f.U + f.V * f.V - (f.u * f.u + f.v * f.v)) < 1e-10 * std::max(1.0, t * t));
        if (i % 20 == 0) {
            const double e = eta_ref(d, t);
            const double U = integral([&](double s) { return std::cos(e - eta_ref(d, s)); }, t);
            const double V = integral([&](double s) { return std::sin(e - eta_ref(d, s)); }, t);
            CHECK(std::fabs(f.U - U) < 1e-10);
            CHECK(std::fabs(f.V - V) < 1e-10);
        }
    }
}

TEST_CASE("resonance detection") {
    CHECK(detect_resonance(DriveField::from_ratios(1.0, 2.0, 0.46)).integer);
    CHECK(detect_resonance(DriveField::from_ratios(1.0, 2.0, 0.46)).order == 1);
    CHECK(detect_resonance(DriveField::from_ratios(0.0, 2.0, 0.46)).integer);
    CHECK_FALSE(detect_resonance(DriveField::from_ratios(0.5, 1.3, 0.46)).integer);
    const auto near = detect_resonance(DriveField::from_ratios(2.0 + 1e-5, 1.0, 1.0));
    CHECK_FALSE(near.integer);
    CHECK(near.near_integer);
    CHECK_FALSE(detect_resonance(DriveField::static_field(1.0)).defined);
}

TEST_CASE("amplitudes at t = 0 reproduce the initial state") {
    const auto p = LatticeParams::from_gamma(3, 1.0, 0.3);
    InitialState psi;
    psi.amplitudes = {{4, cplx(0.6, 0.1)}, {7, cplx(-0.2, 0.5)}};
    const auto c = evolve_amplitudes(p, {0.3, 0.8, 0.7}, psi, 0.0);
    for (int m = c.first; m <= c.last(); ++m) {
        const cplx want = psi.amplitudes.count(m) ? psi.amplitudes.at(m) : cplx(0.0);
        CHECK(std::abs(c.at(m) - want) < 1e-15);
    }
}

TEST_CASE("Hermitian undriven amplitudes") {
    const LatticeParams p{3, 1.0, 1.0, 1.0};
    const double t = 4.2;
    const auto c = evolve_amplitudes(p, DriveField::none(), InitialState::site(0), t);
    for (int m = -20; m <= 20; ++m) {
        const double j = jref(m, 2.0 * t);
        CHECK(std::norm(c.at(m)) == doctest::Approx(j * j).epsilon(1e-10).scale(1e-14));
        // C_m = (-i)^m J_m(2t)
        const cplx want = std::pow(cplx(0.0, -1.0), m) * j;
        CHECK(std::abs(c.at(m) - want) < 1e-13);
    }
}

TEST_CASE("amplitudes match the matrix exponential on a wide chain") {
    const int L = 81, mid = 41;
    for (double e0 : {0.0, 0.37, 1.0}) {
        const LatticeParams p{L, 0.8, 1.0, 1.0};
        InitialState psi;
        psi.amplitudes = {{mid, cplx(1.0 / std::sqrt(2.0))}, {mid + 1, cplx(1.0 / std::sqrt(2.0))}};
        const double t = 3.0;
        const Eigen::MatrixXcd h = build_hamiltonian(p, DriveField::static_field(e0), 0.0);
        const Eigen::MatrixXcd a = cplx(0.0, -t) * h;
        Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(L);
        c0[mid - 1] = c0[mid] = 1.0 / std::sqrt(2.0);
        const Eigen::VectorXcd want = a.exp() * c0;
        const auto got = evolve_amplitudes(p, DriveField::static_field(e0), psi, t);
        double err = 0.0;
        for (int m = 1; m <= L; ++m) err = std::max(err, std::abs(got.at(m) - want[m - 1]));
        CHECK(err < 1e-10);
    }
}

TEST_CASE("zero hopping product is unsupported") {
    CHECK_THROWS_AS(evolve_amplitudes({3, 0.0, 1.0, 1.0}, DriveField::none(), InitialState::site(0), 1.0),
                    UnsupportedConfiguration);
    CHECK_THROWS_AS(rho_single_site({3, 1.0, 0.0, 1.0}, DriveField::none(), 0, 1.0), UnsupportedConfiguration);
}

TEST_CASE("dc revival is exact") {
    const auto p = LatticeParams::from_gamma(3, 1.0, 0.4);
    for (double e0 : {0.03, 0.3, 1.0}) {
        for (int N = 1; N <= 5; ++N) {
            const auto rho = rho_single_site(p, DriveField::static_field(e0), 17, 2.0 * pi * N / e0);
            CHECK(std::fabs(rho.at(17) - 1.0) < 1e-12);
            for (int m = rho.first; m <= rho.last(); ++m) {
                if (m != 17) CHECK(rho.at(m) < 1e-12);
            }
        }
    }
}

TEST_CASE("dc closed form for rho") {
    const LatticeParams p{3, 0.8, 1.0, 1.0};
    const double e0 = 0.6, t = 2.9;
    const auto rho = rho_single_site(p, DriveField::static_field(e0), 0, t);
    const double arg = 4.0 * std::sqrt(0.8) / e0 * std::sin(e0 * t / 2.0);
    for (int m = -8; m <= 8; ++m) {
        const double j = jref(m, arg);
        CHECK(rho.at(m) == doctest::Approx(j * j * std::pow(1.25, m)).epsilon(1e-10).scale(1e-15));
    }
}

TEST_CASE("Hermitian normalization") {
    const LatticeParams p{3, 1.0, 1.0, 1.0};
    for (const DriveField& d : {DriveField::none(), DriveField::static_field(0.4), DriveField{0.5, 1.3, 1.0}}) {
        for (double t : {0.5, 5.0, 40.0, 400.0}) {
            const auto rho = rho_single_site(p, d, 0, t);
            double s = 0.0;
            for (double r : rho.values) s += r;
            CHECK(std::fabs(s - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("reflection identity J_L <-> J_R") {
    const LatticeParams a{3, 0.7, 1.3, 1.0};
    const LatticeParams b{3, 1.3, 0.7, 1.0};
    const int n0 = 5;
    for (const DriveField& d : {DriveField::none(), DriveField::static_field(0.3), DriveField{0.46, 0.9, 0.46}}) {
        for (double t : {1.0, 7.5, 30.0}) {
            const auto ra = rho_single_site(a, d, n0, t);
            const auto rb = rho_single_site(b, d, n0, t);
            for (int m = ra.first; m <= ra.last(); ++m) CHECK(ra.at(m) == rb.at(2 * n0 - m));
        }
    }
}

TEST_CASE("asymptotic forms") {
    const auto p = LatticeParams::from_gamma(3, 1.0, 0.73);
    const DriveField ac = DriveField::from_ratios(0.0, 6.1, 0.46);
    const double t = 40.0 * ac.period();
    const auto ex = rho_single_site(p, ac, 0, t, RhoForm::exact);
    const auto as = rho_single_site(p, ac, 0, t, RhoForm::asymptotic);
    std::vector<std::pair<double, int>> order;
    for (int m = ex.first; m <= ex.last(); ++m) order.emplace_back(ex.at(m), m);
    std::sort(order.rbegin(), order.rend());
    for (int i = 0; i < 10; ++i) {
        const int m = order[static_cast<std::size_t>(i)].second;
        CHECK(std::fabs(as.at(m) / ex.at(m) - 1.0) < 0.02);
    }
    CHECK_THROWS_AS(rho_single_site(p, DriveField::from_ratios(0.5, 1.3, 0.46), 0, t, RhoForm::asymptotic),
                    std::domain_error);
    const DriveField res = DriveField::from_ratios(1.0, 5.7, 0.46);
    const double tr = 40.0 * res.period();
    const auto er = rho_single_site(p, res, 0, tr, RhoForm::exact);
    const auto ar = rho_single_site(p, res, 0, tr, RhoForm::asymptotic);
    int peak = er.first;
    for (int m = er.first; m <= er.last(); ++m) if (er.at(m) > er.at(peak)) peak = m;
    CHECK(std::fabs(ar.at(peak) / er.at(peak) - 1.0) < 0.02);
}

TEST_CASE("long-time ratio") {
    CHECK(rho_ratio_longtime({3, 1.0, 1.0, 1.0}) == 1.0);
    CHECK(rho_ratio_longtime({3, 0.8, 1.0, 1.0}) == 1.25);
    const double r = time_averaged_ratio({3, 0.8, 1.0, 1.0}, 7, 50.0, 500.0);
    CHECK(std::fabs(r - 1.25) < 0.05 * 1.25);
}

TEST_CASE("time-averaged ratio matches direct quadrature") {
    const LatticeParams p{3, 0.8, 1.0, 1.0};
    const double c = 2.0 * std::sqrt(0.8);
    auto sq = [&](int k) {
        using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
        double s = 0.0;
        for (int i = 0; i < 450; ++i) {
            s += GK::integrate([&](double x) { const double j = jref(k, c * x); return j * j; }, 50.0 + i,
                               51.0 + i, 15, 1e-13);
        }
        return s;
    };
    CHECK(time_averaged_ratio(p, 7, 50.0, 500.0) == doctest::Approx(1.25 * sq(7) / sq(6)).epsilon(1e-9));
}

TEST_CASE("Paris bound") {
    const LatticeParams p{3, 0.8, 1.0, 1.0};
    const DriveField d = DriveField::static_field(1.0);
    CHECK(upper_bound_rho(p, d, 0, 8, 0.0) == 0.0);
    const auto rho = rho_single_site(p, d, 0, pi);
    CHECK(upper_bound_rho(p, d, 0, 8, pi) >= rho.at(8));
    CHECK_THROWS_AS(upper_bound_rho(p, d, 0, 3, pi), std::domain_error);
    CHECK_THROWS_AS(upper_bound_rho(p, {1.0, 0.5, 1.0}, 0, 8, pi), std::domain_error);

    // super-exponential: successive log ratios keep decreasing
    double prev_diff = 0.0;
    for (int k = 4; k < 60; ++k) {
        const double diff = std::log(upper_bound_rho(p, d, 0, k + 1, pi)) - std::log(upper_bound_rho(p, d, 0, k, pi));
        if (k > 4) CHECK(diff < prev_diff);
        prev_diff = diff;
    }
}
