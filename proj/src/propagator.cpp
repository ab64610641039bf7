#include "nhse/propagator.hpp"

#include "nhse/bessel.hpp"
#include "nhse/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nhse {

namespace {

constexpr double kTailTol = 1e-16;
constexpr double kSeriesTol = 1e-14;

void check_time(double t) {
    if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("propagator: t must be finite and >= 0");
}

// int_0^t exp(i w s) ds
cplx phase_integral(double w, double t) {
    const double x = w * t;
    if (std::fabs(x) < 1e-8) return {t * (1.0 - x * x / 6.0), 0.5 * x * t};
    const double s = std::sin(0.5 * x);
    return {std::sin(x) / w, 2.0 * s * s / w};
}

void require_nonzero_hops(const LatticeParams& p) {
    p.validate();
    if (!(p.hop_left * p.hop_right > 0.0)) {
        throw UnsupportedConfiguration("propagator: closed forms need J_L J_R > 0");
    }
}

// The potential E(t) a n enters only through a eta(t).
DriveField site_drive(const LatticeParams& p, const DriveField& d) {
    return {d.dc * p.spacing, d.ac * p.spacing, d.omega};
}

int window_half_width(double z) {
    return bessel_tail_order(z, kTailTol);
}

}  // namespace

double eta(const DriveField& d, double t) {
    double e = d.dc * t;
    if (d.has_ac()) e += (d.ac / d.omega) * std::sin(d.omega * t);
    return e;
}

UV uv(const DriveField& d, double t) {
    check_time(t);
    d.validate();
    if (d.is_zero()) return {t, 0.0};
    if (!d.has_ac()) {
        const cplx w = phase_integral(d.dc, t);
        return {w.real(), w.imag()};
    }
    const double beta = d.ac / d.omega;
    const int kmax = bessel_tail_order(beta, kSeriesTol);
    const auto jk = bessel_j_orders(kmax, beta);
    cplx sum{0.0, 0.0};
    // Sum smallest terms first: |k| descending.
    for (int k = kmax; k >= 0; --k) {
        const double j = jk[static_cast<std::size_t>(k)];
        sum += j * phase_integral(d.dc + k * d.omega, t);
        if (k > 0) {
            const double jneg = (k % 2 == 0) ? j : -j;
            sum += jneg * phase_integral(d.dc - k * d.omega, t);
        }
    }
    return {sum.real(), sum.imag()};
}

UV uv_quadrature(const DriveField& d, double t, double abs_tol) {
    check_time(t);
    d.validate();
    if (t == 0.0) return {};
    double scale = 1.0;
    if (d.dc != 0.0) scale = std::min(scale, 1.0 / std::fabs(d.dc));
    if (d.has_ac()) scale = std::min(scale, 1.0 / (d.omega + std::fabs(d.ac)));
    const int panels = std::max(1, static_cast<int>(std::ceil(t / scale)));
    const double h = t / panels;
    const double tol = abs_tol / panels;
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    double u = 0.0, v = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = i * h;
        const double b = (i + 1 == panels) ? t : a + h;
        double err = 0.0;
        u += GK::integrate([&](double s) { return std::cos(eta(d, s)); }, a, b, 12, tol, &err);
        v += GK::integrate([&](double s) { return std::sin(eta(d, s)); }, a, b, 12, tol, &err);
    }
    return {u, v};
}

DriveFunctionals drive_functionals(const DriveField& d, double t) {
    const UV w = uv(d, t);
    const double e = eta(d, t);
    const double c = std::cos(e), s = std::sin(e);
    return {e, w.u, w.v, w.u * c + w.v * s, w.u * s - w.v * c};
}

Resonance detect_resonance(const DriveField& d) {
    Resonance r;
    if (!d.has_ac()) return r;
    d.validate();
    r.defined = true;
    r.ratio = d.dc / d.omega;
    const double nu = std::round(r.ratio);
    const double off = std::fabs(r.ratio - nu);
    r.order = static_cast<int>(nu);
    r.integer = off < 1e-9;
    r.near_integer = !r.integer && off <= 1e-3;
    return r;
}

void InitialState::validate() const {
    bool any = false;
    for (const auto& [site, c] : amplitudes) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument("initial state: non-finite amplitude at site " + std::to_string(site));
        }
        any = any || c != cplx(0.0);
    }
    if (!any) throw std::invalid_argument("initial state: needs at least one nonzero amplitude");
}

SiteAmplitudes evolve_amplitudes(const LatticeParams& p, const DriveField& d, const InitialState& psi0,
                                 double t) {
    require_nonzero_hops(p);
    psi0.validate();
    check_time(t);

    const DriveField da = site_drive(p, d);
    const double kappa = std::sqrt(p.hop_left * p.hop_right);
    const UV w = uv(da, t);
    const double mod_w = std::hypot(w.u, w.v);
    const double z = 2.0 * kappa * mod_w;
    const double e = eta(da, t);

    // (r^{1/2})^{m-n} e^{-i eta n} = e^{-i eta m} q^{m-n}, q = i sqrt(J_R/J_L) W/|W|.
    const cplx unit_w = mod_w > 0.0 ? cplx(w.u, w.v) / mod_w : cplx(1.0);
    const double ratio_sqrt = std::sqrt(p.hop_right / p.hop_left);
    const cplx q = cplx(0.0, ratio_sqrt) * unit_w;

    const int K = window_half_width(z);
    const auto jk = bessel_j_orders(K, z);
    // b[k + K] = (-1)^k J_k(z) q^k for k = -K..K
    std::vector<cplx> b(static_cast<std::size_t>(2 * K + 1));
    {
        const cplx qm = -q;
        const cplx qinv = cplx(-1.0) / q;
        cplx pw(1.0);
        cplx pw_neg(1.0);
        for (int k = 0; k <= K; ++k) {
            const double j = jk[static_cast<std::size_t>(k)];
            b[static_cast<std::size_t>(K + k)] = j * pw;
            // J_{-k} = (-1)^k J_k
            const double jneg = (k % 2 == 0) ? j : -j;
            b[static_cast<std::size_t>(K - k)] = jneg * pw_neg;
            pw *= qm;
            pw_neg *= qinv;
        }
    }

    const int lo = psi0.amplitudes.begin()->first - K;
    const int hi = psi0.amplitudes.rbegin()->first + K;
    SiteAmplitudes out;
    out.first = lo;
    out.values.assign(static_cast<std::size_t>(hi - lo + 1), cplx(0.0));
    for (const auto& [n, c0] : psi0.amplitudes) {
        if (c0 == cplx(0.0)) continue;
        for (int k = -K; k <= K; ++k) {
            out.values[static_cast<std::size_t>(n + k - lo)] += c0 * b[static_cast<std::size_t>(k + K)];
        }
    }
    for (int i = 0; i < static_cast<int>(out.values.size()); ++i) {
        out.values[static_cast<std::size_t>(i)] *= std::polar(1.0, -e * (lo + i));
    }
    return out;
}

SiteProbabilities rho_single_site(const LatticeParams& p, const DriveField& d, int n0, double t,
                                  RhoForm form) {
    require_nonzero_hops(p);
    check_time(t);
    d.validate();

    const DriveField da = site_drive(p, d);
    double amplitude = 0.0;  // stands for sqrt(u^2 + v^2)
    if (form == RhoForm::exact || !d.has_ac()) {
        const UV w = uv(da, t);
        amplitude = std::hypot(w.u, w.v);
    } else {
        const Resonance r = detect_resonance(da);
        if (!r.integer) {
            throw std::domain_error("rho_single_site: asymptotic form needs integer E0/omega, got " +
                                    std::to_string(r.ratio));
        }
        amplitude = std::fabs(bessel_j(r.order, da.ac / da.omega)) * t;
    }
    const double z = 2.0 * std::sqrt(p.hop_left * p.hop_right) * amplitude;
    const int K = window_half_width(z);
    const auto jk = bessel_j_orders(K, z);
    // log J_R - log J_L flips sign exactly under J_L <-> J_R
    const double log_ratio = std::log(p.hop_right) - std::log(p.hop_left);

    SiteProbabilities out;
    out.first = n0 - K;
    out.values.resize(static_cast<std::size_t>(2 * K + 1));
    for (int k = -K; k <= K; ++k) {
        const double j = jk[static_cast<std::size_t>(std::abs(k))];
        out.values[static_cast<std::size_t>(k + K)] = j * j * std::exp(k * log_ratio);
    }
    return out;
}

double rho_ratio_longtime(const LatticeParams& p) {
    require_nonzero_hops(p);
    return p.hop_right / p.hop_left;
}

double time_averaged_ratio(const LatticeParams& p, int k, double t0, double t1) {
    require_nonzero_hops(p);
    if (!(t0 >= 0.0) || !(t1 > t0)) throw std::invalid_argument("time_averaged_ratio: need 0 <= t0 < t1");
    const double c = 2.0 * std::sqrt(p.hop_left * p.hop_right);
    // Panels shorter than a quarter oscillation of J^2 keep the fixed rule exact to ~1e-14.
    const int panels = std::max(1, static_cast<int>(std::ceil((t1 - t0) * c * 2.0)));
    const double h = (t1 - t0) / panels;
    using G = boost::math::quadrature::gauss<double, 20>;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = t0 + i * h;
        num += G::integrate([&](double s) { const double j = bessel_j(k, c * s); return j * j; }, a, a + h);
        den += G::integrate([&](double s) { const double j = bessel_j(k - 1, c * s); return j * j; }, a, a + h);
    }
    return (p.hop_right / p.hop_left) * num / den;
}

double upper_bound_rho(const LatticeParams& p, const DriveField& d, int n0, int m, double t) {
    p.validate();
    if (!(p.hop_left > 0.0 && p.hop_right > 0.0)) {
        throw std::domain_error("upper_bound_rho: needs J_L, J_R > 0");
    }
    if (d.has_ac() || d.dc == 0.0) throw std::domain_error("upper_bound_rho: needs a pure dc drive");
    check_time(t);
    const int k = m - n0;
    const double e0 = std::fabs(d.dc * p.spacing);
    if (!(4.0 * std::sqrt(p.hop_left * p.hop_right) <= k * e0)) {
        throw std::domain_error("upper_bound_rho: outside 4 sqrt(J_L J_R) <= (m - n0)|E0|");
    }
    const double chi = std::sqrt(p.hop_left / p.hop_right);
    const double x = 4.0 * p.hop_right * std::fabs(std::sin(0.5 * d.dc * p.spacing * t)) / (k * e0);
    if (x == 0.0) return 0.0;
    const double jkk = bessel_j(k, static_cast<double>(k));
    // J_k(k)^2 (x e^{1 - chi x})^{2k}, assembled in logs
    return std::exp(2.0 * std::log(jkk) + 2.0 * k * (std::log(x) + 1.0 - chi * x));
}

}  // namespace nhse
