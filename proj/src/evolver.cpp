#include "nhse/evolver.hpp"

#include "nhse/bessel.hpp"
#include "nhse/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nhse {

namespace {

constexpr double kRk4ImagLimit = 2.8;
constexpr double kOverflowNorm = 1e280;

double max_field(const DriveField& d) { return std::fabs(d.dc) + std::fabs(d.ac); }

double midpoint(int L) { return 0.5 * (L + 1); }

// dy = -i H y for the open chain in the requested frame.
struct Rhs {
    const LatticeParams& p;
    const DriveField& d;
    Frame frame;
    double ref;

    void operator()(double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) const {
        const int L = static_cast<int>(y.size());
        const cplx mi(0.0, -1.0);
        if (frame == Frame::lab) {
            const double e = field_at(d, t) * p.spacing;
            for (int n = 0; n < L; ++n) {
                cplx h = e * ((n + 1) - ref) * y[n];
                if (n + 1 < L) h += p.hop_left * y[n + 1];
                if (n > 0) h += p.hop_right * y[n - 1];
                dy[n] = mi * h;
            }
        } else {
            const cplx ph = std::polar(1.0, -eta(d, t) * p.spacing);
            const cplx left = p.hop_left * ph;
            const cplx right = p.hop_right * std::conj(ph);
            for (int n = 0; n < L; ++n) {
                cplx h(0.0);
                if (n + 1 < L) h += left * y[n + 1];
                if (n > 0) h += right * y[n - 1];
                dy[n] = mi * h;
            }
        }
    }
};

// Maps the integration variable back to lab amplitudes C_m at time t.
Eigen::VectorXcd to_lab(const LatticeParams& p, const DriveField& d, Frame frame, double ref, double t,
                        const Eigen::VectorXcd& y) {
    const double e = eta(d, t) * p.spacing;
    const int L = static_cast<int>(y.size());
    Eigen::VectorXcd out(L);
    if (frame == Frame::lab) {
        const cplx g = std::polar(1.0, -e * ref);
        for (int n = 0; n < L; ++n) out[n] = g * y[n];
    } else {
        for (int n = 0; n < L; ++n) out[n] = std::polar(1.0, -e * (n + 1)) * y[n];
    }
    return out;
}

Eigen::VectorXcd chain_state(const LatticeParams& p, const InitialState& psi0) {
    psi0.validate();
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(p.length);
    for (const auto& [site, c] : psi0.amplitudes) {
        if (site < 1 || site > p.length) {
            throw std::invalid_argument("integrate: initial site " + std::to_string(site) + " outside 1.." +
                                        std::to_string(p.length));
        }
        y[site - 1] = c;
    }
    return y;
}

}  // namespace

Eigen::VectorXd EvolutionResult::probabilities(int row) const {
    return amplitudes.row(row).cwiseAbs2().transpose();
}

Eigen::VectorXd EvolutionResult::normalized_probabilities(int row) const {
    Eigen::VectorXd r = probabilities(row);
    const double s = r.sum();
    if (s > 0.0) r /= s;
    return r;
}

double stability_limit(const LatticeParams& p, const DriveField& d, Frame frame) {
    double bound = std::fabs(p.hop_left) + std::fabs(p.hop_right);
    if (frame == Frame::lab) bound += std::fabs(p.spacing) * max_field(d) * 0.5 * (p.length - 1);
    return kRk4ImagLimit / bound;
}

double recommended_dt(const LatticeParams& p, const DriveField& d, Frame frame) {
    p.validate();
    d.validate();
    const double reach = frame == Frame::lab ? p.length * std::fabs(p.spacing) : std::fabs(p.spacing);
    const double scale = std::max({std::fabs(p.hop_left), std::fabs(p.hop_right), max_field(d) * reach});
    const double heuristic = 0.05 / scale;
    if (!d.has_ac()) return std::min(1e-3, heuristic);
    const double T = d.period();
    double dt = T / 4096.0;
    while (dt > heuristic) dt *= 0.5;
    return dt;
}

EvolutionResult integrate(const LatticeParams& p, const DriveField& d, const InitialState& psi0, double t_end,
                          const EvolveOptions& opt) {
    p.validate();
    d.validate();
    if (!std::isfinite(t_end) || t_end < 0.0) throw std::invalid_argument("integrate: t_end must be >= 0");
    if (opt.stride < 1) throw std::invalid_argument("integrate: stride must be >= 1");
    double dt = opt.dt > 0.0 ? opt.dt : recommended_dt(p, d, opt.frame);
    if (!std::isfinite(dt)) throw std::invalid_argument("integrate: dt must be finite");
    const double limit = stability_limit(p, d, opt.frame);
    if (dt > limit) {
        throw std::invalid_argument("integrate: dt=" + std::to_string(dt) + " exceeds the RK4 stability limit " +
                                    std::to_string(limit));
    }
    const long steps = t_end == 0.0 ? 0 : static_cast<long>(std::ceil(t_end / dt - 1e-9));
    if (steps > 0) dt = t_end / static_cast<double>(steps);

    Eigen::VectorXcd y = chain_state(p, psi0);
    const double ref = opt.frame == Frame::lab ? midpoint(p.length) : 0.0;
    const Rhs f{p, d, opt.frame, ref};

    const long rows = steps / opt.stride + 1 + (steps % opt.stride != 0 ? 1 : 0);
    EvolutionResult res;
    res.method = Method::rk4;
    res.lattice = p;
    res.drive = d;
    res.normalized = opt.renormalize;
    res.amplitudes.resize(rows, p.length);
    res.times.reserve(static_cast<std::size_t>(rows));
    res.log_norm.reserve(static_cast<std::size_t>(rows));

    double log_norm = 0.0;
    if (opt.renormalize) {
        const double n = y.norm();
        y /= n;
        log_norm = std::log(n);
    }
    long row = 0;
    auto store = [&](double t) {
        res.amplitudes.row(row) = to_lab(p, d, opt.frame, ref, t, y).transpose();
        res.times.push_back(t);
        res.log_norm.push_back(log_norm);
        ++row;
    };
    store(0.0);

    Eigen::VectorXcd k1(p.length), k2(p.length), k3(p.length), k4(p.length), tmp(p.length);
    for (long s = 0; s < steps; ++s) {
        const double t = s * dt;
        f(t, y, k1);
        tmp = y + (0.5 * dt) * k1;
        f(t + 0.5 * dt, tmp, k2);
        tmp = y + (0.5 * dt) * k2;
        f(t + 0.5 * dt, tmp, k3);
        tmp = y + dt * k3;
        f(t + dt, tmp, k4);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double n = y.norm();
        if (opt.renormalize) {
            if (!(n > 0.0) || !std::isfinite(n)) throw NumericalError("integrate: state norm lost");
            y /= n;
            log_norm += std::log(n);
        } else if (!(n < kOverflowNorm)) {
            throw OverflowError("integrate: amplitude overflow at t=" + std::to_string(t + dt) +
                                "; enable per-step renormalization");
        }
        const long done = s + 1;
        if (done % opt.stride == 0 || done == steps) store(done == steps ? t_end : done * dt);
    }
    return res;
}

EvolutionResult analytic_on_chain(const LatticeParams& p, const DriveField& d, const InitialState& psi0,
                                  const std::vector<double>& times) {
    EvolutionResult res;
    res.method = Method::analytic;
    res.lattice = p;
    res.drive = d;
    res.times = times;
    res.log_norm.assign(times.size(), 0.0);
    res.amplitudes = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(times.size()), p.length);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("analytic_on_chain: times must increase");
        const SiteAmplitudes c = evolve_amplitudes(p, d, psi0, times[i]);
        for (int m = 1; m <= p.length; ++m) res.amplitudes(static_cast<Eigen::Index>(i), m - 1) = c.at(m);
    }
    return res;
}

double safe_window(const LatticeParams& p, int n0) {
    p.validate();
    if (!(p.hop_left > 0.0) || p.hop_right < p.hop_left) {
        throw std::domain_error("safe_window: requires J_R >= J_L > 0");
    }
    constexpr int margin = 5;
    const int room = std::min(p.length - n0, n0 - 1) - margin;
    if (room <= 0) throw std::domain_error("safe_window: chain too short around site " + std::to_string(n0));
    const double xs = p.hop_left == p.hop_right ? 1.0 : solve_x_star(p.hop_left, p.hop_right);
    return room * xs / (2.0 * p.hop_right);
}

std::vector<double> center_of_mass(const EvolutionResult& res) {
    std::vector<double> out;
    out.reserve(res.times.size());
    for (int r = 0; r < static_cast<int>(res.amplitudes.rows()); ++r) {
        const Eigen::VectorXd rho = res.probabilities(r);
        double num = 0.0;
        for (int m = 0; m < rho.size(); ++m) num += (m + 1) * rho[m];
        out.push_back(num / rho.sum());
    }
    return out;
}

double com_drift(const EvolutionResult& res) {
    const auto com = center_of_mass(res);
    if (com.empty()) return 0.0;
    return com.back() - com.front();
}

}  // namespace nhse
