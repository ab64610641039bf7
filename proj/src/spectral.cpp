#include "nhse/spectral.hpp"

#include "nhse/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nhse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSingularPivot = 1e-12;
constexpr int kMaxPhiSamples = 1 << 16;

std::string dump(const Eigen::MatrixXcd& a) {
    std::ostringstream os;
    os << a.format(Eigen::IOFormat(Eigen::FullPrecision, 0, ", ", "\n", "[", "]"));
    return os.str();
}

double wrap(double x) {
    x = std::remainder(x, kTwoPi);
    if (x <= -std::numbers::pi) x += kTwoPi;
    return x;
}

bool right_favoured(const LatticeParams& p) { return !(p.hop_left > p.hop_right); }

struct LoopScan {
    double total{0.0};
    double max_step{0.0};
    bool singular{false};
};

LoopScan scan_loop(const MatrixFamily& h, cplx e_ref, int n) {
    LoopScan s;
    double first = 0.0, prev = 0.0;
    for (int k = 0; k <= n; ++k) {
        double arg = first;
        if (k < n) {
            Eigen::MatrixXcd a = h(kTwoPi * k / n);
            a.diagonal().array() -= e_ref;
            const LogDet ld = log_det(a);
            if (ld.min_pivot <= kSingularPivot) {
                s.singular = true;
                return s;
            }
            arg = ld.arg;
        }
        if (k == 0) {
            first = prev = arg;
            continue;
        }
        const double step = wrap(arg - prev);
        s.total += step;
        s.max_step = std::max(s.max_step, std::fabs(step));
        prev = arg;
    }
    return s;
}

}  // namespace

SpectralResult eigen_decompose(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols() || a.rows() == 0) throw std::invalid_argument("eigen_decompose: need a square matrix");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, true);
    if (es.info() != Eigen::Success) {
        throw NumericalError("eigensolver did not converge for matrix\n" + dump(a));
    }
    const Eigen::Index n = a.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const auto& ev = es.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        if (ev[i].real() != ev[j].real()) return ev[i].real() < ev[j].real();
        return ev[i].imag() < ev[j].imag();
    });

    SpectralResult r;
    r.right_eigenvectors.resize(n, n);
    const double scale = a.norm();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index j = order[static_cast<std::size_t>(k)];
        Eigen::VectorXcd v = es.eigenvectors().col(j);
        v.normalize();
        const double residual = (a * v - ev[j] * v).norm();
        if (residual > 1e-9 * std::max(scale, 1.0)) {
            throw NumericalError("eigenpair residual " + std::to_string(residual) + " too large for matrix\n" + dump(a));
        }
        r.eigenvalues.push_back(ev[j]);
        r.right_eigenvectors.col(k) = v;
    }
    return r;
}

cplx reference_energy(const LatticeParams& p, double e0) {
    const Eigen::MatrixXcd h =
        build_hamiltonian(p, DriveField::static_field(e0), 0.0, BoundaryCondition::twisted(0.0));
    return h.trace() / static_cast<double>(p.length);
}

SpectralResult obc_spectrum(const LatticeParams& p, double e0) {
    SpectralResult r = eigen_decompose(build_hamiltonian(p, DriveField::static_field(e0), 0.0));
    r.lattice = p;
    r.dc = e0;
    r.e_ref = reference_energy(p, e0);
    r.winding = winding_number(p, e0, r.e_ref);
    r.skin_count = skin_mode_count(r);
    return r;
}

LogDet log_det(const Eigen::MatrixXcd& a) {
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const auto& m = lu.matrixLU();
    const double amax = std::max(a.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    LogDet out;
    out.min_pivot = std::numeric_limits<double>::infinity();
    double arg = lu.permutationP().determinant() < 0 ? std::numbers::pi : 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const cplx u = m(i, i);
        const double au = std::abs(u);
        out.min_pivot = std::min(out.min_pivot, au / amax);
        if (au == 0.0) {
            out.log_abs = -std::numeric_limits<double>::infinity();
            continue;
        }
        out.log_abs += std::log(au);
        arg += std::arg(u);
    }
    out.arg = wrap(arg);
    return out;
}

WindingReport winding_of_family(const MatrixFamily& h, cplx e_ref, int n_phi) {
    if (n_phi < 64) throw std::invalid_argument("winding_number: n_phi must be >= 64");
    WindingReport rep;
    rep.e_ref = e_ref;

    // strict: every phase step below pi/2. After a nudge off the loop the step across the
    // near-crossing stays close to pi at any resolution, so only agreement is required.
    auto attempt = [&](cplx e, bool strict) -> bool {
        int n = n_phi;
        int stalled = 0;
        LoopScan prev = scan_loop(h, e, n);
        if (prev.singular) return false;
        while (true) {
            if (2 * n > kMaxPhiSamples) {
                throw NumericalError("winding_number: no convergence up to 2^16 twist samples");
            }
            const LoopScan next = scan_loop(h, e, 2 * n);
            if (next.singular) return false;
            const long a = std::lround(prev.total / kTwoPi);
            const long b = std::lround(next.total / kTwoPi);
            const double step_cap = strict ? 0.5 * std::numbers::pi : std::numbers::pi * (1.0 - 1e-9);
            if (a == b && prev.max_step < step_cap) {
                // orientation: J_R > J_L without field winds clockwise in phi
                rep.raw = -prev.total / kTwoPi;
                rep.winding = static_cast<int>(-a);
                rep.samples = n;
                return true;
            }
            // a loop through e itself never smooths out under refinement
            const bool smoothing = next.max_step < 0.75 * prev.max_step || next.max_step < 0.5 * std::numbers::pi;
            stalled = smoothing ? 0 : stalled + 1;
            if (strict && stalled >= 3) return false;
            prev = next;
            n *= 2;
        }
    };

    if (!attempt(e_ref, true)) {
        const double radius = h(0.0).cwiseAbs().rowwise().sum().maxCoeff();
        rep.e_ref = e_ref + cplx(0.0, 1e-8 * radius);
        rep.perturbed = true;
        if (!attempt(rep.e_ref, false)) {
            throw NumericalError("winding_number: det[H(phi) - E] singular on the twist loop");
        }
    }
    return rep;
}

WindingReport winding_report(const LatticeParams& p, double e0, cplx e_ref, int n_phi) {
    p.validate();
    const DriveField d = DriveField::static_field(e0);
    const WindingReport rep = winding_of_family(
        [&](double phi) { return build_hamiltonian(p, d, 0.0, BoundaryCondition::twisted(phi)); }, e_ref, n_phi);
    if (std::abs(rep.winding) > 1) {
        throw NumericalError("winding_number: |w| = " + std::to_string(std::abs(rep.winding)) +
                             " outside the range this chain can produce");
    }
    return rep;
}

int winding_number(const LatticeParams& p, double e0, cplx e_ref, int n_phi) {
    return winding_report(p, e0, e_ref, n_phi).winding;
}

int winding_by_eigenvalue_tracking(const LatticeParams& p, double e0, cplx e_ref, int n_phi) {
    p.validate();
    if (p.length > 8) throw std::invalid_argument("winding_by_eigenvalue_tracking: L <= 8 only");
    const DriveField d = DriveField::static_field(e0);
    auto spectrum = [&](double phi) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(
            build_hamiltonian(p, d, 0.0, BoundaryCondition::twisted(phi)), false);
        return std::vector<cplx>(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    };
    std::vector<cplx> cur = spectrum(0.0);
    double total = 0.0;
    for (int k = 1; k <= n_phi; ++k) {
        std::vector<cplx> next = spectrum(kTwoPi * k / n_phi);
        // greedy nearest-neighbour continuation
        std::vector<bool> used(next.size(), false);
        std::vector<cplx> matched(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) {
            std::size_t best = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < next.size(); ++j) {
                if (used[j]) continue;
                const double dd = std::abs(next[j] - cur[i]);
                if (dd < bd) { bd = dd; best = j; }
            }
            used[best] = true;
            matched[i] = next[best];
            total += wrap(std::arg(matched[i] - e_ref) - std::arg(cur[i] - e_ref));
        }
        cur = std::move(matched);
    }
    return static_cast<int>(-std::lround(total / kTwoPi));
}

std::vector<bool> skin_flags(const SpectralResult& res, double edge_fraction, double weight_threshold) {
    const Eigen::Index L = res.right_eigenvectors.rows();
    std::vector<bool> flags(static_cast<std::size_t>(res.right_eigenvectors.cols()), false);
    if (L == 0) return flags;
    const auto width = static_cast<Eigen::Index>(std::ceil(edge_fraction * static_cast<double>(L) - 1e-12));
    const Eigen::Index w = std::clamp<Eigen::Index>(width, 1, L);
    const bool right = right_favoured(res.lattice);
    for (Eigen::Index j = 0; j < res.right_eigenvectors.cols(); ++j) {
        const Eigen::VectorXd prob = res.right_eigenvectors.col(j).cwiseAbs2();
        const double edge = right ? prob.tail(w).sum() : prob.head(w).sum();
        flags[static_cast<std::size_t>(j)] = edge > weight_threshold * prob.sum();
    }
    return flags;
}

int skin_mode_count(const SpectralResult& res, double edge_fraction, double weight_threshold) {
    const auto flags = skin_flags(res, edge_fraction, weight_threshold);
    return static_cast<int>(std::count(flags.begin(), flags.end(), true));
}

int pinned_mode_count(const SpectralResult& res) {
    const Eigen::Index L = res.right_eigenvectors.rows();
    const bool right = right_favoured(res.lattice);
    int count = 0;
    for (Eigen::Index j = 0; j < res.right_eigenvectors.cols(); ++j) {
        Eigen::Index at = 0;
        res.right_eigenvectors.col(j).cwiseAbs2().maxCoeff(&at);
        if (at == (right ? L - 1 : 0)) ++count;
    }
    return count;
}

double critical_field(double gamma, int length, double e_lo, double e_hi) {
    const LatticeParams p = LatticeParams::from_gamma(length, 1.0, gamma);
    auto w = [&](double e0) { return winding_number(p, e0, reference_energy(p, e0)); };
    if (!(e_lo < e_hi)) throw std::domain_error("critical_field: need e_lo < e_hi");
    if (w(e_lo) != 1 || w(e_hi) != 0) {
        throw std::domain_error("critical_field: bracket does not straddle a 1 -> 0 winding transition");
    }
    double lo = e_lo, hi = e_hi;
    while (hi - lo >= 1e-4) {
        const double mid = 0.5 * (lo + hi);
        if (w(mid) == 1) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace nhse
