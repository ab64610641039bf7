#include "nhse/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nhse {

LatticeParams LatticeParams::from_gamma(int length, double hop, double gamma, double spacing) {
    LatticeParams p;
    p.length = length;
    p.hop_left = hop - gamma / 2.0;
    p.hop_right = hop + gamma / 2.0;
    p.spacing = spacing;
    return p;
}

void LatticeParams::validate() const {
    if (length < 2) {
        throw std::invalid_argument("lattice: length must be >= 2, got " + std::to_string(length));
    }
    if (!std::isfinite(hop_left) || !std::isfinite(hop_right) || !std::isfinite(spacing)) {
        throw std::invalid_argument("lattice: hopping amplitudes and spacing must be finite");
    }
}

DriveField DriveField::from_ratios(double e0_over_omega, double e1_over_omega, double omega) {
    return {e0_over_omega * omega, e1_over_omega * omega, omega};
}

double DriveField::period() const {
    if (!has_ac()) {
        throw std::logic_error("drive: period is defined only for an ac component");
    }
    return 2.0 * std::numbers::pi / omega;
}

void DriveField::validate() const {
    if (!std::isfinite(dc) || !std::isfinite(ac) || !std::isfinite(omega)) {
        throw std::invalid_argument("drive: E0, E1 and omega must be finite");
    }
    if (ac != 0.0 && !(omega > 0.0)) {
        throw std::invalid_argument("drive: omega must be > 0 when E1 != 0");
    }
}

double field_at(const DriveField& d, double t) noexcept {
    if (d.ac == 0.0) return d.dc;
    return d.dc + d.ac * std::cos(d.omega * t);
}

Eigen::MatrixXcd build_hamiltonian(const LatticeParams& p, const DriveField& d, double t,
                                   const BoundaryCondition& bc) {
    p.validate();
    d.validate();
    if (!std::isfinite(t)) throw std::invalid_argument("build_hamiltonian: t must be finite");
    if (bc.kind == BoundaryCondition::Kind::twisted && !std::isfinite(bc.phi)) {
        throw std::invalid_argument("build_hamiltonian: twist phase must be finite");
    }

    const int L = p.length;
    const double e = field_at(d, t) * p.spacing;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(L, L);
    for (int n = 0; n + 1 < L; ++n) {
        h(n, n + 1) = p.hop_left;
        h(n + 1, n) = p.hop_right;
    }
    for (int n = 0; n < L; ++n) h(n, n) = e * static_cast<double>(n + 1);

    if (bc.kind == BoundaryCondition::Kind::twisted) {
        h(L - 1, 0) += p.hop_left * std::polar(1.0, bc.phi);
        h(0, L - 1) += p.hop_right * std::polar(1.0, -bc.phi);
    }
    return h;
}

}  // namespace nhse
