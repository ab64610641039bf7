// lattice.hpp: driven non-reciprocal chain: parameters, drive and Hamiltonian matrix.
#pragma once

#include <Eigen/Dense>

#include <complex>

namespace nhse {

using cplx = std::complex<double>;

struct LatticeParams {
    int length{2};           // L, sites 1..L
    double hop_left{1.0};    // J_L, amplitude of |n><n+1|
    double hop_right{1.0};   // J_R, amplitude of |n+1><n|
    double spacing{1.0};     // a

    // J_L = J - gamma/2, J_R = J + gamma/2.
    static LatticeParams from_gamma(int length, double hop, double gamma, double spacing = 1.0);

    double gamma() const noexcept { return hop_right - hop_left; }
    double mean_hop() const noexcept { return 0.5 * (hop_left + hop_right); }
    bool reciprocal() const noexcept { return hop_left == hop_right; }

    // Throws std::invalid_argument on L < 2 or non-finite values.
    void validate() const;
};

// E(t) = E0 + E1 cos(omega t).
struct DriveField {
    double dc{0.0};
    double ac{0.0};
    double omega{0.0};

    static DriveField none() { return {}; }
    static DriveField static_field(double e0) { return {e0, 0.0, 0.0}; }
    // Builds the drive from the dimensionless ratios E0/omega and E1/omega.
    static DriveField from_ratios(double e0_over_omega, double e1_over_omega, double omega);

    bool has_ac() const noexcept { return ac != 0.0; }
    bool is_zero() const noexcept { return dc == 0.0 && ac == 0.0; }
    bool is_pure_dc() const noexcept { return ac == 0.0 && dc != 0.0; }
    bool is_pure_ac() const noexcept { return ac != 0.0 && dc == 0.0; }

    // 2 pi / omega; throws std::logic_error when there is no ac part.
    double period() const;

    void validate() const;
};

double field_at(const DriveField& d, double t) noexcept;

struct BoundaryCondition {
    enum class Kind { open, twisted };
    Kind kind{Kind::open};
    double phi{0.0};

    static BoundaryCondition open() { return {}; }
    static BoundaryCondition twisted(double phi) { return {Kind::twisted, phi}; }
};

// Dense L x L matrix with element (n-1, m-1) = <n|H(t)|m>, sites n = 1..L.
// On-site energy is E(t) a n. A twisted ring adds J_L e^{i phi} at (L,1) and
// J_R e^{-i phi} at (1,L).
Eigen::MatrixXcd build_hamiltonian(const LatticeParams& p, const DriveField& d, double t,
                                   const BoundaryCondition& bc = BoundaryCondition::open());

}  // namespace nhse
