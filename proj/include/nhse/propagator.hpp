// propagator.hpp: closed-form dynamics on the infinite driven chain.
#pragma once

#include "nhse/lattice.hpp"

#include <map>
#include <vector>

namespace nhse {

// eta(t) = E0 t + (E1/omega) sin(omega t)
double eta(const DriveField& d, double t);

struct UV {
    double u{0.0};
    double v{0.0};
};

// u + i v = int_0^t exp(i eta(t')) dt'. Closed forms for E = 0 and pure dc,
// Jacobi-Anger series otherwise (resonant term t J_{-nu}(E1/omega) kept exactly).
UV uv(const DriveField& d, double t);

// Same integral by adaptive Gauss-Kronrod quadrature over short panels.
UV uv_quadrature(const DriveField& d, double t, double abs_tol = 1e-10);

struct DriveFunctionals {
    double eta{0.0};
    double u{0.0}, v{0.0};
    double U{0.0}, V{0.0};  // U + iV = int_0^t exp(i[eta(t) - eta(t')]) dt'
};

DriveFunctionals drive_functionals(const DriveField& d, double t);

struct Resonance {
    bool defined{false};     // false when there is no ac component
    double ratio{0.0};       // E0 / omega
    bool integer{false};     // |ratio - nu| < 1e-9
    int order{0};            // nearest integer nu
    bool near_integer{false};  // 1e-9 <= |ratio - nu| <= 1e-3
};

Resonance detect_resonance(const DriveField& d);

struct InitialState {
    std::map<int, cplx> amplitudes;

    static InitialState site(int n0) { return InitialState{{{n0, cplx(1.0)}}}; }
    // Throws std::invalid_argument when empty, all-zero or non-finite.
    void validate() const;
};

// Contiguous block of site values; sites outside the block are zero.
template <class T>
struct SiteWindow {
    int first{0};
    std::vector<T> values;

    int last() const { return first + static_cast<int>(values.size()) - 1; }
    bool contains(int m) const { return m >= first && m <= last(); }
    T at(int m) const { return contains(m) ? values[static_cast<std::size_t>(m - first)] : T{}; }
};

using SiteAmplitudes = SiteWindow<cplx>;
using SiteProbabilities = SiteWindow<double>;

// Exact amplitudes C_m(t) for an arbitrary finite initial state. The window covers
// every site where some Bessel factor can exceed 1e-16. Throws
// UnsupportedConfiguration when J_L J_R <= 0.
SiteAmplitudes evolve_amplitudes(const LatticeParams& p, const DriveField& d, const InitialState& psi0,
                                 double t);

enum class RhoForm { exact, asymptotic };

// rho_m(t) = J^2_{m-n0}(2 sqrt(J_L J_R (u^2+v^2))) (J_R/J_L)^{m-n0}. The asymptotic
// form replaces sqrt(u^2+v^2) by |J_nu(E1/omega)| t (t >> T, integer E0/omega) and
// throws std::domain_error for non-integer E0/omega.
SiteProbabilities rho_single_site(const LatticeParams& p, const DriveField& d, int n0, double t,
                                  RhoForm form = RhoForm::exact);

// Long-time limit of rho_m / rho_{m-1}.
double rho_ratio_longtime(const LatticeParams& p);

// int rho_{n0+k} dt / int rho_{n0+k-1} dt over [t0, t1] for the undriven chain.
double time_averaged_ratio(const LatticeParams& p, int k, double t0, double t1);

// Paris-type bound on rho_m(t) for a pure dc drive. Requires 4 sqrt(J_L J_R) <= (m-n0)|E0|
// and J_L, J_R > 0; throws std::domain_error otherwise.
double upper_bound_rho(const LatticeParams& p, const DriveField& d, int n0, int m, double t);

}  // namespace nhse
