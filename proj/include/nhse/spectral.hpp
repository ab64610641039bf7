// spectral.hpp: open-chain spectra, skin-mode counting and the twist winding number.
#pragma once

#include "nhse/lattice.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace nhse {

struct SpectralResult {
    std::vector<cplx> eigenvalues;        // sorted by real part, then imaginary part
    Eigen::MatrixXcd right_eigenvectors;  // column j belongs to eigenvalues[j], unit 2-norm
    cplx e_ref{0.0};
    int winding{0};
    int skin_count{0};
    LatticeParams lattice;
    double dc{0.0};
};

// Eigenpairs of an arbitrary square matrix, sorted and residual-checked
// (||(A - lambda) v|| <= 1e-9 ||A||). Throws NumericalError on failure.
SpectralResult eigen_decompose(const Eigen::MatrixXcd& a);

// Full decomposition of the open chain under a static field, with the default
// reference energy, winding number and skin-mode count filled in.
SpectralResult obc_spectrum(const LatticeParams& p, double e0);

struct LogDet {
    double log_abs{0.0};
    double arg{0.0};
    double min_pivot{0.0};  // smallest |U_ii| relative to max |A_ij|
};

// Determinant as (log|det|, arg det) from a partial-pivot LU.
LogDet log_det(const Eigen::MatrixXcd& a);

// Mean of the twisted spectrum at phi = 0, i.e. trace / L.
cplx reference_energy(const LatticeParams& p, double e0);

struct WindingReport {
    int winding{0};
    double raw{0.0};         // signed phase sum / 2 pi before rounding
    int samples{0};          // resolution that satisfied the convergence test
    bool perturbed{false};   // e_ref was nudged off a singular sample
    cplx e_ref{0.0};
};

using MatrixFamily = std::function<Eigen::MatrixXcd(double)>;

// Phase winding of det[h(phi) - e_ref] over phi in [0, 2 pi), negated. Starts at n_phi
// samples and doubles until two resolutions agree and every phase step is below pi/2.
// A singular sample nudges e_ref by 1e-8 times the spectral-radius bound once.
WindingReport winding_of_family(const MatrixFamily& h, cplx e_ref, int n_phi = 64);

// Twist-loop winding of det[H(phi) - e_ref], reported with the orientation in which a
// right-favouring chain (J_R > J_L) without field gives +1.
WindingReport winding_report(const LatticeParams& p, double e0, cplx e_ref, int n_phi = 64);
int winding_number(const LatticeParams& p, double e0, cplx e_ref, int n_phi = 64);

// Same invariant from tracked eigenvalues of H(phi) around the loop (small L only).
int winding_by_eigenvalue_tracking(const LatticeParams& p, double e0, cplx e_ref, int n_phi = 2048);

// Eigenvectors whose weight on the outer ceil(edge_fraction L) sites of the favoured
// edge exceeds weight_threshold. The favoured edge is the right one unless J_L > J_R.
int skin_mode_count(const SpectralResult& res, double edge_fraction = 0.1, double weight_threshold = 0.5);

// Per-mode version of the same rule, in eigenvalue order.
std::vector<bool> skin_flags(const SpectralResult& res, double edge_fraction = 0.1, double weight_threshold = 0.5);

// Eigenvectors whose largest component sits on the favoured boundary site.
int pinned_mode_count(const SpectralResult& res);

// Bisection for the dc field where the winding drops from 1 to 0, chain J = 1 with the
// given gamma. Bracket must straddle the transition; stops below width 1e-4.
double critical_field(double gamma, int length, double e_lo, double e_hi);

}  // namespace nhse
