// evolver.hpp: fixed-step RK4 integration of i dC/dt = H(t) C on the open chain.
#pragma once

#include "nhse/lattice.hpp"
#include "nhse/propagator.hpp"

#include <Eigen/Dense>

#include <vector>

namespace nhse {

enum class Method { analytic, rk4 };

// lab:      the amplitude equation as written, diagonal measured from the chain midpoint
//           (the removed uniform shift is restored as a global phase)
// comoving: C_m = exp(-i a eta m) B_m, i dB_m/dt = J_L e^{-i a eta} B_{m+1} + J_R e^{i a eta} B_{m-1};
//           exact on the open chain and free of the linear-potential stiffness
enum class Frame { lab, comoving };

struct EvolveOptions {
    double dt{0.0};           // 0 selects recommended_dt
    int stride{1};            // store every stride-th step (the final step is always stored)
    bool renormalize{false};  // rescale every step, accumulate log of the removed norm
    Frame frame{Frame::lab};
};

struct EvolutionResult {
    std::vector<double> times;
    Eigen::MatrixXcd amplitudes;   // rows: times, columns: sites 1..L
    std::vector<double> log_norm;  // per row; true amplitudes = exp(log_norm) * stored
    bool normalized{false};
    Method method{Method::rk4};
    LatticeParams lattice;
    DriveField drive;

    int site_count() const { return static_cast<int>(amplitudes.cols()); }
    // |C_m|^2 for one row, sites 1..L at indices 0..L-1
    Eigen::VectorXd probabilities(int row) const;
    // Same, divided by the slice total
    Eigen::VectorXd normalized_probabilities(int row) const;
};

// min(T/4096 or 1e-3, 0.05/scale), scale = max(J_L, J_R, |E0| L a + |E1| L a) in the lab
// frame and max(J_L, J_R, |E0| a + |E1| a) in the comoving frame. For ac drives the
// result divides T exactly.
double recommended_dt(const LatticeParams& p, const DriveField& d, Frame frame = Frame::lab);

// Largest dt for which every RK4 step stays inside the stability region.
double stability_limit(const LatticeParams& p, const DriveField& d, Frame frame = Frame::lab);

// Throws std::invalid_argument for bad inputs or dt above stability_limit, and
// OverflowError when amplitudes leave the representable range without renormalization.
EvolutionResult integrate(const LatticeParams& p, const DriveField& d, const InitialState& psi0,
                          double t_end, const EvolveOptions& opt = {});

// Analytic amplitudes on sites 1..L at the given times (infinite-lattice formula).
EvolutionResult analytic_on_chain(const LatticeParams& p, const DriveField& d, const InitialState& psi0,
                                  const std::vector<double>& times);

// Time before the wavefront from n0 comes within 5 sites of an edge.
double safe_window(const LatticeParams& p, int n0);

// sum_m m rho_m / sum_m rho_m for each stored time.
std::vector<double> center_of_mass(const EvolutionResult& res);

// Net displacement of the center of mass between the first and last stored time.
double com_drift(const EvolutionResult& res);

}  // namespace nhse
