// phase.hpp: skin vs localized regimes of the driven chain.
#pragma once

#include "nhse/lattice.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace nhse {

enum class Verdict { skin, stark_localized, dynamically_localized, inconclusive };

std::string_view to_string(Verdict v);

struct PhaseEvidence {
    bool resonant{false};
    bool near_resonant{false};
    std::optional<int> bessel_order;
    std::optional<double> bessel_value;
    std::optional<double> com_drift;
};

struct PhasePoint {
    double e0_over_omega{0.0};  // +inf for a pure dc drive
    double e1_over_omega{0.0};
    Verdict verdict{Verdict::skin};
    PhaseEvidence evidence;
};

struct ClassifyTolerances {
    double integer_tol{1e-9};
    double zero_tol{1e-3};
};

// Thermodynamic-limit verdict from the drive alone. Throws std::invalid_argument for
// E1 != 0 with omega <= 0.
PhasePoint classify(const DriveField& d, const ClassifyTolerances& tol = {});

// 4 J_R / (|E0| x*). Throws std::domain_error for E0 = 0 or unless J_R > J_L > 0.
double oscillation_range(const LatticeParams& p, double e0);

// True when the Stark oscillation range reaches across the whole chain.
bool finite_size_skin(const LatticeParams& p, double e0);

enum class ScanMode { formula, dynamics };

struct DynamicsSettings {
    double omega{0.46};
    int periods{50};
    double drift_loc{3.0};
    double drift_skin{10.0};
    int start_site{0};  // 0 selects L / 2
    ClassifyTolerances tol{};
};

// Center-of-mass verdict after settings.periods drive periods: |drift| < drift_loc is
// localized (dynamic when E0/omega is an integer, Stark otherwise), drift toward the
// favoured edge above drift_skin is skin, anything else inconclusive. Throws ConfigError
// when the start site leaves less room than the thresholds need.
PhasePoint classify_dynamics(const LatticeParams& p, const DriveField& d, const DynamicsSettings& s = {});

// One point per (e0/omega, e1/omega) pair, e0 outer and e1 inner, in grid order.
std::vector<PhasePoint> scan_phase_diagram(const std::vector<double>& e0_over_omega,
                                           const std::vector<double>& e1_over_omega, const LatticeParams& p,
                                           ScanMode mode, const DynamicsSettings& s = {}, int threads = 1);

}  // namespace nhse
