// circuit.hpp: graded LC ladder whose normal modes follow the dc-driven chain.
#pragma once

#include "nhse/spectral.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nhse {

// Nodes 1..L. Series inductor L_n joins node n-1 and node n; node n has C_n and l_n to
// ground. Both ends are grounded through series inductors: L_1 from node 1 and
// L_{L+1} = L0 g^{-(L+1)} from node L.
struct CircuitNetlist {
    int length{0};
    double gain{1.0};     // g
    double field{0.0};    // E0
    double offset{0.0};   // Delta
    double base_inductance{1.0};   // L0
    double base_capacitance{1.0};  // C0
    double spacing{1.0};  // a
    std::vector<double> series;   // L_n, n = 1..L
    std::vector<double> ground;   // l_n
    std::vector<double> shunt;    // C_n

    double omega0() const;
    double closing_inductance() const;  // L_{L+1}

    bool operator==(const CircuitNetlist&) const = default;
};

// L_n = L0 g^{-n}, C_n = C0 g^n, l_n = L_n / (Delta - a n E0). Throws SynthesisError
// naming the first node with Delta - a n E0 <= 0, std::invalid_argument for g, L0, C0 <= 0.
CircuitNetlist synthesize(int length, double g, double e0, double delta, double l0, double c0,
                          double spacing = 1.0);

// M[n][n-1] = 1, M[n][n+1] = g, M[n][n] = n a E0.
Eigen::MatrixXcd circuit_matrix(const CircuitNetlist& net);

struct CircuitSpectrum {
    SpectralResult modes;                       // eigenpairs of circuit_matrix
    std::vector<std::optional<double>> omega;   // omega0 sqrt(1 + g + Delta - E_R) where defined
    std::vector<bool> complex_flag;             // |Im E_R| above 1e-9 (1 + |E_R|)
};

CircuitSpectrum circuit_eigenproblem(const CircuitNetlist& net);

struct TransientReport {
    std::vector<double> measured;   // dominant angular frequency per mode, NaN if the mode is not excited
    std::vector<double> predicted;  // omega_R, NaN where undefined
    std::vector<double> modal_amplitude;
    double max_abs_voltage{0.0};
    double max_energy_ratio{0.0};   // max_t E(t) / E(0) of the ladder energy functional
};

// Integrates d^2 V_n/dt^2 = (V_{n+1}-V_n)/(C_n L_{n+1}) + (V_{n-1}-V_n)/(C_n L_n) - V_n/(C_n l_n)
// with V_0 = V_{L+1} = 0 by RK4 from rest at the given voltages, projects onto the modes
// and locates each modal peak of a Hann-windowed spectrum. Throws StepSizeError when
// dt exceeds the RK4 stability bound.
TransientReport transient_check(const CircuitNetlist& net, const Eigen::VectorXd& v0, double t_end, double dt);

// Plain-text netlist with shortest round-trip numbers.
std::string format_netlist(const CircuitNetlist& net);
CircuitNetlist parse_netlist(const std::string& text);
void export_netlist(const CircuitNetlist& net, const std::filesystem::path& path);
CircuitNetlist import_netlist(const std::filesystem::path& path);

}  // namespace nhse
