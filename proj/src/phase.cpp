#include "nhse/phase.hpp"

#include "nhse/bessel.hpp"
#include "nhse/errors.hpp"
#include "nhse/evolver.hpp"
#include "nhse/parallel.hpp"
#include "nhse/propagator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nhse {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::skin: return "skin";
        case Verdict::stark_localized: return "stark_localized";
        case Verdict::dynamically_localized: return "dynamically_localized";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

PhasePoint classify(const DriveField& d, const ClassifyTolerances& tol) {
    d.validate();
    PhasePoint pt;
    if (d.has_ac()) {
        pt.e0_over_omega = d.dc / d.omega;
        pt.e1_over_omega = d.ac / d.omega;
    } else {
        pt.e0_over_omega = d.dc == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        pt.e1_over_omega = 0.0;
    }

    if (d.is_zero()) {
        pt.verdict = Verdict::skin;
        return pt;
    }
    if (!d.has_ac()) {
        pt.verdict = Verdict::stark_localized;
        return pt;
    }
    const double nu = std::round(pt.e0_over_omega);
    const double off = std::fabs(pt.e0_over_omega - nu);
    pt.evidence.resonant = off < tol.integer_tol;
    pt.evidence.near_resonant = !pt.evidence.resonant && off <= 1e-3;
    if (!pt.evidence.resonant) {
        pt.verdict = Verdict::stark_localized;
        return pt;
    }
    const int order = static_cast<int>(nu);
    const double j = bessel_j(order, pt.e1_over_omega);
    pt.evidence.bessel_order = order;
    pt.evidence.bessel_value = j;
    pt.verdict = std::fabs(j) < tol.zero_tol ? Verdict::dynamically_localized : Verdict::skin;
    return pt;
}

double oscillation_range(const LatticeParams& p, double e0) {
    if (e0 == 0.0) throw std::domain_error("oscillation_range: infinite for E0 = 0");
    return 4.0 * p.hop_right / (std::fabs(e0 * p.spacing) * solve_x_star(p.hop_left, p.hop_right));
}

bool finite_size_skin(const LatticeParams& p, double e0) {
    return oscillation_range(p, e0) >= p.length;
}

PhasePoint classify_dynamics(const LatticeParams& p, const DriveField& d, const DynamicsSettings& s) {
    p.validate();
    d.validate();
    if (s.periods < 1 || !(s.omega > 0.0)) throw ConfigError("phase: periods >= 1 and omega > 0 required");
    const int n0 = s.start_site > 0 ? s.start_site : p.length / 2;
    const bool right = !(p.hop_left > p.hop_right);
    const int toward = right ? p.length - n0 : n0 - 1;
    const int away = right ? n0 - 1 : p.length - n0;
    if (n0 < 1 || n0 > p.length || toward <= s.drift_skin || away <= s.drift_loc) {
        throw ConfigError("phase: chain of " + std::to_string(p.length) + " sites too short for drift thresholds " +
                          std::to_string(s.drift_loc) + "/" + std::to_string(s.drift_skin) + " from site " +
                          std::to_string(n0));
    }

    PhasePoint pt = classify(d, s.tol);
    const double period = 2.0 * std::numbers::pi / s.omega;
    EvolveOptions opt;
    opt.frame = Frame::comoving;
    opt.renormalize = true;
    opt.dt = period / 4096.0;
    const double heuristic = recommended_dt(p, d, Frame::comoving);
    while (opt.dt > heuristic) opt.dt *= 0.5;
    opt.stride = static_cast<int>(std::lround(period / opt.dt));
    const EvolutionResult res = integrate(p, d, InitialState::site(n0), s.periods * period, opt);
    const double drift = com_drift(res);
    pt.evidence.com_drift = drift;

    const double signed_drift = right ? drift : -drift;
    if (std::fabs(drift) < s.drift_loc) {
        pt.verdict = pt.evidence.resonant ? Verdict::dynamically_localized : Verdict::stark_localized;
        if (d.is_zero()) pt.verdict = Verdict::inconclusive;
    } else if (signed_drift > s.drift_skin) {
        pt.verdict = Verdict::skin;
    } else {
        pt.verdict = Verdict::inconclusive;
    }
    return pt;
}

std::vector<PhasePoint> scan_phase_diagram(const std::vector<double>& e0_over_omega,
                                           const std::vector<double>& e1_over_omega, const LatticeParams& p,
                                           ScanMode mode, const DynamicsSettings& s, int threads) {
    std::vector<PhasePoint> out(e0_over_omega.size() * e1_over_omega.size());
    if (out.empty()) return out;
    parallel_for(out.size(), threads, [&](std::size_t i) {
        const double r0 = e0_over_omega[i / e1_over_omega.size()];
        const double r1 = e1_over_omega[i % e1_over_omega.size()];
        const DriveField d = DriveField::from_ratios(r0, r1, s.omega);
        PhasePoint pt = mode == ScanMode::formula ? classify(d, s.tol) : classify_dynamics(p, d, s);
        pt.e0_over_omega = r0;
        pt.e1_over_omega = r1;
        out[i] = pt;
    });
    return out;
}

}  // namespace nhse
