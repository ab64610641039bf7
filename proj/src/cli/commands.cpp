#include "nhse/cli.hpp"

#include "nhse/bessel.hpp"
#include "nhse/circuit.hpp"
#include "nhse/errors.hpp"
#include "nhse/evolver.hpp"
#include "nhse/numfmt.hpp"
#include "nhse/parallel.hpp"
#include "nhse/phase.hpp"
#include "nhse/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#ifndef NHSE_VERSION
#define NHSE_VERSION "0.0.0"
#endif

namespace nhse::cli {

namespace {

std::string fmt(double x) { return format_double(x); }

class RunDir {
public:
    RunDir(std::filesystem::path dir, std::string id) : dir_(std::move(dir)), id_(std::move(id)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
    }

    // Writes `body` after the run-id header line.
    void write(const std::string& name, const std::string& body) {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "# run_id=" << id_ << '\n' << body;
        out.close();
        if (!out) throw IoError("failed writing " + path.string());
        files_.push_back(name);
    }

    const std::filesystem::path& path() const { return dir_; }
    const std::vector<std::string>& files() const { return files_; }

private:
    std::filesystem::path dir_;
    std::string id_;
    std::vector<std::string> files_;
};

// A resolved command: everything read from the config, ready to run.
struct Job {
    std::function<int(RunDir&, nlohmann::json& summary)> run;
};

template <class F>
auto as_config_error(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

LatticeParams read_lattice(Config& cfg) {
    const int length = cfg.get_int("lattice", "length", 40);
    const double spacing = cfg.get_double("lattice", "spacing", 1.0);
    const bool explicit_hops = cfg.has("lattice", "hop_left") || cfg.has("lattice", "hop_right");
    LatticeParams p;
    if (explicit_hops) {
        if (cfg.has("lattice", "J") || cfg.has("lattice", "gamma")) {
            throw ConfigError("lattice: give either hop_left/hop_right or J/gamma, not both");
        }
        p = {length, cfg.get_double("lattice", "hop_left", 1.0), cfg.get_double("lattice", "hop_right", 1.0), spacing};
    } else {
        p = LatticeParams::from_gamma(length, cfg.get_double("lattice", "J", 1.0),
                                      cfg.get_double("lattice", "gamma", 0.0), spacing);
    }
    as_config_error("lattice", [&] { p.validate(); return 0; });
    return p;
}

DriveField read_drive(Config& cfg) {
    const DriveField d{cfg.get_double("drive", "E0", 0.0), cfg.get_double("drive", "E1", 0.0),
                       cfg.get_double("drive", "omega", 0.0)};
    as_config_error("drive", [&] { d.validate(); return 0; });
    return d;
}

Frame read_frame(Config& cfg) {
    const std::string f = cfg.get_string("run", "frame", "comoving");
    if (f == "lab") return Frame::lab;
    if (f == "comoving") return Frame::comoving;
    throw ConfigError("run.frame: expected lab or comoving, got '" + f + "'");
}

Job prepare_evolve(Config& cfg) {
    const LatticeParams p = read_lattice(cfg);
    const DriveField d = read_drive(cfg);
    const int n0 = cfg.get_int("run", "start_site", (p.length + 1) / 2);
    const double t_end = cfg.get_double("run", "t_end", 10.0);
    const int samples_in = cfg.get_int("run", "samples", 101);
    const std::string method = cfg.get_string("run", "method", "rk4");
    const double dt_in = cfg.get_double("run", "dt", 0.0);
    const Frame frame = read_frame(cfg);

    if (n0 < 1 || n0 > p.length) throw ConfigError("run.start_site: must lie in 1.." + std::to_string(p.length));
    if (t_end < 0.0) throw ConfigError("run.t_end: must be >= 0");
    if (samples_in < 1 || (t_end > 0.0 && samples_in < 2)) throw ConfigError("run.samples: need >= 2 when t_end > 0");
    if (dt_in < 0.0) throw ConfigError("run.dt: must be >= 0");
    if (method != "analytic" && method != "rk4" && method != "both") {
        throw ConfigError("run.method: expected analytic, rk4 or both, got '" + method + "'");
    }
    if (method != "rk4" && p.hop_left * p.hop_right <= 0.0) {
        throw ConfigError("run.method: the analytic propagator needs J_L J_R > 0");
    }
    const int samples = t_end == 0.0 ? 1 : samples_in;

    return {[=](RunDir& out, nlohmann::json& summary) {
        const InitialState psi0 = InitialState::site(n0);
        std::vector<double> times;
        for (int k = 0; k < samples; ++k) times.push_back(samples == 1 ? 0.0 : t_end * k / (samples - 1));

        auto numeric = [&] {
            EvolveOptions opt;
            opt.frame = frame;
            opt.renormalize = true;
            if (samples > 1) {
                const double interval = t_end / (samples - 1);
                const double dt0 = dt_in > 0.0 ? dt_in : recommended_dt(p, d, frame);
                const auto per = static_cast<int>(std::ceil(interval / dt0 - 1e-9));
                opt.dt = interval / per;
                opt.stride = per;
            }
            EvolutionResult r = as_config_error("run", [&] { return integrate(p, d, psi0, t_end, opt); });
            if (static_cast<int>(r.times.size()) != samples) {
                throw NumericalError("evolve: stored " + std::to_string(r.times.size()) + " slices, expected " +
                                     std::to_string(samples));
            }
            r.times = times;
            return r;
        };
        auto table = [&](const EvolutionResult& r) {
            std::ostringstream os;
            os << "t,site,rho\n";
            for (int row = 0; row < samples; ++row) {
                const Eigen::VectorXd rho = r.normalized_probabilities(row);
                for (int m = 0; m < rho.size(); ++m) {
                    os << fmt(times[static_cast<std::size_t>(row)]) << ',' << m + 1 << ',' << fmt(rho[m]) << '\n';
                }
            }
            return os.str();
        };

        std::optional<EvolutionResult> rk, an;
        if (method != "analytic") rk = numeric();
        if (method != "rk4") an = analytic_on_chain(p, d, psi0, times);
        out.write("evolution.csv", table(rk ? *rk : *an));

        if (rk && an) {
            std::ostringstream os;
            os << "t,max_abs_diff\n";
            double worst = 0.0;
            for (int row = 0; row < samples; ++row) {
                const double diff =
                    (rk->normalized_probabilities(row) - an->normalized_probabilities(row)).cwiseAbs().maxCoeff();
                worst = std::max(worst, diff);
                os << fmt(times[static_cast<std::size_t>(row)]) << ',' << fmt(diff) << '\n';
            }
            out.write("evolution_diff.csv", os.str());
            summary["max_abs_diff"] = worst;
            summary["safe_window"] = p.hop_left > 0.0 && p.hop_right >= p.hop_left ? safe_window(p, n0) : 0.0;
        }
        const EvolutionResult& last = rk ? *rk : *an;
        const auto com = center_of_mass(last);
        summary["center_of_mass_final"] = com.back();
        summary["center_of_mass_drift"] = com_drift(last);
        return 0;
    }};
}

Job prepare_winding(Config& cfg) {
    const LatticeParams base = read_lattice(cfg);
    const DriveField drive = read_drive(cfg);
    const double hop = base.mean_hop();
    const std::vector<double> gammas = cfg.get_list("run", "gammas", {base.gamma()});
    const std::vector<double> fields = cfg.get_list("run", "e0s", {drive.dc});
    const std::vector<int> lengths = cfg.get_int_list("run", "lengths", {base.length});
    const int n_phi = cfg.get_int("run", "n_phi", 64);
    const bool critical = cfg.get_bool("run", "critical", false);
    const double lo = cfg.get_double("run", "e0c_lo", 1e-4);
    const double hi = cfg.get_double("run", "e0c_hi", 1.0);
    const int threads = cfg.get_int("run", "threads", 0);

    if (drive.has_ac()) throw ConfigError("drive.E1: the winding number is defined for static fields only");
    if (n_phi < 64) throw ConfigError("run.n_phi: must be >= 64");
    if (gammas.empty() || fields.empty() || lengths.empty()) throw ConfigError("run: empty sweep axis");
    for (int L : lengths) {
        if (L < 2) throw ConfigError("run.lengths: every length must be >= 2");
    }
    for (double g : gammas) {
        as_config_error("run.gammas", [&] { LatticeParams::from_gamma(2, hop, g, base.spacing).validate(); return 0; });
    }
    if (critical && gammas.size() != 1) throw ConfigError("run.critical: needs exactly one gamma");
    if (critical && !(0.0 < lo && lo < hi)) throw ConfigError("run.e0c_lo/e0c_hi: need 0 < lo < hi");

    return {[=](RunDir& out, nlohmann::json& summary) {
        const int workers = threads > 0 ? threads : default_threads();
        const std::size_t nl = lengths.size(), ne = fields.size();
        std::vector<int> w(gammas.size() * nl * ne);
        parallel_for(w.size(), workers, [&](std::size_t i) {
            const double g = gammas[i / (nl * ne)];
            const int L = lengths[(i / ne) % nl];
            const double e0 = fields[i % ne];
            const LatticeParams p = LatticeParams::from_gamma(L, hop, g, base.spacing);
            w[i] = winding_number(p, e0, reference_energy(p, e0), n_phi);
        });
        std::ostringstream os;
        os << "gamma,E0,L,w\n";
        for (std::size_t i = 0; i < w.size(); ++i) {
            os << fmt(gammas[i / (nl * ne)]) << ',' << fmt(fields[i % ne]) << ',' << lengths[(i / ne) % nl] << ','
               << w[i] << '\n';
        }
        out.write("winding.csv", os.str());

        if (critical) {
            // E0c scales with the hopping: H(J, gamma, E0) = J H(1, gamma/J, E0/J)
            std::vector<double> e0c(nl);
            parallel_for(nl, workers, [&](std::size_t i) {
                e0c[i] = hop * as_config_error("run.critical", [&] {
                             return critical_field(gammas.front() / hop, lengths[i], lo / hop, hi / hop);
                         });
            });
            std::ostringstream cs;
            cs << "L,E0c\n";
            for (std::size_t i = 0; i < nl; ++i) cs << lengths[i] << ',' << fmt(e0c[i]) << '\n';
            out.write("critical.csv", cs.str());
            summary["critical_points"] = nl;
        }
        return 0;
    }};
}

Job prepare_spectrum(Config& cfg) {
    const LatticeParams p = read_lattice(cfg);
    const DriveField d = read_drive(cfg);
    const double edge = cfg.get_double("run", "edge_fraction", 0.1);
    const double weight = cfg.get_double("run", "weight_threshold", 0.5);
    if (d.has_ac()) throw ConfigError("drive.E1: the spectrum is computed for static fields only");
    if (!(edge > 0.0 && edge <= 1.0)) throw ConfigError("run.edge_fraction: must lie in (0, 1]");
    if (!(weight > 0.0 && weight < 1.0)) throw ConfigError("run.weight_threshold: must lie in (0, 1)");

    return {[=](RunDir& out, nlohmann::json& summary) {
        const SpectralResult res = obc_spectrum(p, d.dc);
        const auto flags = skin_flags(res, edge, weight);
        std::ostringstream sp, st;
        sp << "idx,re_E,im_E,skin_flag\n";
        st << "idx,site,prob\n";
        for (std::size_t j = 0; j < res.eigenvalues.size(); ++j) {
            sp << j << ',' << fmt(res.eigenvalues[j].real()) << ',' << fmt(res.eigenvalues[j].imag()) << ','
               << (flags[j] ? 1 : 0) << '\n';
            const Eigen::VectorXd prob = res.right_eigenvectors.col(static_cast<Eigen::Index>(j)).cwiseAbs2();
            for (Eigen::Index m = 0; m < prob.size(); ++m) st << j << ',' << m + 1 << ',' << fmt(prob[m]) << '\n';
        }
        out.write("spectrum.csv", sp.str());
        out.write("states.csv", st.str());
        summary["winding"] = res.winding;
        summary["reference_energy"] = {res.e_ref.real(), res.e_ref.imag()};
        summary["skin_count"] = std::count(flags.begin(), flags.end(), true);
        summary["pinned_count"] = pinned_mode_count(res);
        return 0;
    }};
}

Job prepare_phase(Config& cfg) {
    const LatticeParams p = read_lattice(cfg);
    DynamicsSettings s;
    s.omega = cfg.get_double("drive", "omega", 0.46);
    const std::vector<double> e0w = cfg.get_list("run", "e0_over_omega", {0.0, 0.5, 1.0, 2.0});
    const std::vector<double> e1w = cfg.get_list("run", "e1_over_omega", {1.3, 2.4048255576957728, 3.8317059702075123, 5.7});
    const std::string mode = cfg.get_string("run", "mode", "formula");
    s.periods = cfg.get_int("run", "periods", s.periods);
    s.drift_loc = cfg.get_double("run", "drift_loc", s.drift_loc);
    s.drift_skin = cfg.get_double("run", "drift_skin", s.drift_skin);
    s.start_site = cfg.get_int("run", "start_site", 0);
    s.tol.integer_tol = cfg.get_double("run", "integer_tol", s.tol.integer_tol);
    s.tol.zero_tol = cfg.get_double("run", "zero_tol", s.tol.zero_tol);
    const int threads = cfg.get_int("run", "threads", 0);

    if (mode != "formula" && mode != "dynamics" && mode != "both") {
        throw ConfigError("run.mode: expected formula, dynamics or both, got '" + mode + "'");
    }
    if (!(s.omega > 0.0)) throw ConfigError("drive.omega: must be > 0");
    if (s.periods < 1) throw ConfigError("run.periods: must be >= 1");

    return {[=](RunDir& out, nlohmann::json& summary) {
        const int workers = threads > 0 ? threads : default_threads();
        std::ostringstream os;
        os << "e0_over_w,e1_over_w,verdict,mode\n";
        std::vector<PhasePoint> formula, dynamics;
        if (mode != "dynamics") formula = scan_phase_diagram(e0w, e1w, p, ScanMode::formula, s, workers);
        if (mode != "formula") dynamics = scan_phase_diagram(e0w, e1w, p, ScanMode::dynamics, s, workers);
        for (const auto* rows : {&formula, &dynamics}) {
            for (const auto& pt : *rows) {
                os << fmt(pt.e0_over_omega) << ',' << fmt(pt.e1_over_omega) << ',' << to_string(pt.verdict) << ','
                   << (rows == &formula ? "formula" : "dynamics") << '\n';
            }
        }
        out.write("phase.csv", os.str());
        if (!formula.empty() && !dynamics.empty()) {
            int disagree = 0;
            for (std::size_t i = 0; i < formula.size(); ++i) disagree += formula[i].verdict != dynamics[i].verdict;
            summary["disagreements"] = disagree;
        }
        return 0;
    }};
}

Job prepare_circuit(Config& cfg) {
    const int length = cfg.get_int("lattice", "length", 10);
    const double spacing = cfg.get_double("lattice", "spacing", 1.0);
    const double e0 = cfg.get_double("drive", "E0", 0.3);
    const double gain = cfg.get_double("run", "gain", 1.2);
    const double delta = cfg.get_double("run", "delta", 4.0);
    const double l0 = cfg.get_double("run", "l0", 1.0);
    const double c0 = cfg.get_double("run", "c0", 1.0);
    const bool transient = cfg.get_bool("run", "transient", true);
    const double cycles = cfg.get_double("run", "cycles", 100.0);
    const double dt_in = cfg.get_double("run", "dt", 0.0);
    const double eig_tol = cfg.get_double("run", "eigenvalue_tol", 1e-10);
    const double freq_tol = cfg.get_double("run", "frequency_tol", 0.005);
    if (!(cycles > 0.0)) throw ConfigError("run.cycles: must be > 0");
    if (dt_in < 0.0) throw ConfigError("run.dt: must be >= 0");

    const CircuitNetlist net =
        as_config_error("circuit", [&] { return synthesize(length, gain, e0, delta, l0, c0, spacing); });

    return {[=](RunDir& out, nlohmann::json& summary) {
        const CircuitSpectrum cs = circuit_eigenproblem(net);
        const SpectralResult lat = obc_spectrum(LatticeParams{length, 1.0, gain, spacing}, e0);
        double eig_err = 0.0;
        for (std::size_t j = 0; j < lat.eigenvalues.size(); ++j) {
            eig_err = std::max(eig_err, std::abs(cs.modes.eigenvalues[j] - lat.eigenvalues[j]));
        }

        std::vector<double> measured(cs.omega.size(), std::nan(""));
        double freq_err = 0.0;
        if (transient) {
            double wmax = 0.0;
            for (const auto& w : cs.omega) if (w) wmax = std::max(wmax, *w);
            for (std::size_t j = 0; j < cs.omega.size(); ++j) {
                if (!cs.omega[j] || cs.complex_flag[j]) continue;
                const double w = *cs.omega[j];
                const double dt = dt_in > 0.0 ? dt_in : 2.0 * std::numbers::pi / wmax / 200.0;
                const Eigen::VectorXd v0 = cs.modes.right_eigenvectors.col(static_cast<Eigen::Index>(j)).real();
                const TransientReport rep = transient_check(net, v0, cycles * 2.0 * std::numbers::pi / w, dt);
                measured[j] = rep.measured[j];
                freq_err = std::max(freq_err, std::isnan(measured[j]) ? INFINITY : std::fabs(measured[j] / w - 1.0));
            }
        }

        const std::string body = format_netlist(net);
        out.write("circuit.net", body);

        std::ostringstream sp;
        sp << "idx,re_E,im_E,omega_pred,omega_meas\n";
        for (std::size_t j = 0; j < cs.omega.size(); ++j) {
            sp << j << ',' << fmt(cs.modes.eigenvalues[j].real()) << ',' << fmt(cs.modes.eigenvalues[j].imag()) << ','
               << (cs.omega[j] ? fmt(*cs.omega[j]) : "nan") << ',' << fmt(measured[j]) << '\n';
        }
        out.write("circuit_spectrum.csv", sp.str());

        const bool eig_ok = eig_err <= eig_tol;
        const bool freq_ok = !transient || freq_err <= freq_tol;
        std::ostringstream rep;
        rep << "check,value,tolerance,result\n";
        rep << "eigenvalue_max_abs_diff," << fmt(eig_err) << ',' << fmt(eig_tol) << ',' << (eig_ok ? "pass" : "fail")
            << '\n';
        if (transient) {
            rep << "frequency_max_rel_err," << fmt(freq_err) << ',' << fmt(freq_tol) << ','
                << (freq_ok ? "pass" : "fail") << '\n';
        }
        out.write("equivalence.csv", rep.str());
        summary["equivalent"] = eig_ok && freq_ok;
        return eig_ok && freq_ok ? 0 : 3;
    }};
}

Job prepare_bessel_zeros(Config& cfg) {
    const int order = cfg.get_int("run", "order", 0);
    const int count = cfg.get_int("run", "count", 10);
    if (order < 0 || order > 64) throw ConfigError("run.order: must lie in 0..64");
    if (count < 1 || count > 100) throw ConfigError("run.count: must lie in 1..100");
    return {[=](RunDir& out, nlohmann::json&) {
        const BesselZeroTable table(order, count);
        std::ostringstream os;
        os << "k,zero\n";
        for (std::size_t k = 0; k < table.zeros.size(); ++k) os << k + 1 << ',' << fmt(table.zeros[k]) << '\n';
        out.write("bessel_zeros.csv", os.str());
        return 0;
    }};
}

const std::map<std::string, std::function<Job(Config&)>>& commands() {
    static const std::map<std::string, std::function<Job(Config&)>> table{
        {"evolve", prepare_evolve},   {"winding", prepare_winding}, {"spectrum", prepare_spectrum},
        {"phase", prepare_phase},     {"circuit", prepare_circuit}, {"bessel-zeros", prepare_bessel_zeros},
    };
    return table;
}

std::string utc_timestamp(std::chrono::system_clock::time_point t) {
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

RunResult run_command(const std::string& command, Config& cfg) {
    const auto it = commands().find(command);
    if (it == commands().end()) throw ConfigError("unknown command '" + command + "'");
    const auto started = std::chrono::system_clock::now();
    const auto wall = std::chrono::steady_clock::now();

    const std::filesystem::path root = cfg.get_string("output", "dir", "runs");
    cfg.get_int("run", "seed", 0);
    Job job = it->second(cfg);
    cfg.get_int("run", "threads", 0);
    cfg.reject_unused();

    RunResult result;
    result.run_id = run_id_for(command, cfg.snapshot());
    RunDir out(root / result.run_id, result.run_id);
    nlohmann::json summary = nlohmann::json::object();
    result.exit_code = job.run(out, summary);
    result.directory = out.path();
    result.outputs = out.files();

    nlohmann::ordered_json manifest;
    manifest["run_id"] = result.run_id;
    manifest["command"] = command;
    manifest["version"] = NHSE_VERSION;
    manifest["timestamp"] = utc_timestamp(started);
    manifest["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall).count();
    manifest["outputs"] = result.outputs;
    manifest["summary"] = summary;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [key, value] : cfg.snapshot()) {
        const auto dot = key.find('.');
        config[key.substr(0, dot)][key.substr(dot + 1)] = value;
    }
    manifest["config"] = config;
    manifest["exit_code"] = result.exit_code;

    const auto path = out.path() / "manifest.json";
    std::ofstream mf(path, std::ios::trunc);
    mf << manifest.dump(2) << '\n';
    mf.close();
    if (!mf) throw IoError("failed writing " + path.string());
    return result;
}

int main(int argc, char** argv) {
    CLI::App app{"Driven non-reciprocal lattice simulations"};
    app.set_version_flag("--version", NHSE_VERSION);
    std::string config_path, out_dir;
    std::optional<int> threads, seed;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "INI config file or a previous manifest.json")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output root; each run writes <out>/<run id>/");
    app.add_option("--threads", threads, "worker threads for sweeps (default: logical cores)");
    app.add_option("--seed", seed, "reserved; every algorithm is deterministic");
    app.add_option("--set", sets, "section.key=value override, repeatable");
    app.require_subcommand(1, 1);
    for (const auto& [name, prepare] : commands()) app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        Config cfg = config_path.empty() ? Config{} : Config::from_file(config_path);
        for (const auto& s : sets) cfg.set(s);
        if (!out_dir.empty()) cfg.set("output", "dir", out_dir);
        if (threads) cfg.set("run", "threads", std::to_string(*threads));
        if (seed) cfg.set("run", "seed", std::to_string(*seed));
        const RunResult r = run_command(command, cfg);
        std::cout << r.directory.string() << '\n';
        if (r.exit_code != 0) std::cerr << "nhse: " << command << ": checks failed, see equivalence.csv\n";
        return r.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "nhse: config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "nhse: config error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "nhse: config error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "nhse: i/o error: " << e.what() << '\n';
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "nhse: i/o error: " << e.what() << '\n';
        return 4;
    } catch (const NumericalError& e) {
        std::cerr << "nhse: numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "nhse: numerical error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace nhse::cli
