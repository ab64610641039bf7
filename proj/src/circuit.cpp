#include "nhse/circuit.hpp"

#include "nhse/errors.hpp"
#include "nhse/numfmt.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nhse {

namespace {

constexpr double kRk4ImagLimit = 2.8;
constexpr char kMagic[] = "NHSE-LC v1";

// d^2 V/dt^2 = -A V with A assembled from component values; V_0 = V_{L+1} = 0.
Eigen::MatrixXd stiffness(const CircuitNetlist& net) {
    const int L = net.length;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(L, L);
    for (int i = 0; i < L; ++i) {
        const double c = net.shunt[static_cast<std::size_t>(i)];
        const double left = net.series[static_cast<std::size_t>(i)];
        const double right = i + 1 < L ? net.series[static_cast<std::size_t>(i + 1)] : net.closing_inductance();
        a(i, i) = 1.0 / (c * left) + 1.0 / (c * right) + 1.0 / (c * net.ground[static_cast<std::size_t>(i)]);
        if (i > 0) a(i, i - 1) = -1.0 / (c * left);
        if (i + 1 < L) a(i, i + 1) = -1.0 / (c * right);
    }
    return a;
}

double ladder_energy(const CircuitNetlist& net, const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    const int L = net.length;
    double e = 0.0;
    for (int i = 0; i < L; ++i) {
        const auto k = static_cast<std::size_t>(i);
        e += 0.5 * net.shunt[k] * w[i] * w[i];
        e += 0.5 * v[i] * v[i] / net.ground[k];
        const double prev = i > 0 ? v[i - 1] : 0.0;
        e += 0.5 * (v[i] - prev) * (v[i] - prev) / net.series[k];
    }
    e += 0.5 * v[L - 1] * v[L - 1] / net.closing_inductance();
    return e;
}

// |sum_k w_k x_k e^{-i omega t_k}| for a Hann window w.
double windowed_magnitude(const std::vector<double>& x, double h, double omega) {
    const std::size_t n = x.size();
    cplx acc(0.0);
    const cplx step = std::polar(1.0, -omega * h);
    cplx ph(1.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1));
        acc += w * x[k] * ph;
        ph *= step;
        if ((k & 1023) == 1023) ph = std::polar(1.0, -omega * h * static_cast<double>(k + 1));
    }
    return std::abs(acc);
}

double peak_frequency(const std::vector<double>& x, double h, double omega_max) {
    const double span = h * static_cast<double>(x.size() - 1);
    const double grid = std::numbers::pi / span;
    double best = grid, best_mag = -1.0;
    for (double w = grid; w <= omega_max; w += grid) {
        const double m = windowed_magnitude(x, h, w);
        if (m > best_mag) { best_mag = m; best = w; }
    }
    // golden-section refinement on the bracketing grid cells
    double a = best - grid, b = best + grid;
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = windowed_magnitude(x, h, c), fd = windowed_magnitude(x, h, d);
    for (int it = 0; it < 60 && b - a > 1e-12 * best; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - r * (b - a);
            fc = windowed_magnitude(x, h, c);
        } else {
            a = c; c = d; fc = fd;
            d = a + r * (b - a);
            fd = windowed_magnitude(x, h, d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double CircuitNetlist::omega0() const { return 1.0 / std::sqrt(base_capacitance * base_inductance); }

double CircuitNetlist::closing_inductance() const {
    return base_inductance * std::pow(gain, -(length + 1));
}

CircuitNetlist synthesize(int length, double g, double e0, double delta, double l0, double c0, double spacing) {
    if (length < 2) throw std::invalid_argument("synthesize: need at least 2 nodes");
    if (!(g > 0.0) || !(l0 > 0.0) || !(c0 > 0.0)) throw std::invalid_argument("synthesize: g, L0, C0 must be > 0");
    if (!std::isfinite(e0) || !std::isfinite(delta) || !std::isfinite(spacing) || !std::isfinite(g)) {
        throw std::invalid_argument("synthesize: parameters must be finite");
    }
    CircuitNetlist net;
    net.length = length;
    net.gain = g;
    net.field = e0;
    net.offset = delta;
    net.base_inductance = l0;
    net.base_capacitance = c0;
    net.spacing = spacing;
    for (int n = 1; n <= length; ++n) {
        const double margin = delta - spacing * n * e0;
        if (!(margin > 0.0)) {
            throw SynthesisError("synthesize: Delta - a n E0 = " + format_double(margin) + " <= 0 at node " +
                                 std::to_string(n));
        }
        const double ln = l0 * std::pow(g, -n);
        net.series.push_back(ln);
        net.shunt.push_back(c0 * std::pow(g, n));
        net.ground.push_back(ln / margin);
    }
    return net;
}

Eigen::MatrixXcd circuit_matrix(const CircuitNetlist& net) {
    const int L = net.length;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(L, L);
    for (int i = 0; i < L; ++i) {
        m(i, i) = (i + 1) * net.spacing * net.field;
        if (i > 0) m(i, i - 1) = 1.0;
        if (i + 1 < L) m(i, i + 1) = net.gain;
    }
    return m;
}

CircuitSpectrum circuit_eigenproblem(const CircuitNetlist& net) {
    CircuitSpectrum out;
    out.modes = eigen_decompose(circuit_matrix(net));
    out.modes.lattice = LatticeParams{net.length, net.gain, 1.0, net.spacing};
    out.modes.dc = net.field;
    const double top = 1.0 + net.gain + net.offset;
    for (const cplx e : out.modes.eigenvalues) {
        const bool flagged = std::fabs(e.imag()) > 1e-9 * (1.0 + std::abs(e));
        out.complex_flag.push_back(flagged);
        if (!flagged && top - e.real() >= 0.0) {
            out.omega.emplace_back(net.omega0() * std::sqrt(top - e.real()));
        } else {
            out.omega.emplace_back(std::nullopt);
        }
    }
    return out;
}

TransientReport transient_check(const CircuitNetlist& net, const Eigen::VectorXd& v0, double t_end, double dt) {
    const int L = net.length;
    if (v0.size() != L) throw std::invalid_argument("transient_check: need one initial voltage per node");
    if (!(dt > 0.0) || !(t_end > dt)) throw std::invalid_argument("transient_check: need 0 < dt < t_end");
    const Eigen::MatrixXd a = stiffness(net);
    // Gershgorin bound on the largest omega^2
    const double w2 = a.cwiseAbs().rowwise().sum().maxCoeff();
    const double omega_max = std::sqrt(w2);
    if (dt * omega_max > kRk4ImagLimit) {
        throw StepSizeError("transient_check: dt=" + format_double(dt) + " exceeds the RK4 bound " +
                            format_double(kRk4ImagLimit / omega_max));
    }

    const CircuitSpectrum spec = circuit_eigenproblem(net);
    const Eigen::MatrixXcd modes = spec.modes.right_eigenvectors;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> proj(modes);

    const long steps = static_cast<long>(std::ceil(t_end / dt));
    const double h = t_end / static_cast<double>(steps);
    // keep about 16 samples per shortest period
    const long stride = std::max(1L, static_cast<long>(std::floor(2.0 * std::numbers::pi / (16.0 * omega_max * h))));

    TransientReport rep;
    std::vector<std::vector<double>> signal(static_cast<std::size_t>(L));
    Eigen::VectorXd v = v0, w = Eigen::VectorXd::Zero(L);
    const double e_start = ladder_energy(net, v, w);
    auto record = [&] {
        const Eigen::VectorXcd c = proj.solve(v.cast<cplx>());
        for (int j = 0; j < L; ++j) signal[static_cast<std::size_t>(j)].push_back(c[j].real());
        rep.max_abs_voltage = std::max(rep.max_abs_voltage, v.cwiseAbs().maxCoeff());
        if (e_start > 0.0) rep.max_energy_ratio = std::max(rep.max_energy_ratio, ladder_energy(net, v, w) / e_start);
    };
    record();
    for (long s = 1; s <= steps; ++s) {
        const Eigen::VectorXd k1v = w, k1w = -a * v;
        const Eigen::VectorXd k2v = w + 0.5 * h * k1w, k2w = -a * (v + 0.5 * h * k1v);
        const Eigen::VectorXd k3v = w + 0.5 * h * k2w, k3w = -a * (v + 0.5 * h * k2v);
        const Eigen::VectorXd k4v = w + h * k3w, k4w = -a * (v + h * k3v);
        v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        w += (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        if (!v.allFinite()) throw NumericalError("transient_check: voltages diverged");
        if (s % stride == 0) record();
    }

    const Eigen::VectorXcd c0 = proj.solve(v0.cast<cplx>());
    const double total = c0.cwiseAbs().sum();
    for (int j = 0; j < L; ++j) {
        const auto k = static_cast<std::size_t>(j);
        rep.predicted.push_back(spec.omega[k] ? *spec.omega[k] : std::numeric_limits<double>::quiet_NaN());
        rep.modal_amplitude.push_back(std::abs(c0[j]));
        if (total == 0.0 || std::abs(c0[j]) < 1e-9 * total) {
            rep.measured.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        rep.measured.push_back(peak_frequency(signal[k], h * static_cast<double>(stride), 1.2 * omega_max));
    }
    return rep;
}

std::string format_netlist(const CircuitNetlist& net) {
    std::ostringstream os;
    os << kMagic << " L=" << net.length << " g=" << format_double(net.gain) << " E0=" << format_double(net.field)
       << " Delta=" << format_double(net.offset) << " L0=" << format_double(net.base_inductance)
       << " C0=" << format_double(net.base_capacitance) << " a=" << format_double(net.spacing) << '\n';
    for (int n = 1; n <= net.length; ++n) {
        const auto k = static_cast<std::size_t>(n - 1);
        os << "NODE " << n << " Lser=" << format_double(net.series[k]) << " lgnd=" << format_double(net.ground[k])
           << " Cgnd=" << format_double(net.shunt[k]) << '\n';
    }
    return os.str();
}

CircuitNetlist parse_netlist(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    auto fields = [](std::istream& ls) {
        std::map<std::string, std::string> kv;
        std::string tok;
        while (ls >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("netlist: malformed token '" + tok + "'");
            kv[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
        return kv;
    };
    auto need = [](const std::map<std::string, std::string>& kv, const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument("netlist: missing field " + key);
        return it->second;
    };

    while (std::getline(is, line) && line.rfind('#', 0) == 0) {
    }
    if (!is || line.rfind(kMagic, 0) != 0) {
        throw std::invalid_argument("netlist: missing 'NHSE-LC v1' header");
    }
    std::istringstream hs(line.substr(sizeof(kMagic) - 1));
    const auto head = fields(hs);
    CircuitNetlist net;
    net.length = std::stoi(need(head, "L"));
    net.gain = parse_double(need(head, "g"));
    net.field = parse_double(need(head, "E0"));
    net.offset = parse_double(need(head, "Delta"));
    net.base_inductance = parse_double(need(head, "L0"));
    net.base_capacitance = parse_double(need(head, "C0"));
    net.spacing = parse_double(need(head, "a"));
    if (net.length < 1) throw std::invalid_argument("netlist: L must be positive");

    int expected = 1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        int n = 0;
        if (!(ls >> tag >> n) || tag != "NODE") throw std::invalid_argument("netlist: bad line '" + line + "'");
        if (n != expected) throw std::invalid_argument("netlist: expected node " + std::to_string(expected));
        const auto kv = fields(ls);
        net.series.push_back(parse_double(need(kv, "Lser")));
        net.ground.push_back(parse_double(need(kv, "lgnd")));
        net.shunt.push_back(parse_double(need(kv, "Cgnd")));
        ++expected;
    }
    if (expected != net.length + 1) throw std::invalid_argument("netlist: node count does not match L");
    return net;
}

void export_netlist(const CircuitNetlist& net, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << format_netlist(net);
    if (!out) throw IoError("write failed for " + path.string());
}

CircuitNetlist import_netlist(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_netlist(ss.str());
}

}  // namespace nhse
