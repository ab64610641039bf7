#include "nhse/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nhse {

namespace {

constexpr double kSeriesLimit = 12.0;
constexpr double kHankelLimit = 500.0;
constexpr double kRescale = 1.0e250;

double series_jn(int n, double x) {
    // n >= 0, 0 < x <= 12
    const long double h = 0.5L * x;
    const long double log_t0 = n * std::log(h) - std::lgamma(static_cast<long double>(n) + 1.0L);
    if (log_t0 < -11000.0L) return 0.0;
    long double term = std::exp(log_t0);
    long double sum = term;
    const long double h2 = h * h;
    for (int k = 1; k < 500; ++k) {
        term *= -h2 / (static_cast<long double>(k) * static_cast<long double>(k + n));
        sum += term;
        if (std::fabs(term) <= 1.0e-21L * std::fabs(sum)) break;
    }
    return static_cast<double>(sum);
}

int miller_start(int nmax, double x) {
    const double m = std::max(static_cast<double>(nmax), x);
    int n = static_cast<int>(std::ceil(m + 20.0 + 10.0 * std::cbrt(m)));
    if (n % 2 != 0) ++n;
    return n;
}

// Unnormalized backward recurrence from `start` down to `stop`, values stored in
// out[k] for stop <= k <= nmax. Returns the running normalization sum
// J_0 + 2 sum J_2k (meaningful only when stop == 0).
double backward_recurrence(int start, int stop, int nmax, double x, std::vector<double>& out) {
    double upper = 0.0;  // J_{k+1}
    double cur = 1.0;    // J_k
    double norm = 0.0;
    for (int k = start; k > stop; --k) {
        if (k <= nmax) out[k] = cur;
        if (k % 2 == 0) norm += 2.0 * cur;
        const double lower = (2.0 * k / x) * cur - upper;
        upper = cur;
        cur = lower;
        if (std::fabs(cur) > kRescale) {
            const double s = 1.0 / kRescale;
            cur *= s;
            upper *= s;
            norm *= s;
            for (int i = k; i <= std::min(nmax, start); ++i) out[i] *= s;
        }
    }
    out[stop] = cur;
    norm += (stop == 0) ? cur : 0.0;
    return norm;
}

void miller_all(int nmax, double x, std::vector<double>& out) {
    const int start = miller_start(nmax, x);
    const double norm = backward_recurrence(start, 0, nmax, x, out);
    for (int k = 0; k <= nmax; ++k) out[k] /= norm;
}

// Hankel asymptotic expansion of J_n(x), valid for x >> n^2.
double hankel_jn(int n, double x) {
    const double mu = 4.0 * n * n;
    double term = 1.0;
    double p = 1.0;
    double q = 0.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        const double mag = std::fabs(term);
        if (mag > last) break;  // asymptotic series starts diverging
        last = mag;
        switch (k % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            case 0: p += term; break;
        }
        if (mag < 1.0e-18) break;
    }
    const double phase = (0.5 * n + 0.25) * std::numbers::pi;
    const double c = std::cos(x) * std::cos(phase) + std::sin(x) * std::sin(phase);
    const double s = std::sin(x) * std::cos(phase) - std::cos(x) * std::sin(phase);
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * c - q * s);
}

// J_0..J_nmax for x > 500: Hankel seeds plus upward recurrence below the turning
// point, Miller above it matched onto the upward values.
void large_argument(int nmax, double x, std::vector<double>& out) {
    out[0] = hankel_jn(0, x);
    if (nmax == 0) return;
    out[1] = hankel_jn(1, x);
    const int turn = std::min(nmax, static_cast<int>(std::floor(x)));
    for (int k = 1; k < turn; ++k) out[k + 1] = (2.0 * k / x) * out[k] - out[k - 1];
    if (nmax <= turn) return;

    const int match = std::fabs(out[turn]) >= std::fabs(out[turn - 1]) ? turn : turn - 1;
    std::vector<double> upper(static_cast<std::size_t>(nmax) + 1, 0.0);
    backward_recurrence(miller_start(nmax, x), match, nmax, x, upper);
    const double scale = out[match] / upper[match];
    for (int k = turn + 1; k <= nmax; ++k) out[k] = upper[k] * scale;
}

void check_range(int n, double x) {
    if (std::isnan(x) || std::fabs(x) > kMaxBesselArgument) {
        throw std::domain_error("bessel_j: argument outside |x| <= 1e6");
    }
    if (n < -kMaxBesselOrder || n > kMaxBesselOrder) {
        throw std::domain_error("bessel_j: order outside |n| <= 1024, got " + std::to_string(n));
    }
}

}  // namespace

std::vector<double> bessel_j_orders(int nmax, double x) {
    if (nmax < 0) throw std::invalid_argument("bessel_j_orders: nmax must be >= 0");
    if (!std::isfinite(x)) throw std::domain_error("bessel_j_orders: non-finite argument");
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    const double ax = std::fabs(x);
    if (ax == 0.0) {
        out[0] = 1.0;
        return out;
    }
    if (ax <= kHankelLimit) {
        miller_all(nmax, ax, out);
    } else {
        large_argument(nmax, ax, out);
    }
    if (x < 0.0) {
        for (int k = 1; k <= nmax; k += 2) out[k] = -out[k];
    }
    return out;
}

double bessel_j(int n, double x) {
    check_range(n, x);
    double sign = 1.0;
    if (n < 0) {
        n = -n;
        if (n % 2 != 0) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n % 2 != 0) sign = -sign;
    }
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (x <= kSeriesLimit) return sign * series_jn(n, x);

    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    if (x <= kHankelLimit) {
        miller_all(n, x, out);
    } else {
        large_argument(n, x, out);
    }
    return sign * out[static_cast<std::size_t>(n)];
}

int bessel_tail_order(double x, double tol) {
    const double ax = std::fabs(x);
    int guess = miller_start(0, ax);
    for (;;) {
        const auto j = bessel_j_orders(guess, ax);
        for (int k = static_cast<int>(std::floor(ax)) + 1; k <= guess; ++k) {
            if (std::fabs(j[k]) < tol) return k;
        }
        guess *= 2;
    }
}

BesselZeroTable::BesselZeroTable(int nu, int count) : order(nu) {
    if (nu < 0 || nu > 64) throw std::domain_error("bessel_zero: order must be in [0, 64]");
    if (count < 1 || count > 100) throw std::domain_error("bessel_zero: index must be in [1, 100]");

    // Consecutive zeros are more than 2.9 apart for every nu >= 0 and J_nu has no
    // zero in (0, max(nu, 1)], so a 0.5 scan brackets each zero exactly once.
    constexpr double step = 0.5;
    double a = std::max(static_cast<double>(nu), 1.0);
    double fa = bessel_j(nu, a);
    zeros.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(zeros.size()) < count) {
        const double b = a + step;
        const double fb = bessel_j(nu, b);
        if (fb == 0.0) {
            zeros.push_back(b);
        } else if ((fa < 0.0) != (fb < 0.0)) {
            double lo = a, hi = b, flo = fa;
            while (hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi) {
                const double mid = 0.5 * (lo + hi);
                const double fm = bessel_j(nu, mid);
                if (fm == 0.0) { lo = hi = mid; break; }
                if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
            }
            double root = 0.5 * (lo + hi);
            const double f = bessel_j(nu, root);
            const double df = nu == 0 ? -bessel_j(1, root)
                                      : 0.5 * (bessel_j(nu - 1, root) - bessel_j(nu + 1, root));
            if (df != 0.0) {
                const double polished = root - f / df;
                if (std::fabs(bessel_j(nu, polished)) < std::fabs(f)) root = polished;
            }
            zeros.push_back(root);
        }
        a = b;
        fa = fb;
    }
}

double bessel_zero(int nu, int k) {
    return BesselZeroTable(nu, k).zeros.back();
}

double paris_f(double chi, double x) noexcept {
    return x * std::exp(1.0 - chi * x);
}

double solve_x_star(double hop_left, double hop_right) {
    if (!(hop_left > 0.0) || !(hop_left < hop_right)) {
        throw std::domain_error("solve_x_star: requires 0 < J_L < J_R");
    }
    const double chi = std::sqrt(hop_left / hop_right);
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > std::numeric_limits<double>::epsilon() * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (paris_f(chi, mid) < 1.0) lo = mid; else hi = mid;
    }
    const double lo_res = std::fabs(paris_f(chi, lo) - 1.0);
    const double hi_res = std::fabs(paris_f(chi, hi) - 1.0);
    return lo_res <= hi_res ? lo : hi;
}

}  // namespace nhse
