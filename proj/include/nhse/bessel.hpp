// bessel.hpp: integer-order Bessel functions of the first kind, their zeros,
// and the root x* of x exp(1 - chi x) = 1.
#pragma once

#include <vector>

namespace nhse {

inline constexpr int kMaxBesselOrder = 1024;
inline constexpr double kMaxBesselArgument = 1.0e6;

// J_n(x) for |n| <= 1024, |x| <= 1e6; throws std::domain_error outside that range.
//   |x| <= 12        ascending power series (extended precision accumulation)
//   12 < |x| <= 500  Miller backward recurrence normalized by J_0 + 2 sum J_2k = 1
//   |x| > 500        Hankel asymptotics for J_0, J_1 and upward recurrence (n <= x),
//                    Miller otherwise
// Negative orders/arguments are folded with J_{-n} = (-1)^n J_n, J_n(-x) = (-1)^n J_n(x).
double bessel_j(int n, double x);

// J_0(x) .. J_nmax(x) in one sweep. No order limit; used by the propagators where
// a whole band of orders is needed at a single argument.
std::vector<double> bessel_j_orders(int nmax, double x);

// Smallest order K > |x| such that |J_k(x)| < tol for every k >= K.
int bessel_tail_order(double x, double tol);

// k-th positive zero j_{nu,k}; nu <= 64, 1 <= k <= 100.
double bessel_zero(int nu, int k);

struct BesselZeroTable {
    int order{0};
    std::vector<double> zeros;  // ascending

    BesselZeroTable() = default;
    BesselZeroTable(int nu, int count);
};

// x exp(1 - chi x)
double paris_f(double chi, double x) noexcept;

// Root in (0,1) of x exp(1 - sqrt(J_L/J_R) x) = 1. Requires 0 < J_L < J_R.
double solve_x_star(double hop_left, double hop_right);

}  // namespace nhse
