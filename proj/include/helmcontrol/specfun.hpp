#ifndef HELMCONTROL_SPECFUN_HPP
#define HELMCONTROL_SPECFUN_HPP

#include <vector>

#include "helmcontrol/types.hpp"

namespace helm {

// Largest Bessel order the module commits to. The ocean far-field expansion
// needs orders up to the configured azimuthal truncation (100 by default).
inline constexpr int kMaxBesselOrder = 256;

/// Bessel function of the first kind J_q(x), integer order q >= 0, x >= 0.
/// Ascending series for small arguments / large orders, Miller downward
/// recurrence with the J0 + 2*J2 + 2*J4 + ... = 1 normalization otherwise.
/// Absolute error <= 1e-12 for x <= 1e3.
double bessel_j(int q, double x);

/// All of J_0(x) .. J_{q_max}(x) in one Miller sweep. Much cheaper than
/// q_max+1 independent calls when a whole azimuthal series is needed.
std::vector<double> bessel_j_array(int q_max, double x);

/// Bessel function of the second kind Y_0(x), x > 0.
double bessel_y0(double x);

/// Hankel function of the first kind H0^(1)(x) = J0(x) + i Y0(x), x > 0.
/// Absolute error <= 1e-10 for x in (0, 1e5].
Complex hankel1_0(double x);

/// Modified Bessel functions needed for evanescent (imaginary-eigenvalue)
/// modes. Series below t = 8, exponentially-scaled asymptotics above.
double bessel_i0(double t);
double bessel_k0(double t);

/// H0^(1)(i t) = (2 / (i pi)) K0(t) for t > 0: the continuation of the
/// radiating Hankel kernel onto the positive imaginary axis. Purely
/// imaginary, magnitude strictly decreasing in t.
Complex hankel1_0_imag(double t);

/// Gauss-Legendre nodes/weights on [-1, 1], ascending nodes.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace helm

#endif  // HELMCONTROL_SPECFUN_HPP
