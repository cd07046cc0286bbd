#include "helmcontrol/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace helm {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

// Ascending series J_q(x) = sum_m (-1)^m (x/2)^(q+2m) / (m! (q+m)!).
// Safe whenever x is small or q >= x (no catastrophic sign cancellation).
double bessel_j_series(int q, double x) {
  const double half = 0.5 * x;
  double prefix = 1.0;
  for (int i = 1; i <= q; ++i) prefix *= half / static_cast<double>(i);
  if (prefix == 0.0) return 0.0;  // (x/2)^q underflow: J_q is that small
  const double t = half * half;
  double term = prefix;
  double sum = term;
  for (int m = 1; m < 600; ++m) {
    term *= -t / (static_cast<double>(m) * static_cast<double>(m + q));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

// Start order for Miller's downward recurrence: far enough above both the
// target order and the turning point that J_start/J_q is negligible.
int miller_start(int q, double x) {
  const double m = std::max(static_cast<double>(q), x);
  return static_cast<int>(m) + 24 + static_cast<int>(14.0 * std::cbrt(m + 1.0));
}

// Downward recurrence J_{n-1} = (2n/x) J_n - J_{n+1} with the Neumann-series
// normalization. Fills out[0..q_max].
void bessel_j_miller(int q_max, double x, std::vector<double>& out) {
  const int start = miller_start(q_max, x);
  double jp = 0.0;        // J_{n+1}
  double jc = 1e-300;     // J_n (arbitrary scale)
  double norm = 0.0;      // accumulates J0 + 2 J2 + 2 J4 + ...
  for (int n = start; n >= 0; --n) {
    const double jm = (2.0 * (n + 1) / x) * jc - jp;
    jp = jc;
    jc = jm;
    if (n <= q_max) out[n] = jc;
    if (n % 2 == 0) norm += (n == 0) ? jc : 2.0 * jc;
    if (std::abs(jc) > 1e250) {  // rescale before overflow
      jp /= 1e250;
      jc /= 1e250;
      norm /= 1e250;
      for (int i = n; i <= q_max; ++i) out[i] /= 1e250;
    }
  }
  for (int i = 0; i <= q_max; ++i) out[i] /= norm;
}

// Hankel asymptotic pair for order zero, x >= 12:
//   J0 = sqrt(2/(pi x)) (P cos chi - Q sin chi),  chi = x - pi/4
//   Y0 = sqrt(2/(pi x)) (P sin chi + Q cos chi)
void j0y0_asymptotic(double x, double& j0, double& y0) {
  double p = 0.0, q = 0.0;
  double u = 1.0;  // |a_k| / x^k, ratio u_k/u_{k-1} = (2k-1)^2 / (8 k x)
  int parity = 0;
  // H0 ~ A e^{i chi} sum_k (-i)^k u_k, so P = u0 - u2 + u4 - ... and
  // Q = -u1 + u3 - u5 + ... (leading Q term is -1/(8x)).
  double sign_even = 1.0, sign_odd = -1.0;
  for (int k = 0; k <= 34; ++k) {
    if (parity == 0) {
      p += sign_even * u;
      sign_even = -sign_even;
    } else {
      q += sign_odd * u;
      sign_odd = -sign_odd;
    }
    parity ^= 1;
    const double next = u * ((2.0 * k + 1.0) * (2.0 * k + 1.0)) / (8.0 * (k + 1.0) * x);
    if (next < 1e-18 || next > u) break;  // converged or past the optimal term
    u = next;
  }
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double chi = x - 0.25 * kPi;
  const double c = std::cos(chi), s = std::sin(chi);
  j0 = amp * (p * c - q * s);
  y0 = amp * (p * s + q * c);
}

// Y0 log-series (A&S 9.1.13), x <= 12:
//   Y0 = (2/pi) [ (ln(x/2) + gamma) J0(x) + sum_{m>=1} (-1)^{m+1} H_m t^m / (m!)^2 ],
// t = x^2/4, H_m the m-th harmonic number.
double y0_series(double x, double j0) {
  const double t = 0.25 * x * x;
  double term = 1.0;  // t^m / (m!)^2 at m = 0 -> updated before use
  double harmonic = 0.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int m = 1; m < 200; ++m) {
    term *= t / (static_cast<double>(m) * static_cast<double>(m));
    harmonic += 1.0 / static_cast<double>(m);
    sum += sign * harmonic * term;
    sign = -sign;
    if (harmonic * term < 1e-18 * (std::abs(sum) + 1e-300) && m > 3) break;
  }
  return (2.0 / kPi) * ((std::log(0.5 * x) + kEulerGamma) * j0 + sum);
}

}  // namespace

double bessel_j(int q, double x) {
  if (q < 0 || q > kMaxBesselOrder) throw std::invalid_argument("bessel_j: order out of range");
  if (!(x >= 0.0)) throw std::invalid_argument("bessel_j: argument must be >= 0");
  if (x == 0.0) return q == 0 ? 1.0 : 0.0;
  if (x < 9.0 || q >= x) return bessel_j_series(q, x);
  std::vector<double> all(static_cast<std::size_t>(q) + 1);
  bessel_j_miller(q, x, all);
  return all[static_cast<std::size_t>(q)];
}

std::vector<double> bessel_j_array(int q_max, double x) {
  if (q_max < 0 || q_max > kMaxBesselOrder)
    throw std::invalid_argument("bessel_j_array: order out of range");
  if (!(x >= 0.0)) throw std::invalid_argument("bessel_j_array: argument must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(q_max) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x < 9.0) {
    for (int q = 0; q <= q_max; ++q) out[static_cast<std::size_t>(q)] = bessel_j_series(q, x);
  } else {
    bessel_j_miller(q_max, x, out);
  }
  return out;
}

double bessel_y0(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("bessel_y0: argument must be > 0");
  if (x < 12.0) return y0_series(x, bessel_j(0, x));
  double j0, y0;
  j0y0_asymptotic(x, j0, y0);
  return y0;
}

Complex hankel1_0(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("hankel1_0: argument must be > 0 (branch point)");
  if (x < 12.0) {
    const double j0 = bessel_j(0, x);
    return {j0, y0_series(x, j0)};
  }
  double j0, y0;
  j0y0_asymptotic(x, j0, y0);
  return {j0, y0};
}

double bessel_i0(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("bessel_i0: argument must be >= 0");
  if (t <= 8.0) {
    const double u = 0.25 * t * t;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 100; ++m) {
      term *= u / (static_cast<double>(m) * static_cast<double>(m));
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum;
  }
  // I0 ~ e^t / sqrt(2 pi t) * sum_k a_k(0)/t^k with positive a-symbol ratios
  double u = 1.0, sum = 1.0;
  for (int k = 1; k <= 30; ++k) {
    const double next = u * ((2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * t);
    if (next > u) break;
    u = next;
    sum += u;
    if (u < 1e-17 * sum) break;
  }
  return std::exp(t) * sum / std::sqrt(2.0 * kPi * t);
}

double bessel_k0(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("bessel_k0: argument must be > 0");
  if (t <= 8.0) {
    // K0 = -(ln(t/2) + gamma) I0(t) + sum_{m>=1} H_m (t^2/4)^m / (m!)^2
    const double u = 0.25 * t * t;
    double term = 1.0, harmonic = 0.0, sum = 0.0;
    for (int m = 1; m < 150; ++m) {
      term *= u / (static_cast<double>(m) * static_cast<double>(m));
      harmonic += 1.0 / static_cast<double>(m);
      sum += harmonic * term;
      if (harmonic * term < 1e-17 * (sum + 1e-300) && m > 3) break;
    }
    return -(std::log(0.5 * t) + kEulerGamma) * bessel_i0(t) + sum;
  }
  // K0 ~ sqrt(pi/(2t)) e^{-t} sum_k b_k, b_k/b_{k-1} = -(2k-1)^2/(8 k t)
  double b = 1.0, sum = 1.0;
  for (int k = 1; k <= 30; ++k) {
    const double ratio = ((2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * t);
    if (ratio > 1.0) break;
    b *= -ratio;
    sum += b;
    if (std::abs(b) < 1e-17 * std::abs(sum)) break;
  }
  return std::sqrt(kPi / (2.0 * t)) * std::exp(-t) * sum;
}

Complex hankel1_0_imag(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("hankel1_0_imag: argument must be > 0");
  // H0^(1)(i t) = (2/(i pi)) K0(t) = -i (2/pi) K0(t)
  return {0.0, -(2.0 / kPi) * bessel_k0(t)};
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const std::size_t a = static_cast<std::size_t>(i);
    const std::size_t b = static_cast<std::size_t>(n - 1 - i);
    nodes[a] = -x;
    nodes[b] = x;
    weights[a] = weights[b] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace helm
