#pragma once

// Bessel functions of integer order for real positive argument.
//
// The modified functions are evaluated in log space so that ratios like
// I_n(x)/K_n(x) ~ e^{2x}/pi never overflow:
//   * K_0, K_1 from the Temme series (x <= 2) or Steed's CF2 (x > 2),
//     K_n by the upward recurrence carried as ratios r_k = K_{k+1}/K_k;
//   * q_n = I_{n+1}/I_n from the CF1 continued fraction, I_n from the
//     Wronskian I_n K_{n+1} + I_{n+1} K_n = 1/x;
//   * orders n >= kDebyeOrder, or n >= 1 with x >= kDebyeArgument, use the
//     uniform (Debye) expansion; its terms fall like (t/n)^k ~ x^-k there.
// Ordinary J_n, Y_n use Steed's method (CF1 + complex CF2, Temme series for
// small x) with Hankel's expansion for n <= 1 at large argument.

#include <vector>

namespace casimir::sf {

/// Value stored as (ln|v|, sign(v)).
struct LogSigned {
  double log_magnitude = 0.0;
  int sign = 1;

  [[nodiscard]] double value() const;
};

/// Ingredients of the Debye expansion at z = x/n.
struct DebyeData {
  double eta = 0.0;  ///< sqrt(1+z^2) + ln(z / (1 + sqrt(1+z^2)))
  double t = 0.0;    ///< 1 / sqrt(1+z^2)
  double d1 = 0.0;   ///< t/8 - 5t^3/24
  double m1 = 0.0;   ///< -3t/8 + 7t^3/24
};

/// Orders at or above this use the Debye expansion in the log-space core.
inline constexpr int kDebyeOrder = 24;
/// Argument above which every n >= 1 uses it too.
inline constexpr double kDebyeArgument = 20.0;

/// e^{-x} I_n(x).
double bessel_i_scaled(int n, double x);
/// e^{x} K_n(x).
double bessel_k_scaled(int n, double x);
/// e^{-x} I_n'(x), from I_n' = (I_{n-1} + I_{n+1})/2.
double bessel_i_prime_scaled(int n, double x);
/// e^{x} K_n'(x), from K_n' = -(K_{n-1} + K_{n+1})/2.
double bessel_k_prime_scaled(int n, double x);

/// ln|I_n(x)/K_n(x)| (primed = false) or ln|I_n'(x)/K_n'(x)| (primed = true).
LogSigned log_ratio_ik(int n, double x, bool primed);

double bessel_j(int n, double x);
double bessel_y(int n, double x);
double bessel_j_prime(int n, double x);
double bessel_y_prime(int n, double x);

/// J_n, Y_n and their derivatives from a single evaluation.
struct BesselJY {
  double j = 0.0, y = 0.0, jp = 0.0, yp = 0.0;
};
BesselJY bessel_jy(int n, double x);

DebyeData debye(double z);

/// Zeros of J_0 in increasing order, j_{0,1} ~ 2.4048.
double bessel_j0_zero(int k);

namespace detail {

/// Log-space data for I_n, K_n at one (n, x).
struct LogIK {
  double log_i = 0.0;   ///< ln I_n(x)
  double log_k = 0.0;   ///< ln K_n(x)
  double di = 0.0;      ///< I_n'(x)/I_n(x) (> 0)
  double dk = 0.0;      ///< K_n'(x)/K_n(x) (< 0)
};

inline bool use_debye(int n, double x) {
  return n >= kDebyeOrder || (n >= 1 && x >= kDebyeArgument);
}

LogIK log_ik_recurrence(int n, double x);
LogIK log_ik_debye(int n, double x);
LogIK log_ik(int n, double x);
/// Ratio-only Debye evaluation used by log_ratio_ik for n >= kDebyeOrder.
LogSigned log_ratio_debye(int n, double x, bool primed);

/// Coefficient tables of the Debye polynomials u_k(t), v_k(t) (index = power of t).
const std::vector<std::vector<long double>>& debye_u_polynomials();
const std::vector<std::vector<long double>>& debye_v_polynomials();

}  // namespace detail

}  // namespace casimir::sf
