#include "casimir/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"

namespace casimir::sf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be finite and > 0, got " + std::to_string(x));
  }
}

void require_order(int n, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + ": order must be >= 0");
}

// e^x K_0(x), e^x K_1(x).
struct ScaledK01 {
  double k0 = 0.0;
  double k1 = 0.0;
};

ScaledK01 scaled_k01(double x) {
  if (x <= 2.0) {
    // K_0 = -(ln(x/2)+gamma) I_0 + sum_k H_k (x^2/4)^k/(k!)^2
    // K_1 = 1/x + ln(x/2) I_1 - (x/4) sum_k (psi(k+1)+psi(k+2)) (x^2/4)^k/(k!(k+1)!)
    const double y = 0.25 * x * x;
    const double lnx2 = std::log(0.5 * x);
    double term0 = 1.0;  // (x^2/4)^k/(k!)^2
    double term1 = 1.0;  // (x^2/4)^k/(k!(k+1)!)
    double i0 = 1.0, i1 = 1.0;
    double h = 0.0;  // H_k
    double s0 = 0.0;
    double s1 = -2.0 * kEulerGamma + 1.0;  // psi(1)+psi(2)
    for (int k = 1; k < 200; ++k) {
      term0 *= y / (static_cast<double>(k) * k);
      term1 *= y / (static_cast<double>(k) * (k + 1));
      h += 1.0 / k;
      i0 += term0;
      i1 += term1;
      s0 += h * term0;
      s1 += (2.0 * (h - kEulerGamma) + 1.0 / (k + 1)) * term1;
      if (term0 < kEps * 1e-3 * i0 && term1 < kEps * 1e-3 * i1) break;
    }
    i1 *= 0.5 * x;
    const double k0 = -(lnx2 + kEulerGamma) * i0 + s0;
    const double k1 = 1.0 / x + lnx2 * i1 - 0.25 * x * s1;
    const double ex = std::exp(x);
    return {k0 * ex, k1 * ex};
  }
  // Steed's CF2 (Temme's normalisation) at order 0.
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  const double k0 = std::sqrt(kPi / (2.0 * x)) / s;
  const double k1 = k0 * (x + 0.5 - h) / x;
  return {k0, k1};
}

// q_n = I_{n+1}(x)/I_n(x) by CF1, modified Lentz.
double ratio_i_next(int n, double x) {
  double f = kTiny;
  double c = f;
  double d = 0.0;
  const int maxit = 100000 + 4 * static_cast<int>(x);
  for (int k = 1; k < maxit; ++k) {
    const double b = 2.0 * (n + k) / x;
    d = b + d;
    if (d == 0.0) d = kTiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) return f;
  }
  throw InternalError("ratio_i_next: CF1 did not converge");
}

}  // namespace

double LogSigned::value() const { return sign * std::exp(log_magnitude); }

namespace detail {

LogIK log_ik_recurrence(int n, double x) {
  const ScaledK01 k01 = scaled_k01(x);
  const double lnx = std::log(x);
  // s_k = x K_{k+1}/K_k, obeying s_k = x^2/s_{k-1} + 2k.
  double s_prev = 0.0;
  double s = x * k01.k1 / k01.k0;
  double prod = 1.0;
  double log_acc = 0.0;
  for (int k = 1; k <= n; ++k) {
    prod *= s;
    if (prod > 1e250) {
      log_acc += std::log(prod);
      prod = 1.0;
    }
    s_prev = s;
    s = x * x / s + 2.0 * k;
  }
  log_acc += std::log(prod);
  // ln K_n = ln K_0 + sum_{k<n} (ln s_k - ln x)
  const double log_k0 = std::log(k01.k0) - x;
  const double log_k = log_k0 + log_acc - n * lnx;
  const double xq = x * ratio_i_next(n, x);
  LogIK out;
  out.log_k = log_k;
  // Wronskian: I_n (K_{n+1} + q_n K_n) = 1/x
  out.log_i = -log_k - std::log(s + xq);
  out.di = (n + xq) / x;
  out.dk = n == 0 ? -s / x : -(x * x / s_prev + n) / x;
  return out;
}

namespace {

struct DebyeSums {
  long double su = 1.0L, sk = 1.0L, vi = 1.0L, vk = 1.0L;
};

long double horner(const std::vector<long double>& c, long double t) {
  long double r = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + *it;
  return r;
}

DebyeSums debye_sums(int n, double t) {
  const auto& u = debye_u_polynomials();
  const auto& v = debye_v_polynomials();
  DebyeSums s;
  const long double inv_n = 1.0L / n;
  long double pw = 1.0L;
  int small = 0;
  for (std::size_t k = 1; k < u.size(); ++k) {
    pw *= inv_n;
    const long double uk = horner(u[k], t) * pw;
    const long double vk = horner(v[k], t) * pw;
    const long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
    s.su += uk;
    s.sk += sgn * uk;
    s.vi += vk;
    s.vk += sgn * vk;
    if (std::abs(uk) < 1e-19L && std::abs(vk) < 1e-19L) {
      if (++small == 2) break;
    } else {
      small = 0;
    }
  }
  return s;
}

}  // namespace

LogIK log_ik_debye(int n, double x) {
  const double z = x / n;
  const DebyeData dd = debye(z);
  const DebyeSums s = debye_sums(n, dd.t);
  const double quarter_log = -0.5 * std::log(dd.t);  // (1/4) ln(1+z^2)
  LogIK out;
  out.log_i = n * dd.eta - 0.5 * std::log(2.0 * kPi * n) - quarter_log + std::log(static_cast<double>(s.su));
  out.log_k = -n * dd.eta + 0.5 * std::log(kPi / (2.0 * n)) - quarter_log + std::log(static_cast<double>(s.sk));
  // x I'/I = n sqrt(1+z^2) V/U
  out.di = n / dd.t * static_cast<double>(s.vi / s.su) / x;
  out.dk = -n / dd.t * static_cast<double>(s.vk / s.sk) / x;
  return out;
}

namespace {

// Double-precision Debye tables. p_k(t) has the parity of k, so only the
// coefficients of t^k, t^(k+2), ... are kept: p_k(t) = t^k q_k(t^2).
struct DebyeTablesD {
  std::vector<std::vector<double>> u, v;
};

std::vector<std::vector<double>> compress(const std::vector<std::vector<long double>>& p) {
  std::vector<std::vector<double>> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (std::size_t j = k; j < p[k].size(); j += 2) out[k].push_back(static_cast<double>(p[k][j]));
  }
  return out;
}

const DebyeTablesD& debye_tables_d() {
  static const DebyeTablesD tables{compress(debye_u_polynomials()), compress(debye_v_polynomials())};
  return tables;
}

// Even and odd parts (in k) of sum_k p_k(t)/n^k.
void parity_sums(const std::vector<std::vector<double>>& q, int n, double t, double& even,
                 double& odd) {
  even = 1.0;
  odd = 0.0;
  const double t2 = t * t;
  const double step = t / n;
  double pw = 1.0;
  int small = 0;
  for (std::size_t k = 1; k < q.size(); ++k) {
    pw *= step;
    const auto& c = q[k];
    double h = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) h = h * t2 + c[j];
    const double term = h * pw;
    (k % 2 == 0 ? even : odd) += term;
    if (std::abs(term) < 1e-18) {
      if (++small == 2) break;
    } else {
      small = 0;
    }
  }
}

}  // namespace

// ln|I_n/K_n| = 2n eta - ln pi + ln(U+/U-), ln|I_n'/K_n'| likewise with V.
LogSigned log_ratio_debye(int n, double x, bool primed) {
  const double z = x / n;
  const double root = std::sqrt(1.0 + z * z);
  const double eta = root - std::asinh(1.0 / z);
  const auto& tab = debye_tables_d();
  double even = 0.0, odd = 0.0;
  parity_sums(primed ? tab.v : tab.u, n, 1.0 / root, even, odd);
  LogSigned r;
  r.log_magnitude = 2.0 * n * eta - std::log(kPi) + std::log1p(2.0 * odd / (even - odd));
  // I' > 0 and K' < 0 show up as the signs of the two V sums.
  r.sign = primed ? -((even + odd > 0.0) == (even - odd > 0.0) ? 1 : -1) : 1;
  return r;
}

LogIK log_ik(int n, double x) {
  return use_debye(n, x) ? log_ik_debye(n, x) : log_ik_recurrence(n, x);
}

const std::vector<std::vector<long double>>& debye_u_polynomials() {
  static const std::vector<std::vector<long double>> table = [] {
    constexpr int kTerms = 20;
    std::vector<std::vector<long double>> u(kTerms + 1);
    u[0] = {1.0L};
    for (int k = 0; k < kTerms; ++k) {
      const auto& p = u[k];
      std::vector<long double> next(p.size() + 3, 0.0L);
      // (1/2) t^2 (1 - t^2) p'(t)
      for (std::size_t j = 1; j < p.size(); ++j) {
        const long double dj = 0.5L * j * p[j];  // coefficient of t^{j-1} in p'/2
        next[j + 1] += dj;
        next[j + 3] -= dj;
      }
      // (1/8) int_0^t (1 - 5 s^2) p(s) ds
      for (std::size_t j = 0; j < p.size(); ++j) {
        next[j + 1] += p[j] / (8.0L * (j + 1));
        next[j + 3] -= 5.0L * p[j] / (8.0L * (j + 3));
      }
      while (next.size() > 1 && next.back() == 0.0L) next.pop_back();
      u[k + 1] = std::move(next);
    }
    return u;
  }();
  return table;
}

const std::vector<std::vector<long double>>& debye_v_polynomials() {
  static const std::vector<std::vector<long double>> table = [] {
    const auto& u = debye_u_polynomials();
    std::vector<std::vector<long double>> v(u.size());
    v[0] = {1.0L};
    for (std::size_t k = 1; k < u.size(); ++k) {
      // v_k = u_k + t (t^2 - 1) [u_{k-1}/2 + t u_{k-1}']
      const auto& p = u[k - 1];
      std::vector<long double> inner(p.size(), 0.0L);
      for (std::size_t j = 0; j < p.size(); ++j) inner[j] = (0.5L + j) * p[j];
      std::vector<long double> out(std::max(u[k].size(), inner.size() + 3), 0.0L);
      for (std::size_t j = 0; j < u[k].size(); ++j) out[j] += u[k][j];
      for (std::size_t j = 0; j < inner.size(); ++j) {
        out[j + 3] += inner[j];
        out[j + 1] -= inner[j];
      }
      while (out.size() > 1 && out.back() == 0.0L) out.pop_back();
      v[k] = std::move(out);
    }
    return v;
  }();
  return table;
}

}  // namespace detail

double bessel_i_scaled(int n, double x) {
  require_order(n, "bessel_i_scaled");
  require_positive(x, "bessel_i_scaled");
  return std::exp(detail::log_ik(n, x).log_i - x);
}

double bessel_k_scaled(int n, double x) {
  require_order(n, "bessel_k_scaled");
  require_positive(x, "bessel_k_scaled");
  if (n <= 1) {
    const ScaledK01 k = scaled_k01(x);
    return n == 0 ? k.k0 : k.k1;
  }
  return std::exp(detail::log_ik(n, x).log_k + x);
}

double bessel_i_prime_scaled(int n, double x) {
  require_order(n, "bessel_i_prime_scaled");
  require_positive(x, "bessel_i_prime_scaled");
  if (n == 0) return bessel_i_scaled(1, x);
  return 0.5 * (bessel_i_scaled(n - 1, x) + bessel_i_scaled(n + 1, x));
}

double bessel_k_prime_scaled(int n, double x) {
  require_order(n, "bessel_k_prime_scaled");
  require_positive(x, "bessel_k_prime_scaled");
  if (n == 0) return -bessel_k_scaled(1, x);
  return -0.5 * (bessel_k_scaled(n - 1, x) + bessel_k_scaled(n + 1, x));
}

LogSigned log_ratio_ik(int n, double x, bool primed) {
  require_order(n, "log_ratio_ik");
  require_positive(x, "log_ratio_ik");
  if (detail::use_debye(n, x)) return detail::log_ratio_debye(n, x, primed);
  const detail::LogIK v = detail::log_ik_recurrence(n, x);
  LogSigned r;
  r.log_magnitude = v.log_i - v.log_k;
  if (!primed) return r;
  const int sign_ip = v.di > 0.0 ? 1 : -1;
  const int sign_kp = v.dk > 0.0 ? 1 : -1;
  r.log_magnitude += std::log(std::abs(v.di)) - std::log(std::abs(v.dk));
  r.sign = sign_ip * sign_kp;
  return r;
}

DebyeData debye(double z) {
  require_positive(z, "debye");
  DebyeData d;
  const double root = std::hypot(1.0, z);
  d.t = 1.0 / root;
  // ln(z/(1+sqrt(1+z^2))) = -asinh(1/z)
  d.eta = root - std::asinh(1.0 / z);
  const double t3 = d.t * d.t * d.t;
  d.d1 = d.t / 8.0 - 5.0 * t3 / 24.0;
  d.m1 = -3.0 * d.t / 8.0 + 7.0 * t3 / 24.0;
  return d;
}

namespace {

// Hankel's large-argument expansion for order 0 or 1.
void hankel_jy(int nu, double x, double& j, double& y) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double a = 1.0;  // a_k(nu)/x^k
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    a *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * x);
    const double mag = std::abs(a);
    if (mag > last) break;  // asymptotic series started to diverge
    last = mag;
    switch (k % 4) {
      case 1: q += a; break;
      case 2: p -= a; break;
      case 3: q -= a; break;
      default: p += a; break;
    }
    if (mag < 1e-17) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double c = std::cos(chi), s = std::sin(chi);
  j = amp * (p * c - q * s);
  y = amp * (p * s + q * c);
}

constexpr double kHankelMin = 25.0;

BesselJY steed_jy(int n, double x) {
  constexpr double kXmin = 2.0;
  const double xnu = n;
  const int nl = x < kXmin ? n : std::max(0, static_cast<int>(xnu - x + 1.5));
  const double xmu = xnu - nl;
  const double xmu2 = xmu * xmu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  const double w = xi2 / kPi;
  int isign = 1;
  double h = xnu * xi;
  if (h < kTiny) h = kTiny;
  double b = xi2 * xnu;
  double d = 0.0;
  double c = h;
  const int maxit = 100000 + 4 * static_cast<int>(x);
  int i = 1;
  for (; i <= maxit; ++i) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b - 1.0 / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    h = del * h;
    if (d < 0.0) isign = -isign;
    if (std::abs(del - 1.0) < kEps) break;
  }
  if (i > maxit) throw InternalError("bessel_jy: CF1 did not converge");
  double rjl = isign * 1e-30;
  double rjpl = h * rjl;
  double rjl1 = rjl;
  double rjp1 = rjpl;
  double fact = xnu * xi;
  for (int l = nl; l >= 1; --l) {
    const double rjtemp = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * rjtemp - rjl;
    rjl = rjtemp;
    if (std::abs(rjl) > 1e200) {
      rjl *= 1e-200;
      rjpl *= 1e-200;
      rjl1 *= 1e-200;
      rjp1 *= 1e-200;
    }
  }
  if (rjl == 0.0) rjl = kEps;
  const double f = rjpl / rjl;
  double rjmu = 0.0, rymu = 0.0, rymup = 0.0, ry1 = 0.0;
  if (x < kXmin) {
    // Temme series at mu = 0: gam1 = -gamma, gam2 = gampl = gammi = 1.
    const double x2 = 0.5 * x;
    const double dd = -std::log(x2);
    double ff = 2.0 / kPi * (-kEulerGamma + dd);
    double p = 1.0 / kPi;
    double q = 1.0 / kPi;
    double cc = 1.0;
    const double dneg = -x2 * x2;
    double sum = ff;
    double sum1 = p;
    for (int k = 1; k <= 10000; ++k) {
      ff = (k * ff + p + q) / (static_cast<double>(k) * k);
      cc *= dneg / k;
      p /= k;
      q /= k;
      const double del = cc * ff;
      sum += del;
      const double del1 = cc * p - k * del;
      sum1 += del1;
      if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) break;
    }
    rymu = -sum;
    ry1 = -sum1 * xi2;
    rymup = -ry1;
    rjmu = w / (rymup - f * rymu);
  } else {
    double a = 0.25 - xmu2;
    double p = -0.5 * xi;
    double q = 1.0;
    const double br = 2.0 * x;
    double bi = 2.0;
    double fct = a * xi / (p * p + q * q);
    double cr = br + q * fct;
    double ci = bi + p * fct;
    double den = br * br + bi * bi;
    double dr = br / den;
    double di = -bi / den;
    double dlr = cr * dr - ci * di;
    double dli = cr * di + ci * dr;
    double temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for (int k = 2; k <= maxit; ++k) {
      a += 2 * (k - 1);
      bi += 2.0;
      dr = a * dr + br;
      di = a * di + bi;
      if (std::abs(dr) + std::abs(di) < kTiny) dr = kTiny;
      fct = a / (cr * cr + ci * ci);
      cr = br + cr * fct;
      ci = bi - ci * fct;
      if (std::abs(cr) + std::abs(ci) < kTiny) cr = kTiny;
      den = dr * dr + di * di;
      dr /= den;
      di /= -den;
      dlr = cr * dr - ci * di;
      dli = cr * di + ci * dr;
      temp = p * dlr - q * dli;
      q = p * dli + q * dlr;
      p = temp;
      if (std::abs(dlr - 1.0) + std::abs(dli) < kEps) break;
    }
    const double gam = (p - f) / q;
    rjmu = std::sqrt(w / ((p - f) * gam + q));
    rjmu = std::copysign(rjmu, rjl);
    rymu = rjmu * gam;
    rymup = rymu * (p + q / gam);
    ry1 = xmu * xi * rymu - rymup;
  }
  const double scale = rjmu / rjl;
  BesselJY out;
  out.j = rjl1 * scale;
  out.jp = rjp1 * scale;
  for (int k = 1; k <= nl; ++k) {
    const double rytemp = (xmu + k) * xi2 * ry1 - rymu;
    rymu = ry1;
    ry1 = rytemp;
  }
  out.y = rymu;
  out.yp = xnu * xi * rymu - ry1;
  return out;
}

}  // namespace

BesselJY bessel_jy(int n, double x) {
  require_order(n, "bessel_jy");
  require_positive(x, "bessel_jy");
  if (n <= 1 && x >= kHankelMin) {
    double j0, y0, j1, y1;
    hankel_jy(0, x, j0, y0);
    hankel_jy(1, x, j1, y1);
    if (n == 0) return {j0, y0, -j1, -y1};
    return {j1, y1, j0 - j1 / x, y0 - y1 / x};
  }
  return steed_jy(n, x);
}

double bessel_j(int n, double x) {
  require_order(n, "bessel_j");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x < 0.0) {
    const double v = bessel_jy(n, -x).j;
    return (n % 2 == 0) ? v : -v;
  }
  return bessel_jy(n, x).j;
}

double bessel_y(int n, double x) { return bessel_jy(n, x).y; }
double bessel_j_prime(int n, double x) { return bessel_jy(n, x).jp; }
double bessel_y_prime(int n, double x) { return bessel_jy(n, x).yp; }

double bessel_j0_zero(int k) {
  if (k < 1) throw DomainError("bessel_j0_zero: index must be >= 1");
  // McMahon's expansion, polished by Newton on J_0 (J_0' = -J_1).
  const double beta = (k - 0.25) * kPi;
  double z = beta + 1.0 / (8.0 * beta) - 124.0 / (1536.0 * beta * beta * beta);
  for (int it = 0; it < 4; ++it) {
    const BesselJY v = bessel_jy(0, z);
    const double step = v.j / v.jp;
    z -= step;
    if (std::abs(step) < 4.0 * kEps * z) break;
  }
  return z;
}

}  // namespace casimir::sf
