#pragma once

// Adaptive Gauss-Kronrod (10/21 point) quadrature with QUADPACK-style error
// estimates, plus Wynn's epsilon algorithm for alternating partial sums.
// Nodes are interior only, so integrable endpoint singularities are never
// evaluated.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace casimir::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_intervals = 2000;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525354600, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a = 0.0, b = 0.0;
  double value = 0.0;
  double error = 0.0;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk21(F& f, double a, double b) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kUflow = std::numeric_limits<double>::min();
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::abs(hlgth);
  std::array<double, 10> fv1{}, fv2{};
  const double fc = f(centr);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::abs(resk);
  for (int j = 0; j < 5; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 5; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  Panel p{a, b, resk * hlgth, 0.0};
  resabs *= dhlgth;
  resasc *= dhlgth;
  double abserr = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) {
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  }
  if (resabs > kUflow / (50.0 * kEps)) abserr = std::max(kEps * 50.0 * resabs, abserr);
  p.error = abserr;
  return p;
}

}  // namespace detail

/// Adaptive integration of f over [a, b], starting from the panels defined by
/// `breaks` (sorted, first == a, last == b). Worst panel is bisected until the
/// summed error estimate meets max(abs_tol, rel_tol*|I|).
template <class F>
Result integrate(F&& f, std::span<const double> breaks, const Options& opt) {
  Result out;
  if (breaks.size() < 2) return out;
  std::priority_queue<detail::Panel> heap;
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    detail::Panel p = detail::gk21(f, breaks[i], breaks[i + 1]);
    out.evaluations += 21;
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  int intervals = static_cast<int>(heap.size());
  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  while (!heap.empty() && err > target()) {
    if (intervals >= opt.max_intervals) {
      out.converged = false;
      break;
    }
    const detail::Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      out.converged = false;  // panel no longer divisible in floating point
      break;
    }
    heap.pop();
    const detail::Panel left = detail::gk21(f, worst.a, mid);
    const detail::Panel right = detail::gk21(f, mid, worst.b);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  err = 0.0;
  std::vector<detail::Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  for (const auto& p : panels) {
    total += p.value;
    err += p.error;
  }
  out.value = total;
  out.abs_error = err;
  if (err > target()) out.converged = false;
  return out;
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opt) {
  const std::array<double, 2> br{a, b};
  return integrate(std::forward<F>(f), std::span<const double>(br), opt);
}

/// Integral over [a, inf) via x = a + (1-u)/u on (0, 1].
template <class F>
Result integrate_to_infinity(F&& f, double a, const Options& opt) {
  auto g = [&](double u) {
    const double x = a + (1.0 - u) / u;
    return f(x) / (u * u);
  };
  return integrate(g, 0.0, 1.0, opt);
}

/// Wynn's epsilon algorithm over a growing sequence of partial sums.
class WynnEpsilon {
 public:
  /// Adds the next partial sum; returns the current best limit estimate.
  double push(double partial_sum);
  [[nodiscard]] double estimate() const { return estimate_; }
  /// |difference| between the two latest estimates (infinite until available).
  [[nodiscard]] double error() const { return error_; }
  [[nodiscard]] std::size_t size() const { return count_; }

 private:
  std::vector<double> row_;
  std::size_t count_ = 0;
  double estimate_ = 0.0;
  double previous_ = 0.0;
  double error_ = std::numeric_limits<double>::infinity();
  bool settled_ = false;
  bool frozen_ = false;
};

}  // namespace casimir::quad
