#include "casimir/energy_engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/special_functions.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this a GK21 panel cannot certify anything; 50 ulp per panel is its floor.
constexpr double kQuadRelFloor = 5e-14;

int thread_count(const NumericsSpec& spec) {
  if (spec.threads > 0) return spec.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [begin, end). Results must be written to per-index
// slots so the caller can reduce them in a fixed order.
template <class F>
void parallel_for(int begin, int end, int threads, F&& fn) {
  const int count = end - begin;
  if (count <= 0) return;
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<int> next{begin};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < end; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = end;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Term {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

struct Series {
  double sum = 0.0;    // primed when requested
  double error = 0.0;  // summed quadrature errors
  double tail = 0.0;
  int used = 0;
  bool converged = true;
};

double geometric_tail(const std::vector<Term>& t) {
  const std::size_t n = t.size();
  if (n < 3) return kInf;
  const double b = std::abs(t[n - 1].value);
  const double a = std::abs(t[n - 2].value);
  if (b == 0.0) return 0.0;
  if (!(a > b)) return kInf;
  const double q = b / a;
  return b * q / (1.0 - q);
}

Series reduce(const std::vector<Term>& terms, bool primed) {
  Series s;
  Accumulator acc;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double w = (primed && i == 0) ? 0.5 : 1.0;
    acc.add(w * terms[i].value);
    s.error += w * terms[i].error;
    s.converged = s.converged && terms[i].converged;
  }
  s.sum = acc.value();
  s.used = static_cast<int>(terms.size());
  return s;
}

// Sum over n >= 0 of terms that eventually decay geometrically. Chunks are
// evaluated in parallel; extension points depend only on the term values, so
// the result is independent of the thread count.
template <class TermFn>
Series geometric_series(TermFn&& fn, int initial, int hard_cap, double tail_target, int threads) {
  std::vector<Term> terms;
  int want = std::clamp(initial, 3, std::max(hard_cap, 3));
  bool capped = false;
  double tail = kInf;
  for (;;) {
    const int have = static_cast<int>(terms.size());
    terms.resize(static_cast<std::size_t>(want));
    parallel_for(have, want, threads, [&](int n) { terms[static_cast<std::size_t>(n)] = fn(n); });
    tail = geometric_tail(terms);
    if (tail <= tail_target) break;
    if (want >= hard_cap) {
      capped = true;
      break;
    }
    want = std::min(hard_cap, want + std::max(8, want / 2));
  }
  Series s = reduce(terms, true);
  s.tail = std::isfinite(tail) ? tail : std::abs(terms.back().value) * static_cast<double>(terms.size());
  if (capped) s.converged = false;
  return s;
}

quad::Options quad_options(double tau, const NumericsSpec& spec) {
  return {tau, kQuadRelFloor, spec.max_intervals};
}

// Initial panels on [0, W]; fine near 0 for the n = 0 log singularity.
std::array<double, 8> radial_breaks(double w) {
  return {0.0, w / 4096.0, w / 512.0, w / 64.0, w / 16.0, w / 4.0, w / 2.0, w};
}

Term integrate_radial(int n, int chi, double w, double eps, const FieldConfig& cfg,
                      const quad::Options& opt) {
  auto f = [&](double omega) {
    const double lt = mode_a(n, omega, eps, cfg).log_term;
    return chi == 1 ? omega * lt : lt;
  };
  const auto br = radial_breaks(w);
  const auto r = quad::integrate(f, std::span<const double>(br), opt);
  return {r.value, r.abs_error, r.converged};
}

// Coarse relative accuracy for the n = 0 scale pilots.
quad::Options pilot_options(double rel) {
  return {0.0, std::max(rel, kQuadRelFloor), 400};
}

double primed_geometric_factor(double eps) {
  const double q = 1.0 / ((1.0 + eps) * (1.0 + eps));
  return 0.5 + q / (1.0 - q);
}

// Envelope cutoff tolerance: 1% of the requested relative accuracy.
Cutoffs cutoffs_for(const CylinderGeometry& geom, const NumericsSpec& spec) {
  return cutoff_estimate(std::clamp(0.01 * spec.rel_tol, 1e-16, 0.5), geom);
}

void finish(EnergyResult& r, const NumericsSpec& spec, bool converged, const std::string& what) {
  const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(r.value));
  if (!std::isfinite(r.value)) throw InternalError(what + ": non-finite result");
  if (!converged || r.err_estimate > target) {
    std::ostringstream os;
    os << what << ": tolerance not met (err " << r.err_estimate << " > target " << target << ")";
    r.warnings.push_back(os.str());
    throw ToleranceNotMet(os.str(), r);
  }
}

// S'_n int_0^W omega^chi ln(1 - A_n(omega)) d omega, dimensionless.
// `scale_pref` converts to energy units for the tolerance bookkeeping.
struct RadialSum {
  Series series;
  double cutoff_err = 0.0;  // dimensionless
};

RadialSum radial_sum(const CylinderGeometry& geom, const FieldConfig& cfg, int chi,
                     double scale_pref, const NumericsSpec& spec) {
  const double eps = geom.eps();
  const Cutoffs cut = cutoffs_for(geom, spec);
  const double w = cut.xi_max * geom.a1();
  const int n_cap = std::min(cut.n_max, spec.n_max_hard);

  const Term pilot =
      integrate_radial(0, chi, w, eps, cfg, pilot_options(1e-2 * spec.rel_tol));
  const double s_est = 0.5 * std::abs(pilot.value) * primed_geometric_factor(eps);
  const double target =
      std::max(spec.abs_tol / scale_pref, spec.rel_tol * s_est);
  const double tau = 0.3 * target / (n_cap + 1.0);

  RadialSum out;
  out.series = geometric_series(
      [&](int n) { return integrate_radial(n, chi, w, eps, cfg, quad_options(tau, spec)); }, n_cap + 1,
      spec.n_max_hard, 0.2 * target, thread_count(spec));
  out.cutoff_err = 0.01 * spec.rel_tol * std::abs(out.series.sum);
  return out;
}

EnergyResult radial_energy(const CylinderGeometry& geom, const FieldConfig& cfg, int chi,
                           double pref, Regime regime, const NumericsSpec& spec,
                           const char* what) {
  spec.validate();
  EnergyResult total;
  total.regime = regime;
  bool converged = true;
  for (int c = 0; c < cfg.channel_count(); ++c) {
    const RadialSum rs = radial_sum(geom, cfg.channels()[c], chi, pref, spec);
    total.value += pref * rs.series.sum;
    total.err_estimate += pref * (rs.series.error + rs.series.tail + rs.cutoff_err);
    total.n_used = std::max(total.n_used, rs.series.used);
    converged = converged && rs.series.converged;
  }
  finish(total, spec, converged, what);
  return total;
}

}  // namespace

void NumericsSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
  if (!(abs_tol >= 0.0)) throw DomainError("abs_tol must be non-negative");
  if (n_max_hard < 3 || l_max_hard < 1) throw DomainError("hard caps too small");
  if (max_intervals < 1) throw DomainError("max_intervals must be positive");
}

double ThermalState::matsubara(int l) const { return 2.0 * kPi * l * T; }

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::ZeroT: return "zero_t";
    case Regime::Matsubara: return "matsubara";
    case Regime::PoissonLowT: return "poisson";
    case Regime::Classical: return "classical";
    case Regime::ThermalLeading: return "leading";
  }
  return "unknown";
}

EnergyResult zero_temperature_energy(const CylinderGeometry& geom, const FieldConfig& cfg,
                                     const NumericsSpec& spec) {
  const double pref = 1.0 / (2.0 * kPi * geom.a1() * geom.a1());
  return radial_energy(geom, cfg, 1, pref, Regime::ZeroT, spec, "zero_temperature_energy");
}

EnergyResult classical_term(const CylinderGeometry& geom, const FieldConfig& cfg, double T,
                            const NumericsSpec& spec) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("classical_term needs T > 0");
  const double pref = T / (kPi * geom.a1());
  return radial_energy(geom, cfg, 0, pref, Regime::Classical, spec, "classical_term");
}

EnergyResult zero_temperature_energy_double_form(const CylinderGeometry& geom,
                                                 const FieldConfig& cfg,
                                                 const NumericsSpec& spec) {
  spec.validate();
  const double eps = geom.eps();
  const double pref = 1.0 / (kPi * kPi * geom.a1() * geom.a1());
  const Cutoffs cut = cutoffs_for(geom, spec);
  const double w = cut.xi_max * geom.a1();
  const int n_cap = std::min(cut.n_max, spec.n_max_hard);

  EnergyResult total;
  total.regime = Regime::ZeroT;
  bool converged = true;
  for (int c = 0; c < cfg.channel_count(); ++c) {
    const FieldConfig ch = cfg.channels()[c];
    auto term = [&](int n, double tau) {
      double inner_err = 0.0;
      bool inner_ok = true;
      const double tau_in = 0.1 * tau / w;
      auto outer = [&](double u) {
        const double vmax = std::sqrt(std::max(0.0, w * w - u * u));
        auto g = [&](double v) { return mode_a(n, std::hypot(u, v), eps, ch).log_term; };
        const auto br = radial_breaks(vmax);
        const auto r = quad::integrate(g, std::span<const double>(br), quad_options(tau_in, spec));
        inner_err = std::max(inner_err, r.abs_error);
        inner_ok = inner_ok && r.converged;
        return r.value;
      };
      const auto br = radial_breaks(w);
      const auto r = quad::integrate(outer, std::span<const double>(br), quad_options(0.9 * tau, spec));
      return Term{r.value, r.abs_error + w * inner_err, r.converged && inner_ok};
    };
    // Same polar integral as the single form, so its pilot sets the scale.
    const Term pilot = integrate_radial(0, 1, w, eps, ch, pilot_options(1e-2 * spec.rel_tol));
    const double s_est = 0.5 * (kPi / 2.0) * std::abs(pilot.value) * primed_geometric_factor(eps);
    const double target = std::max(spec.abs_tol / pref, spec.rel_tol * s_est);
    const double tau = 0.3 * target / (n_cap + 1.0);
    const Series s = geometric_series([&](int n) { return term(n, tau); }, n_cap + 1,
                                      spec.n_max_hard, 0.2 * target, thread_count(spec));
    total.value += pref * s.sum;
    total.err_estimate += pref * (s.error + s.tail + 0.01 * spec.rel_tol * std::abs(s.sum));
    total.n_used = std::max(total.n_used, s.used);
    converged = converged && s.converged;
  }
  finish(total, spec, converged, "zero_temperature_energy_double_form");
  return total;
}

EnergyResult free_energy_matsubara(const CylinderGeometry& geom, const FieldConfig& cfg, double T,
                                   const NumericsSpec& spec) {
  if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("temperature must be finite and >= 0");
  if (T == 0.0) return zero_temperature_energy(geom, cfg, spec);
  spec.validate();
  const double eps = geom.eps();
  const double a1 = geom.a1();
  const double pref = 2.0 * T / (kPi * a1);
  const Cutoffs cut = cutoffs_for(geom, spec);
  const double w = cut.xi_max * a1;
  const int n_cap = std::min(cut.n_max, spec.n_max_hard);
  const double dw = 2.0 * kPi * a1 * T;  // Omega_l = l * dw
  const double l_cut_d = std::floor(w / dw);
  const bool l_capped = l_cut_d > spec.l_max_hard;
  const int l_count = static_cast<int>(std::min<double>(l_cut_d, spec.l_max_hard)) + 1;

  EnergyResult total;
  total.regime = Regime::Matsubara;
  total.l_used = l_count;
  bool converged = !l_capped;
  if (l_capped) total.warnings.push_back("l_max_hard reached before the frequency cutoff");

  for (int c = 0; c < cfg.channel_count(); ++c) {
    const FieldConfig ch = cfg.channels()[c];
    // Scale from the n = 0 pilots: F sits between the zero-T and classical sizes.
    const quad::Options coarse = pilot_options(1e-2 * spec.rel_tol);
    const double g = primed_geometric_factor(eps);
    const double e0 = std::abs(integrate_radial(0, 1, w, eps, ch, coarse).value) * 0.5 * g /
                      (2.0 * kPi * a1 * a1);
    const double fcl = std::abs(integrate_radial(0, 0, w, eps, ch, coarse).value) * 0.5 * g *
                       T / (kPi * a1);
    const double target = std::max(spec.abs_tol, spec.rel_tol * 0.5 * std::max(e0, fcl)) / pref;
    const double tau_l = target / l_count;
    const double tau_nl = 0.3 * tau_l / (n_cap + 1.0);

    std::vector<Series> per_l(static_cast<std::size_t>(l_count));
    parallel_for(0, l_count, thread_count(spec), [&](int l) {
      const double om = l * dw;
      const double kmax = std::sqrt(std::max(0.0, w * w - om * om));
      auto term = [&](int n) {
        if (!(kmax > 0.0)) return Term{};
        auto f = [&](double k) {
          const double r = l == 0 ? k : std::hypot(om, k);
          return mode_a(n, r, eps, ch).log_term;
        };
        const auto br = radial_breaks(kmax);
        const auto r = quad::integrate(f, std::span<const double>(br), quad_options(tau_nl, spec));
        return Term{r.value, r.abs_error, r.converged};
      };
      per_l[static_cast<std::size_t>(l)] =
          geometric_series(term, 8, spec.n_max_hard, 0.5 * tau_l, 1);
    });

    Accumulator acc;
    for (int l = 0; l < l_count; ++l) {
      const Series& s = per_l[static_cast<std::size_t>(l)];
      const double wl = l == 0 ? 0.5 : 1.0;
      acc.add(wl * s.sum);
      total.err_estimate += pref * wl * (s.error + s.tail);
      total.n_used = std::max(total.n_used, s.used);
      converged = converged && s.converged;
    }
    const double v = acc.value();
    total.value += pref * v;
    total.err_estimate += pref * 0.01 * spec.rel_tol * std::abs(v);
  }
  finish(total, spec, converged, "free_energy_matsubara");
  return total;
}

namespace {

// Zeros of J0, shared read-only after first use.
const std::vector<double>& j0_zero_table() {
  static const std::vector<double> table = [] {
    std::vector<double> z(4096);
    for (int k = 1; k <= static_cast<int>(z.size()); ++k) z[static_cast<std::size_t>(k - 1)] = sf::bessel_j0_zero(k);
    return z;
  }();
  return table;
}

double j0_zero(int k) {
  const auto& t = j0_zero_table();
  return k <= static_cast<int>(t.size()) ? t[static_cast<std::size_t>(k - 1)] : sf::bessel_j0_zero(k);
}

// int_0^W omega J0(q omega) ln(1 - A_n(omega)) d omega, split at the zeros of
// J0(q omega); the alternating partial sums are extrapolated with Wynn's epsilon.
Term poisson_integral(int n, double q, double w, double eps, const FieldConfig& cfg, double tau,
                      const NumericsSpec& spec) {
  constexpr int kMaxPieces = 20000;
  auto f = [&](double om) { return om * sf::bessel_j(0, q * om) * mode_a(n, om, eps, cfg).log_term; };
  quad::WynnEpsilon wynn;
  Accumulator partial;
  double qerr = 0.0;
  bool ok = true;
  double lo = 0.0;
  int small_steps = 0;
  for (int k = 1; k <= kMaxPieces; ++k) {
    double hi = j0_zero(k) / q;
    const bool last = hi >= w;
    if (last) hi = w;
    const auto r = quad::integrate(f, lo, hi, quad_options(0.01 * tau, spec));
    partial.add(r.value);
    qerr += r.abs_error;
    ok = ok && r.converged;
    if (last) return {partial.value(), qerr, ok};
    wynn.push(partial.value());
    small_steps = (k >= 6 && wynn.error() < 0.1 * tau) ? small_steps + 1 : 0;
    if (small_steps >= 2) return {wynn.estimate(), qerr + wynn.error(), ok};
    lo = hi;
  }
  return {wynn.estimate(), qerr + wynn.error(), false};
}

}  // namespace

EnergyResult thermal_correction_poisson(const CylinderGeometry& geom, const FieldConfig& cfg,
                                        double T, const NumericsSpec& spec) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("thermal correction needs T > 0");
  spec.validate();
  const double eps = geom.eps();
  const double a1 = geom.a1();
  const double pref = 1.0 / (kPi * a1 * a1);
  const Cutoffs cut = cutoffs_for(geom, spec);
  const double w = cut.xi_max * a1;
  const int n_cap = std::min(cut.n_max, spec.n_max_hard);
  const double q1 = 1.0 / (a1 * T);

  EnergyResult total;
  total.regime = Regime::PoissonLowT;
  if (a1 * T > 1.0) {
    total.warnings.push_back("a1*T > 1: the oscillatory sum converges slowly, prefer the Matsubara form");
  }
  bool converged = true;
  const int threads = thread_count(spec);

  for (int c = 0; c < cfg.channel_count(); ++c) {
    const FieldConfig ch = cfg.channels()[c];
    const double z0 = std::abs(integrate_radial(0, 1, w, eps, ch, pilot_options(1e-6)).value);
    const Term pilot = poisson_integral(0, q1, w, eps, ch, 1e-12 * z0, spec);
    const double target = std::max(spec.abs_tol / pref, spec.rel_tol * std::abs(pilot.value));
    // Budget 0.3 target over l with weights 6/(pi^2 l^2), then over n.
    auto tau_for = [&](int l) {
      return 0.3 * target * 6.0 / (kPi * kPi * double(l) * double(l)) / (n_cap + 1.0);
    };
    auto l_term = [&](int l) {
      const double q = l * q1;
      const double tau = tau_for(l);
      return geometric_series(
          [&](int n) { return poisson_integral(n, q, w, eps, ch, tau, spec); }, 3, spec.n_max_hard,
          tau * (n_cap + 1.0) * 0.5, 1);
    };

    std::vector<Series> terms;
    int want = 8;
    double tail = kInf;
    for (;;) {
      const int have = static_cast<int>(terms.size());
      want = std::min(want, spec.l_max_hard);
      terms.resize(static_cast<std::size_t>(want));
      parallel_for(have, want, threads, [&](int i) { terms[static_cast<std::size_t>(i)] = l_term(i + 1); });
      // l-terms fall off like 1/(l^2 ln l) or faster; the remainder is below L |t_L|.
      tail = static_cast<double>(want) * std::abs(terms.back().sum);
      if (tail <= 0.3 * target) break;
      if (want >= spec.l_max_hard) {
        converged = false;
        total.warnings.push_back("l_max_hard reached in the Poisson sum");
        break;
      }
      want += std::max(8, want / 2);
    }
    Accumulator acc;
    double err = tail;
    for (const auto& s : terms) {
      acc.add(s.sum);
      err += s.error + s.tail;
      total.n_used = std::max(total.n_used, s.used);
      converged = converged && s.converged;
    }
    total.value += pref * acc.value();
    total.err_estimate += pref * err;
    total.l_used = std::max(total.l_used, static_cast<int>(terms.size()));
  }
  finish(total, spec, converged, "thermal_correction_poisson");
  return total;
}

EnergyResult thermal_leading(Boundary inner_bc, double a1, double T) {
  if (!(a1 > 0.0) || !(T > 0.0)) throw DomainError("thermal_leading needs a1 > 0 and T > 0");
  const double x = a1 * T;
  if (!(x < 1.0)) throw DomainError("thermal_leading needs a1*T < 1");
  EnergyResult r;
  r.regime = Regime::ThermalLeading;
  if (inner_bc == Boundary::Dirichlet) {
    r.value = kPi * T * T / (6.0 * std::log(x));
    // Next order is down by 1/ln(a1 T).
    r.err_estimate = std::abs(r.value / std::log(x));
  } else {
    r.value = kPi * kPi * kPi / 90.0 * a1 * a1 * T * T * T * T;
    r.err_estimate = std::abs(r.value) * x * x;
  }
  r.warnings.push_back("leading term only; subleading corrections not included");
  return r;
}

double abel_plana_phase(int n, double omega, Boundary inner_bc) {
  if (n < 0) throw DomainError("order must be non-negative");
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  const sf::BesselJY b = sf::bessel_jy(n, omega);
  // Division by an exact zero gives +-inf and atan maps it to +-pi/2.
  return inner_bc == Boundary::Dirichlet ? 2.0 * std::atan(b.j / b.y) : 2.0 * std::atan(b.jp / b.yp);
}

}  // namespace casimir
