#include "casimir/asymptotics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr double kPi3 = kPi2 * kPi;
constexpr double kPi4 = kPi2 * kPi2;
constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kLn2 = std::numbers::ln2;

// D1 and M1 as (t, t^3) coefficients.
constexpr std::array<double, 2> kD1 = {1.0 / 8.0, -5.0 / 24.0};
constexpr std::array<double, 2> kM1 = {-3.0 / 8.0, 7.0 / 24.0};

std::array<double, 2> poly_for(Boundary b) { return b == Boundary::Dirichlet ? kD1 : kM1; }

void require_regime(Regime r) {
  if (r != Regime::ZeroT && r != Regime::Classical) {
    throw UnsupportedRegime("small-gap expansions exist only for the zero-temperature and classical regimes");
  }
}

void require_temperature(Regime r, double T) {
  if (r == Regime::Classical && !(T > 0.0)) throw DomainError("classical regime needs T > 0");
}

// prefactor * (1 + c1 eps + c2 eps^2 + c2log eps^2 ln eps), prefactor ~ eps^lead_power.
struct Displayed {
  double pref = 0.0;  // without the eps power and the a1, T factors
  double c1 = 0.0;
  double c2 = 0.0;
  double c2log = 0.0;
};

Displayed displayed(const FieldConfig& cfg, Regime regime) {
  const std::string name = cfg.name();
  if (regime == Regime::ZeroT) {
    const double homog = -kPi3 / 720.0;
    const double mixed = 7.0 * kPi3 / 5760.0;
    const double mixed_c2 = -0.1 - 8.0 / (7.0 * kPi2) + 192.0 / (7.0 * kPi4);
    const double ln2_term = 720.0 * kLn2 / (7.0 * kPi4);
    if (name == "DD") return {homog, 0.5, -0.1, 0.0};
    if (name == "NN") return {homog, 0.5, -(0.1 + 4.0 / kPi2), 0.0};
    if (name == "PCPC") return {2.0 * homog, 0.5, -(0.1 + 2.0 / kPi2), 0.0};
    if (name == "DN") return {mixed, 0.5 + 40.0 / (7.0 * kPi2), mixed_c2 - ln2_term, 0.0};
    if (name == "ND") return {mixed, 0.5 - 40.0 / (7.0 * kPi2), mixed_c2 + ln2_term, 0.0};
    return {2.0 * mixed, 0.5, mixed_c2, 0.0};  // PCIP
  }
  const double homog = -kZeta3 / 8.0;
  const double mixed = 3.0 * kZeta3 / 32.0;
  const double ln2_term = 4.0 * kLn2 / (3.0 * kZeta3);
  const double a = 8.0 / (3.0 * kPi * kZeta3);
  const double b = 1.0 / (4.0 * kZeta3);
  if (name == "DD") return {homog, 0.5, 0.0, 1.0 / 16.0};
  if (name == "NN") return {homog, 0.5, 0.0, 5.0 / 16.0};
  if (name == "PCPC") return {2.0 * homog, 0.5, 0.0, 3.0 / 16.0};
  if (name == "DN") return {mixed, 0.5 + ln2_term, 0.0, a - b};
  if (name == "ND") return {mixed, 0.5 - ln2_term, 0.0, -(a + b)};
  return {2.0 * mixed, 0.5, 0.0, -b};  // PCIP
}

// a1 and T dependence of the prefactor, and the leading eps power.
double scale(Regime regime, const CylinderGeometry& geom, double T) {
  return regime == Regime::ZeroT ? 1.0 / (geom.a1() * geom.a1()) : T / geom.a1();
}
int lead_power(Regime regime) { return regime == Regime::ZeroT ? -3 : -2; }

std::string power_label(int p, bool log) {
  std::ostringstream os;
  os << "eps^" << p;
  if (log) os << " ln(eps)";
  return os.str();
}

}  // namespace

DebyeCoefficients debye_coefficients(const FieldConfig& cfg) {
  if (!cfg.is_scalar()) throw DomainError("Debye coefficients are defined per scalar channel");
  const auto p = poly_for(cfg.inner_bc());
  const auto q = poly_for(cfg.outer_bc());
  DebyeCoefficients c;
  c.lambda0 = p[0];
  c.lambda1 = p[1];
  c.varpi0 = q[0];
  c.varpi1 = q[1];
  c.kappa0 = c.varpi0 - c.lambda0;
  c.kappa1 = c.varpi1 - c.lambda1;
  return c;
}

double pfa_leading(const FieldConfig& cfg, Regime regime, const CylinderGeometry& geom, double T) {
  require_regime(regime);
  require_temperature(regime, T);
  const Displayed d = displayed(cfg, regime);
  return d.pref * scale(regime, geom, T) * std::pow(geom.eps(), lead_power(regime));
}

ExpansionResult expansion(const FieldConfig& cfg, Regime regime, const CylinderGeometry& geom,
                          double T) {
  require_regime(regime);
  require_temperature(regime, T);
  const double eps = geom.eps();
  const Displayed d = displayed(cfg, regime);
  const double pref = d.pref * scale(regime, geom, T);
  const int p = lead_power(regime);
  ExpansionResult r;
  r.regime = regime;
  auto add = [&](int power, bool log, double coeff) {
    const double c = pref * coeff;
    const double contrib = c * std::pow(eps, power) * (log ? std::log(eps) : 1.0);
    r.terms.push_back({power_label(power, log), c, contrib});
  };
  add(p, false, 1.0);
  add(p + 1, false, d.c1);
  if (regime == Regime::ZeroT) add(p + 2, false, d.c2);
  if (regime == Regime::Classical) add(p + 2, true, d.c2log);
  for (const auto& t : r.terms) r.value += t.contribution;
  if (eps > kExpansionEpsWarning) {
    r.warnings.push_back("eps above the small-gap validity range; expansion is indicative only");
  }
  return r;
}

namespace {

double script_e_scalar(int chi, const FieldConfig& cfg, double eps) {
  const DebyeCoefficients c = debye_coefficients(cfg);
  const double le = std::log(eps);
  if (!cfg.is_mixed()) {
    if (chi == 0) {
      return -kPi / (8.0 * eps * eps) * kZeta3 *
             (1.0 + eps / 2.0 - (2.0 * c.lambda0 + 1.5 * c.lambda1) * eps * eps * le);
    }
    return -kPi4 / (360.0 * eps * eps * eps) *
           (1.0 + eps / 2.0 - eps * eps / 10.0 + eps * eps / kPi2 * (20.0 * c.lambda0 + 12.0 * c.lambda1));
  }
  const double k0 = c.kappa0, k1 = c.kappa1;
  if (chi == 0) {
    // E_{0,0} = pi^2/(48 eps) cancels against the -pi^2/(48 eps) of E_{0,r}.
    return 3.0 * kPi / (32.0 * eps * eps) * kZeta3 * (1.0 + eps / 2.0) -
           kPi / (4.0 * eps) * (2.0 * k0 + k1) * kLn2 -
           le * (k0 / 2.0 + kPi / 4.0 * (k0 * k0 + k0 * k1 + 3.0 / 8.0 * k1 * k1));
  }
  // E_{1,0} = 3 zeta(3)/(32 eps^2) cancels against its partner in E_{1,r}.
  return 7.0 * kPi4 / (2880.0 * eps * eps * eps) * (1.0 + eps / 2.0 - eps * eps / 10.0) -
         kPi2 / (72.0 * eps * eps) * (3.0 * k0 + k1) +
         kPi2 / (24.0 * eps) * ((2.0 * c.varpi0 - k0) / 3.0 + (2.0 * c.varpi1 - k1) / 5.0) +
         kLn2 / (2.0 * eps) * k0 + 1.0 / (2.0 * eps) * (k0 * k0 + 2.0 / 3.0 * k0 * k1 + k1 * k1 / 5.0);
}

}  // namespace

double script_e(int chi, const FieldConfig& cfg, double eps) {
  if (chi != 0 && chi != 1) throw DomainError("chi must be 0 or 1");
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  double total = 0.0;
  for (int i = 0; i < cfg.channel_count(); ++i) total += script_e_scalar(chi, cfg.channels()[i], eps);
  return total;
}

namespace {

void require_chi(int chi) {
  if (chi != 0 && chi != 1) throw DomainError("chi must be 0 or 1");
}

// Gamma(x) for the closed forms; nonpositive integers are poles.
double gamma_checked(double x, const char* where) {
  if (x <= 0.0 && x == std::floor(x)) {
    std::ostringstream os;
    os << where << ": Gamma pole at argument " << x;
    throw PoleError(os.str());
  }
  return std::tgamma(x);
}

void require_nonzero(double d, const char* where) {
  if (d == 0.0) throw PoleError(std::string(where) + ": rational factor has a pole");
}

// Gamma((chi+1)/2)/2 * Gamma(num)/Gamma(den)
double gamma_prefactor(int chi, double num, double den, const char* where) {
  return gamma_checked((chi + 1) / 2.0, where) / 2.0 * gamma_checked(num, where) / gamma_checked(den, where);
}

}  // namespace

double mellin_A(int chi, double z, double eps) {
  require_chi(chi);
  require_nonzero(z + 2.0, "mellin_A");
  const double a = z - chi - 1.0;
  const double pre = gamma_prefactor(chi, a / 2.0, z / 2.0, "mellin_A");
  const double e2 = a * (3.0 * z * z - 2.0 * z - 17.0 - 7.0 * chi - 3.0 * chi * z) / (24.0 * (z + 2.0));
  return pre * (1.0 + eps * a / 2.0 + eps * eps * e2);
}

double mellin_B(int chi, double z, const FieldConfig& cfg) {
  require_chi(chi);
  require_nonzero(z + 2.0, "mellin_B");
  require_nonzero(z + 4.0, "mellin_B");
  const DebyeCoefficients c = debye_coefficients(cfg);
  const double b = z - chi + 1.0;
  const double pre = gamma_prefactor(chi, b / 2.0, (z + 2.0) / 2.0, "mellin_B");
  return pre * (-c.lambda0 + (c.lambda0 - 3.0 * c.lambda1) * b / (z + 2.0) +
                3.0 * c.lambda1 * b * (b + 2.0) / ((z + 2.0) * (z + 4.0)));
}

double mellin_C(int chi, double z, double eps, const FieldConfig& cfg) {
  require_chi(chi);
  require_nonzero(z + 2.0, "mellin_C");
  require_nonzero(z + 4.0, "mellin_C");
  if (!(eps > 0.0)) throw DomainError("mellin_C needs eps > 0");
  const DebyeCoefficients c = debye_coefficients(cfg);
  const double b = z - chi + 1.0;
  const double pre = gamma_prefactor(chi, b / 2.0, (z + 2.0) / 2.0, "mellin_C");
  const double h = (z + 1.0) / 2.0;
  return pre * (-c.varpi0 + (c.varpi0 - 3.0 * c.varpi1 + h * c.kappa0) * b / (z + 2.0) +
                (3.0 * c.varpi1 + h * c.kappa1) * b * (b + 2.0) / ((z + 2.0) * (z + 4.0)) +
                (c.kappa0 + c.kappa1 * b / (z + 2.0)) / eps);
}

double mellin_G(int chi, double z, const FieldConfig& cfg) {
  require_chi(chi);
  require_nonzero(z + 4.0, "mellin_G");
  require_nonzero(z + 6.0, "mellin_G");
  const DebyeCoefficients c = debye_coefficients(cfg);
  const double g = z - chi + 3.0;
  const double pre = gamma_prefactor(chi, g / 2.0, (z + 4.0) / 2.0, "mellin_G");
  return pre * (c.kappa0 * c.kappa0 + 2.0 * c.kappa0 * c.kappa1 * g / (z + 4.0) +
                c.kappa1 * c.kappa1 * g * (g + 2.0) / ((z + 4.0) * (z + 6.0)));
}

namespace {

// eta and t as functions of omega, with the derivatives the integrands need.
struct EtaData {
  double d1, d2, d3;  // eta', eta'', eta'''
  double t, dt;       // t, t'
};

EtaData eta_data(double w) {
  const double s2 = 1.0 + w * w;
  const double s = std::sqrt(s2);
  EtaData e;
  e.d1 = s / w;
  e.d2 = -1.0 / (w * w * s);
  e.d3 = 2.0 / (w * w * w * s) + 1.0 / (w * s2 * s);
  e.t = 1.0 / s;
  e.dt = -w / (s2 * s);
  return e;
}

double poly(const std::array<double, 2>& c, double t) { return c[0] * t + c[1] * t * t * t; }
double dpoly(const std::array<double, 2>& c, double t) { return c[0] + 3.0 * c[1] * t * t; }

// Lower edge of z for convergence at omega -> inf (the closed-form Gamma argument > 0).
double z_min(MellinKind which, int chi) {
  switch (which) {
    case MellinKind::A: return chi + 1.0;
    case MellinKind::B:
    case MellinKind::C: return chi - 1.0;
    case MellinKind::G: return chi - 3.0;
  }
  return 0.0;
}

}  // namespace

MellinReport mellin_integral_check(MellinKind which, int chi, double z, double eps,
                                   const FieldConfig& cfg, double tol) {
  require_chi(chi);
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (!(z > z_min(which, chi))) {
    std::ostringstream os;
    os << "defining integral diverges at infinity for z = " << z << " (needs z > " << z_min(which, chi) << ")";
    throw NonConvergentIntegral(os.str());
  }
  // Near omega = 0 every integrand behaves like omega^chi (eta' ~ 1/omega), so
  // only the large-omega side restricts z.
  const DebyeCoefficients c = debye_coefficients(cfg);
  const std::array<double, 2> p = {c.lambda0, c.lambda1};
  const std::array<double, 2> q = {c.varpi0, c.varpi1};

  auto integrand = [&](double w) -> double {
    const EtaData e = eta_data(w);
    const double base = std::pow(w, chi - z) * std::pow(e.d1, -z);
    switch (which) {
      case MellinKind::A: {
        const double r2 = e.d2 / e.d1;
        const double bracket = 1.0 - z * eps * w / 2.0 * r2 +
                               eps * eps * (-z * w * w / 6.0 * e.d3 / e.d1 + z * (z + 1.0) * w * w / 8.0 * r2 * r2);
        return base * bracket;
      }
      case MellinKind::B:
        return base * dpoly(p, e.t) / e.d1 * e.dt;
      case MellinKind::C: {
        const double diff = poly(q, e.t) - poly(p, e.t);
        return base * (dpoly(q, e.t) * e.dt / e.d1 - (z + 1.0) * diff / 2.0 * e.d2 / (e.d1 * e.d1) +
                       diff / (eps * w * e.d1));
      }
      case MellinKind::G: {
        const double diff = poly(q, e.t) - poly(p, e.t);
        return std::pow(w, chi - z - 2.0) * std::pow(e.d1, -z - 2.0) * diff * diff;
      }
    }
    return 0.0;
  };

  MellinReport rep;
  switch (which) {
    case MellinKind::A: rep.closed_form = mellin_A(chi, z, eps); break;
    case MellinKind::B: rep.closed_form = mellin_B(chi, z, cfg); break;
    case MellinKind::C: rep.closed_form = mellin_C(chi, z, eps, cfg); break;
    case MellinKind::G: rep.closed_form = mellin_G(chi, z, cfg); break;
  }
  const quad::Options opt{1e-15, 1e-13, 4000};
  const auto lo = quad::integrate(integrand, 0.0, 1.0, opt);
  const auto hi = quad::integrate_to_infinity(integrand, 1.0, opt);
  rep.integral = lo.value + hi.value;
  rep.integral_error = lo.abs_error + hi.abs_error;
  rep.abs_deviation = std::abs(rep.integral - rep.closed_form);
  rep.rel_deviation = rep.abs_deviation / std::max(std::abs(rep.closed_form), 1e-300);
  rep.passed = rep.abs_deviation < tol * std::max(1.0, std::abs(rep.closed_form));
  return rep;
}

}  // namespace casimir
