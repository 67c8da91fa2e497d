#include "casimir/reflection_kernel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/special_functions.hpp"

namespace casimir {

CylinderGeometry::CylinderGeometry(double a1, double a2, double eps)
    : a1_(a1), a2_(a2), d_(a2 - a1), eps_(eps) {}

CylinderGeometry CylinderGeometry::from_radii(double a1, double a2) {
  if (!(a1 > 0.0) || !std::isfinite(a1)) throw DomainError("a1 must be positive and finite");
  if (!(a2 > a1) || !std::isfinite(a2)) throw DomainError("a2 must exceed a1");
  return {a1, a2, (a2 - a1) / a1};
}

CylinderGeometry CylinderGeometry::from_gap(double a1, double eps) {
  if (!(a1 > 0.0) || !std::isfinite(a1)) throw DomainError("a1 must be positive and finite");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be positive and finite");
  const double a2 = a1 * (1.0 + eps);
  if (!(a2 > a1) || !std::isfinite(a2)) throw DomainError("a1*(1+eps) not representable above a1");
  return {a1, a2, eps};
}

FieldConfig FieldConfig::scalar(Boundary inner, Boundary outer) {
  return {FieldKind::Scalar, inner, outer, EMKind::PCPC};
}

FieldConfig FieldConfig::em(EMKind kind) {
  return {FieldKind::EM, Boundary::Dirichlet, Boundary::Dirichlet, kind};
}

FieldConfig FieldConfig::parse(std::string_view name) {
  std::string s;
  for (char c : name) {
    if (c != '-' && c != '_') s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (s == "DD") return DD();
  if (s == "NN") return NN();
  if (s == "DN") return DN();
  if (s == "ND") return ND();
  if (s == "PCPC") return PCPC();
  if (s == "PCIP") return PCIP();
  throw DomainError("unknown boundary configuration '" + std::string(name) + "'");
}

std::span<const FieldConfig> FieldConfig::all() {
  static const std::array<FieldConfig, 6> configs{DD(), NN(), DN(), ND(), PCPC(), PCIP()};
  return configs;
}

Boundary FieldConfig::inner_bc() const {
  if (!is_scalar()) throw DomainError("EM configuration has no single inner boundary");
  return inner_;
}

Boundary FieldConfig::outer_bc() const {
  if (!is_scalar()) throw DomainError("EM configuration has no single outer boundary");
  return outer_;
}

EMKind FieldConfig::em_kind() const {
  if (is_scalar()) throw DomainError("scalar configuration has no EM kind");
  return em_;
}

bool FieldConfig::is_mixed() const {
  return is_scalar() ? inner_ != outer_ : em_ == EMKind::PCIP;
}

std::array<FieldConfig, 2> FieldConfig::channels() const {
  if (is_scalar()) return {*this, *this};
  if (em_ == EMKind::PCPC) return {DD(), NN()};
  return {DN(), ND()};
}

std::string FieldConfig::name() const {
  if (!is_scalar()) return em_ == EMKind::PCPC ? "PCPC" : "PCIP";
  std::string s;
  s += inner_ == Boundary::Dirichlet ? 'D' : 'N';
  s += outer_ == Boundary::Dirichlet ? 'D' : 'N';
  return s;
}

double log1m_signed(double s, int sign) {
  if (sign > 0) {
    // ln(1 - e^s): expm1 near s = 0, log1p once e^s is small.
    return s > -0.6931471805599453 ? std::log(-std::expm1(s)) : std::log1p(-std::exp(s));
  }
  return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
}

namespace {

ModeValue combine(int n, double x1, double x2, const FieldConfig& cfg) {
  if (!cfg.is_scalar()) throw DomainError("mode kernels take a scalar configuration");
  const auto r1 = sf::log_ratio_ik(n, x1, cfg.inner_bc() == Boundary::Neumann);
  const auto r2 = sf::log_ratio_ik(n, x2, cfg.outer_bc() == Boundary::Neumann);
  ModeValue m;
  m.log_abs_m = r1.log_magnitude - r2.log_magnitude;
  m.sign = r1.sign * r2.sign;
  // Only M >= 1 makes the log undefined. Mixed kernels are negative; DN at
  // n = 0 exceeds 1 in magnitude as xi -> 0 and ln(1 + |M|) stays finite.
  if (m.sign > 0 && !(m.log_abs_m < 0.0)) {
    std::ostringstream os;
    os << "|M_n| >= 1 at n=" << n << ", x1=" << x1 << ", x2=" << x2 << " (" << cfg.name() << ")";
    throw InternalError(os.str());
  }
  m.log_term = log1m_signed(m.log_abs_m, m.sign);
  return m;
}

}  // namespace

ModeValue mode_m(int n, double xi, const CylinderGeometry& geom, const FieldConfig& cfg) {
  if (n < 0) throw DomainError("mode order must be non-negative");
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  return combine(n, geom.a1() * xi, geom.a2() * xi, cfg);
}

ModeValue mode_a(int n, double omega, double eps, const FieldConfig& cfg) {
  if (n < 0) throw DomainError("mode order must be non-negative");
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  return combine(n, omega, omega * (1.0 + eps), cfg);
}

namespace {

// Smallest y with e^{-y} * p(y) < tol, by fixed-point iteration y = ln(p(y)/tol).
template <class P>
double solve_tail(double tol, P p) {
  double y = std::log(1.0 / tol);
  for (int i = 0; i < 50; ++i) {
    const double next = std::log(p(y) / tol);
    if (std::abs(next - y) < 1e-12 * y) return next;
    y = next;
  }
  return y;
}

}  // namespace

Cutoffs cutoff_estimate(double tol, const CylinderGeometry& geom) {
  if (!(tol > 0.0 && tol < 1.0)) throw DomainError("tol must lie in (0, 1)");
  Cutoffs c;
  // Summed over n the integrand decays like xi^2 e^{-2 d xi} (about xi orders
  // contribute at frequency xi), so the relative tail is e^{-x}(1 + x + x^2/2), x = 2 d X.
  const double x = solve_tail(tol, [](double v) { return 1.0 + v + 0.5 * v * v; });
  c.xi_max = x / (2.0 * geom.d());
  // Per-order weight ~ (1 + y) e^{-y} with y = 2 n ln(1+eps); summed tail ~ (1 + y/2) e^{-y}.
  const double y = solve_tail(tol, [](double v) { return 1.0 + 0.5 * v; });
  const double n = std::ceil(y / (2.0 * std::log1p(geom.eps())));
  c.n_max = static_cast<int>(std::min(n, 1e8));
  return c;
}

}  // namespace casimir
