#pragma once

// Mode kernels M_n(xi) = Z^1_n(xi) / Z^2_n(xi), with Z^i = I_n(a_i xi)/K_n(a_i xi)
// (Dirichlet on cylinder i) or I_n'/K_n' (Neumann), and the stable log(1 - M_n).

#include <array>
#include <span>
#include <string>
#include <string_view>

namespace casimir {

class CylinderGeometry {
 public:
  /// Throws DomainError unless 0 < a1 < a2.
  static CylinderGeometry from_radii(double a1, double a2);
  /// a2 = a1 (1 + eps); eps is kept as given rather than recomputed from a2.
  static CylinderGeometry from_gap(double a1, double eps);

  [[nodiscard]] double a1() const { return a1_; }
  [[nodiscard]] double a2() const { return a2_; }
  [[nodiscard]] double d() const { return d_; }
  [[nodiscard]] double eps() const { return eps_; }

 private:
  CylinderGeometry(double a1, double a2, double eps);
  double a1_, a2_, d_, eps_;
};

enum class Boundary { Dirichlet, Neumann };
enum class FieldKind { Scalar, EM };
enum class EMKind { PCPC, PCIP };

class FieldConfig {
 public:
  static FieldConfig scalar(Boundary inner, Boundary outer);
  static FieldConfig em(EMKind kind);
  static FieldConfig DD() { return scalar(Boundary::Dirichlet, Boundary::Dirichlet); }
  static FieldConfig NN() { return scalar(Boundary::Neumann, Boundary::Neumann); }
  static FieldConfig DN() { return scalar(Boundary::Dirichlet, Boundary::Neumann); }
  static FieldConfig ND() { return scalar(Boundary::Neumann, Boundary::Dirichlet); }
  static FieldConfig PCPC() { return em(EMKind::PCPC); }
  static FieldConfig PCIP() { return em(EMKind::PCIP); }
  /// Accepts DD, NN, DN, ND, PCPC / PC-PC, PCIP / PC-IP (case-insensitive).
  static FieldConfig parse(std::string_view name);
  static std::span<const FieldConfig> all();

  [[nodiscard]] FieldKind kind() const { return kind_; }
  [[nodiscard]] bool is_scalar() const { return kind_ == FieldKind::Scalar; }
  /// Scalar configs only; throws DomainError for EM.
  [[nodiscard]] Boundary inner_bc() const;
  [[nodiscard]] Boundary outer_bc() const;
  [[nodiscard]] EMKind em_kind() const;
  /// True for DN, ND and PC-IP (repulsive, M_n < 0).
  [[nodiscard]] bool is_mixed() const;
  /// The scalar channels: itself for a scalar config, {DD, NN} or {DN, ND} for EM.
  [[nodiscard]] std::array<FieldConfig, 2> channels() const;
  [[nodiscard]] int channel_count() const { return is_scalar() ? 1 : 2; }
  [[nodiscard]] std::string name() const;

  bool operator==(const FieldConfig&) const = default;

 private:
  FieldConfig(FieldKind k, Boundary in, Boundary out, EMKind em)
      : kind_(k), inner_(in), outer_(out), em_(em) {}
  FieldKind kind_;
  Boundary inner_;
  Boundary outer_;
  EMKind em_;
};

struct ModeValue {
  double log_abs_m = 0.0;  ///< ln|M_n|
  int sign = 1;            ///< sign of M_n
  double log_term = 0.0;   ///< ln(1 - M_n)
};

/// ln(1 - sign * e^s) without cancellation; sign = +1 requires s < 0.
double log1m_signed(double s, int sign);

ModeValue mode_m(int n, double xi, const CylinderGeometry& geom, const FieldConfig& cfg);
/// Dimensionless kernel: a1 = 1, a2 = 1 + eps.
ModeValue mode_a(int n, double omega, double eps, const FieldConfig& cfg);

struct Cutoffs {
  int n_max = 0;
  double xi_max = 0.0;
};

/// Truncation bounds from the e^{-2 d xi} and (1+eps)^{-2n} envelopes of |M_n|.
/// Both dropped tails are below tol relative to the full integral of the envelope.
Cutoffs cutoff_estimate(double tol, const CylinderGeometry& geom);

}  // namespace casimir
