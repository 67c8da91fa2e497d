#pragma once

// Small-gap (eps = d/a1 -> 0) expansions of the zero-temperature energy and
// the classical term, their proximity-force leading terms, and the Gamma-function
// closed forms of the Mellin coefficients that produce them.

#include <string>
#include <vector>

#include "casimir/energy_engine.hpp"
#include "casimir/reflection_kernel.hpp"

namespace casimir {

/// P1 = lambda0 t + lambda1 t^3 on the inner cylinder, Q1 = varpi0 t + varpi1 t^3
/// on the outer one. Each is D1 (Dirichlet) or M1 (Neumann).
struct DebyeCoefficients {
  double lambda0 = 0.0, lambda1 = 0.0;
  double varpi0 = 0.0, varpi1 = 0.0;
  double kappa0 = 0.0, kappa1 = 0.0;  ///< varpi_i - lambda_i
};

/// Scalar configurations only.
DebyeCoefficients debye_coefficients(const FieldConfig& cfg);

struct ExpansionTerm {
  std::string power;  ///< "eps^-3", "eps^-1 ln(eps)", ...
  double coefficient = 0.0;
  double contribution = 0.0;
};

struct ExpansionResult {
  double value = 0.0;
  std::vector<ExpansionTerm> terms;  ///< leading power first
  Regime regime = Regime::ZeroT;
  std::vector<std::string> warnings;
};

/// Expansions are only meaningful for small gaps; beyond this a warning is attached.
inline constexpr double kExpansionEpsWarning = 0.3;

/// Leading (proximity force) term, per unit length. T is used for Classical only.
double pfa_leading(const FieldConfig& cfg, Regime regime, const CylinderGeometry& geom,
                   double T = 0.0);

/// Displayed small-eps series. Regime must be ZeroT or Classical (else UnsupportedRegime).
ExpansionResult expansion(const FieldConfig& cfg, Regime regime, const CylinderGeometry& geom,
                          double T = 0.0);

/// S'_n int omega^chi ln(1 - A_n) d omega from the lambda/varpi/kappa formulas.
/// E0/L = script_e(1)/(2 pi a1^2), Fcl/L = T script_e(0)/(pi a1). EM = sum of channels.
double script_e(int chi, const FieldConfig& cfg, double eps);

double mellin_A(int chi, double z, double eps);
double mellin_B(int chi, double z, const FieldConfig& cfg);
double mellin_C(int chi, double z, double eps, const FieldConfig& cfg);
double mellin_G(int chi, double z, const FieldConfig& cfg);

enum class MellinKind { A, B, C, G };

struct MellinReport {
  double closed_form = 0.0;
  double integral = 0.0;
  double integral_error = 0.0;
  double abs_deviation = 0.0;
  double rel_deviation = 0.0;
  bool passed = false;
};

/// Integrates the defining integral and compares with the closed form.
/// Throws NonConvergentIntegral outside the convergence domain.
MellinReport mellin_integral_check(MellinKind which, int chi, double z, double eps,
                                   const FieldConfig& cfg, double tol);

}  // namespace casimir
