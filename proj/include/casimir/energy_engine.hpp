#pragma once

// Casimir energies per unit length, natural units (hbar = c = k_B = 1).
// Sums written with a prime carry weight 1/2 on the zero index.
//
//   zero T     E0/L  = (1/2pi) S'_n int_0^inf xi ln(1 - M_n(xi)) dxi
//   Matsubara  F/L   = (2T/pi) S'_n S'_l int_0^inf ln(1 - M_n(sqrt(xi_l^2 + k^2))) dk
//   classical  Fcl/L = (T/pi) S'_n int_0^inf ln(1 - M_n(xi)) dxi
//   Poisson    dF/L  = (1/pi) S'_n S_{l>=1} int_0^inf xi J0(l xi / T) ln(1 - M_n(xi)) dxi
//
// EM configurations are the sum of their two scalar channels.

#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/reflection_kernel.hpp"

namespace casimir {

struct NumericsSpec {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;       ///< absolute floor, energy units
  int n_max_hard = 20000;
  int l_max_hard = 200000;
  int max_intervals = 200;    ///< adaptive panels per 1D integral
  int threads = 0;            ///< 0: hardware concurrency

  void validate() const;
};

struct ThermalState {
  double T = 0.0;
  /// xi_l = 2 pi l T
  [[nodiscard]] double matsubara(int l) const;
};

enum class Regime { ZeroT, Matsubara, PoissonLowT, Classical, ThermalLeading };
std::string regime_name(Regime r);

struct EnergyResult {
  double value = 0.0;         ///< E/L
  double err_estimate = 0.0;
  int n_used = 0;
  int l_used = 0;
  Regime regime = Regime::ZeroT;
  std::vector<std::string> warnings;
};

/// Requested accuracy could not be reached; result() holds the partial sum.
class ToleranceNotMet : public std::runtime_error {
 public:
  ToleranceNotMet(const std::string& what, EnergyResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  [[nodiscard]] const EnergyResult& result() const { return partial_; }

 private:
  EnergyResult partial_;
};

EnergyResult zero_temperature_energy(const CylinderGeometry& geom, const FieldConfig& cfg,
                                     const NumericsSpec& spec = {});
/// Same quantity from the (xi, k) double integral; validation path, costly at tight tolerances.
EnergyResult zero_temperature_energy_double_form(const CylinderGeometry& geom,
                                                 const FieldConfig& cfg,
                                                 const NumericsSpec& spec = {});
/// T = 0 is routed to zero_temperature_energy.
EnergyResult free_energy_matsubara(const CylinderGeometry& geom, const FieldConfig& cfg, double T,
                                   const NumericsSpec& spec = {});
EnergyResult classical_term(const CylinderGeometry& geom, const FieldConfig& cfg, double T,
                            const NumericsSpec& spec = {});
/// l >= 1 part of the Poisson-resummed form. rel_tol is taken relative to the
/// correction itself; set abs_tol when comparing against a full free energy.
EnergyResult thermal_correction_poisson(const CylinderGeometry& geom, const FieldConfig& cfg,
                                        double T, const NumericsSpec& spec = {});

/// Leading low-temperature correction. Dirichlet inner: pi T^2 / (6 ln(a1 T)).
/// Neumann inner: (pi^3/90) a1^2 T^4. Throws DomainError unless 0 < a1 T < 1.
EnergyResult thermal_leading(Boundary inner_bc, double a1, double T);

/// 2 atan(J_n/Y_n) (Dirichlet inner) or 2 atan(J_n'/Y_n') (Neumann inner).
double abel_plana_phase(int n, double omega, Boundary inner_bc);

}  // namespace casimir
