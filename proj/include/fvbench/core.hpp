// Gas model, thermodynamic state types and conversions.
#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace fvbench {

/// Raised when a state violates positivity (density, internal energy,
/// pressure). Usually the first sign of a solver blow-up.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calorically perfect ideal gas, p = rho R T.
struct GasModel {
  double gamma = 1.4;
  double r_specific = 0.0;
  double cp = 0.0;
  double cv = 0.0;
  double prandtl = 0.71;

  /// Builds a consistent gas from gamma and cp (R = cp (gamma - 1) / gamma).
  static GasModel from_cp(double gamma, double cp, double prandtl = 0.71);

  /// Default gas for every benchmark: gamma = 1.4, cp = 1173 J/(kg K).
  static GasModel standard() { return from_cp(1.4, 1173.0, 0.71); }

  /// Throws std::invalid_argument if the invariants do not hold.
  void validate() const;
};

struct PrimitiveState {
  double density = 1.0;
  std::array<double, 3> velocity{0.0, 0.0, 0.0};
  double pressure = 1.0;
  double temperature = 0.0;
};

struct ConservedState {
  double density = 1.0;
  std::array<double, 3> momentum{0.0, 0.0, 0.0};
  double total_energy = 0.0;
};

struct TransportCoeffs {
  double shear_viscosity = 0.0;
  double bulk_viscosity = 0.0;
  double conductivity = 0.0;

  bool inviscid() const { return shear_viscosity == 0.0 && bulk_viscosity == 0.0 && conductivity == 0.0; }
};

PrimitiveState primitive_from_conserved(const ConservedState& c, const GasModel& gas);
ConservedState conserved_from_primitive(const PrimitiveState& p, const GasModel& gas);

/// Builds a primitive state from (rho, u, p); temperature follows from the EOS.
PrimitiveState make_primitive(double density, std::array<double, 3> velocity, double pressure,
                              const GasModel& gas);

double sound_speed(const PrimitiveState& p, const GasModel& gas);

std::string describe(const ConservedState& c);
std::string describe(const PrimitiveState& p);

}  // namespace fvbench
