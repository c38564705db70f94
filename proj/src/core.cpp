#include "fvbench/core.hpp"

#include <cmath>
#include <sstream>

namespace fvbench {

GasModel GasModel::from_cp(double gamma, double cp, double prandtl) {
  GasModel g;
  g.gamma = gamma;
  g.cp = cp;
  g.cv = cp / gamma;
  g.r_specific = cp * (gamma - 1.0) / gamma;
  g.prandtl = prandtl;
  g.validate();
  return g;
}

void GasModel::validate() const {
  auto rel = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
  if (!(gamma > 1.0)) throw std::invalid_argument("gas: gamma must exceed 1");
  if (!(cv > 0.0) || !rel(cp, gamma * cv)) throw std::invalid_argument("gas: cp must equal gamma*cv");
  if (!rel(r_specific, cp - cv)) throw std::invalid_argument("gas: r_specific must equal cp-cv");
  if (!(prandtl > 0.0)) throw std::invalid_argument("gas: prandtl must be positive");
}

PrimitiveState primitive_from_conserved(const ConservedState& c, const GasModel& gas) {
  if (!(c.density > 0.0)) throw StateError("non-positive density in " + describe(c));
  const double inv_rho = 1.0 / c.density;
  const auto& m = c.momentum;
  const double kinetic = 0.5 * (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) * inv_rho;
  const double rho_e = c.total_energy - kinetic;
  if (!(rho_e > 0.0)) throw StateError("non-positive internal energy in " + describe(c));
  PrimitiveState p;
  p.density = c.density;
  p.velocity = {m[0] * inv_rho, m[1] * inv_rho, m[2] * inv_rho};
  p.pressure = (gas.gamma - 1.0) * rho_e;
  p.temperature = p.pressure / (c.density * gas.r_specific);
  return p;
}

ConservedState conserved_from_primitive(const PrimitiveState& p, const GasModel& gas) {
  if (!(p.density > 0.0)) throw StateError("non-positive density in " + describe(p));
  if (!(p.pressure > 0.0)) throw StateError("non-positive pressure in " + describe(p));
  const auto& u = p.velocity;
  ConservedState c;
  c.density = p.density;
  c.momentum = {p.density * u[0], p.density * u[1], p.density * u[2]};
  c.total_energy = p.pressure / (gas.gamma - 1.0) + 0.5 * p.density * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  return c;
}

PrimitiveState make_primitive(double density, std::array<double, 3> velocity, double pressure,
                              const GasModel& gas) {
  PrimitiveState p;
  p.density = density;
  p.velocity = velocity;
  p.pressure = pressure;
  p.temperature = pressure / (density * gas.r_specific);
  return p;
}

double sound_speed(const PrimitiveState& p, const GasModel& gas) {
  if (!(p.density > 0.0) || !(p.pressure > 0.0)) throw StateError("sound speed of invalid state " + describe(p));
  return std::sqrt(gas.gamma * p.pressure / p.density);
}

std::string describe(const ConservedState& c) {
  std::ostringstream os;
  os.precision(17);
  os << "conserved(rho=" << c.density << ", m=[" << c.momentum[0] << ", " << c.momentum[1] << ", "
     << c.momentum[2] << "], rhoE=" << c.total_energy << ")";
  return os.str();
}

std::string describe(const PrimitiveState& p) {
  std::ostringstream os;
  os.precision(17);
  os << "primitive(rho=" << p.density << ", u=[" << p.velocity[0] << ", " << p.velocity[1] << ", "
     << p.velocity[2] << "], p=" << p.pressure << ")";
  return os.str();
}

}  // namespace fvbench
