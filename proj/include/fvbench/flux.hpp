// Face fluxes: approximate and exact Riemann solvers, viscous/conductive flux.
#pragma once

#include <array>

#include "fvbench/core.hpp"

namespace fvbench {

/// Flux through a face normal to one axis. Viscous contributions use the same
/// sign convention as the inviscid flux: the tendency is minus its divergence.
struct FluxVector {
  double mass = 0.0;
  std::array<double, 3> momentum{0.0, 0.0, 0.0};
  double energy = 0.0;

  FluxVector& operator+=(const FluxVector& o);
  FluxVector& operator*=(double s);
};

/// Exact Euler flux of a single state through a face normal to `axis`.
FluxVector physical_flux(const PrimitiveState& q, int axis, const GasModel& gas);

/// HLLC with Einfeldt-type (Roe-averaged) wave-speed bounds.
FluxVector hllc_flux(const PrimitiveState& left, const PrimitiveState& right, int axis, const GasModel& gas);

/// Local Lax-Friedrichs flux, kept as a cross-check option.
FluxVector rusanov_flux(const PrimitiveState& left, const PrimitiveState& right, int axis, const GasModel& gas);

struct StarRegion {
  double pressure = 0.0;
  double velocity = 0.0;
  int iterations = 0;
};

/// Star-region pressure and velocity of the exact Riemann problem along `axis`.
/// Throws StateError if the data generate vacuum.
StarRegion exact_riemann_star(const PrimitiveState& left, const PrimitiveState& right, const GasModel& gas,
                              int axis = 0);

/// Self-similar exact solution sampled at x/t = xi.
PrimitiveState exact_riemann_solve(const PrimitiveState& left, const PrimitiveState& right, const GasModel& gas,
                                   double xi, int axis = 0);

/// Velocity/temperature data around a face between cells `lo` and `hi` along
/// `axis`. nb_lo[t] / nb_hi[t] hold the (minus, plus) transverse neighbours of
/// each cell along dimension t; entries for t == axis or t >= ndim are unused.
struct ViscousFaceStencil {
  int ndim = 1;
  PrimitiveState lo, hi;
  std::array<std::array<PrimitiveState, 2>, 3> nb_lo{};
  std::array<std::array<PrimitiveState, 2>, 3> nb_hi{};
};

/// Face flux from the face velocity gradient grad_u[i][j] = du_i/dx_j, face
/// velocity and normal temperature gradient.
FluxVector viscous_flux_from_gradients(const std::array<std::array<double, 3>, 3>& grad_u,
                                       const std::array<double, 3>& u_face, double dT_dn, int axis,
                                       const TransportCoeffs& coeffs);

/// Second-order centered viscous and conductive flux across the face.
FluxVector viscous_flux(const ViscousFaceStencil& s, int axis, const std::array<double, 3>& dx,
                        const TransportCoeffs& coeffs, const GasModel& gas);

}  // namespace fvbench
