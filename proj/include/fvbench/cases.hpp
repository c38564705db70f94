// Initial conditions for the vortex, Shu-Osher and decaying-turbulence cases.
#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "fvbench/core.hpp"
#include "fvbench/grid.hpp"

namespace fvbench {

/// Isentropic-like vortex convected diagonally through a periodic square.
struct VortexParams {
  double length = 0.01;          // m
  double circulation = 0.11;     // Gamma, m^2/s
  double radius_fraction = 0.1;  // R_v / L
  double u0 = 100.0;             // m/s, both components
  double t_ref = 300.0;          // K
  double p_ref = 101320.0;       // Pa

  double radius() const { return radius_fraction * length; }
  void validate() const;
};

struct ShuOsherParams {
  double x_lo = 0.0;
  double x_hi = 10.0;
  double jump = 1.0;
  double rho_left = 3.857143;
  double u_left = 2.629369;
  double p_left = 10.3333;
  double rho_mean = 1.0;
  double rho_amplitude = 0.2;
  double wavenumber = 5.0;
  double p_right = 1.0;
  double t_end = 1.2;

  PrimitiveState left_state(const GasModel& gas) const;
  PrimitiveState right_state(double x, const GasModel& gas) const;
};

struct HitParams {
  double mach_t0 = 0.6;
  double reynolds0 = 100.0;
  int k0 = 4;
  double t0 = 1200.0;      // K
  double p0 = 101325.0;    // Pa
  double cp = 1173.0;      // J/(kg K)
  double prandtl = 0.71;
  std::uint64_t seed = 20200101;
  /// Resolution the shared velocity field is generated at; coarser grids get
  /// its Fourier truncation.
  int master_n = 128;

  double psi0() const { return 2.0 / k0; }
  void validate() const;
};

using CaseSpec = std::variant<VortexParams, ShuOsherParams, HitParams>;

/// Vortex velocity and pressure at a point (x, y).
PrimitiveState vortex_state(double x, double y, const VortexParams& p, const GasModel& gas);

/// quadrature_points = 1 samples cell centers; 3 takes the 3x3 Gauss
/// average of the conserved variables (needed for fourth-order runs).
ConservedField init_vortex(const CartesianGrid& grid, const VortexParams& p, const GasModel& gas,
                           int quadrature_points = 1);

/// Cell-center evaluation; sets the inflow/outflow boundary with the left state.
ConservedField init_shu_osher(const CartesianGrid& grid, const ShuOsherParams& p, const GasModel& gas);

/// Three velocity components of n^3 values each, x fastest.
using VectorField3 = std::array<std::vector<double>, 3>;

/// Random solenoidal field with expected shell spectrum ~ k^4 exp(-2 (k/k0)^2).
/// Amplitude is arbitrary (callers rescale). Deterministic for a given seed.
VectorField3 solenoidal_spectrum_field(int n, int k0, std::uint64_t seed);

/// Keeps the Fourier modes of `master` representable on an n^3 grid
/// (|k_i| < n/2) and transforms back. n must not exceed the master size.
VectorField3 fourier_truncate(const VectorField3& master, int master_n, int n);

struct HitInit {
  ConservedField field;
  TransportCoeffs coeffs;
  double tau_eddy = 0.0;  // s
  double u_rms = 0.0;     // m/s
  double c0 = 0.0;        // m/s
  double rho0 = 0.0;      // kg/m^3
};

/// Gas for the turbulence case (cp and Prandtl from the parameters).
GasModel hit_gas(const HitParams& p);

/// Cubic periodic grid on [0, 2pi)^3.
HitInit init_hit(const CartesianGrid& grid, const HitParams& p, const GasModel& gas);

}  // namespace fvbench
