// Error norms, convergence fits and turbulence diagnostics.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "fvbench/cases.hpp"
#include "fvbench/grid.hpp"

namespace fvbench {

enum class Quantity { Density, VelocityX, VelocityY, VelocityZ, Pressure };

Quantity parse_quantity(const std::string& s);
std::string to_string(Quantity q);

/// Interior values of a derived scalar, x fastest.
std::vector<double> extract(const ConservedField& f, Quantity q, const GasModel& gas);

/// Mean absolute difference. Throws std::invalid_argument on size mismatch.
double l1_error(std::span<const double> a, std::span<const double> b);
/// Mean absolute difference of quantity q; the grids must match.
double l1_error(const ConservedField& a, const ConservedField& b, Quantity q, const GasModel& gas);

/// Conservative restriction: each coarse cell is the mean of its factor^ndim
/// children. Boundary specs and time are carried over.
ConservedField coarsen_average(const ConservedField& fine, int factor);

struct ConvergenceSample {
  int n = 0;
  double error = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceSample> samples;
  double fitted_order = 0.0;
  /// RMS deviation of log(error) from the fitted line.
  double fit_residual = 0.0;
};

/// Least-squares slope of log(error) against log(1/N).
ConvergenceReport fit_order(std::vector<ConvergenceSample> samples);

/// Volume average of u.u/2.
double kinetic_energy(const ConservedField& f);

/// Interior velocity components (3D fields), x fastest.
VectorField3 velocity_field(const ConservedField& f);

/// Curl via spectral differentiation on a periodic cube of side `length`.
VectorField3 curl_spectral(const VectorField3& u, int n, double length);
/// Spectral divergence of a vector field, as a scalar field.
std::vector<double> divergence_spectral(const VectorField3& u, int n, double length);

VectorField3 vorticity_spectral(const ConservedField& f);

/// Volume average of omega.omega.
double enstrophy(const ConservedField& f);

struct SpectrumBins {
  std::vector<int> shells;      // 0..n/2
  std::vector<double> values;   // (1/2)|q_hat|^2 summed per shell
  /// Energy of modes with |k| >= n/2 + 1/2 (cube corners), not in any shell.
  double corner_energy = 0.0;

  double total() const;
};

/// Shell spectrum of one or more scalar components of an n^3 periodic field.
/// Shell k collects modes with k - 1/2 <= |k| < k + 1/2, so the shell sum
/// plus corner_energy equals the volume average of (1/2) sum q^2.
SpectrumBins shell_spectrum(std::span<const std::vector<double>> components, int n);
SpectrumBins shell_spectrum(const VectorField3& v, int n);

struct TurbulenceSeries {
  std::vector<double> times;  // t / tau
  std::vector<double> kinetic_energy;
  std::vector<double> enstrophy;

  void append(double t_over_tau, double ke, double ens);
};

}  // namespace fvbench
