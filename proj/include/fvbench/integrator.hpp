// Method-of-lines finite-volume update: ghost fill, face reconstruction,
// face-flux quadrature (midpoint or two-point Gauss), diffusion, SSP-RK3.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fvbench/core.hpp"
#include "fvbench/flux.hpp"
#include "fvbench/grid.hpp"
#include "fvbench/reconstruct.hpp"

namespace fvbench {

enum class Reconstruction { PPM, WenoZ3, WenoZ5, WenoZ7 };
enum class FaceQuadrature { Midpoint, Gauss2 };
enum class ReconVariables { Primitive, Conserved, Characteristic };
enum class RiemannSolver { HLLC, Rusanov };

std::string to_string(Reconstruction r);
std::string to_string(FaceQuadrature q);
std::string to_string(ReconVariables v);
std::string to_string(RiemannSolver s);
/// Parsers accept the to_string spellings; throw std::invalid_argument otherwise.
Reconstruction parse_reconstruction(const std::string& s);
FaceQuadrature parse_quadrature(const std::string& s);
ReconVariables parse_variables(const std::string& s);
RiemannSolver parse_riemann(const std::string& s);

struct SchemeConfig {
  Reconstruction reconstruction = Reconstruction::WenoZ5;
  FaceQuadrature face_quadrature = FaceQuadrature::Midpoint;
  WenoParams weno_params{};
  ReconVariables reconstruction_variables = ReconVariables::Primitive;
  RiemannSolver riemann = RiemannSolver::HLLC;
  bool ppm_limiter = true;

  /// Scheme with the quadrature-dependent variable default: primitive for
  /// midpoint, conserved for gauss2 (cell averages of primitives are only
  /// second-order accurate).
  static SchemeConfig make(Reconstruction r, FaceQuadrature q);

  /// Cells on each side of the reconstructed cell.
  int half_width() const;
  void validate(const CartesianGrid& grid) const;
  std::string label() const;
};

struct RhsCounters {
  std::uint64_t riemann_solves = 0;
  std::uint64_t reconstruction_calls = 0;

  RhsCounters& operator+=(const RhsCounters& o) {
    riemann_solves += o.riemann_solves;
    reconstruction_calls += o.reconstruction_calls;
    return *this;
  }
};

struct StepStats {
  double time = 0.0;  ///< simulation time after the step
  double dt = 0.0;
  std::uint64_t riemann_solves = 0;
  std::uint64_t reconstruction_calls = 0;
  double wall_time = 0.0;
};

/// Fills ghost layers of every active dimension, corners included.
void fill_ghosts(ConservedField& f);

using StepObserver = std::function<void(const ConservedField&, const StepStats&, bool at_sample)>;

struct AdvanceOptions {
  double cfl = 0.5;
  /// Times the integrator must land on exactly; the observer is told when a
  /// step ends on one of them.
  std::vector<double> sample_times;
  std::size_t max_steps = 50'000'000;
  StepObserver observer;
};

struct AdvanceResult {
  ConservedField field;
  std::vector<StepStats> steps;
};

class FiniteVolumeSolver {
 public:
  FiniteVolumeSolver(SchemeConfig cfg, GasModel gas, TransportCoeffs coeffs = {});

  const SchemeConfig& scheme() const { return cfg_; }
  const GasModel& gas() const { return gas_; }
  const TransportCoeffs& coeffs() const { return coeffs_; }

  /// Adds the hyperbolic tendency of `f` (ghosts filled) to the interior of
  /// `out`, using the configured face quadrature.
  RhsCounters add_hyperbolic_rhs(const ConservedField& f, ConservedField& out);
  /// Adds the viscous/conductive tendency.
  void add_diffusive_rhs(const ConservedField& f, ConservedField& out);

  double stable_dt(const ConservedField& f, double cfl) const;

  /// One SSP-RK3 step; ghosts are refilled before every stage.
  StepStats step(ConservedField& f, double dt);

  AdvanceResult advance(ConservedField f, double t_end, const AdvanceOptions& opts);

 private:
  void compute_primitives(const ConservedField& f);

  SchemeConfig cfg_;
  GasModel gas_;
  TransportCoeffs coeffs_;
  std::vector<double> prim_;  // nvar x padded cells: rho, u_0.., p
  std::vector<double> work_a_, work_b_, work_c_, flux_;
  ConservedField stage_, rhs_;
};

// Free-function forms of the operations.

ConservedField hyperbolic_rhs_midpoint(const ConservedField& f, const SchemeConfig& cfg, const GasModel& gas,
                                       RhsCounters* counters = nullptr);
ConservedField hyperbolic_rhs_gauss2(const ConservedField& f, const SchemeConfig& cfg, const GasModel& gas,
                                     RhsCounters* counters = nullptr);
ConservedField diffusive_rhs(const ConservedField& f, const TransportCoeffs& coeffs, const GasModel& gas);
double stable_dt(const ConservedField& f, double cfl, const TransportCoeffs& coeffs, const GasModel& gas);
StepStats ssp_rk3_step(ConservedField& f, double dt, const SchemeConfig& cfg, const GasModel& gas,
                       const TransportCoeffs& coeffs);
AdvanceResult advance_to_time(ConservedField f, double t_end, const SchemeConfig& cfg, const GasModel& gas,
                              const TransportCoeffs& coeffs, const AdvanceOptions& opts);

/// Roe-averaged eigenvectors of the Euler flux Jacobian along `axis`, in
/// conserved variables (rho, m_0..m_{ndim-1}, rhoE). right[v][w] is component
/// v of eigenvector w; left is its inverse.
struct Eigensystem {
  int n = 0;
  std::array<std::array<double, 5>, 5> right{};
  std::array<std::array<double, 5>, 5> left{};
};
Eigensystem roe_eigensystem(const PrimitiveState& a, const PrimitiveState& b, int ndim, int axis,
                            const GasModel& gas);

}  // namespace fvbench
