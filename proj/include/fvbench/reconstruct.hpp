// One-dimensional reconstruction kernels: WENO-Z (orders 3, 5, 7) and PPM.
//
// A stencil holds 2r-1 consecutive cell averages centered on cell i. The
// kernels return the value at the right face of cell i (`left` state of face
// i+1/2) and at the left face (`right` state of face i-1/2). The right-face
// side is obtained from the left-face formulas applied to the reversed
// stencil.
#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace fvbench {

struct WenoOrder {
  int r = 3;  ///< substencil count; scheme order is 2r-1

  static WenoOrder from_order(int order);
  int order() const { return 2 * r - 1; }
  int width() const { return 2 * r - 1; }
};

struct WenoParams {
  double epsilon = 1e-40;
  int a = 2;

  void validate() const;
};

struct FacePair {
  double left = 0.0;   ///< value at x_{i+1/2} seen from cell i
  double right = 0.0;  ///< value at x_{i-1/2} seen from cell i
};

/// Up to four per-substencil quantities; only the first r entries are used.
using SubstencilValues = std::array<double, 4>;

SubstencilValues smoothness_indicators(std::span<const double> stencil, WenoOrder order);
SubstencilValues wenoz_weights(const SubstencilValues& beta, WenoOrder order, const WenoParams& params);
/// Optimal (linear) weights for the face value at x_{i+1/2}.
SubstencilValues optimal_weights(WenoOrder order);
/// Substencil interpolants at x_{i+1/2}.
SubstencilValues substencil_face_values(std::span<const double> stencil, WenoOrder order);

FacePair weno_face_values(std::span<const double> stencil, WenoOrder order, const WenoParams& params);

/// Colella-Woodward PPM on a five-cell stencil (i-2..i+2).
FacePair ppm_face_values(std::span<const double> stencil, bool limit = true);

/// Coefficients reproducing, at offset xi (cell units, cell i spans
/// [-1/2, 1/2]), the polynomial whose averages over the given cells match the
/// data. Offsets are cell indices relative to i.
std::vector<double> polynomial_point_weights(std::span<const int> offsets, double xi);

/// WENO rule evaluating at an arbitrary point xi inside the cell: substencil
/// coefficients and the linear weights that recombine them into the
/// full-stencil polynomial.
struct PointRule {
  int r = 3;
  double xi = 0.5;
  std::array<std::array<double, 4>, 4> coeff{};  ///< coeff[k][j] on stencil position k+j
  SubstencilValues linear{};

  /// Built from the generic polynomial machinery; throws if no linear
  /// weights exist for this (r, xi).
  static PointRule compute(int r, double xi);
  /// The tabulated face rule (xi = 1/2).
  static const PointRule& face(int r);
  /// The positive two-point Gauss node xi = 1/(2 sqrt 3).
  static const PointRule& gauss(int r);
};

/// Values at +xi and -xi of the rule, from the same stencil.
struct PointPair {
  double minus = 0.0;
  double plus = 0.0;
};

PointPair weno_point_values(std::span<const double> stencil, const PointRule& rule, const WenoParams& params);
PointPair ppm_point_values(std::span<const double> stencil, double xi, bool limit = true);

namespace detail {
/// Classic Jiang-Shu nonlinear weights, kept for cross-checks in tests.
SubstencilValues weno_js_weights(const SubstencilValues& beta, WenoOrder order, const WenoParams& params);
}  // namespace detail

}  // namespace fvbench
