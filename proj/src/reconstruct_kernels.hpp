// Inline reconstruction kernels shared by the public API and the solver loops.
#pragma once

#include <cmath>

#include "fvbench/reconstruct.hpp"

namespace fvbench::kernels {

inline double ipow(double x, int a) {
  if (a == 2) return x * x;
  double r = x;
  for (int n = 1; n < a; ++n) r *= x;
  return r;
}

inline double sq(double x) { return x * x; }

/// Smoothness indicators on q[0 .. 2R-2]; substencil k covers q[k .. k+R-1].
template <int R>
inline void betas(const double* q, double* b);

template <>
inline void betas<2>(const double* q, double* b) {
  b[0] = sq(q[1] - q[0]);
  b[1] = sq(q[2] - q[1]);
}

template <>
inline void betas<3>(const double* q, double* b) {
  constexpr double c13 = 13.0 / 12.0;
  b[0] = c13 * sq(q[0] - 2.0 * q[1] + q[2]) + 0.25 * sq(q[0] - 4.0 * q[1] + 3.0 * q[2]);
  b[1] = c13 * sq(q[1] - 2.0 * q[2] + q[3]) + 0.25 * sq(q[1] - q[3]);
  b[2] = c13 * sq(q[2] - 2.0 * q[3] + q[4]) + 0.25 * sq(3.0 * q[2] - 4.0 * q[3] + q[4]);
}

// Balsara & Shu (2000), scaled by 1/240 so that each indicator equals the
// sum of the squared-derivative integrals of its cubic.
template <>
inline void betas<4>(const double* q, double* b) {
  constexpr double s = 1.0 / 240.0;
  b[0] = s * (q[0] * (547.0 * q[0] - 3882.0 * q[1] + 4642.0 * q[2] - 1854.0 * q[3]) +
              q[1] * (7043.0 * q[1] - 17246.0 * q[2] + 7042.0 * q[3]) +
              q[2] * (11003.0 * q[2] - 9402.0 * q[3]) + 2107.0 * q[3] * q[3]);
  b[1] = s * (q[1] * (267.0 * q[1] - 1642.0 * q[2] + 1602.0 * q[3] - 494.0 * q[4]) +
              q[2] * (2843.0 * q[2] - 5966.0 * q[3] + 1922.0 * q[4]) +
              q[3] * (3443.0 * q[3] - 2522.0 * q[4]) + 547.0 * q[4] * q[4]);
  b[2] = s * (q[2] * (547.0 * q[2] - 2522.0 * q[3] + 1922.0 * q[4] - 494.0 * q[5]) +
              q[3] * (3443.0 * q[3] - 5966.0 * q[4] + 1602.0 * q[5]) +
              q[4] * (2843.0 * q[4] - 1642.0 * q[5]) + 267.0 * q[5] * q[5]);
  b[3] = s * (q[3] * (2107.0 * q[3] - 9402.0 * q[4] + 7042.0 * q[5] - 1854.0 * q[6]) +
              q[4] * (11003.0 * q[4] - 17246.0 * q[5] + 4642.0 * q[6]) +
              q[5] * (7043.0 * q[5] - 3882.0 * q[6]) + 547.0 * q[6] * q[6]);
}

/// WENO-Z weights; `mirror` evaluates the weights of the reversed stencil
/// (indicator k of the reversed stencil is indicator R-1-k of this one).
template <int R>
inline void z_weights(const double* b, const double* d, double eps, int a, bool mirror, double* w) {
  const double tau = std::abs(b[0] - b[R - 1]);
  double sum = 0.0;
  for (int k = 0; k < R; ++k) {
    const double bk = mirror ? b[R - 1 - k] : b[k];
    w[k] = d[k] * ipow(1.0 + tau / (bk + eps), a);
    sum += w[k];
  }
  const double inv = 1.0 / sum;
  for (int k = 0; k < R; ++k) w[k] *= inv;
}

/// Values at +xi (plus) and -xi (minus) of the rule from one stencil.
template <int R>
inline PointPair weno_pair(const double* q, const PointRule& rule, double eps, int a) {
  double b[R];
  betas<R>(q, b);
  const double tau = std::abs(b[0] - b[R - 1]);
  // z[k] = (1 + tau / (b_k + eps))^a; the mirrored stencil uses z[R-1-k].
  double z[R];
  for (int k = 0; k < R; ++k) z[k] = ipow(1.0 + tau / (b[k] + eps), a);
  const double* d = rule.linear.data();
  double plus = 0.0, minus = 0.0, sp = 0.0, sm = 0.0;
  for (int k = 0; k < R; ++k) {
    double vp = 0.0, vm = 0.0;
    for (int j = 0; j < R; ++j) {
      vp += rule.coeff[k][j] * q[k + j];
      vm += rule.coeff[k][j] * q[2 * R - 2 - k - j];
    }
    const double ap = d[k] * z[k], am = d[k] * z[R - 1 - k];
    plus += ap * vp;
    minus += am * vm;
    sp += ap;
    sm += am;
  }
  return {minus / sm, plus / sp};
}

/// PPM edge values (i-1/2, i+1/2) from q[0..4] = cells i-2..i+2.
inline void ppm_edges(const double* q, bool limit, double& lo, double& hi) {
  constexpr double c7 = 7.0 / 12.0, c1 = 1.0 / 12.0;
  hi = c7 * (q[2] + q[3]) - c1 * (q[1] + q[4]);
  lo = c7 * (q[1] + q[2]) - c1 * (q[0] + q[3]);
  if (!limit) return;
  hi = std::fmin(std::fmax(hi, std::fmin(q[2], q[3])), std::fmax(q[2], q[3]));
  lo = std::fmin(std::fmax(lo, std::fmin(q[1], q[2])), std::fmax(q[1], q[2]));
  const double qc = q[2];
  if ((hi - qc) * (qc - lo) <= 0.0) {
    lo = qc;
    hi = qc;
    return;
  }
  const double dq = hi - lo;
  const double q6 = 6.0 * (qc - 0.5 * (lo + hi));
  if (dq * q6 > dq * dq) {
    lo = 3.0 * qc - 2.0 * hi;
  } else if (dq * q6 < -dq * dq) {
    hi = 3.0 * qc - 2.0 * lo;
  }
}

/// Parabola with edge values lo, hi and mean qc evaluated at xi in [-1/2, 1/2].
inline double ppm_eval(double lo, double hi, double qc, double xi) {
  const double x = xi + 0.5;
  const double q6 = 6.0 * (qc - 0.5 * (lo + hi));
  return lo + x * ((hi - lo) + q6 * (1.0 - x));
}

}  // namespace fvbench::kernels
