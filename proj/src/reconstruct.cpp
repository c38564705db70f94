#include "fvbench/reconstruct.hpp"

#include <cmath>
#include <stdexcept>

#include "reconstruct_kernels.hpp"

namespace fvbench {

namespace {

void check_width(std::span<const double> s, WenoOrder order) {
  if (order.r < 2 || order.r > 4) throw std::invalid_argument("weno: r must be 2, 3 or 4");
  if (static_cast<int>(s.size()) != order.width())
    throw std::invalid_argument("weno: stencil width does not match order");
}

// Face tables (x_{i+1/2}): Jiang & Shu (1996) for r = 2, 3; Balsara & Shu
// (2000) for r = 4.
PointRule make_face_rule(int r) {
  PointRule rule;
  rule.r = r;
  rule.xi = 0.5;
  switch (r) {
    case 2:
      rule.coeff[0] = {-0.5, 1.5, 0.0, 0.0};
      rule.coeff[1] = {0.5, 0.5, 0.0, 0.0};
      rule.linear = {1.0 / 3.0, 2.0 / 3.0, 0.0, 0.0};
      break;
    case 3:
      rule.coeff[0] = {2.0 / 6.0, -7.0 / 6.0, 11.0 / 6.0, 0.0};
      rule.coeff[1] = {-1.0 / 6.0, 5.0 / 6.0, 2.0 / 6.0, 0.0};
      rule.coeff[2] = {2.0 / 6.0, 5.0 / 6.0, -1.0 / 6.0, 0.0};
      rule.linear = {0.1, 0.6, 0.3, 0.0};
      break;
    case 4:
      rule.coeff[0] = {-3.0 / 12.0, 13.0 / 12.0, -23.0 / 12.0, 25.0 / 12.0};
      rule.coeff[1] = {1.0 / 12.0, -5.0 / 12.0, 13.0 / 12.0, 3.0 / 12.0};
      rule.coeff[2] = {-1.0 / 12.0, 7.0 / 12.0, 7.0 / 12.0, -1.0 / 12.0};
      rule.coeff[3] = {3.0 / 12.0, 13.0 / 12.0, -5.0 / 12.0, 1.0 / 12.0};
      rule.linear = {1.0 / 35.0, 12.0 / 35.0, 18.0 / 35.0, 4.0 / 35.0};
      break;
    default:
      throw std::invalid_argument("weno: r must be 2, 3 or 4");
  }
  return rule;
}

PointPair dispatch_pair(std::span<const double> s, const PointRule& rule, const WenoParams& params) {
  switch (rule.r) {
    case 2: return kernels::weno_pair<2>(s.data(), rule, params.epsilon, params.a);
    case 3: return kernels::weno_pair<3>(s.data(), rule, params.epsilon, params.a);
    case 4: return kernels::weno_pair<4>(s.data(), rule, params.epsilon, params.a);
    default: throw std::invalid_argument("weno: r must be 2, 3 or 4");
  }
}

}  // namespace

WenoOrder WenoOrder::from_order(int order) {
  if (order != 3 && order != 5 && order != 7) throw std::invalid_argument("weno: order must be 3, 5 or 7");
  return WenoOrder{(order + 1) / 2};
}

void WenoParams::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("weno: epsilon must be positive");
  if (a < 1) throw std::invalid_argument("weno: exponent a must be >= 1");
}

SubstencilValues smoothness_indicators(std::span<const double> stencil, WenoOrder order) {
  check_width(stencil, order);
  SubstencilValues b{};
  switch (order.r) {
    case 2: kernels::betas<2>(stencil.data(), b.data()); break;
    case 3: kernels::betas<3>(stencil.data(), b.data()); break;
    case 4: kernels::betas<4>(stencil.data(), b.data()); break;
  }
  return b;
}

SubstencilValues optimal_weights(WenoOrder order) { return PointRule::face(order.r).linear; }

SubstencilValues wenoz_weights(const SubstencilValues& beta, WenoOrder order, const WenoParams& params) {
  const auto d = optimal_weights(order);
  SubstencilValues w{};
  switch (order.r) {
    case 2: kernels::z_weights<2>(beta.data(), d.data(), params.epsilon, params.a, false, w.data()); break;
    case 3: kernels::z_weights<3>(beta.data(), d.data(), params.epsilon, params.a, false, w.data()); break;
    case 4: kernels::z_weights<4>(beta.data(), d.data(), params.epsilon, params.a, false, w.data()); break;
    default: throw std::invalid_argument("weno: r must be 2, 3 or 4");
  }
  return w;
}

SubstencilValues substencil_face_values(std::span<const double> stencil, WenoOrder order) {
  check_width(stencil, order);
  const auto& rule = PointRule::face(order.r);
  SubstencilValues v{};
  for (int k = 0; k < order.r; ++k)
    for (int j = 0; j < order.r; ++j) v[k] += rule.coeff[k][j] * stencil[k + j];
  return v;
}

FacePair weno_face_values(std::span<const double> stencil, WenoOrder order, const WenoParams& params) {
  check_width(stencil, order);
  const auto pair = dispatch_pair(stencil, PointRule::face(order.r), params);
  return {pair.plus, pair.minus};
}

FacePair ppm_face_values(std::span<const double> stencil, bool limit) {
  if (stencil.size() != 5) throw std::invalid_argument("ppm: stencil must hold 5 cells");
  double lo = 0.0, hi = 0.0;
  kernels::ppm_edges(stencil.data(), limit, lo, hi);
  return {hi, lo};
}

PointPair weno_point_values(std::span<const double> stencil, const PointRule& rule, const WenoParams& params) {
  check_width(stencil, WenoOrder{rule.r});
  return dispatch_pair(stencil, rule, params);
}

PointPair ppm_point_values(std::span<const double> stencil, double xi, bool limit) {
  if (stencil.size() != 5) throw std::invalid_argument("ppm: stencil must hold 5 cells");
  double lo = 0.0, hi = 0.0;
  kernels::ppm_edges(stencil.data(), limit, lo, hi);
  return {kernels::ppm_eval(lo, hi, stencil[2], -xi), kernels::ppm_eval(lo, hi, stencil[2], xi)};
}

std::vector<double> polynomial_point_weights(std::span<const int> offsets, double xi) {
  const int n = static_cast<int>(offsets.size());
  // Solve A^T c = e(xi), where A[j][m] is the average of x^m over cell j.
  std::vector<long double> m(static_cast<std::size_t>(n * (n + 1)));
  auto at = [&](int row, int col) -> long double& { return m[static_cast<std::size_t>(row * (n + 1) + col)]; };
  for (int p = 0; p < n; ++p) {
    for (int j = 0; j < n; ++j) {
      const long double hi = offsets[j] + 0.5L, lo = offsets[j] - 0.5L;
      at(p, j) = (std::pow(hi, p + 1) - std::pow(lo, p + 1)) / (p + 1);
    }
    at(p, n) = std::pow(static_cast<long double>(xi), p);
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::fabs(at(row, col)) > std::fabs(at(piv, col))) piv = row;
    for (int c = 0; c <= n; ++c) std::swap(at(col, c), at(piv, c));
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const long double f = at(row, col) / at(col, col);
      for (int c = col; c <= n; ++c) at(row, c) -= f * at(col, c);
    }
  }
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) c[j] = static_cast<double>(at(j, n) / at(j, j));
  return c;
}

PointRule PointRule::compute(int r, double xi) {
  if (r < 2 || r > 4) throw std::invalid_argument("weno: r must be 2, 3 or 4");
  PointRule rule;
  rule.r = r;
  rule.xi = xi;
  std::vector<int> offs(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) {
    for (int j = 0; j < r; ++j) offs[j] = k + j - (r - 1);
    const auto c = polynomial_point_weights(offs, xi);
    for (int j = 0; j < r; ++j) rule.coeff[k][j] = c[j];
  }
  std::vector<int> full(static_cast<std::size_t>(2 * r - 1));
  for (int m = 0; m < 2 * r - 1; ++m) full[m] = m - (r - 1);
  const auto target = polynomial_point_weights(full, xi);
  // Position m is covered by substencils k <= m with j = m - k; the first r
  // positions determine the weights, the rest must be consistent.
  for (int m = 0; m < r; ++m) {
    double acc = target[m];
    for (int k = 0; k < m; ++k) acc -= rule.linear[k] * rule.coeff[k][m - k];
    rule.linear[m] = acc / rule.coeff[m][0];
  }
  for (int m = r; m < 2 * r - 1; ++m) {
    double acc = 0.0;
    for (int k = m - r + 1; k < r; ++k) acc += rule.linear[k] * rule.coeff[k][m - k];
    if (std::abs(acc - target[m]) > 1e-11) throw std::invalid_argument("weno: no linear weights at this point");
  }
  return rule;
}

const PointRule& PointRule::face(int r) {
  static const std::array<PointRule, 3> rules{make_face_rule(2), make_face_rule(3), make_face_rule(4)};
  if (r < 2 || r > 4) throw std::invalid_argument("weno: r must be 2, 3 or 4");
  return rules[r - 2];
}

const PointRule& PointRule::gauss(int r) {
  static const double xg = 0.5 / std::sqrt(3.0);
  static const std::array<PointRule, 3> rules{compute(2, xg), compute(3, xg), compute(4, xg)};
  if (r < 2 || r > 4) throw std::invalid_argument("weno: r must be 2, 3 or 4");
  return rules[r - 2];
}

namespace detail {

SubstencilValues weno_js_weights(const SubstencilValues& beta, WenoOrder order, const WenoParams& params) {
  const auto d = optimal_weights(order);
  SubstencilValues w{};
  double sum = 0.0;
  for (int k = 0; k < order.r; ++k) {
    w[k] = d[k] / kernels::ipow(beta[k] + params.epsilon, params.a);
    sum += w[k];
  }
  for (int k = 0; k < order.r; ++k) w[k] /= sum;
  return w;
}

}  // namespace detail

}  // namespace fvbench
