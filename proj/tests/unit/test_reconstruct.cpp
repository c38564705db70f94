#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fvbench/reconstruct.hpp"

using namespace fvbench;

namespace {

// Independent oracle: polynomial of degree r-1 matching the averages of
// cells at `offsets` (cell units, cell 0 spans [-1/2, 1/2]).
std::vector<long double> fit_polynomial(const std::vector<int>& offsets, const std::vector<double>& avg) {
  const int m = static_cast<int>(offsets.size());
  std::vector<std::vector<long double>> a(m, std::vector<long double>(m + 1));
  for (int row = 0; row < m; ++row) {
    const long double lo = offsets[row] - 0.5L, hi = offsets[row] + 0.5L;
    for (int p = 0; p < m; ++p) a[row][p] = (std::pow(hi, p + 1) - std::pow(lo, p + 1)) / (p + 1);
    a[row][m] = avg[row];
  }
  for (int c = 0; c < m; ++c) {
    int piv = c;
    for (int r = c + 1; r < m; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (int r = 0; r < m; ++r) {
      if (r == c) continue;
      const long double f = a[r][c] / a[c][c];
      for (int k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<long double> coef(m);
  for (int c = 0; c < m; ++c) coef[c] = a[c][m] / a[c][c];
  return coef;
}

long double eval_poly(const std::vector<long double>& c, long double x) {
  long double v = 0.0L;
  for (int p = static_cast<int>(c.size()) - 1; p >= 0; --p) v = v * x + c[p];
  return v;
}

// beta_k = sum_l int_{-1/2}^{1/2} (d^l p_k / dx^l)^2 dx, by exact polynomial
// integration.
std::vector<double> brute_force_betas(const std::vector<double>& stencil, int r) {
  std::vector<double> out;
  for (int k = 0; k < r; ++k) {
    std::vector<int> offs;
    std::vector<double> vals;
    for (int j = 0; j < r; ++j) {
      offs.push_back(k + j - (r - 1));
      vals.push_back(stencil[k + j]);
    }
    std::vector<long double> p = fit_polynomial(offs, vals);
    long double beta = 0.0L;
    for (int l = 1; l < r; ++l) {
      for (int d = 0; d < l; ++d) {  // differentiate once more
        std::vector<long double> dp(p.size() > 1 ? p.size() - 1 : 1, 0.0L);
        for (std::size_t i = 1; i < p.size(); ++i) dp[i - 1] = p[i] * static_cast<long double>(i);
        p = dp;
      }
      std::vector<long double> sq(2 * p.size() - 1, 0.0L);
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) sq[i + j] += p[i] * p[j];
      for (std::size_t i = 0; i < sq.size(); ++i)
        beta += sq[i] * (std::pow(0.5L, i + 1) - std::pow(-0.5L, i + 1)) / (i + 1);
      p = fit_polynomial(offs, vals);
    }
    out.push_back(static_cast<double>(beta));
  }
  return out;
}

std::vector<double> random_stencil(std::mt19937_64& rng, int w) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> s(w);
  for (auto& v : s) v = u(rng);
  return s;
}

constexpr double kRoundoffFloor = 1e-12;

double face_error_linf(int r, int n, const WenoParams& params = {}) {
  const double h = 2.0 * std::numbers::pi / n;
  double err = 0.0;
  const int w = 2 * r - 1;
  for (int i = 0; i < n; ++i) {
    std::vector<double> s(w);
    for (int m = 0; m < w; ++m) {
      const double a = (i + m - (r - 1)) * h, b = a + h;
      s[m] = (std::cos(a) - std::cos(b)) / h;
    }
    const FacePair fp = weno_face_values(s, WenoOrder{r}, params);
    err = std::max(err, std::abs(fp.left - std::sin((i + 1) * h)));
    err = std::max(err, std::abs(fp.right - std::sin(i * h)));
  }
  return err;
}

double slope(const std::vector<int>& ns, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = std::log(static_cast<double>(ns[i])), y = -std::log(errs[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

TEST(SmoothnessIndicators, ConstantStencilGivesZero) {
  const std::vector<double> s{2.5, 2.5, 2.5};
  const auto b = smoothness_indicators(s, WenoOrder{2});
  EXPECT_EQ(b[0], 0.0);
  EXPECT_EQ(b[1], 0.0);
}

TEST(SmoothnessIndicators, LinearDataGivesEqualIndicators) {
  const std::vector<double> s{0, 1, 2, 3, 4};
  const auto b = smoothness_indicators(s, WenoOrder{3});
  EXPECT_NEAR(b[0], b[1], 1e-14);
  EXPECT_NEAR(b[1], b[2], 1e-14);
  EXPECT_NEAR(b[0], brute_force_betas({0, 1, 2, 3, 4}, 3)[0], 1e-13);
}

TEST(SmoothnessIndicators, StepStencilsAreMirrorImages) {
  const auto a = smoothness_indicators(std::vector<double>{0, 0, 0, 1, 1}, WenoOrder{3});
  const auto b = smoothness_indicators(std::vector<double>{1, 1, 0, 0, 0}, WenoOrder{3});
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(a[k], b[2 - k], 1e-15);
  const auto oracle = brute_force_betas({0, 0, 0, 1, 1}, 3);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(a[k], oracle[k], 1e-13);
}

TEST(SmoothnessIndicators, MatchBruteForceOracleAllOrders) {
  std::mt19937_64 rng(7);
  for (int r = 2; r <= 4; ++r)
    for (int trial = 0; trial < 200; ++trial) {
      const auto s = random_stencil(rng, 2 * r - 1);
      const auto b = smoothness_indicators(s, WenoOrder{r});
      const auto o = brute_force_betas(s, r);
      for (int k = 0; k < r; ++k) EXPECT_NEAR(b[k], o[k], 1e-11 * (1.0 + o[k])) << "r=" << r << " k=" << k;
    }
}

TEST(SmoothnessIndicators, NonNegativeAndShiftInvariant) {
  std::mt19937_64 rng(11);
  for (int r = 2; r <= 4; ++r)
    for (int trial = 0; trial < 200; ++trial) {
      auto s = random_stencil(rng, 2 * r - 1);
      const auto b = smoothness_indicators(s, WenoOrder{r});
      for (auto& v : s) v += 3.75;
      const auto c = smoothness_indicators(s, WenoOrder{r});
      for (int k = 0; k < r; ++k) {
        EXPECT_GE(b[k], 0.0);
        EXPECT_NEAR(b[k], c[k], 1e-11 * (1.0 + b[k]));
      }
    }
}

TEST(WenoZWeights, EqualIndicatorsGiveOptimalWeightsExactly) {
  for (int r = 2; r <= 4; ++r) {
    SubstencilValues beta{0.3, 0.3, 0.3, 0.3};
    const auto w = wenoz_weights(beta, WenoOrder{r}, WenoParams{});
    const auto d = optimal_weights(WenoOrder{r});
    for (int k = 0; k < r; ++k) EXPECT_EQ(w[k], d[k]);
  }
}

TEST(WenoZWeights, DiscontinuousSubstencilSuppressed) {
  const auto w = wenoz_weights({1.0, 0.0, 0.0, 0.0}, WenoOrder{3}, WenoParams{});
  const auto d = optimal_weights(WenoOrder{3});
  EXPECT_LT(w[0], 1e-3 * d[0]);
}

TEST(WenoZWeights, VanishingIndicatorDominates) {
  // r=2, beta = (0, 1): alpha_0 = d_0 (1 + 1/eps)^2 swamps alpha_1 = 4 d_1.
  const auto w = wenoz_weights({0.0, 1.0, 0.0, 0.0}, WenoOrder{2}, WenoParams{});
  const auto d = optimal_weights(WenoOrder{2});
  const double a0 = d[0] * std::pow(1.0 + 1.0 / 1e-40, 2), a1 = 4.0 * d[1];
  EXPECT_NEAR(w[0], a0 / (a0 + a1), 1e-15);
  EXPECT_NEAR(w[0], 1.0, 1e-15);
}

TEST(WenoZWeights, ConvexOnRandomIndicators) {
  std::mt19937_64 rng(3);
  std::exponential_distribution<double> e(1.0);
  for (int r = 2; r <= 4; ++r)
    for (int trial = 0; trial < 1000; ++trial) {
      SubstencilValues b{};
      for (int k = 0; k < r; ++k) b[k] = e(rng) * std::pow(10.0, -static_cast<int>(trial % 12));
      const auto w = wenoz_weights(b, WenoOrder{r}, WenoParams{});
      double sum = 0.0;
      for (int k = 0; k < r; ++k) {
        EXPECT_GE(w[k], 0.0);
        sum += w[k];
      }
      EXPECT_NEAR(sum, 1.0, 1e-14);
    }
}

TEST(OptimalWeights, RecombineToFullStencilInterpolant) {
  // sum_k d_k q^k equals the (2r-1)-order interpolant on polynomial data of
  // degree 2r-2, i.e. the exact face value.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int r = 2; r <= 4; ++r)
    for (int trial = 0; trial < 20; ++trial) {
      const int w = 2 * r - 1;
      std::vector<double> coef(w);
      for (auto& c : coef) c = u(rng);
      auto antideriv = [&](double x) {
        double v = 0.0;
        for (int p = 0; p < w; ++p) v += coef[p] * std::pow(x, p + 1) / (p + 1);
        return v;
      };
      std::vector<double> s(w);
      for (int m = 0; m < w; ++m) {
        const double o = m - (r - 1);
        s[m] = antideriv(o + 0.5) - antideriv(o - 0.5);
      }
      const auto q = substencil_face_values(s, WenoOrder{r});
      const auto d = optimal_weights(WenoOrder{r});
      double v = 0.0;
      for (int k = 0; k < r; ++k) v += d[k] * q[k];
      double exact = 0.0;
      for (int p = 0; p < w; ++p) exact += coef[p] * std::pow(0.5, p);
      EXPECT_NEAR(v, exact, 1e-12) << "r=" << r;
    }
}

TEST(WenoFaceValues, ConstantAndLinearExact) {
  for (int r = 2; r <= 4; ++r) {
    const int w = 2 * r - 1;
    std::vector<double> c(w, 1.75), lin(w);
    for (int m = 0; m < w; ++m) lin[m] = 10.0 + (m - (r - 1));  // x_i = cell index
    const FacePair fc = weno_face_values(c, WenoOrder{r}, WenoParams{});
    EXPECT_NEAR(fc.left, 1.75, 1e-12);
    EXPECT_NEAR(fc.right, 1.75, 1e-12);
    const FacePair fl = weno_face_values(lin, WenoOrder{r}, WenoParams{});
    EXPECT_NEAR(fl.left, 10.5, 1e-12);
    EXPECT_NEAR(fl.right, 9.5, 1e-12);
  }
}

TEST(WenoFaceValues, SmoothDataOrder) {
  const std::vector<int> ns{32, 64, 128, 256, 512};
  for (int r = 2; r <= 4; ++r) {
    // Points at the double-precision floor carry no order information.
    std::vector<int> used;
    std::vector<double> errs;
    for (int n : ns) {
      const double e = face_error_linf(r, n);
      if (e > kRoundoffFloor) used.push_back(n), errs.push_back(e);
    }
    ASSERT_GE(used.size(), 3u);
    const double p = slope(used, errs);
    EXPECT_NEAR(p, 2 * r - 1, 0.3) << "r=" << r;
  }
}

TEST(WenoFaceValues, LinearWeightLimitReachesDesignOrder) {
  // A huge epsilon freezes the weights at d, isolating the interpolation
  // tables from the nonlinear weighting.
  const std::vector<int> ns{32, 64, 128, 256};
  for (int r = 2; r <= 4; ++r) {
    std::vector<int> used;
    std::vector<double> errs;
    for (int n : ns) {
      const double e = face_error_linf(r, n, WenoParams{1e6, 2});
      if (e > kRoundoffFloor) used.push_back(n), errs.push_back(e);
    }
    ASSERT_GE(used.size(), 3u);
    EXPECT_NEAR(slope(used, errs), 2 * r - 1, 0.3) << "r=" << r;
  }
}

TEST(WenoFaceValues, ScaleEquivariance) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> lam(0.5, 2.0), mu(-3.0, 3.0);
  for (int r = 2; r <= 4; ++r)
    for (int trial = 0; trial < 300; ++trial) {
      auto s = random_stencil(rng, 2 * r - 1);
      const double l = (trial % 2 ? -1.0 : 1.0) * lam(rng), m = mu(rng);
      const FacePair a = weno_face_values(s, WenoOrder{r}, WenoParams{});
      for (auto& v : s) v = l * v + m;
      const FacePair b = weno_face_values(s, WenoOrder{r}, WenoParams{});
      EXPECT_NEAR(b.left, l * a.left + m, 1e-10);
      EXPECT_NEAR(b.right, l * a.right + m, 1e-10);
    }
}

TEST(WenoFaceValues, LeftRightSymmetryByReversal) {
  std::mt19937_64 rng(23);
  for (int r = 2; r <= 4; ++r)
    for (int trial = 0; trial < 100; ++trial) {
      auto s = random_stencil(rng, 2 * r - 1);
      const FacePair a = weno_face_values(s, WenoOrder{r}, WenoParams{});
      std::reverse(s.begin(), s.end());
      const FacePair b = weno_face_values(s, WenoOrder{r}, WenoParams{});
      EXPECT_NEAR(a.left, b.right, 1e-14);
      EXPECT_NEAR(a.right, b.left, 1e-14);
    }
}

TEST(WenoFaceValues, ResultInConvexHullOfSubstencils) {
  std::mt19937_64 rng(29);
  for (int r = 2; r <= 4; ++r)
    for (int trial = 0; trial < 200; ++trial) {
      const auto s = random_stencil(rng, 2 * r - 1);
      const auto q = substencil_face_values(s, WenoOrder{r});
      const double lo = *std::min_element(q.begin(), q.begin() + r);
      const double hi = *std::max_element(q.begin(), q.begin() + r);
      const FacePair f = weno_face_values(s, WenoOrder{r}, WenoParams{});
      EXPECT_GE(f.left, lo - 1e-14);
      EXPECT_LE(f.left, hi + 1e-14);
    }
}

TEST(WenoFaceValues, EnoSuppressionAtJump) {
  // Smooth (linear) data left of a unit jump: every substencil that crosses
  // the jump keeps less than 1e-3 of its optimal weight.
  for (int r = 2; r <= 4; ++r) {
    const int w = 2 * r - 1;
    for (int jump_at = r; jump_at < w; ++jump_at) {
      std::vector<double> s(w);
      for (int m = 0; m < w; ++m) s[m] = 0.01 * m + (m >= jump_at ? 1.0 : 0.0);
      const auto b = smoothness_indicators(s, WenoOrder{r});
      const auto wz = wenoz_weights(b, WenoOrder{r}, WenoParams{});
      const auto d = optimal_weights(WenoOrder{r});
      for (int k = 0; k < r; ++k) {
        const bool crosses = k + r - 1 >= jump_at;
        if (crosses) EXPECT_LT(wz[k], 1e-3 * d[k]) << "r=" << r << " jump=" << jump_at << " k=" << k;
      }
    }
  }
}

TEST(WenoJs, AgreesWithZOnSmoothData) {
  const std::vector<double> s{1.0, 1.1, 1.2, 1.3, 1.4};
  const auto b = smoothness_indicators(s, WenoOrder{3});
  const auto js = detail::weno_js_weights(b, WenoOrder{3}, WenoParams{1e-6, 2});
  const auto d = optimal_weights(WenoOrder{3});
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(js[k], d[k], 1e-9);
}

TEST(Ppm, ConstantAndLinear) {
  const FacePair c = ppm_face_values(std::vector<double>{3, 3, 3, 3, 3});
  EXPECT_DOUBLE_EQ(c.left, 3.0);
  EXPECT_DOUBLE_EQ(c.right, 3.0);
  const FacePair l = ppm_face_values(std::vector<double>{1, 2, 3, 4, 5});
  EXPECT_NEAR(l.left, 3.5, 1e-14);
  EXPECT_NEAR(l.right, 2.5, 1e-14);
}

TEST(Ppm, UnlimitedInterfaceFormula) {
  const std::vector<double> s{0.3, -1.2, 0.7, 2.0, 0.1};
  const FacePair f = ppm_face_values(s, false);
  EXPECT_NEAR(f.left, 7.0 / 12.0 * (0.7 + 2.0) - 1.0 / 12.0 * (-1.2 + 0.1), 1e-15);
  EXPECT_NEAR(f.right, 7.0 / 12.0 * (-1.2 + 0.7) - 1.0 / 12.0 * (0.3 + 2.0), 1e-15);
}

TEST(Ppm, StepStaysBounded) {
  for (const auto& s : {std::vector<double>{0, 0, 0, 1, 1}, std::vector<double>{0, 0, 1, 1, 1},
                        std::vector<double>{1, 1, 0, 0, 0}, std::vector<double>{0, 1, 1, 1, 1}}) {
    const FacePair f = ppm_face_values(s);
    for (double v : {f.left, f.right}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    // no new extremum inside the cell: the parabola stays between its edges
    for (double xi = -0.5; xi <= 0.5; xi += 0.05) {
      const PointPair p = ppm_point_values(s, std::abs(xi));
      EXPECT_GE(std::min(p.minus, p.plus), -1e-14);
      EXPECT_LE(std::max(p.minus, p.plus), 1.0 + 1e-14);
    }
  }
}

TEST(Ppm, FourthOrderUnlimited) {
  const std::vector<int> ns{32, 64, 128, 256};
  std::vector<double> errs;
  for (int n : ns) {
    const double h = 2.0 * std::numbers::pi / n;
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      std::vector<double> s(5);
      for (int m = 0; m < 5; ++m) {
        const double a = (i + m - 2) * h;
        s[m] = (std::cos(a) - std::cos(a + h)) / h;
      }
      err = std::max(err, std::abs(ppm_face_values(s, false).left - std::sin((i + 1) * h)));
    }
    errs.push_back(err);
  }
  EXPECT_NEAR(slope(ns, errs), 4.0, 0.3);
}

TEST(PointRule, FaceRuleMatchesGenericConstruction) {
  for (int r = 2; r <= 4; ++r) {
    const PointRule& t = PointRule::face(r);
    const PointRule g = PointRule::compute(r, 0.5);
    for (int k = 0; k < r; ++k) {
      EXPECT_NEAR(t.linear[k], g.linear[k], 1e-13);
      for (int j = 0; j < r; ++j) EXPECT_NEAR(t.coeff[k][j], g.coeff[k][j], 1e-13);
    }
  }
}

TEST(PointRule, GaussLinearWeightsPositiveAndKnown) {
  const double x = 0.5 / std::sqrt(3.0);
  EXPECT_NEAR(PointRule::gauss(2).xi, x, 1e-15);
  EXPECT_NEAR(PointRule::gauss(2).linear[0], 0.5, 1e-13);
  EXPECT_NEAR(PointRule::gauss(2).linear[1], 0.5, 1e-13);
  // r=3 at +xi: d_0 = 7/36 - sqrt3/1080 ... is attached to the upwind side;
  // check positivity, symmetry sum and the middle weight 11/18.
  const auto& g3 = PointRule::gauss(3);
  EXPECT_NEAR(g3.linear[1], 11.0 / 18.0, 1e-12);
  EXPECT_NEAR(g3.linear[0] + g3.linear[2], 7.0 / 18.0, 1e-12);
  for (int r = 2; r <= 4; ++r) {
    double sum = 0.0;
    for (int k = 0; k < r; ++k) {
      EXPECT_GT(PointRule::gauss(r).linear[k], 0.0);
      sum += PointRule::gauss(r).linear[k];
    }
    EXPECT_NEAR(sum, 1.0, 1e-13);
  }
}

TEST(PointRule, GaussValuesExactOnPolynomials) {
  // Degree r-1 data is reproduced by every substencil, hence by any weights.
  for (int r = 2; r <= 4; ++r) {
    const int w = 2 * r - 1;
    auto anti = [&](double x) { return 0.5 * x * x + (r >= 3 ? -x * x * x / 3.0 : 0.0) + (r >= 4 ? x * x * x * x / 8 : 0.0); };
    auto f = [&](double x) { return x + (r >= 3 ? -x * x : 0.0) + (r >= 4 ? x * x * x / 2 : 0.0); };
    std::vector<double> s(w);
    for (int m = 0; m < w; ++m) {
      const double o = m - (r - 1);
      s[m] = anti(o + 0.5) - anti(o - 0.5);
    }
    const PointRule& g = PointRule::gauss(r);
    const PointPair p = weno_point_values(s, g, WenoParams{});
    EXPECT_NEAR(p.plus, f(g.xi), 1e-12) << r;
    EXPECT_NEAR(p.minus, f(-g.xi), 1e-12) << r;
  }
}

TEST(Reconstruct, InvalidInputs) {
  EXPECT_THROW(WenoOrder::from_order(4), std::invalid_argument);
  EXPECT_THROW((WenoParams{0.0, 2}.validate()), std::invalid_argument);
  EXPECT_THROW((WenoParams{1e-40, 0}.validate()), std::invalid_argument);
  EXPECT_THROW(smoothness_indicators(std::vector<double>{1, 2, 3}, WenoOrder{3}), std::invalid_argument);
}
