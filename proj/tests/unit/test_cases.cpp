#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fvbench/analysis.hpp"
#include "fvbench/cases.hpp"

using namespace fvbench;

namespace {
const GasModel kGas = GasModel::standard();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double correlation(const VectorField3& a, const VectorField3& b) {
  double ab = 0, aa = 0, bb = 0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < a[c].size(); ++i) {
      ab += a[c][i] * b[c][i];
      aa += a[c][i] * a[c][i];
      bb += b[c][i] * b[c][i];
    }
  return ab / std::sqrt(aa * bb);
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}
}  // namespace

TEST(Vortex, CenterVelocityIsAdvection) {
  const VortexParams p;
  const PrimitiveState s = vortex_state(p.length / 2, p.length / 2, p, kGas);
  EXPECT_NEAR(s.velocity[0], 100.0, 1e-12);
  EXPECT_NEAR(s.velocity[1], 100.0, 1e-12);
  EXPECT_NEAR(s.temperature, 300.0, 1e-10);
}

TEST(Vortex, FarFieldPressureAndPressureDip) {
  const VortexParams p;
  const double rv = p.radius();
  const double r = 5.0 * rv;
  const PrimitiveState far = vortex_state(p.length / 2 + r / std::sqrt(2.0), p.length / 2 + r / std::sqrt(2.0), p, kGas);
  EXPECT_NEAR(far.pressure, p.p_ref, 1e-10 * p.p_ref);
  // centre: p_ref exp(-(gamma/2) (Gamma/(c Rv))^2), with c the ambient sound speed
  const double c = std::sqrt(1.4 * kGas.r_specific * p.t_ref);
  const double expected = p.p_ref * std::exp(-0.7 * std::pow(p.circulation / (c * rv), 2));
  EXPECT_NEAR(vortex_state(p.length / 2, p.length / 2, p, kGas).pressure, expected, 1e-9 * expected);
  EXPECT_NEAR(far.density, p.p_ref / (kGas.r_specific * p.t_ref), 1e-10);
}

TEST(Vortex, VelocityMatchesStreamFunctionDerivatives) {
  const VortexParams p;
  const double rv = p.radius(), xc = p.length / 2, yc = p.length / 2;
  for (double dx : {-0.7e-3, 0.0, 0.4e-3})
    for (double dy : {-1.1e-3, 0.3e-3, 2e-3}) {
      const double r2 = dx * dx + dy * dy;
      const double psi = p.circulation * std::exp(-r2 / (2 * rv * rv));
      const double dpsi_dx = -dx / (rv * rv) * psi, dpsi_dy = -dy / (rv * rv) * psi;
      const PrimitiveState s = vortex_state(xc + dx, yc + dy, p, kGas);
      EXPECT_NEAR(s.velocity[0], p.u0 + dpsi_dy, 1e-10);
      EXPECT_NEAR(s.velocity[1], p.u0 - dpsi_dx, 1e-10);
    }
}

TEST(Vortex, OddSymmetryAboutCenter) {
  const VortexParams p;
  const double xc = p.length / 2, yc = p.length / 2;
  for (double d : {1e-4, 5e-4, 1.5e-3}) {
    EXPECT_NEAR(vortex_state(xc, yc + d, p, kGas).velocity[0] - p.u0, -(vortex_state(xc, yc - d, p, kGas).velocity[0] - p.u0), 1e-12);
    EXPECT_NEAR(vortex_state(xc + d, yc, p, kGas).velocity[1] - p.u0, -(vortex_state(xc - d, yc, p, kGas).velocity[1] - p.u0), 1e-12);
  }
}

TEST(Vortex, NetPerturbationMomentumVanishes) {
  const VortexParams p;
  for (int q : {1, 3}) {
    const ConservedField f = init_vortex(CartesianGrid::uniform(2, 64, 0.0, p.length), p, kGas, q);
    double mx = 0.0, mass = 0.0;
    f.for_each_interior([&](int i, int j, int k) {
      mx += f.at(1, i, j, k);
      mass += f.at(0, i, j, k);
    });
    EXPECT_NEAR(mx, p.u0 * mass, 1e-8 * p.u0 * mass) << q;
  }
}

TEST(Vortex, GaussInitialisationIsCellAverage) {
  // A 3x3 Gauss average differs from the centre value by O(dx^2).
  const VortexParams p;
  std::vector<double> diffs;
  for (int n : {32, 64}) {
    const CartesianGrid g = CartesianGrid::uniform(2, n, 0.0, p.length);
    const ConservedField a = init_vortex(g, p, kGas, 1), b = init_vortex(g, p, kGas, 3);
    diffs.push_back(l1_error(a, b, Quantity::VelocityX, kGas));
  }
  EXPECT_NEAR(std::log2(diffs[0] / diffs[1]), 2.0, 0.25);
  EXPECT_THROW(init_vortex(CartesianGrid::uniform(2, 8, 0.0, p.length), p, kGas, 2), std::invalid_argument);
}

TEST(ShuOsher, InitialStates) {
  const ShuOsherParams p;
  const ConservedField f = init_shu_osher(CartesianGrid::uniform(1, 10, 0.0, 10.0), p, kGas);
  const PrimitiveState left = primitive_from_conserved(f.state(0, 0, 0), kGas);  // centre x = 0.5
  EXPECT_NEAR(left.density, 3.857143, 1e-14);
  EXPECT_NEAR(left.velocity[0], 2.629369, 1e-14);
  EXPECT_NEAR(left.pressure, 10.3333, 1e-12);
  EXPECT_NEAR(p.right_state(std::numbers::pi / 10, kGas).density, 1.2, 1e-15);
  EXPECT_NEAR(p.right_state(2 * std::numbers::pi / 5, kGas).density, 1.0, 1e-15);
  EXPECT_EQ(f.grid().boundary(0).kind, BoundaryKind::InflowOutflow);
}

TEST(ShuOsher, PiecewiseInvariants) {
  const ShuOsherParams p;
  const int n = 512;
  const ConservedField f = init_shu_osher(CartesianGrid::uniform(1, n, 0.0, 10.0), p, kGas);
  const ConservedState first = f.state(0, 0, 0);
  for (int i = 0; i < n; ++i) {
    const double x = f.grid().center(0, i);
    if (x < 1.0) {
      EXPECT_EQ(f.at(0, i), first.density);
      EXPECT_EQ(f.at(2, i), first.total_energy);
    } else {
      EXPECT_GE(f.at(0, i), 0.8);
      EXPECT_LE(f.at(0, i), 1.2);
      EXPECT_EQ(f.at(1, i), 0.0);
    }
  }
}

TEST(SolenoidalField, ZeroMeanAndDivergenceFree) {
  const int n = 32;
  const VectorField3 u = solenoidal_spectrum_field(n, 4, 7);
  for (int c = 0; c < 3; ++c) {
    double mean = 0.0;
    for (double v : u[c]) mean += v;
    EXPECT_NEAR(mean / u[c].size(), 0.0, 1e-12 * max_abs(u[c]));
  }
  const double scale = max_abs(u[0]) * n / 2;
  EXPECT_LT(max_abs(divergence_spectral(u, n, kTwoPi)), 1e-10 * scale);
}

TEST(SolenoidalField, ReprojectionIsIdempotent) {
  const int n = 16;
  const VectorField3 u = solenoidal_spectrum_field(n, 2, 3);
  // Re-projection through truncation at the same size: nothing changes.
  const VectorField3 v = fourier_truncate(u, n, n);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < u[c].size(); ++i) EXPECT_NEAR(u[c][i], v[c][i], 1e-13 * max_abs(u[c]));
}

TEST(SolenoidalField, DeterministicAndSeedDependent) {
  const VectorField3 a = solenoidal_spectrum_field(16, 4, 11), b = solenoidal_spectrum_field(16, 4, 11);
  const VectorField3 c = solenoidal_spectrum_field(16, 4, 12);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(a[k], b[k]);
  EXPECT_LT(std::abs(correlation(a, c)), 0.1);
}

TEST(SolenoidalField, ShellSpectrumFollowsTargetShape) {
  const int n = 64, k0 = 4;
  const SpectrumBins s = shell_spectrum(solenoidal_spectrum_field(n, k0, 20200101), n);
  double realized = 0.0, target = 0.0;
  auto shape = [&](int k) { return std::pow(k, 4) * std::exp(-2.0 * std::pow(static_cast<double>(k) / k0, 2)); };
  for (int k = 1; k <= n / 2; ++k) {
    realized += s.values[k];
    target += shape(k);
  }
  for (int k = 2; k <= 2 * k0; ++k) {
    const double ratio = s.values[k] / realized / (shape(k) / target);
    EXPECT_GE(ratio, 0.5) << k;
    EXPECT_LE(ratio, 2.0) << k;
  }
}

TEST(Hit, DerivedParameters) {
  const HitParams p;
  const GasModel gas = hit_gas(p);
  const HitInit h = init_hit(CartesianGrid::uniform(3, 32, 0.0, kTwoPi), p, gas);
  const double r = 1173.0 * 0.4 / 1.4;
  const double c0 = std::sqrt(1.4 * r * 1200.0);
  const double urms = 0.6 * c0 / std::sqrt(3.0);
  const double rho0 = 101325.0 / (r * 1200.0);
  EXPECT_NEAR(h.c0, c0, 1e-9 * c0);
  EXPECT_NEAR(h.u_rms, urms, 1e-9 * urms);
  EXPECT_NEAR(h.rho0, rho0, 1e-12 * rho0);
  const double eta = rho0 * 0.5 * urms / 100.0;
  EXPECT_NEAR(h.coeffs.shear_viscosity, eta, 1e-12 * eta);
  EXPECT_NEAR(h.coeffs.conductivity, eta * 1173.0 / 0.71, 1e-12 * eta * 1173.0 / 0.71);
  EXPECT_EQ(h.coeffs.bulk_viscosity, 0.0);
  EXPECT_NEAR(h.tau_eddy, 0.5 / urms, 1e-12);
}

TEST(Hit, RealizedFieldProperties) {
  const HitParams p;
  const GasModel gas = hit_gas(p);
  const int n = 32;
  const HitInit h = init_hit(CartesianGrid::uniform(3, n, 0.0, kTwoPi), p, gas);
  EXPECT_NEAR(kinetic_energy(h.field), 1.5 * h.u_rms * h.u_rms, 1e-10 * h.u_rms * h.u_rms);
  const VectorField3 u = velocity_field(h.field);
  EXPECT_LT(max_abs(divergence_spectral(u, n, kTwoPi)), 1e-10 * (n / 2) * h.u_rms);
  h.field.for_each_interior([&](int i, int j, int k) {
    EXPECT_EQ(h.field.at(0, i, j, k), h.rho0);
    EXPECT_NEAR(primitive_from_conserved(h.field.state(i, j, k), gas).pressure, p.p0, 1e-9 * p.p0);
  });
  const SpectrumBins s = shell_spectrum(u, n);
  EXPECT_EQ(std::max_element(s.values.begin(), s.values.end()) - s.values.begin(), 4);
  // Box truncation leaves only the far tail of the spectrum in the corners.
  EXPECT_LT(s.corner_energy, 1e-6 * s.total());
}

TEST(Hit, SharedMasterFieldAcrossResolutions) {
  HitParams p;
  p.master_n = 64;
  const GasModel gas = hit_gas(p);
  const HitInit a = init_hit(CartesianGrid::uniform(3, 32, 0.0, kTwoPi), p, gas);
  const HitInit b = init_hit(CartesianGrid::uniform(3, 32, 0.0, kTwoPi), p, gas);
  EXPECT_EQ(a.field.raw()[100], b.field.raw()[100]);
  const HitInit fine = init_hit(CartesianGrid::uniform(3, 64, 0.0, kTwoPi), p, gas);
  // The coarse field is the band-limited truncation of the fine one: low
  // shells agree up to the common rescaling.
  const SpectrumBins sa = shell_spectrum(velocity_field(a.field), 32), sf = shell_spectrum(velocity_field(fine.field), 64);
  const double ratio = sa.values[2] / sf.values[2];
  for (int k = 1; k <= 8; ++k) EXPECT_NEAR(sa.values[k] / sf.values[k], ratio, 1e-9 * ratio) << k;
  p.seed += 1;
  const HitInit c = init_hit(CartesianGrid::uniform(3, 32, 0.0, kTwoPi), p, gas);
  EXPECT_LT(std::abs(correlation(velocity_field(a.field), velocity_field(c.field))), 0.1);
}

TEST(Hit, RejectsGridWithoutEnergyPeak) {
  const HitParams p;
  EXPECT_THROW(init_hit(CartesianGrid::uniform(3, 8, 0.0, kTwoPi), p, hit_gas(p)), std::invalid_argument);
}
