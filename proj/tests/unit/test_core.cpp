#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fvbench/core.hpp"
#include "fvbench/grid.hpp"

using namespace fvbench;

namespace {
GasModel unit_gas() { return GasModel::from_cp(1.4, 1173.0, 0.71); }
}  // namespace

TEST(GasModel, GasConstantFromCp) {
  const GasModel g = GasModel::standard();
  EXPECT_NEAR(g.r_specific, 1173.0 * 0.4 / 1.4, 1e-12);
  EXPECT_NEAR(g.cv, g.cp - g.r_specific, 1e-12);
  EXPECT_NEAR(g.cp / g.cv, 1.4, 1e-14);
  EXPECT_THROW(GasModel::from_cp(1.0, 1173.0).validate(), std::invalid_argument);
  EXPECT_THROW(GasModel::from_cp(1.4, -1.0).validate(), std::invalid_argument);
}

TEST(Conversions, RestStateAlgebra) {
  const GasModel g = unit_gas();
  const PrimitiveState p = primitive_from_conserved(ConservedState{1.0, {0, 0, 0}, 2.5}, g);
  EXPECT_NEAR(p.density, 1.0, 1e-15);
  EXPECT_NEAR(p.pressure, 1.0, 1e-15);
  EXPECT_EQ(p.velocity[0], 0.0);
  const ConservedState c = conserved_from_primitive(make_primitive(1.0, {0, 0, 0}, 1.0, g), g);
  EXPECT_NEAR(c.total_energy, 2.5, 1e-15);
}

TEST(Conversions, ShuOsherLeftStateRoundTrip) {
  const GasModel g = unit_gas();
  const double rho = 3.857143, u = 2.629369, p = 10.3333;
  const ConservedState c{rho, {rho * u, 0, 0}, p / 0.4 + 0.5 * rho * u * u};
  const PrimitiveState q = primitive_from_conserved(c, g);
  EXPECT_NEAR(q.density, rho, 1e-14 * rho);
  EXPECT_NEAR(q.velocity[0], u, 1e-14 * u);
  EXPECT_NEAR(q.pressure, p, 1e-13 * p);
}

TEST(Conversions, ShuOsherRightStateAtPeak) {
  const GasModel g = unit_gas();
  const double x = M_PI / 10.0;
  const double rho = 1.0 + 0.2 * std::sin(5.0 * x);
  EXPECT_NEAR(rho, 1.2, 1e-15);
  const ConservedState c = conserved_from_primitive(make_primitive(rho, {0, 0, 0}, 1.0, g), g);
  EXPECT_EQ(c.momentum[0], 0.0);
  EXPECT_NEAR(c.total_energy, 2.5, 1e-15);
}

TEST(Conversions, RandomRoundTripAndEos) {
  const GasModel g = unit_gas();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> rho(0.01, 10.0), vel(-500.0, 500.0), pr(1e2, 1e6);
  for (int n = 0; n < 10000; ++n) {
    const PrimitiveState p = make_primitive(rho(rng), {vel(rng), vel(rng), vel(rng)}, pr(rng), g);
    const ConservedState c = conserved_from_primitive(p, g);
    const ConservedState c2 = conserved_from_primitive(primitive_from_conserved(c, g), g);
    EXPECT_NEAR(c2.density, c.density, 1e-14 * c.density);
    for (int d = 0; d < 3; ++d) EXPECT_NEAR(c2.momentum[d], c.momentum[d], 1e-13 * (1.0 + std::abs(c.momentum[d])));
    EXPECT_NEAR(c2.total_energy, c.total_energy, 1e-14 * c.total_energy);
    const PrimitiveState q = primitive_from_conserved(c, g);
    EXPECT_NEAR(q.pressure, q.density * g.r_specific * q.temperature, 1e-12 * q.pressure);
    const double ke = 0.5 * (c.momentum[0] * c.momentum[0] + c.momentum[1] * c.momentum[1] +
                             c.momentum[2] * c.momentum[2]) / c.density;
    const double e = (c.total_energy - ke) / c.density;
    EXPECT_NEAR(e, q.pressure / (0.4 * q.density), 1e-9 * e);
  }
}

TEST(Conversions, DegenerateStatesThrow) {
  const GasModel g = unit_gas();
  EXPECT_THROW(primitive_from_conserved(ConservedState{0.0, {0, 0, 0}, 1.0}, g), StateError);
  EXPECT_THROW(primitive_from_conserved(ConservedState{-1.0, {0, 0, 0}, 1.0}, g), StateError);
  EXPECT_THROW(primitive_from_conserved(ConservedState{1.0, {2.0, 0, 0}, 1.0}, g), StateError);
  EXPECT_THROW(primitive_from_conserved(ConservedState{NAN, {0, 0, 0}, 1.0}, g), StateError);
  EXPECT_THROW(conserved_from_primitive(PrimitiveState{1.0, {0, 0, 0}, -1.0, 0.0}, g), StateError);
  EXPECT_THROW(conserved_from_primitive(PrimitiveState{0.0, {0, 0, 0}, 1.0, 0.0}, g), StateError);
}

TEST(SoundSpeed, Algebra) {
  const GasModel g = unit_gas();
  EXPECT_NEAR(sound_speed(make_primitive(1.0, {0, 0, 0}, 1.0, g), g), std::sqrt(1.4), 1e-15);
  EXPECT_NEAR(sound_speed(make_primitive(1.0, {0, 0, 0}, 1.4, g), g), 1.4, 1e-15);
  // c0 = sqrt(gamma r T0) at the turbulence initial temperature
  const double r = g.r_specific;
  const double p = 101325.0, t0 = 1200.0;
  const PrimitiveState s = make_primitive(p / (r * t0), {0, 0, 0}, p, g);
  EXPECT_NEAR(sound_speed(s, g), std::sqrt(1.4 * r * t0), 1e-10);
  EXPECT_NEAR(sound_speed(s, g), 750.36, 0.01);
}

TEST(Grid, GeometryAndIndexing) {
  const CartesianGrid g = CartesianGrid::uniform(2, 8, 0.0, 2.0, 3);
  EXPECT_EQ(g.padded(0), 14);
  EXPECT_EQ(g.padded(2), 1);
  EXPECT_DOUBLE_EQ(g.dx(1), 0.25);
  EXPECT_DOUBLE_EQ(g.center(0, 0), 0.125);
  EXPECT_DOUBLE_EQ(g.cell_volume(), 0.0625);
  EXPECT_EQ(g.interior_count(), 64u);
  ConservedField f(g);
  EXPECT_EQ(f.ncomp(), 4);
  EXPECT_EQ(f.index(-3, -3), 0u);
  EXPECT_EQ(f.stride(1), 14u);
  f.at(0, 7, 7) = 5.0;
  EXPECT_EQ(f.component(0)[f.index(7, 7)], 5.0);
}

TEST(Grid, IntegralAndStateAccess) {
  const CartesianGrid g = CartesianGrid::uniform(1, 10, 0.0, 1.0);
  ConservedField f(g);
  for (int i = -4; i < 14; ++i) f.set_state(i, 0, 0, ConservedState{i < 0 || i >= 10 ? 100.0 : 2.0, {0, 0, 0}, 5.0});
  EXPECT_NEAR(f.integral(0), 2.0, 1e-15);  // ghosts excluded
  const ConservedState s = f.state(3, 0, 0);
  EXPECT_EQ(s.total_energy, 5.0);
}

TEST(Grid, CheckInteriorNamesCell) {
  const GasModel g = unit_gas();
  ConservedField f(CartesianGrid::uniform(1, 4, 0.0, 1.0));
  for (int i = 0; i < 4; ++i) f.set_state(i, 0, 0, ConservedState{1.0, {0, 0, 0}, 2.5});
  EXPECT_NO_THROW(f.check_interior(g, "test"));
  f.set_state(2, 0, 0, ConservedState{-1.0, {0, 0, 0}, 2.5});
  try {
    f.check_interior(g, "test");
    FAIL();
  } catch (const StateError& e) {
    EXPECT_NE(std::string(e.what()).find("(2, 0, 0)"), std::string::npos);
  }
}
