#include "fvbench/cases.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace fvbench {

void VortexParams::validate() const {
  if (!(length > 0.0) || !(circulation > 0.0) || !(radius_fraction > 0.0) || !(t_ref > 0.0) || !(p_ref > 0.0))
    throw std::invalid_argument("vortex parameters must be positive");
}

PrimitiveState ShuOsherParams::left_state(const GasModel& gas) const {
  return make_primitive(rho_left, {u_left, 0.0, 0.0}, p_left, gas);
}

PrimitiveState ShuOsherParams::right_state(double x, const GasModel& gas) const {
  return make_primitive(rho_mean + rho_amplitude * std::sin(wavenumber * x), {0.0, 0.0, 0.0}, p_right, gas);
}

void HitParams::validate() const {
  if (k0 < 1) throw std::invalid_argument("hit: k0 must be >= 1");
  if (!(mach_t0 > 0.0) || !(mach_t0 < 1.0)) throw std::invalid_argument("hit: mach_t0 must lie in (0, 1)");
  if (!(reynolds0 > 0.0) || !(t0 > 0.0) || !(p0 > 0.0) || !(cp > 0.0) || !(prandtl > 0.0))
    throw std::invalid_argument("hit: physical parameters must be positive");
  if (master_n < 4 * k0) throw std::invalid_argument("hit: master_n must be >= 4 k0");
}

// ---------------------------------------------------------------------------

PrimitiveState vortex_state(double x, double y, const VortexParams& p, const GasModel& gas) {
  const double xc = 0.5 * p.length, yc = 0.5 * p.length;
  const double rv = p.radius();
  const double dx = x - xc, dy = y - yc;
  const double r2 = dx * dx + dy * dy;
  const double g = std::exp(-r2 / (2.0 * rv * rv));
  // Psi = Gamma g; dPsi/dy = -Gamma dy g / rv^2
  const double dpsi_dx = -p.circulation * dx * g / (rv * rv);
  const double dpsi_dy = -p.circulation * dy * g / (rv * rv);
  const double c = std::sqrt(gas.gamma * gas.r_specific * p.t_ref);
  const double s = p.circulation / (c * rv);
  const double pressure = p.p_ref * std::exp(-0.5 * gas.gamma * s * s * g * g);
  PrimitiveState q;
  q.density = pressure / (gas.r_specific * p.t_ref);
  q.velocity = {p.u0 + dpsi_dy, p.u0 - dpsi_dx, 0.0};
  q.pressure = pressure;
  q.temperature = p.t_ref;
  return q;
}

ConservedField init_vortex(const CartesianGrid& grid, const VortexParams& p, const GasModel& gas,
                           int quadrature_points) {
  p.validate();
  if (grid.ndim() != 2) throw std::invalid_argument("vortex case needs a 2D grid");
  if (quadrature_points != 1 && quadrature_points != 3)
    throw std::invalid_argument("vortex quadrature_points must be 1 or 3");
  ConservedField f(grid);
  static const double gx[3] = {-std::sqrt(0.6) / 2.0, 0.0, std::sqrt(0.6) / 2.0};
  static const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  const double dx = grid.dx(0), dy = grid.dx(1);
  f.for_each_interior([&](int i, int j, int k) {
    const double xc = grid.center(0, i), yc = grid.center(1, j);
    if (quadrature_points == 1) {
      f.set_state(i, j, k, conserved_from_primitive(vortex_state(xc, yc, p, gas), gas));
      return;
    }
    ConservedState avg{0.0, {0.0, 0.0, 0.0}, 0.0};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double w = gw[a] * gw[b];
        const ConservedState u = conserved_from_primitive(vortex_state(xc + gx[a] * dx, yc + gx[b] * dy, p, gas), gas);
        avg.density += w * u.density;
        for (int t = 0; t < 3; ++t) avg.momentum[t] += w * u.momentum[t];
        avg.total_energy += w * u.total_energy;
      }
    f.set_state(i, j, k, avg);
  });
  return f;
}

ConservedField init_shu_osher(const CartesianGrid& grid, const ShuOsherParams& p, const GasModel& gas) {
  if (grid.ndim() != 1) throw std::invalid_argument("Shu-Osher case needs a 1D grid");
  CartesianGrid g = grid;
  const PrimitiveState left = p.left_state(gas);
  g.set_boundary(0, BoundarySpec{BoundaryKind::InflowOutflow, conserved_from_primitive(left, gas)});
  ConservedField f(g);
  f.for_each_interior([&](int i, int j, int k) {
    const double x = g.center(0, i);
    f.set_state(i, j, k, conserved_from_primitive(x < p.jump ? left : p.right_state(x, gas), gas));
  });
  return f;
}

// ---------------------------------------------------------------------------

VectorField3 solenoidal_spectrum_field(int n, int k0, std::uint64_t seed) {
  if (n < 4 * k0 || n % 2 != 0) throw std::invalid_argument("solenoidal field needs even n >= 4 k0");
  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorField3 u;
  std::array<std::vector<fft::Complex>, 3> spec;
  for (int c = 0; c < 3; ++c) {
    u[c].resize(total);
    for (auto& v : u[c]) v = normal(rng);
    fft::forward(n, u[c].data(), spec[c]);
  }
  const int nh = n / 2 + 1;
  for (int kz = 0; kz < n; ++kz)
    for (int ky = 0; ky < n; ++ky)
      for (int kx = 0; kx < nh; ++kx) {
        const std::size_t idx = (static_cast<std::size_t>(kz) * n + ky) * nh + kx;
        const double k[3] = {static_cast<double>(kx), static_cast<double>(fft::wavenumber(ky, n)),
                             static_cast<double>(fft::wavenumber(kz, n))};
        const double kk = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
        const bool nyquist = kx == n / 2 || ky == n / 2 || kz == n / 2;
        if (kk == 0.0 || nyquist) {
          for (auto& s : spec) s[idx] = 0.0;
          continue;
        }
        const double amp = kk * std::exp(-(kk / k0) * (kk / k0));
        fft::Complex dot = 0.0;
        for (int c = 0; c < 3; ++c) dot += k[c] / kk * spec[c][idx];
        for (int c = 0; c < 3; ++c) spec[c][idx] = amp * (spec[c][idx] - k[c] / kk * dot);
      }
  for (int c = 0; c < 3; ++c) {
    fft::backward(n, spec[c], u[c].data());
    for (auto& v : u[c]) v /= static_cast<double>(total);
  }
  return u;
}

VectorField3 fourier_truncate(const VectorField3& master, int master_n, int n) {
  if (n > master_n || n % 2 != 0) throw std::invalid_argument("fourier_truncate: n must be even and <= master size");
  if (n == master_n) return master;
  const int mh = master_n / 2 + 1, nh = n / 2 + 1;
  const double scale = 1.0 / (static_cast<double>(master_n) * master_n * master_n);
  VectorField3 out;
  for (int c = 0; c < 3; ++c) {
    std::vector<fft::Complex> ms, ns(fft::spectral_size(n), 0.0);
    fft::forward(master_n, master[c].data(), ms);
    for (int kz = 0; kz < n; ++kz)
      for (int ky = 0; ky < n; ++ky)
        for (int kx = 0; kx < nh; ++kx) {
          const int wy = fft::wavenumber(ky, n), wz = fft::wavenumber(kz, n);
          if (kx == n / 2 || wy == n / 2 || wz == n / 2) continue;
          const int my = (wy + master_n) % master_n, mz = (wz + master_n) % master_n;
          ns[(static_cast<std::size_t>(kz) * n + ky) * nh + kx] =
              scale * ms[(static_cast<std::size_t>(mz) * master_n + my) * mh + kx];
        }
    out[c].resize(static_cast<std::size_t>(n) * n * n);
    fft::backward(n, ns, out[c].data());
  }
  return out;
}

GasModel hit_gas(const HitParams& p) { return GasModel::from_cp(1.4, p.cp, p.prandtl); }

HitInit init_hit(const CartesianGrid& grid, const HitParams& p, const GasModel& gas) {
  p.validate();
  const int n = grid.cells(0);
  if (grid.ndim() != 3 || grid.cells(1) != n || grid.cells(2) != n)
    throw std::invalid_argument("hit case needs a cubic 3D grid");
  if (n / 2 <= p.k0) throw std::invalid_argument("hit: grid of " + std::to_string(n) + " cells cannot hold k0");
  for (int d = 0; d < 3; ++d)
    if (grid.boundary(d).kind != BoundaryKind::Periodic) throw std::invalid_argument("hit case needs periodic grid");

  const int master_n = std::max(p.master_n, n);
  VectorField3 u = fourier_truncate(solenoidal_spectrum_field(master_n, p.k0, p.seed), master_n, n);

  HitInit out;
  out.c0 = std::sqrt(gas.gamma * gas.r_specific * p.t0);
  out.u_rms = p.mach_t0 * out.c0 / std::sqrt(3.0);
  out.rho0 = p.p0 / (gas.r_specific * p.t0);
  out.tau_eddy = p.psi0() / out.u_rms;
  const double eta = out.rho0 * p.psi0() * out.u_rms / p.reynolds0;
  out.coeffs.shear_viscosity = eta;
  out.coeffs.bulk_viscosity = 0.0;
  out.coeffs.conductivity = eta * gas.cp / gas.prandtl;

  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  double sum = 0.0;
  for (int c = 0; c < 3; ++c)
    for (double v : u[c]) sum += v * v;
  const double scale = out.u_rms / std::sqrt(sum / (3.0 * total));

  out.field = ConservedField(grid);
  ConservedField& f = out.field;
  const double rho_e = p.p0 / (gas.gamma - 1.0);
  std::size_t m = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i, ++m) {
        ConservedState s;
        s.density = out.rho0;
        double ke = 0.0;
        for (int c = 0; c < 3; ++c) {
          const double v = scale * u[c][m];
          s.momentum[c] = out.rho0 * v;
          ke += v * v;
        }
        s.total_energy = rho_e + 0.5 * out.rho0 * ke;
        f.set_state(i, j, k, s);
      }
  return out;
}

}  // namespace fvbench
