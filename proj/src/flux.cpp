#include "fvbench/flux.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fvbench {

FluxVector& FluxVector::operator+=(const FluxVector& o) {
  mass += o.mass;
  for (int d = 0; d < 3; ++d) momentum[d] += o.momentum[d];
  energy += o.energy;
  return *this;
}

FluxVector& FluxVector::operator*=(double s) {
  mass *= s;
  for (auto& m : momentum) m *= s;
  energy *= s;
  return *this;
}

namespace {

double total_energy(const PrimitiveState& q, const GasModel& gas) {
  const auto& u = q.velocity;
  return q.pressure / (gas.gamma - 1.0) + 0.5 * q.density * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
}

void check_flux(const FluxVector& f, const PrimitiveState& l, const PrimitiveState& r) {
  const bool ok = std::isfinite(f.mass) && std::isfinite(f.momentum[0]) && std::isfinite(f.momentum[1]) &&
                  std::isfinite(f.momentum[2]) && std::isfinite(f.energy);
  if (!ok) throw StateError("non-finite face flux between " + describe(l) + " and " + describe(r));
}

}  // namespace

FluxVector physical_flux(const PrimitiveState& q, int axis, const GasModel& gas) {
  const double un = q.velocity[axis];
  const double mass = q.density * un;
  FluxVector f;
  f.mass = mass;
  f.momentum = {mass * q.velocity[0], mass * q.velocity[1], mass * q.velocity[2]};
  f.momentum[axis] += q.pressure;
  f.energy = (total_energy(q, gas) + q.pressure) * un;
  return f;
}

FluxVector hllc_flux(const PrimitiveState& left, const PrimitiveState& right, int axis, const GasModel& gas) {
  const double gm1 = gas.gamma - 1.0;
  const double rl = left.density, rr = right.density;
  const double pl = left.pressure, pr = right.pressure;
  const auto& vl = left.velocity;
  const auto& vr = right.velocity;
  const double ul = vl[axis], ur = vr[axis];
  const double cl = std::sqrt(gas.gamma * pl / rl);
  const double cr = std::sqrt(gas.gamma * pr / rr);
  const double el = total_energy(left, gas), er = total_energy(right, gas);

  // Roe averages for the Einfeldt-type bounds.
  const double sl_w = std::sqrt(rl), sr_w = std::sqrt(rr);
  const double inv_w = 1.0 / (sl_w + sr_w);
  double vel2 = 0.0;
  double u_roe = 0.0;
  for (int d = 0; d < 3; ++d) {
    const double v = (sl_w * vl[d] + sr_w * vr[d]) * inv_w;
    vel2 += v * v;
    if (d == axis) u_roe = v;
  }
  const double h_roe = (sl_w * (el + pl) / rl + sr_w * (er + pr) / rr) * inv_w;
  const double c_roe = std::sqrt(std::max(gm1 * (h_roe - 0.5 * vel2), 0.0));

  const double s_l = std::min(ul - cl, u_roe - c_roe);
  const double s_r = std::max(ur + cr, u_roe + c_roe);
  if (!std::isfinite(s_l) || !std::isfinite(s_r))
    throw StateError("HLLC wave-speed estimate failed between " + describe(left) + " and " + describe(right));

  if (s_l >= 0.0) return physical_flux(left, axis, gas);
  if (s_r <= 0.0) return physical_flux(right, axis, gas);

  const double ml = rl * (s_l - ul), mr = rr * (s_r - ur);
  const double s_star = (pr - pl + ul * ml - ur * mr) / (ml - mr);

  const bool use_left = s_star >= 0.0;
  const PrimitiveState& q = use_left ? left : right;
  const double s_k = use_left ? s_l : s_r;
  const double e_k = use_left ? el : er;
  const double u_k = q.velocity[axis];
  const double rho_k = q.density;

  FluxVector f = physical_flux(q, axis, gas);
  const double factor = rho_k * (s_k - u_k) / (s_k - s_star);
  // U*_K - U_K, scaled by S_K.
  const double d_mass = factor - rho_k;
  f.mass += s_k * d_mass;
  for (int d = 0; d < 3; ++d) {
    const double star = factor * (d == axis ? s_star : q.velocity[d]);
    f.momentum[d] += s_k * (star - rho_k * q.velocity[d]);
  }
  const double e_star = factor * (e_k / rho_k + (s_star - u_k) * (s_star + q.pressure / (rho_k * (s_k - u_k))));
  f.energy += s_k * (e_star - e_k);
  check_flux(f, left, right);
  return f;
}

FluxVector rusanov_flux(const PrimitiveState& left, const PrimitiveState& right, int axis, const GasModel& gas) {
  const double cl = std::sqrt(gas.gamma * left.pressure / left.density);
  const double cr = std::sqrt(gas.gamma * right.pressure / right.density);
  const double smax = std::max(std::abs(left.velocity[axis]) + cl, std::abs(right.velocity[axis]) + cr);
  FluxVector fl = physical_flux(left, axis, gas);
  const FluxVector fr = physical_flux(right, axis, gas);
  fl += fr;
  fl *= 0.5;
  fl.mass -= 0.5 * smax * (right.density - left.density);
  for (int d = 0; d < 3; ++d)
    fl.momentum[d] -= 0.5 * smax * (right.density * right.velocity[d] - left.density * left.velocity[d]);
  fl.energy -= 0.5 * smax * (total_energy(right, gas) - total_energy(left, gas));
  check_flux(fl, left, right);
  return fl;
}

namespace {

// Toro's pressure function for one side and its derivative.
void pressure_function(double p, const PrimitiveState& q, double c, const GasModel& gas, double& f, double& df) {
  const double g = gas.gamma;
  if (p > q.pressure) {
    const double a = 2.0 / ((g + 1.0) * q.density);
    const double b = (g - 1.0) / (g + 1.0) * q.pressure;
    const double s = std::sqrt(a / (p + b));
    f = (p - q.pressure) * s;
    df = s * (1.0 - 0.5 * (p - q.pressure) / (p + b));
  } else {
    const double ratio = p / q.pressure;
    f = 2.0 * c / (g - 1.0) * (std::pow(ratio, (g - 1.0) / (2.0 * g)) - 1.0);
    df = 1.0 / (q.density * c) * std::pow(ratio, -(g + 1.0) / (2.0 * g));
  }
}

}  // namespace

StarRegion exact_riemann_star(const PrimitiveState& left, const PrimitiveState& right, const GasModel& gas, int axis) {
  const double g = gas.gamma;
  const double cl = sound_speed(left, gas), cr = sound_speed(right, gas);
  const double du = right.velocity[axis] - left.velocity[axis];
  if (2.0 * (cl + cr) / (g - 1.0) <= du) throw StateError("exact Riemann: data generate vacuum");

  auto residual = [&](double p, double& df) {
    double fl, dfl, fr, dfr;
    pressure_function(p, left, cl, gas, fl, dfl);
    pressure_function(p, right, cr, gas, fr, dfr);
    df = dfl + dfr;
    return fl + fr + du;
  };

  // Bracket the root: f is monotone increasing in p.
  double lo = 0.0;
  double hi = std::max(left.pressure, right.pressure);
  double dummy;
  while (residual(hi, dummy) < 0.0) hi *= 2.0;
  // Two-rarefaction guess, clipped into the bracket.
  const double z = (g - 1.0) / (2.0 * g);
  const double pg = std::pow((cl + cr - 0.5 * (g - 1.0) * du) /
                                 (cl / std::pow(left.pressure, z) + cr / std::pow(right.pressure, z)),
                             1.0 / z);
  double p = (pg > lo && pg < hi) ? pg : 0.5 * (lo + hi);

  StarRegion star;
  const double scale = std::abs(du) + cl + cr;
  for (int it = 0; it < 200; ++it) {
    double df = 0.0;
    const double f = residual(p, df);
    star.iterations = it + 1;
    if (std::abs(f) <= 1e-13 * scale) break;
    if (f > 0.0) hi = p; else lo = p;
    double next = p - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - p) <= 1e-16 * p) {
      p = next;
      break;
    }
    p = next;
  }
  if (!(p > 0.0)) throw StateError("exact Riemann: star pressure not positive");
  double fl, fr, d1, d2;
  pressure_function(p, left, cl, gas, fl, d1);
  pressure_function(p, right, cr, gas, fr, d2);
  star.pressure = p;
  star.velocity = 0.5 * (left.velocity[axis] + right.velocity[axis]) + 0.5 * (fr - fl);
  return star;
}

PrimitiveState exact_riemann_solve(const PrimitiveState& left, const PrimitiveState& right, const GasModel& gas,
                                   double xi, int axis) {
  const double g = gas.gamma;
  const auto star = exact_riemann_star(left, right, gas, axis);
  const double ps = star.pressure, us = star.velocity;

  PrimitiveState out;
  auto finish = [&](const PrimitiveState& side, double rho, double un, double p) {
    out = side;
    out.density = rho;
    out.velocity[axis] = un;
    out.pressure = p;
    out.temperature = p / (rho * gas.r_specific);
    return out;
  };

  if (xi <= us) {
    const PrimitiveState& q = left;
    const double c = sound_speed(q, gas);
    const double u = q.velocity[axis];
    if (ps > q.pressure) {
      const double ratio = ps / q.pressure;
      const double s = u - c * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
      if (xi <= s) return finish(q, q.density, u, q.pressure);
      const double rho = q.density * (ratio + (g - 1.0) / (g + 1.0)) / ((g - 1.0) / (g + 1.0) * ratio + 1.0);
      return finish(q, rho, us, ps);
    }
    const double head = u - c;
    const double cs = c * std::pow(ps / q.pressure, (g - 1.0) / (2.0 * g));
    const double tail = us - cs;
    if (xi <= head) return finish(q, q.density, u, q.pressure);
    if (xi >= tail) return finish(q, q.density * std::pow(ps / q.pressure, 1.0 / g), us, ps);
    const double k = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (u - xi);
    return finish(q, q.density * std::pow(k, 2.0 / (g - 1.0)), 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * u + xi),
                  q.pressure * std::pow(k, 2.0 * g / (g - 1.0)));
  }
  const PrimitiveState& q = right;
  const double c = sound_speed(q, gas);
  const double u = q.velocity[axis];
  if (ps > q.pressure) {
    const double ratio = ps / q.pressure;
    const double s = u + c * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
    if (xi >= s) return finish(q, q.density, u, q.pressure);
    const double rho = q.density * (ratio + (g - 1.0) / (g + 1.0)) / ((g - 1.0) / (g + 1.0) * ratio + 1.0);
    return finish(q, rho, us, ps);
  }
  const double head = u + c;
  const double cs = c * std::pow(ps / q.pressure, (g - 1.0) / (2.0 * g));
  const double tail = us + cs;
  if (xi >= head) return finish(q, q.density, u, q.pressure);
  if (xi <= tail) return finish(q, q.density * std::pow(ps / q.pressure, 1.0 / g), us, ps);
  const double k = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (u - xi);
  return finish(q, q.density * std::pow(k, 2.0 / (g - 1.0)), 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * u + xi),
                q.pressure * std::pow(k, 2.0 * g / (g - 1.0)));
}

FluxVector viscous_flux_from_gradients(const std::array<std::array<double, 3>, 3>& grad_u,
                                       const std::array<double, 3>& u_face, double dT_dn, int axis,
                                       const TransportCoeffs& coeffs) {
  const double eta = coeffs.shear_viscosity;
  const double div = grad_u[0][0] + grad_u[1][1] + grad_u[2][2];
  const double lambda_bulk = coeffs.bulk_viscosity - 2.0 / 3.0 * eta;
  FluxVector f;
  double work = 0.0;
  for (int i = 0; i < 3; ++i) {
    double tau = eta * (grad_u[axis][i] + grad_u[i][axis]);
    if (i == axis) tau += lambda_bulk * div;
    f.momentum[i] = -tau;
    work += tau * u_face[i];
  }
  f.energy = -work - coeffs.conductivity * dT_dn;
  return f;
}

FluxVector viscous_flux(const ViscousFaceStencil& s, int axis, const std::array<double, 3>& dx,
                        const TransportCoeffs& coeffs, const GasModel& gas) {
  (void)gas;
  std::array<std::array<double, 3>, 3> grad{};
  std::array<double, 3> u_face{};
  for (int i = 0; i < 3; ++i) {
    u_face[i] = 0.5 * (s.lo.velocity[i] + s.hi.velocity[i]);
    grad[i][axis] = (s.hi.velocity[i] - s.lo.velocity[i]) / dx[axis];
    for (int t = 0; t < s.ndim; ++t) {
      if (t == axis) continue;
      grad[i][t] = (s.nb_lo[t][1].velocity[i] - s.nb_lo[t][0].velocity[i] + s.nb_hi[t][1].velocity[i] -
                    s.nb_hi[t][0].velocity[i]) /
                   (4.0 * dx[t]);
    }
  }
  const double dT = (s.hi.temperature - s.lo.temperature) / dx[axis];
  return viscous_flux_from_gradients(grad, u_face, dT, axis, coeffs);
}

}  // namespace fvbench
