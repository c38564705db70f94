#include "fvbench/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace fvbench {

Quantity parse_quantity(const std::string& s) {
  if (s == "density" || s == "rho") return Quantity::Density;
  if (s == "u" || s == "velocity-x") return Quantity::VelocityX;
  if (s == "v" || s == "velocity-y") return Quantity::VelocityY;
  if (s == "w" || s == "velocity-z") return Quantity::VelocityZ;
  if (s == "pressure" || s == "p") return Quantity::Pressure;
  throw std::invalid_argument("unknown quantity '" + s + "' (density, u, v, w, pressure)");
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::Density: return "density";
    case Quantity::VelocityX: return "u";
    case Quantity::VelocityY: return "v";
    case Quantity::VelocityZ: return "w";
    case Quantity::Pressure: return "pressure";
  }
  return "?";
}

std::vector<double> extract(const ConservedField& f, Quantity q, const GasModel& gas) {
  const int nd = f.grid().ndim();
  const int axis = q == Quantity::VelocityX ? 0 : (q == Quantity::VelocityY ? 1 : 2);
  if ((q == Quantity::VelocityY || q == Quantity::VelocityZ) && axis >= nd)
    throw std::invalid_argument("extract: velocity component beyond grid dimension");
  std::vector<double> out;
  out.reserve(f.grid().interior_count());
  f.for_each_interior([&](int i, int j, int k) {
    const ConservedState s = f.state(i, j, k);
    switch (q) {
      case Quantity::Density: out.push_back(s.density); break;
      case Quantity::Pressure: out.push_back(primitive_from_conserved(s, gas).pressure); break;
      default: out.push_back(s.momentum[axis] / s.density); break;
    }
  });
  return out;
}

double l1_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("l1_error: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

double l1_error(const ConservedField& a, const ConservedField& b, Quantity q, const GasModel& gas) {
  if (!a.grid().same_shape(b.grid())) throw std::invalid_argument("l1_error: grid mismatch");
  return l1_error(extract(a, q, gas), extract(b, q, gas));
}

ConservedField coarsen_average(const ConservedField& fine, int factor) {
  const auto& g = fine.grid();
  const int nd = g.ndim();
  if (factor < 1) throw std::invalid_argument("coarsen_average: factor must be >= 1");
  std::array<int, 3> cells{1, 1, 1};
  for (int d = 0; d < nd; ++d) {
    if (g.cells(d) % factor != 0)
      throw std::invalid_argument("coarsen_average: " + std::to_string(g.cells(d)) + " cells not divisible by " +
                                  std::to_string(factor));
    cells[d] = g.cells(d) / factor;
  }
  CartesianGrid cg(nd, cells, {g.lo(0), g.lo(1), g.lo(2)}, {g.hi(0), g.hi(1), g.hi(2)}, g.ghost());
  for (int d = 0; d < 3; ++d) cg.set_boundary(d, g.boundary(d));
  ConservedField out(cg);
  out.time = fine.time;
  const int fx = factor, fy = nd >= 2 ? factor : 1, fz = nd >= 3 ? factor : 1;
  const double inv = 1.0 / (static_cast<double>(fx) * fy * fz);
  for (int c = 0; c < fine.ncomp(); ++c)
    out.for_each_interior([&](int i, int j, int k) {
      double sum = 0.0;
      for (int c2 = 0; c2 < fz; ++c2)
        for (int b = 0; b < fy; ++b)
          for (int a = 0; a < fx; ++a) sum += fine.at(c, i * fx + a, j * fy + b, k * fz + c2);
      out.at(c, i, j, k) = sum * inv;
    });
  return out;
}

ConvergenceReport fit_order(std::vector<ConvergenceSample> samples) {
  if (samples.size() < 2) throw std::invalid_argument("fit_order: need at least two samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].error > 0.0)) throw std::invalid_argument("fit_order: errors must be positive");
    if (samples[i].n <= 0 || (i > 0 && samples[i].n <= samples[i - 1].n))
      throw std::invalid_argument("fit_order: resolutions must be positive and strictly increasing");
  }
  const double m = static_cast<double>(samples.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& s : samples) {
    const double x = -std::log(static_cast<double>(s.n)), y = std::log(s.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double res = 0.0;
  for (const auto& s : samples) {
    const double d = std::log(s.error) - (intercept - slope * std::log(static_cast<double>(s.n)));
    res += d * d;
  }
  ConvergenceReport r;
  r.samples = std::move(samples);
  r.fitted_order = slope;
  r.fit_residual = std::sqrt(res / m);
  return r;
}

double kinetic_energy(const ConservedField& f) {
  const int nd = f.grid().ndim();
  double sum = 0.0;
  f.for_each_interior([&](int i, int j, int k) {
    const ConservedState s = f.state(i, j, k);
    double m2 = 0.0;
    for (int t = 0; t < nd; ++t) m2 += s.momentum[t] * s.momentum[t];
    sum += 0.5 * m2 / (s.density * s.density);
  });
  return sum / static_cast<double>(f.grid().interior_count());
}

VectorField3 velocity_field(const ConservedField& f) {
  if (f.grid().ndim() != 3) throw std::invalid_argument("velocity_field: 3D field required");
  VectorField3 u;
  for (auto& c : u) c.reserve(f.grid().interior_count());
  f.for_each_interior([&](int i, int j, int k) {
    const ConservedState s = f.state(i, j, k);
    for (int c = 0; c < 3; ++c) u[c].push_back(s.momentum[c] / s.density);
  });
  return u;
}

namespace {

void check_cube(const CartesianGrid& g) {
  const int n = g.cells(0);
  if (g.ndim() != 3 || g.cells(1) != n || g.cells(2) != n || n % 2 != 0)
    throw std::invalid_argument("spectral operators need an even cubic 3D grid");
  for (int d = 0; d < 3; ++d) {
    if (g.boundary(d).kind != BoundaryKind::Periodic)
      throw std::invalid_argument("spectral operators need periodic boundaries");
    if (std::abs((g.hi(d) - g.lo(d)) - (g.hi(0) - g.lo(0))) > 1e-12 * (g.hi(0) - g.lo(0)))
      throw std::invalid_argument("spectral operators need a cubic domain");
  }
}

// Applies fn(k[3], idx) over the half spectrum; k is the physical wavevector,
// with the Nyquist components zeroed (their derivative is not representable).
template <class F>
void for_modes(int n, double length, F&& fn) {
  const int nh = n / 2 + 1;
  const double base = 2.0 * std::numbers::pi / length;
  for (int kz = 0; kz < n; ++kz)
    for (int ky = 0; ky < n; ++ky)
      for (int kx = 0; kx < nh; ++kx) {
        auto phys = [&](int i) {
          const int w = fft::wavenumber(i, n);
          return (w == n / 2 ? 0.0 : base * w);
        };
        const double k[3] = {phys(kx), phys(ky), phys(kz)};
        fn(k, (static_cast<std::size_t>(kz) * n + ky) * nh + kx);
      }
}

}  // namespace

VectorField3 curl_spectral(const VectorField3& u, int n, double length) {
  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  std::array<std::vector<fft::Complex>, 3> s;
  for (int c = 0; c < 3; ++c) fft::forward(n, u[c].data(), s[c]);
  std::array<std::vector<fft::Complex>, 3> w;
  for (auto& c : w) c.assign(s[0].size(), 0.0);
  const fft::Complex I(0.0, 1.0);
  for_modes(n, length, [&](const double* k, std::size_t idx) {
    w[0][idx] = I * (k[1] * s[2][idx] - k[2] * s[1][idx]);
    w[1][idx] = I * (k[2] * s[0][idx] - k[0] * s[2][idx]);
    w[2][idx] = I * (k[0] * s[1][idx] - k[1] * s[0][idx]);
  });
  VectorField3 out;
  for (int c = 0; c < 3; ++c) {
    out[c].resize(total);
    fft::backward(n, w[c], out[c].data());
    for (auto& v : out[c]) v /= static_cast<double>(total);
  }
  return out;
}

std::vector<double> divergence_spectral(const VectorField3& u, int n, double length) {
  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  std::array<std::vector<fft::Complex>, 3> s;
  for (int c = 0; c < 3; ++c) fft::forward(n, u[c].data(), s[c]);
  std::vector<fft::Complex> d(s[0].size(), 0.0);
  const fft::Complex I(0.0, 1.0);
  for_modes(n, length, [&](const double* k, std::size_t idx) {
    d[idx] = I * (k[0] * s[0][idx] + k[1] * s[1][idx] + k[2] * s[2][idx]);
  });
  std::vector<double> out(total);
  fft::backward(n, d, out.data());
  for (auto& v : out) v /= static_cast<double>(total);
  return out;
}

VectorField3 vorticity_spectral(const ConservedField& f) {
  check_cube(f.grid());
  return curl_spectral(velocity_field(f), f.grid().cells(0), f.grid().hi(0) - f.grid().lo(0));
}

double enstrophy(const ConservedField& f) {
  const VectorField3 w = vorticity_spectral(f);
  double sum = 0.0;
  for (const auto& c : w)
    for (double v : c) sum += v * v;
  return sum / static_cast<double>(w[0].size());
}

double SpectrumBins::total() const {
  double s = corner_energy;
  for (double v : values) s += v;
  return s;
}

SpectrumBins shell_spectrum(std::span<const std::vector<double>> components, int n) {
  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("shell_spectrum: n must be even");
  SpectrumBins bins;
  const int nshell = n / 2 + 1;
  bins.shells.resize(nshell);
  for (int k = 0; k < nshell; ++k) bins.shells[k] = k;
  bins.values.assign(nshell, 0.0);
  const int nh = n / 2 + 1;
  const double norm = 1.0 / (static_cast<double>(total) * total);
  std::vector<fft::Complex> s;
  for (const auto& comp : components) {
    if (comp.size() != total) throw std::invalid_argument("shell_spectrum: component size mismatch");
    fft::forward(n, comp.data(), s);
    for (int kz = 0; kz < n; ++kz)
      for (int ky = 0; ky < n; ++ky)
        for (int kx = 0; kx < nh; ++kx) {
          const double wx = kx, wy = fft::wavenumber(ky, n), wz = fft::wavenumber(kz, n);
          const double kk = std::sqrt(wx * wx + wy * wy + wz * wz);
          // the r2c half spectrum stores each conjugate pair once
          const double mult = (kx == 0 || kx == n / 2) ? 1.0 : 2.0;
          const double e = 0.5 * mult * std::norm(s[(static_cast<std::size_t>(kz) * n + ky) * nh + kx]) * norm;
          const int shell = static_cast<int>(std::floor(kk + 0.5));
          if (shell < nshell)
            bins.values[shell] += e;
          else
            bins.corner_energy += e;
        }
  }
  return bins;
}

SpectrumBins shell_spectrum(const VectorField3& v, int n) {
  return shell_spectrum(std::span<const std::vector<double>>(v.data(), v.size()), n);
}

void TurbulenceSeries::append(double t_over_tau, double ke, double ens) {
  if (!times.empty() && !(t_over_tau > times.back()))
    throw std::invalid_argument("TurbulenceSeries: times must increase");
  times.push_back(t_over_tau);
  kinetic_energy.push_back(ke);
  enstrophy.push_back(ens);
}

}  // namespace fvbench
