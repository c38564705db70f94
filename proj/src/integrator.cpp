#include "fvbench/integrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fvbench/parallel.hpp"
#include "reconstruct_kernels.hpp"

namespace fvbench {

// ---------------------------------------------------------------------------
// Scheme configuration

std::string to_string(Reconstruction r) {
  switch (r) {
    case Reconstruction::PPM: return "ppm";
    case Reconstruction::WenoZ3: return "weno-z3";
    case Reconstruction::WenoZ5: return "weno-z5";
    case Reconstruction::WenoZ7: return "weno-z7";
  }
  return "?";
}

std::string to_string(FaceQuadrature q) { return q == FaceQuadrature::Midpoint ? "midpoint" : "gauss2"; }

std::string to_string(ReconVariables v) {
  switch (v) {
    case ReconVariables::Primitive: return "primitive";
    case ReconVariables::Conserved: return "conserved";
    case ReconVariables::Characteristic: return "characteristic";
  }
  return "?";
}

std::string to_string(RiemannSolver s) { return s == RiemannSolver::HLLC ? "hllc" : "rusanov"; }

Reconstruction parse_reconstruction(const std::string& s) {
  if (s == "ppm") return Reconstruction::PPM;
  if (s == "weno-z3" || s == "wenoz3" || s == "z3") return Reconstruction::WenoZ3;
  if (s == "weno-z5" || s == "wenoz5" || s == "z5") return Reconstruction::WenoZ5;
  if (s == "weno-z7" || s == "wenoz7" || s == "z7") return Reconstruction::WenoZ7;
  throw std::invalid_argument("unknown reconstruction '" + s + "' (ppm, weno-z3, weno-z5, weno-z7)");
}

FaceQuadrature parse_quadrature(const std::string& s) {
  if (s == "midpoint") return FaceQuadrature::Midpoint;
  if (s == "gauss2") return FaceQuadrature::Gauss2;
  throw std::invalid_argument("unknown face quadrature '" + s + "' (midpoint, gauss2)");
}

ReconVariables parse_variables(const std::string& s) {
  if (s == "primitive") return ReconVariables::Primitive;
  if (s == "conserved") return ReconVariables::Conserved;
  if (s == "characteristic") return ReconVariables::Characteristic;
  throw std::invalid_argument("unknown reconstruction variables '" + s + "' (primitive, conserved, characteristic)");
}

RiemannSolver parse_riemann(const std::string& s) {
  if (s == "hllc") return RiemannSolver::HLLC;
  if (s == "rusanov") return RiemannSolver::Rusanov;
  throw std::invalid_argument("unknown riemann solver '" + s + "' (hllc, rusanov)");
}

SchemeConfig SchemeConfig::make(Reconstruction r, FaceQuadrature q) {
  SchemeConfig cfg;
  cfg.reconstruction = r;
  cfg.face_quadrature = q;
  cfg.reconstruction_variables = q == FaceQuadrature::Gauss2 ? ReconVariables::Conserved : ReconVariables::Primitive;
  return cfg;
}

int SchemeConfig::half_width() const {
  switch (reconstruction) {
    case Reconstruction::PPM: return 2;
    case Reconstruction::WenoZ3: return 1;
    case Reconstruction::WenoZ5: return 2;
    case Reconstruction::WenoZ7: return 3;
  }
  return 3;
}

void SchemeConfig::validate(const CartesianGrid& grid) const {
  weno_params.validate();
  if (grid.ghost() < half_width() + 1)
    throw std::invalid_argument("scheme " + label() + " needs ghost width >= " + std::to_string(half_width() + 1));
}

std::string SchemeConfig::label() const {
  return to_string(reconstruction) + "/" + to_string(face_quadrature) + "/" + to_string(reconstruction_variables);
}

// ---------------------------------------------------------------------------
// Ghost cells

void fill_ghosts(ConservedField& f) {
  const auto& g = f.grid();
  const int nd = g.ndim();
  const int nc = f.ncomp();
  for (int d = 0; d < nd; ++d) {
    const int n = g.cells(d);
    const int gw = g.ghost(d);
    std::array<int, 3> lo{}, hi{};
    for (int t = 0; t < 3; ++t) {
      if (t == d) continue;
      const bool full = t < d;
      lo[t] = full ? -g.ghost(t) : 0;
      hi[t] = full ? g.cells(t) + g.ghost(t) : g.cells(t);
    }
    const auto& bc = g.boundary(d);
    std::array<double, 5> inflow{};
    inflow[0] = bc.inflow_state.density;
    for (int t = 0; t < nd; ++t) inflow[1 + t] = bc.inflow_state.momentum[t];
    inflow[nd + 1] = bc.inflow_state.total_energy;

    const std::size_t s = f.stride(d);
    auto raw = f.raw();
    const std::size_t comp_stride = g.padded_count();
    for (int b = lo[(d + 1) % 3]; b < std::max(hi[(d + 1) % 3], lo[(d + 1) % 3] + 1); ++b) {
      for (int c = lo[(d + 2) % 3]; c < std::max(hi[(d + 2) % 3], lo[(d + 2) % 3] + 1); ++c) {
        std::array<int, 3> coord{};
        coord[d] = 0;
        coord[(d + 1) % 3] = b;
        coord[(d + 2) % 3] = c;
        const std::size_t base = f.index(coord[0], coord[1], coord[2]);
        auto cell = [&](int a) { return base + static_cast<std::size_t>(static_cast<std::ptrdiff_t>(a) * static_cast<std::ptrdiff_t>(s)); };
        for (int m = 1; m <= gw; ++m) {
          const std::size_t glo = cell(-m), ghi = cell(n - 1 + m);
          if (bc.kind == BoundaryKind::Periodic) {
            const int src_lo = ((-m) % n + n) % n;
            const int src_hi = (m - 1) % n;
            for (int v = 0; v < nc; ++v) {
              raw[v * comp_stride + glo] = raw[v * comp_stride + cell(src_lo)];
              raw[v * comp_stride + ghi] = raw[v * comp_stride + cell(src_hi)];
            }
          } else {
            for (int v = 0; v < nc; ++v) {
              raw[v * comp_stride + glo] = inflow[v];
              raw[v * comp_stride + ghi] = raw[v * comp_stride + cell(n - 1)];
            }
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Eigensystem

Eigensystem roe_eigensystem(const PrimitiveState& a, const PrimitiveState& b, int ndim, int axis,
                            const GasModel& gas) {
  const double gm1 = gas.gamma - 1.0;
  const double wa = std::sqrt(a.density), wb = std::sqrt(b.density);
  const double inv = 1.0 / (wa + wb);
  std::array<double, 3> u{};
  double q2 = 0.0, ka = 0.0, kb = 0.0;
  for (int d = 0; d < ndim; ++d) {
    u[d] = (wa * a.velocity[d] + wb * b.velocity[d]) * inv;
    q2 += u[d] * u[d];
    ka += a.velocity[d] * a.velocity[d];
    kb += b.velocity[d] * b.velocity[d];
  }
  const double ha = gas.gamma / gm1 * a.pressure / a.density + 0.5 * ka;
  const double hb = gas.gamma / gm1 * b.pressure / b.density + 0.5 * kb;
  const double h = (wa * ha + wb * hb) * inv;
  const double c2 = gm1 * (h - 0.5 * q2);
  if (!(c2 > 0.0)) throw StateError("Roe average has non-positive sound speed");
  const double c = std::sqrt(c2);
  const double un = u[axis];
  const double b1 = gm1 / c2, b2 = 0.5 * b1 * q2;
  const int e = ndim + 1;

  Eigensystem es;
  es.n = ndim + 2;
  auto& R = es.right;
  auto& L = es.left;
  // acoustic u - c
  R[0][0] = 1.0;
  for (int d = 0; d < ndim; ++d) R[1 + d][0] = u[d] - (d == axis ? c : 0.0);
  R[e][0] = h - un * c;
  L[0][0] = 0.5 * (b2 + un / c);
  for (int d = 0; d < ndim; ++d) L[0][1 + d] = -0.5 * (b1 * u[d] + (d == axis ? 1.0 / c : 0.0));
  L[0][e] = 0.5 * b1;
  // shear waves
  int w = 1;
  for (int t = 0; t < ndim; ++t) {
    if (t == axis) continue;
    R[0][w] = 0.0;
    for (int d = 0; d < ndim; ++d) R[1 + d][w] = d == t ? 1.0 : 0.0;
    R[e][w] = u[t];
    L[w][0] = -u[t];
    for (int d = 0; d < ndim; ++d) L[w][1 + d] = d == t ? 1.0 : 0.0;
    L[w][e] = 0.0;
    ++w;
  }
  // entropy
  R[0][w] = 1.0;
  for (int d = 0; d < ndim; ++d) R[1 + d][w] = u[d];
  R[e][w] = 0.5 * q2;
  L[w][0] = 1.0 - b2;
  for (int d = 0; d < ndim; ++d) L[w][1 + d] = b1 * u[d];
  L[w][e] = -b1;
  ++w;
  // acoustic u + c
  R[0][w] = 1.0;
  for (int d = 0; d < ndim; ++d) R[1 + d][w] = u[d] + (d == axis ? c : 0.0);
  R[e][w] = h + un * c;
  L[w][0] = 0.5 * (b2 - un / c);
  for (int d = 0; d < ndim; ++d) L[w][1 + d] = -0.5 * (b1 * u[d] - (d == axis ? 1.0 / c : 0.0));
  L[w][e] = 0.5 * b1;
  return es;
}

// ---------------------------------------------------------------------------
// Hyperbolic operator

namespace {

struct Box {
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> n{1, 1, 1};

  std::size_t size() const { return static_cast<std::size_t>(n[0]) * n[1] * n[2]; }
  std::ptrdiff_t stride(int d) const {
    return d == 0 ? 1 : (d == 1 ? n[0] : static_cast<std::ptrdiff_t>(n[0]) * n[1]);
  }
  std::size_t index(const std::array<int, 3>& c) const {
    return (static_cast<std::size_t>(c[2] - lo[2]) * n[1] + static_cast<std::size_t>(c[1] - lo[1])) * n[0] +
           static_cast<std::size_t>(c[0] - lo[0]);
  }
  std::size_t rows() const { return static_cast<std::size_t>(n[1]) * n[2]; }
  /// Calls fn(coord) for every point of the rows in [row_begin, row_end).
  template <class F>
  void visit_rows(std::size_t row_begin, std::size_t row_end, F&& fn) const {
    for (std::size_t r = row_begin; r < row_end; ++r) {
      std::array<int, 3> c{lo[0], lo[1] + static_cast<int>(r % n[1]), lo[2] + static_cast<int>(r / n[1])};
      for (int x = 0; x < n[0]; ++x) {
        c[0] = lo[0] + x;
        fn(c);
      }
    }
  }
};

template <class F>
void for_box(const Box& box, F&& fn) {
  parallel_for(box.rows(), [&](std::size_t b, std::size_t e) { box.visit_rows(b, e, fn); });
}

template <int R>
struct WenoKernel {
  static constexpr int H = R - 1;
  const PointRule* face;
  const PointRule* gauss;
  double eps;
  int a;
  PointPair faces(const double* q) const { return kernels::weno_pair<R>(q, *face, eps, a); }
  PointPair nodes(const double* q) const { return kernels::weno_pair<R>(q, *gauss, eps, a); }
};

struct PpmKernel {
  static constexpr int H = 2;
  bool limit;
  double xg;
  PointPair faces(const double* q) const {
    double lo, hi;
    kernels::ppm_edges(q, limit, lo, hi);
    return {lo, hi};
  }
  PointPair nodes(const double* q) const {
    double lo, hi;
    kernels::ppm_edges(q, limit, lo, hi);
    return {kernels::ppm_eval(lo, hi, q[2], -xg), kernels::ppm_eval(lo, hi, q[2], xg)};
  }
};

std::string where(const std::array<int, 3>& c, int axis) {
  std::ostringstream os;
  os << "face " << c[axis] << " along axis " << axis << " at cell (" << c[0] << ", " << c[1] << ", " << c[2] << ")";
  return os.str();
}

struct HyperbolicContext {
  const ConservedField& f;
  const SchemeConfig& cfg;
  const GasModel& gas;
  const std::vector<double>& prim;
  std::vector<double>& face_states;
  std::vector<double>& nodes1;
  std::vector<double>& nodes2;
  std::vector<double>& flux;
  ConservedField& out;
};

template <class K>
RhsCounters hyperbolic_impl(const K& kern, HyperbolicContext& ctx) {
  constexpr int H = K::H;
  constexpr int W = 2 * H + 1;
  const ConservedField& f = ctx.f;
  const auto& grid = f.grid();
  const int nd = grid.ndim();
  const int nv = nd + 2;
  const std::size_t padded = grid.padded_count();
  const bool gauss = ctx.cfg.face_quadrature == FaceQuadrature::Gauss2 && nd >= 2;
  const auto vars = ctx.cfg.reconstruction_variables;
  const bool conserved_faces = vars != ReconVariables::Primitive;
  const double* src = vars == ReconVariables::Primitive ? ctx.prim.data() : f.raw().data();
  const double* cons = f.raw().data();
  const double* prim = ctx.prim.data();
  const GasModel& gas = ctx.gas;
  const RiemannSolver solver = ctx.cfg.riemann;
  RhsCounters counters;

  for (int d = 0; d < nd; ++d) {
    const int nf = grid.cells(d) + 1;
    std::array<int, 2> trans{};
    for (int t = 0, m = 0; t < 3; ++t)
      if (t != d) trans[m++] = t;

    // Face box: faces along d, transverse extended for the Gauss sweeps.
    Box fb;
    fb.lo[d] = 0;
    fb.n[d] = nf;
    for (int t : trans) {
      const int e = (gauss && t < nd) ? H : 0;
      fb.lo[t] = -e;
      fb.n[t] = grid.cells(t) + 2 * e;
    }
    const std::size_t nfb = fb.size();
    ctx.face_states.resize(2 * nv * nfb);
    double* fs = ctx.face_states.data();
    auto fs_at = [&](int side, int v) { return fs + (static_cast<std::size_t>(side) * nv + v) * nfb; };
    const std::ptrdiff_t sd = static_cast<std::ptrdiff_t>(f.stride(d));

    if (vars != ReconVariables::Characteristic) {
      Box cb = fb;
      cb.lo[d] = -1;
      cb.n[d] = nf + 1;
      for_box(cb, [&](const std::array<int, 3>& c) {
        const std::size_t p = f.index(c[0], c[1], c[2]);
        const int a = c[d];
        std::array<int, 3> up = c;
        up[d] += 1;
        const std::size_t face_hi = (a + 1 <= nf - 1) ? fb.index(up) : nfb;
        const std::size_t face_lo = (a >= 0) ? fb.index(c) : nfb;
        double q[W];
        for (int v = 0; v < nv; ++v) {
          const double* s = src + v * padded + p;
          for (int m = 0; m < W; ++m) q[m] = s[(m - H) * sd];
          const PointPair pr = kern.faces(q);
          if (face_hi < nfb) fs_at(0, v)[face_hi] = pr.plus;
          if (face_lo < nfb) fs_at(1, v)[face_lo] = pr.minus;
        }
      });
    } else {
      for_box(fb, [&](const std::array<int, 3>& c) {
        const std::size_t p = f.index(c[0], c[1], c[2]);
        const std::size_t pl = p - sd;
        PrimitiveState a, b;
        a.density = prim[pl];
        b.density = prim[p];
        for (int t = 0; t < nd; ++t) {
          a.velocity[t] = prim[(1 + t) * padded + pl];
          b.velocity[t] = prim[(1 + t) * padded + p];
        }
        a.pressure = prim[(nd + 1) * padded + pl];
        b.pressure = prim[(nd + 1) * padded + p];
        const Eigensystem es = roe_eigensystem(a, b, nd, d, gas);
        double w[W + 1][5];
        for (int m = 0; m < W + 1; ++m) {
          const std::size_t cell = p + (m - H - 1) * sd;
          double u[5];
          for (int v = 0; v < nv; ++v) u[v] = cons[v * padded + cell];
          for (int k = 0; k < nv; ++k) {
            double acc = 0.0;
            for (int v = 0; v < nv; ++v) acc += es.left[k][v] * u[v];
            w[m][k] = acc;
          }
        }
        double wl[5], wr[5];
        for (int k = 0; k < nv; ++k) {
          double q[W + 1];
          for (int m = 0; m < W + 1; ++m) q[m] = w[m][k];
          wl[k] = kern.faces(q).plus;
          wr[k] = kern.faces(q + 1).minus;
        }
        const std::size_t idx = fb.index(c);
        for (int v = 0; v < nv; ++v) {
          double l = 0.0, r = 0.0;
          for (int k = 0; k < nv; ++k) {
            l += es.right[v][k] * wl[k];
            r += es.right[v][k] * wr[k];
          }
          fs_at(0, v)[idx] = l;
          fs_at(1, v)[idx] = r;
        }
      });
    }
    counters.reconstruction_calls += 2ull * nv * nfb;

    // Transverse de-averaging to Gauss nodes.
    const double* node_data = fs;
    int nodes = 1;
    Box nb = fb;
    if (gauss) {
      const int t1 = trans[0];
      Box b1 = fb;
      b1.lo[t1] = 0;
      b1.n[t1] = grid.cells(t1);
      const std::size_t n1 = b1.size();
      ctx.nodes1.resize(2ull * nv * 2 * n1);
      double* g1 = ctx.nodes1.data();
      const std::ptrdiff_t s1 = fb.stride(t1);
      for_box(b1, [&](const std::array<int, 3>& c) {
        const std::size_t in = fb.index(c);
        const std::size_t o = b1.index(c);
        double q[W];
        for (int sv = 0; sv < 2 * nv; ++sv) {
          const double* s = fs + sv * nfb + in;
          for (int m = 0; m < W; ++m) q[m] = s[(m - H) * s1];
          const PointPair pr = kern.nodes(q);
          g1[(sv * 2 + 0) * n1 + o] = pr.minus;
          g1[(sv * 2 + 1) * n1 + o] = pr.plus;
        }
      });
      counters.reconstruction_calls += 2ull * nv * 2 * n1;
      node_data = g1;
      nodes = 2;
      nb = b1;

      if (nd == 3) {
        const int t2 = trans[1];
        Box b2 = b1;
        b2.lo[t2] = 0;
        b2.n[t2] = grid.cells(t2);
        const std::size_t n2 = b2.size();
        ctx.nodes2.resize(2ull * nv * 4 * n2);
        double* g2 = ctx.nodes2.data();
        const std::ptrdiff_t s2 = b1.stride(t2);
        for_box(b2, [&](const std::array<int, 3>& c) {
          const std::size_t in = b1.index(c);
          const std::size_t o = b2.index(c);
          double q[W];
          for (int sv = 0; sv < 2 * nv; ++sv) {
            for (int g = 0; g < 2; ++g) {
              const double* s = g1 + (sv * 2 + g) * n1 + in;
              for (int m = 0; m < W; ++m) q[m] = s[(m - H) * s2];
              const PointPair pr = kern.nodes(q);
              g2[((sv * 2 + g) * 2 + 0) * n2 + o] = pr.minus;
              g2[((sv * 2 + g) * 2 + 1) * n2 + o] = pr.plus;
            }
          }
        });
        counters.reconstruction_calls += 2ull * nv * 4 * n2;
        node_data = g2;
        nodes = 4;
        nb = b2;
      }
    }

    // Riemann solves at every node, Gauss-weighted into the face flux.
    const std::size_t nn = nb.size();
    ctx.flux.resize(static_cast<std::size_t>(nv) * nn);
    double* flux = ctx.flux.data();
    const double weight = 1.0 / nodes;
    for_box(nb, [&](const std::array<int, 3>& c) {
      const std::size_t o = nb.index(c);
      FluxVector total;
      for (int g = 0; g < nodes; ++g) {
        PrimitiveState side[2];
        for (int s = 0; s < 2; ++s) {
          auto val = [&](int v) { return node_data[((static_cast<std::size_t>(s) * nv + v) * nodes + g) * nn + o]; };
          if (conserved_faces) {
            ConservedState u;
            u.density = val(0);
            for (int t = 0; t < nd; ++t) u.momentum[t] = val(1 + t);
            u.total_energy = val(nd + 1);
            try {
              side[s] = primitive_from_conserved(u, gas);
            } catch (const StateError& e) {
              throw StateError(std::string("reconstructed state at ") + where(c, d) + ": " + e.what());
            }
          } else {
            PrimitiveState& q = side[s];
            q.density = val(0);
            for (int t = 0; t < nd; ++t) q.velocity[t] = val(1 + t);
            q.pressure = val(nd + 1);
            if (!(q.density > 0.0) || !(q.pressure > 0.0))
              throw StateError("reconstructed state at " + where(c, d) + " is invalid: " + describe(q));
          }
        }
        try {
          total += solver == RiemannSolver::HLLC ? hllc_flux(side[0], side[1], d, gas)
                                                 : rusanov_flux(side[0], side[1], d, gas);
        } catch (const StateError& e) {
          throw StateError(std::string("Riemann solve at ") + where(c, d) + ": " + e.what());
        }
      }
      flux[o] = weight * total.mass;
      for (int t = 0; t < nd; ++t) flux[(1 + t) * nn + o] = weight * total.momentum[t];
      flux[(nd + 1) * nn + o] = weight * total.energy;
    });
    counters.riemann_solves += static_cast<std::uint64_t>(nodes) * nn;

    // Flux divergence.
    Box interior;
    for (int t = 0; t < 3; ++t) interior.n[t] = grid.cells(t);
    const double inv_dx = 1.0 / grid.dx(d);
    const std::ptrdiff_t fstride = nb.stride(d);
    const std::size_t out_padded = grid.padded_count();
    double* out = ctx.out.raw().data();
    for_box(interior, [&](const std::array<int, 3>& c) {
      const std::size_t lo = nb.index(c);
      const std::size_t p = f.index(c[0], c[1], c[2]);
      for (int v = 0; v < nv; ++v) {
        const double* fv = flux + v * nn;
        out[v * out_padded + p] -= (fv[lo + fstride] - fv[lo]) * inv_dx;
      }
    });
  }
  return counters;
}

}  // namespace

// ---------------------------------------------------------------------------
// Solver

FiniteVolumeSolver::FiniteVolumeSolver(SchemeConfig cfg, GasModel gas, TransportCoeffs coeffs)
    : cfg_(cfg), gas_(gas), coeffs_(coeffs) {
  cfg_.weno_params.validate();
  gas_.validate();
  if (coeffs_.shear_viscosity < 0.0 || coeffs_.conductivity < 0.0 || coeffs_.bulk_viscosity < 0.0)
    throw std::invalid_argument("transport coefficients must be non-negative");
}

void FiniteVolumeSolver::compute_primitives(const ConservedField& f) {
  const auto& grid = f.grid();
  const int nd = grid.ndim();
  const std::size_t n = grid.padded_count();
  prim_.resize(static_cast<std::size_t>(nd + 2) * n);
  const double* u = f.raw().data();
  double* w = prim_.data();
  const double gm1 = gas_.gamma - 1.0;
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double rho = u[i];
      double ke = 0.0;
      for (int t = 0; t < nd; ++t) {
        const double m = u[(1 + t) * n + i];
        ke += m * m;
      }
      const double rho_e = u[(nd + 1) * n + i] - 0.5 * ke / rho;
      if (!(rho > 0.0) || !(rho_e > 0.0)) {
        ConservedState s = f.state(i);
        std::ostringstream os;
        os << "invalid state at padded index " << i << " (t=" << f.time << "): " << describe(s);
        throw StateError(os.str());
      }
      w[i] = rho;
      for (int t = 0; t < nd; ++t) w[(1 + t) * n + i] = u[(1 + t) * n + i] / rho;
      w[(nd + 1) * n + i] = gm1 * rho_e;
    }
  });
}

RhsCounters FiniteVolumeSolver::add_hyperbolic_rhs(const ConservedField& f, ConservedField& out) {
  cfg_.validate(f.grid());
  compute_primitives(f);
  HyperbolicContext ctx{f, cfg_, gas_, prim_, work_a_, work_b_, work_c_, flux_, out};
  const auto& wp = cfg_.weno_params;
  switch (cfg_.reconstruction) {
    case Reconstruction::PPM:
      return hyperbolic_impl(PpmKernel{cfg_.ppm_limiter, 0.5 / std::sqrt(3.0)}, ctx);
    case Reconstruction::WenoZ3:
      return hyperbolic_impl(WenoKernel<2>{&PointRule::face(2), &PointRule::gauss(2), wp.epsilon, wp.a}, ctx);
    case Reconstruction::WenoZ5:
      return hyperbolic_impl(WenoKernel<3>{&PointRule::face(3), &PointRule::gauss(3), wp.epsilon, wp.a}, ctx);
    case Reconstruction::WenoZ7:
      return hyperbolic_impl(WenoKernel<4>{&PointRule::face(4), &PointRule::gauss(4), wp.epsilon, wp.a}, ctx);
  }
  return {};
}

void FiniteVolumeSolver::add_diffusive_rhs(const ConservedField& f, ConservedField& out) {
  if (coeffs_.inviscid()) return;
  const auto& grid = f.grid();
  const int nd = grid.ndim();
  const std::size_t padded = grid.padded_count();
  compute_primitives(f);
  const double* w = prim_.data();
  const std::array<double, 3> dx{grid.dx(0), grid.dx(1), grid.dx(2)};

  auto load = [&](std::size_t p) {
    PrimitiveState q;
    q.density = w[p];
    for (int t = 0; t < nd; ++t) q.velocity[t] = w[(1 + t) * padded + p];
    q.pressure = w[(nd + 1) * padded + p];
    q.temperature = q.pressure / (q.density * gas_.r_specific);
    return q;
  };

  double* o = out.raw().data();
  for (int d = 0; d < nd; ++d) {
    Box fb;
    for (int t = 0; t < 3; ++t) fb.n[t] = grid.cells(t);
    fb.n[d] += 1;
    const std::size_t nn = fb.size();
    flux_.resize(static_cast<std::size_t>(nd + 2) * nn);
    double* fl = flux_.data();
    const std::ptrdiff_t sd = static_cast<std::ptrdiff_t>(f.stride(d));
    for_box(fb, [&](const std::array<int, 3>& c) {
      const std::size_t hi = f.index(c[0], c[1], c[2]);
      const std::size_t lo = hi - sd;
      ViscousFaceStencil s;
      s.ndim = nd;
      s.lo = load(lo);
      s.hi = load(hi);
      for (int t = 0; t < nd; ++t) {
        if (t == d) continue;
        const std::ptrdiff_t st = static_cast<std::ptrdiff_t>(f.stride(t));
        s.nb_lo[t] = {load(lo - st), load(lo + st)};
        s.nb_hi[t] = {load(hi - st), load(hi + st)};
      }
      const FluxVector fv = viscous_flux(s, d, dx, coeffs_, gas_);
      const std::size_t idx = fb.index(c);
      fl[idx] = fv.mass;
      for (int t = 0; t < nd; ++t) fl[(1 + t) * nn + idx] = fv.momentum[t];
      fl[(nd + 1) * nn + idx] = fv.energy;
    });
    Box interior;
    for (int t = 0; t < 3; ++t) interior.n[t] = grid.cells(t);
    const double inv_dx = 1.0 / dx[d];
    const std::ptrdiff_t fstride = fb.stride(d);
    for_box(interior, [&](const std::array<int, 3>& c) {
      const std::size_t l = fb.index(c);
      const std::size_t p = f.index(c[0], c[1], c[2]);
      for (int v = 0; v < nd + 2; ++v) o[v * padded + p] -= (fl[v * nn + l + fstride] - fl[v * nn + l]) * inv_dx;
    });
  }
}

double FiniteVolumeSolver::stable_dt(const ConservedField& f, double cfl) const {
  const auto& grid = f.grid();
  const int nd = grid.ndim();
  const double gm1 = gas_.gamma - 1.0;
  const double diff = std::max(coeffs_.shear_viscosity, coeffs_.conductivity / gas_.cv);
  double dt = std::numeric_limits<double>::infinity();
  f.for_each_interior([&](int i, int j, int k) {
    const ConservedState s = f.state(i, j, k);
    const double rho = s.density;
    double ke = 0.0;
    for (int t = 0; t < nd; ++t) ke += s.momentum[t] * s.momentum[t];
    const double p = gm1 * (s.total_energy - 0.5 * ke / rho);
    if (!(rho > 0.0) || !(p > 0.0)) {
      std::ostringstream os;
      os << "stable_dt: invalid state at cell (" << i << ", " << j << ", " << k << "): " << describe(s);
      throw StateError(os.str());
    }
    const double c = std::sqrt(gas_.gamma * p / rho);
    for (int t = 0; t < nd; ++t) {
      const double dx = grid.dx(t);
      dt = std::min(dt, cfl * dx / (std::abs(s.momentum[t] / rho) + c));
      if (diff > 0.0) dt = std::min(dt, dx * dx * rho / (2.0 * nd * diff));
    }
  });
  return dt;
}

StepStats FiniteVolumeSolver::step(ConservedField& f, double dt) {
  const auto start = std::chrono::steady_clock::now();
  StepStats stats;
  stats.dt = dt;
  const auto& grid = f.grid();
  const std::size_t padded = grid.padded_count();
  const int nc = f.ncomp();
  stage_ = f;
  if (!rhs_.grid().same_shape(grid) || rhs_.raw().size() != f.raw().size()) rhs_ = ConservedField(grid);

  // a0 = 1 - a1 exactly; with 1.0 / 3.0 the pair would sum to 1 - 2^-54 and
  // bleed mass every step.
  static constexpr double a1[3] = {1.0, 0.25, 2.0 / 3.0};
  static constexpr double a0[3] = {0.0, 1.0 - a1[1], 1.0 - a1[2]};
  for (int stage = 0; stage < 3; ++stage) {
    fill_ghosts(f);
    std::fill(rhs_.raw().begin(), rhs_.raw().end(), 0.0);
    const RhsCounters c = add_hyperbolic_rhs(f, rhs_);
    add_diffusive_rhs(f, rhs_);
    stats.riemann_solves += c.riemann_solves;
    stats.reconstruction_calls += c.reconstruction_calls;

    double* u = f.raw().data();
    const double* u0 = stage_.raw().data();
    const double* l = rhs_.raw().data();
    const double w0 = a0[stage], w1 = a1[stage];
    Box interior;
    for (int t = 0; t < 3; ++t) interior.n[t] = grid.cells(t);
    for_box(interior, [&](const std::array<int, 3>& c3) {
      const std::size_t p = f.index(c3[0], c3[1], c3[2]);
      for (int v = 0; v < nc; ++v) {
        const std::size_t q = v * padded + p;
        u[q] = w0 * u0[q] + w1 * (u[q] + dt * l[q]);
      }
    });
    const std::string context = "SSP-RK3 stage " + std::to_string(stage + 1);
    f.check_interior(gas_, context.c_str());
  }
  f.time = stage_.time + dt;
  stats.time = f.time;
  stats.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return stats;
}

AdvanceResult FiniteVolumeSolver::advance(ConservedField f, double t_end, const AdvanceOptions& opts) {
  if (t_end < f.time) throw std::invalid_argument("advance: t_end precedes the field time");
  std::vector<double> samples = opts.sample_times;
  std::sort(samples.begin(), samples.end());
  auto next_sample = std::upper_bound(samples.begin(), samples.end(), f.time);

  AdvanceResult result;
  while (f.time < t_end) {
    double target = t_end;
    bool sample = false;
    if (next_sample != samples.end() && *next_sample <= t_end) {
      target = *next_sample;
      sample = true;
    }
    double dt = stable_dt(f, opts.cfl);
    bool landing = false;
    if (f.time + dt >= target) {
      dt = target - f.time;
      landing = true;
    }
    StepStats stats = step(f, dt);
    if (landing) {
      f.time = target;
      stats.time = target;
      if (sample) ++next_sample;
    }
    result.steps.push_back(stats);
    if (opts.observer) opts.observer(f, stats, landing && sample);
    if (result.steps.size() > opts.max_steps)
      throw std::runtime_error("advance: exceeded " + std::to_string(opts.max_steps) + " steps (dt collapse?)");
  }
  fill_ghosts(f);
  result.field = std::move(f);
  return result;
}

// ---------------------------------------------------------------------------
// Free functions

namespace {

ConservedField rhs_with(const ConservedField& f, SchemeConfig cfg, FaceQuadrature q, const GasModel& gas,
                        RhsCounters* counters) {
  cfg.face_quadrature = q;
  FiniteVolumeSolver solver(cfg, gas);
  ConservedField out(f.grid());
  out.time = f.time;
  const RhsCounters c = solver.add_hyperbolic_rhs(f, out);
  if (counters) *counters = c;
  return out;
}

}  // namespace

ConservedField hyperbolic_rhs_midpoint(const ConservedField& f, const SchemeConfig& cfg, const GasModel& gas,
                                       RhsCounters* counters) {
  return rhs_with(f, cfg, FaceQuadrature::Midpoint, gas, counters);
}

ConservedField hyperbolic_rhs_gauss2(const ConservedField& f, const SchemeConfig& cfg, const GasModel& gas,
                                     RhsCounters* counters) {
  return rhs_with(f, cfg, FaceQuadrature::Gauss2, gas, counters);
}

ConservedField diffusive_rhs(const ConservedField& f, const TransportCoeffs& coeffs, const GasModel& gas) {
  FiniteVolumeSolver solver(SchemeConfig{}, gas, coeffs);
  ConservedField out(f.grid());
  out.time = f.time;
  solver.add_diffusive_rhs(f, out);
  return out;
}

double stable_dt(const ConservedField& f, double cfl, const TransportCoeffs& coeffs, const GasModel& gas) {
  return FiniteVolumeSolver(SchemeConfig{}, gas, coeffs).stable_dt(f, cfl);
}

StepStats ssp_rk3_step(ConservedField& f, double dt, const SchemeConfig& cfg, const GasModel& gas,
                       const TransportCoeffs& coeffs) {
  FiniteVolumeSolver solver(cfg, gas, coeffs);
  return solver.step(f, dt);
}

AdvanceResult advance_to_time(ConservedField f, double t_end, const SchemeConfig& cfg, const GasModel& gas,
                              const TransportCoeffs& coeffs, const AdvanceOptions& opts) {
  FiniteVolumeSolver solver(cfg, gas, coeffs);
  return solver.advance(std::move(f), t_end, opts);
}

}  // namespace fvbench
