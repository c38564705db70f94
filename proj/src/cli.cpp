#include "fvbench/cli.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

namespace fvbench {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Config

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (trim(v.substr(pos)).empty()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
}

long long to_integer(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (trim(v.substr(pos)).empty()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
  Config c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value, got '" + line + "'");
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

Config Config::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

void Config::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw ConfigError("empty config key");
  values_[key] = value;
}

std::string Config::raw(const std::string& key, const std::string& fallback) {
  used_.insert(key);
  const auto it = values_.find(key);
  const std::string v = it == values_.end() ? fallback : it->second;
  resolved_[key] = v;
  return v;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) { return raw(key, fallback); }

double Config::get_double(const std::string& key, double fallback) {
  const std::string v = raw(key, format_number(fallback));
  return to_double(key, v);
}

int Config::get_int(const std::string& key, int fallback) {
  const long long v = to_integer(key, raw(key, std::to_string(fallback)));
  if (v < INT32_MIN || v > INT32_MAX) throw ConfigError("config key '" + key + "': value out of range");
  return static_cast<int>(v);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) {
  const std::string v = raw(key, std::to_string(fallback));
  try {
    std::size_t pos = 0;
    const auto d = std::stoull(v, &pos);
    if (trim(v.substr(pos)).empty() && v.find('-') == std::string::npos) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key '" + key + "': expected an unsigned integer, got '" + v + "'");
}

bool Config::get_bool(const std::string& key, bool fallback) {
  const std::string v = raw(key, fallback ? "true" : "false");
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "': expected true/false, got '" + v + "'");
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) {
  std::vector<std::string> fb;
  for (double d : fallback) fb.push_back(format_number(d));
  std::vector<double> out;
  for (const auto& s : split_list(raw(key, join(fb)))) out.push_back(to_double(key, s));
  return out;
}

std::vector<int> Config::get_ints(const std::string& key, const std::vector<int>& fallback) {
  std::vector<std::string> fb;
  for (int d : fallback) fb.push_back(std::to_string(d));
  std::vector<int> out;
  for (const auto& s : split_list(raw(key, join(fb)))) out.push_back(static_cast<int>(to_integer(key, s)));
  return out;
}

std::vector<std::string> Config::get_strings(const std::string& key, const std::vector<std::string>& fallback) {
  return split_list(raw(key, join(fallback)));
}

void Config::check_unused() const {
  for (const auto& [k, v] : values_)
    if (!used_.count(k)) throw ConfigError("unknown config key '" + k + "' (value '" + v + "')");
}

// ---------------------------------------------------------------------------
// RunConfig

std::string to_string(CaseKind c) {
  switch (c) {
    case CaseKind::Vortex: return "vortex";
    case CaseKind::ShuOsher: return "shu-osher";
    case CaseKind::Hit: return "hit";
  }
  return "?";
}

SchemeConfig parse_scheme_label(const std::string& label) {
  const auto slash = label.find('/');
  const std::string rec = label.substr(0, slash);
  const std::string quad = slash == std::string::npos ? "midpoint" : label.substr(slash + 1);
  return SchemeConfig::make(parse_reconstruction(rec), parse_quadrature(quad));
}

bool RunConfig::wants(const std::string& output) const {
  return std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

std::string RunConfig::header() const {
  std::string s;
  for (const auto& [k, v] : resolved) s += "# " + k + "=" + v + "\n";
  return s;
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : header()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

template <class F>
auto with_key(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

SchemeConfig read_scheme(Config& c, const std::string& prefix, const SchemeConfig& fallback) {
  const auto rec = with_key(prefix + "reconstruction", [&] {
    return parse_reconstruction(c.get_string(prefix + "reconstruction", to_string(fallback.reconstruction)));
  });
  const auto quad = with_key(prefix + "quadrature", [&] {
    return parse_quadrature(c.get_string(prefix + "quadrature", to_string(fallback.face_quadrature)));
  });
  SchemeConfig s = SchemeConfig::make(rec, quad);
  s.reconstruction_variables = with_key(prefix + "variables", [&] {
    return parse_variables(c.get_string(prefix + "variables", to_string(s.reconstruction_variables)));
  });
  s.riemann = with_key(prefix + "riemann", [&] { return parse_riemann(c.get_string(prefix + "riemann", "hllc")); });
  s.weno_params.epsilon = c.get_double(prefix + "epsilon", 1e-40);
  s.weno_params.a = c.get_int(prefix + "a", 2);
  s.ppm_limiter = c.get_bool(prefix + "ppm_limiter", true);
  with_key(prefix + "epsilon", [&] {
    s.weno_params.validate();
    return 0;
  });
  return s;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError("config key '" + key + "': " + what);
}

}  // namespace

RunConfig resolve_config(Config c) {
  RunConfig rc;
  const std::string case_name = c.get_string("case", "vortex");
  if (case_name == "vortex")
    rc.case_kind = CaseKind::Vortex;
  else if (case_name == "shu-osher")
    rc.case_kind = CaseKind::ShuOsher;
  else if (case_name == "hit")
    rc.case_kind = CaseKind::Hit;
  else
    throw ConfigError("config key 'case': unknown case '" + case_name + "' (vortex, shu-osher, hit)");

  const CaseKind k = rc.case_kind;
  const int default_n = k == CaseKind::Vortex ? 64 : (k == CaseKind::ShuOsher ? 256 : 32);
  rc.nx = c.get_int("nx", default_n);
  require(rc.nx >= 8, "nx", "must be >= 8");

  rc.scheme = read_scheme(c, "scheme.", SchemeConfig{});
  rc.cfl = c.get_double("cfl", k == CaseKind::Vortex ? 0.7 : 0.5);
  require(rc.cfl > 0.0 && rc.cfl <= 1.0, "cfl", "must lie in (0, 1]");

  // gas: the turbulence case takes cp/Prandtl from its own section
  if (k == CaseKind::Hit) {
    rc.hit.mach_t0 = c.get_double("hit.mach_t0", rc.hit.mach_t0);
    rc.hit.reynolds0 = c.get_double("hit.reynolds0", rc.hit.reynolds0);
    rc.hit.k0 = c.get_int("hit.k0", rc.hit.k0);
    rc.hit.t0 = c.get_double("hit.t0", rc.hit.t0);
    rc.hit.p0 = c.get_double("hit.p0", rc.hit.p0);
    rc.hit.cp = c.get_double("hit.cp", rc.hit.cp);
    rc.hit.prandtl = c.get_double("hit.prandtl", rc.hit.prandtl);
    rc.hit.master_n = c.get_int("hit.master_n", rc.hit.master_n);
    rc.hit.seed = c.get_u64("seed", rc.hit.seed);
    with_key("hit", [&] {
      rc.hit.validate();
      return 0;
    });
    rc.gas = hit_gas(rc.hit);
  } else {
    const double gamma = c.get_double("gas.gamma", 1.4);
    const double cp = c.get_double("gas.cp", 1173.0);
    const double pr = c.get_double("gas.prandtl", 0.71);
    rc.gas = with_key("gas", [&] { return GasModel::from_cp(gamma, cp, pr); });
  }

  if (k == CaseKind::Vortex) {
    rc.vortex.length = c.get_double("vortex.length", rc.vortex.length);
    rc.vortex.circulation = c.get_double("vortex.circulation", rc.vortex.circulation);
    rc.vortex.radius_fraction = c.get_double("vortex.radius_fraction", rc.vortex.radius_fraction);
    rc.vortex.u0 = c.get_double("vortex.u0", rc.vortex.u0);
    rc.vortex.t_ref = c.get_double("vortex.t_ref", rc.vortex.t_ref);
    rc.vortex.p_ref = c.get_double("vortex.p_ref", rc.vortex.p_ref);
    with_key("vortex", [&] {
      rc.vortex.validate();
      return 0;
    });
    rc.vortex_quadrature_points = c.get_int(
        "vortex.quadrature_points", rc.scheme.face_quadrature == FaceQuadrature::Gauss2 ? 3 : 1);
    require(rc.vortex_quadrature_points == 1 || rc.vortex_quadrature_points == 3, "vortex.quadrature_points",
            "must be 1 or 3");
    rc.t_end = c.get_double("t_end", 5e-3);
  } else if (k == CaseKind::ShuOsher) {
    rc.shu.jump = c.get_double("shu.jump", rc.shu.jump);
    rc.shu.rho_left = c.get_double("shu.rho_left", rc.shu.rho_left);
    rc.shu.u_left = c.get_double("shu.u_left", rc.shu.u_left);
    rc.shu.p_left = c.get_double("shu.p_left", rc.shu.p_left);
    rc.shu.rho_amplitude = c.get_double("shu.rho_amplitude", rc.shu.rho_amplitude);
    rc.shu.wavenumber = c.get_double("shu.wavenumber", rc.shu.wavenumber);
    rc.t_end = c.get_double("t_end", rc.shu.t_end);
  } else {
    rc.t_end = c.get_double("t_over_tau", 4.0);
  }
  require(rc.t_end >= 0.0, k == CaseKind::Hit ? "t_over_tau" : "t_end", "must be non-negative");

  const std::vector<std::string> default_outputs =
      k == CaseKind::Hit ? std::vector<std::string>{"series", "spectrum", "snapshot"}
                         : std::vector<std::string>{"series", "snapshot"};
  rc.outputs = c.get_strings("outputs", default_outputs);
  for (const auto& o : rc.outputs)
    require(o == "series" || o == "spectrum" || o == "snapshot" || o == "report", "outputs",
            "unknown output '" + o + "' (series, spectrum, snapshot, report)");
  if (k != CaseKind::Hit)
    require(!rc.wants("spectrum"), "outputs", "spectra need the 3D periodic turbulence case");
  rc.series_interval = c.get_double("series.interval", k == CaseKind::Hit ? 0.1 : rc.t_end / 50.0);
  require(rc.series_interval >= 0.0, "series.interval", "must be non-negative");
  rc.spectrum_times = c.get_doubles("spectrum.times", k == CaseKind::Hit ? std::vector<double>{rc.t_end}
                                                                         : std::vector<double>{});
  rc.snapshot_times = c.get_doubles("snapshot.times", {rc.t_end});
  for (double t : rc.spectrum_times) require(t >= 0.0 && t <= rc.t_end, "spectrum.times", "outside [0, t_end]");
  for (double t : rc.snapshot_times) require(t >= 0.0 && t <= rc.t_end, "snapshot.times", "outside [0, t_end]");
  rc.output_dir = c.get_string("output_dir", "out");
  rc.max_steps = static_cast<std::size_t>(c.get_u64("max_steps", 50'000'000));

  // convergence sweep
  const std::vector<int> default_res = k == CaseKind::Vortex   ? std::vector<int>{32, 64, 128, 256}
                                       : k == CaseKind::ShuOsher ? std::vector<int>{256, 512, 1024, 2048}
                                                                 : std::vector<int>{32, 64};
  rc.resolutions = c.get_ints("convergence.resolutions", default_res);
  for (std::size_t i = 0; i < rc.resolutions.size(); ++i) {
    require(rc.resolutions[i] >= 8, "convergence.resolutions", "resolutions must be >= 8");
    if (i > 0) require(rc.resolutions[i] > rc.resolutions[i - 1], "convergence.resolutions", "must be ascending");
  }
  rc.reference_n = c.get_int("convergence.reference_n",
                             k == CaseKind::ShuOsher ? 16384 : (k == CaseKind::Hit ? 128 : 0));
  SchemeConfig ref_default = SchemeConfig::make(Reconstruction::WenoZ5, FaceQuadrature::Gauss2);
  if (k == CaseKind::Hit) ref_default = SchemeConfig::make(Reconstruction::WenoZ7, FaceQuadrature::Midpoint);
  rc.reference_scheme = read_scheme(c, "convergence.reference.", ref_default);
  const std::string q_default = k == CaseKind::ShuOsher ? "density" : "u";
  rc.error_quantity = with_key("convergence.quantity",
                               [&] { return parse_quantity(c.get_string("convergence.quantity", q_default)); });

  rc.campaign_schemes =
      c.get_strings("campaign.schemes", {"weno-z3/midpoint", "weno-z5/midpoint", "weno-z7/midpoint", "weno-z5/gauss2"});
  for (const auto& s : rc.campaign_schemes) with_key("campaign.schemes", [&] { return parse_scheme_label(s); });

  rc.input_a = c.get_string("input", "");
  rc.input_b = c.get_string("compare.with", "");

  c.check_unused();
  rc.resolved = c.resolved();
  return rc;
}

CaseSetup setup_case(const RunConfig& rc, int n, const SchemeConfig& scheme) {
  CaseSetup s;
  s.gas = rc.gas;
  s.scheme = scheme;
  switch (rc.case_kind) {
    case CaseKind::Vortex: {
      const auto grid = CartesianGrid::uniform(2, n, 0.0, rc.vortex.length);
      const int qp = scheme.face_quadrature == rc.scheme.face_quadrature
                         ? rc.vortex_quadrature_points
                         : (scheme.face_quadrature == FaceQuadrature::Gauss2 ? 3 : 1);
      s.field = init_vortex(grid, rc.vortex, s.gas, qp);
      s.t_end = rc.t_end;
      break;
    }
    case CaseKind::ShuOsher: {
      const auto grid = CartesianGrid::uniform(1, n, rc.shu.x_lo, rc.shu.x_hi);
      s.field = init_shu_osher(grid, rc.shu, s.gas);
      s.t_end = rc.t_end;
      break;
    }
    case CaseKind::Hit: {
      const auto grid = CartesianGrid::uniform(3, n, 0.0, 2.0 * std::numbers::pi);
      HitInit h = init_hit(grid, rc.hit, s.gas);
      s.field = std::move(h.field);
      s.coeffs = h.coeffs;
      s.time_scale = h.tau_eddy;
      s.t_end = rc.t_end * h.tau_eddy;
      break;
    }
  }
  fill_ghosts(s.field);
  return s;
}

// ---------------------------------------------------------------------------
// Artifacts

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const fs::path& path, const std::string& header_comment, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << header_comment;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_number(r[i]);
    out << "\n";
  }
}

namespace {

constexpr const char* kSnapshotMagic = "FVBSNAP 1";
constexpr const char* kSnapshotEnd = "END_HEADER";

void put_le(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw std::runtime_error("snapshot payload truncated");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

std::string boundary_name(BoundaryKind k) { return k == BoundaryKind::Periodic ? "periodic" : "inflow-outflow"; }

}  // namespace

void write_snapshot(const fs::path& path, const ConservedField& f, const GasModel& gas, std::uint64_t config_hash,
                    const std::string& config_header) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const auto& g = f.grid();
  out << kSnapshotMagic << "\n";
  out << "ndim=" << g.ndim() << "\n";
  out << "cells=" << g.cells(0) << " " << g.cells(1) << " " << g.cells(2) << "\n";
  out << "lo=" << format_number(g.lo(0)) << " " << format_number(g.lo(1)) << " " << format_number(g.lo(2)) << "\n";
  out << "hi=" << format_number(g.hi(0)) << " " << format_number(g.hi(1)) << " " << format_number(g.hi(2)) << "\n";
  out << "ghost=" << g.ghost() << "\n";
  for (int d = 0; d < 3; ++d) {
    const auto& b = g.boundary(d);
    out << "boundary" << d << "=" << boundary_name(b.kind) << " " << format_number(b.inflow_state.density) << " "
        << format_number(b.inflow_state.momentum[0]) << " " << format_number(b.inflow_state.momentum[1]) << " "
        << format_number(b.inflow_state.momentum[2]) << " " << format_number(b.inflow_state.total_energy) << "\n";
  }
  out << "time=" << format_number(f.time) << "\n";
  out << "gas=" << format_number(gas.gamma) << " " << format_number(gas.cp) << " " << format_number(gas.prandtl)
      << "\n";
  out << "config_hash=" << std::hex << std::setw(16) << std::setfill('0') << config_hash << std::dec << "\n";
  out << "ncomp=" << f.ncomp() << "\n";
  out << "layout=component-major,x-fastest,float64-le\n";
  std::istringstream cfg(config_header);
  std::string line;
  while (std::getline(cfg, line))
    if (!line.empty()) out << (line[0] == '#' ? line : "# " + line) << "\n";
  out << kSnapshotEnd << "\n";
  for (int c = 0; c < f.ncomp(); ++c) f.for_each_interior([&](int i, int j, int k) { put_le(out, f.at(c, i, j, k)); });
  if (!out) throw std::runtime_error("error writing " + path.string());
}

Snapshot read_snapshot(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read snapshot " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != kSnapshotMagic) throw std::runtime_error(path.string() + " is not a snapshot file");
  Snapshot s;
  while (std::getline(in, line) && line != kSnapshotEnd) {
    if (line.empty()) continue;
    const bool comment = line[0] == '#';
    if (comment) line.erase(0, std::min(line.size(), line.find_first_not_of("# ")));
    const auto eq = line.find('=');
    if (eq != std::string::npos) (comment ? s.config : s.header)[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (line != kSnapshotEnd) throw std::runtime_error(path.string() + ": missing end of header");
  auto field = [&](const std::string& key) {
    const auto it = s.header.find(key);
    if (it == s.header.end()) throw std::runtime_error(path.string() + ": header lacks '" + key + "'");
    return std::istringstream(it->second);
  };
  int ndim = 0, ghost = 0;
  std::array<int, 3> cells{};
  std::array<double, 3> lo{}, hi{};
  field("ndim") >> ndim;
  field("ghost") >> ghost;
  {
    auto is = field("cells");
    is >> cells[0] >> cells[1] >> cells[2];
    auto il = field("lo");
    il >> lo[0] >> lo[1] >> lo[2];
    auto ih = field("hi");
    ih >> hi[0] >> hi[1] >> hi[2];
  }
  CartesianGrid g(ndim, cells, lo, hi, ghost);
  for (int d = 0; d < 3; ++d) {
    auto is = field("boundary" + std::to_string(d));
    std::string kind;
    BoundarySpec b;
    is >> kind >> b.inflow_state.density >> b.inflow_state.momentum[0] >> b.inflow_state.momentum[1] >>
        b.inflow_state.momentum[2] >> b.inflow_state.total_energy;
    b.kind = kind == "periodic" ? BoundaryKind::Periodic : BoundaryKind::InflowOutflow;
    g.set_boundary(d, b);
  }
  double gamma = 0, cp = 0, pr = 0;
  {
    auto is = field("gas");
    is >> gamma >> cp >> pr;
  }
  s.gas = GasModel::from_cp(gamma, cp, pr);
  {
    auto is = field("config_hash");
    is >> std::hex >> s.config_hash;
  }
  s.field = ConservedField(g);
  field("time") >> s.field.time;
  for (int c = 0; c < s.field.ncomp(); ++c)
    s.field.for_each_interior([&](int i, int j, int k) { s.field.at(c, i, j, k) = get_le(in); });
  return s;
}

std::string time_stamp(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

ConservationTotals conservation_totals(const ConservedField& f) {
  ConservationTotals t;
  const int nd = f.grid().ndim();
  const double vol = f.grid().cell_volume();
  t.mass = f.integral(0);
  for (int d = 0; d < nd; ++d) t.momentum[d] = f.integral(1 + d);
  t.energy = f.integral(nd + 1);
  double scale = 0.0;
  f.for_each_interior([&](int i, int j, int k) {
    const ConservedState s = f.state(i, j, k);
    double m2 = 0.0;
    for (int d = 0; d < nd; ++d) m2 += s.momentum[d] * s.momentum[d];
    scale += std::sqrt(m2) * vol;
  });
  t.momentum_scale = scale;
  return t;
}

ConservationDrift conservation_drift(const ConservationTotals& a, const ConservationTotals& b) {
  ConservationDrift d;
  d.mass = std::abs(b.mass - a.mass) / std::abs(a.mass);
  d.energy = std::abs(b.energy - a.energy) / std::abs(a.energy);
  double m = 0.0;
  for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(b.momentum[i] - a.momentum[i]));
  d.momentum = a.momentum_scale > 0.0 ? m / a.momentum_scale : m;
  return d;
}

// ---------------------------------------------------------------------------
// Drivers

namespace {

std::string scheme_tag(const SchemeConfig& s) {
  return to_string(s.reconstruction) + "_" + to_string(s.face_quadrature);
}

bool contains_time(const std::vector<double>& ts, double t) {
  for (double x : ts)
    if (std::abs(x - t) <= 1e-12 * std::max(1.0, std::abs(x))) return true;
  return false;
}

}  // namespace

RunSummary execute_run(const RunConfig& rc, int n, const SchemeConfig& scheme, const fs::path& dir,
                       std::ostream& log) {
  RunSummary r;
  r.setup = setup_case(rc, n, scheme);
  CaseSetup& s = r.setup;
  r.initial = s.field;
  const double scale = s.time_scale;
  const bool hit = rc.case_kind == CaseKind::Hit;
  const ConservationTotals t0 = conservation_totals(s.field);
  const std::string header = rc.header() + "# run.nx=" + std::to_string(n) + "\n# run.scheme=" + s.scheme.label() +
                             "\n# run.config_hash=" + std::to_string(rc.hash()) + "\n";

  // Sample times in seconds; the integrator lands on each exactly.
  std::vector<double> series_t, spectrum_t, snapshot_t;
  if (rc.wants("series") && rc.series_interval > 0.0) {
    const long count = std::lround(std::floor(rc.t_end / rc.series_interval + 1e-9));
    for (long i = 1; i <= count; ++i) series_t.push_back(std::min(rc.t_end, i * rc.series_interval));
    if (series_t.empty() || series_t.back() < rc.t_end) series_t.push_back(rc.t_end);
  }
  if (rc.wants("spectrum")) spectrum_t = rc.spectrum_times;
  if (rc.wants("snapshot")) snapshot_t = rc.snapshot_times;
  std::vector<double> samples;
  for (const auto* v : {&series_t, &spectrum_t, &snapshot_t})
    for (double t : *v) samples.push_back(t * scale);

  std::vector<std::vector<double>> series_rows;
  auto record = [&](const ConservedField& f) {
    const double tu = f.time / scale;
    const double ke = kinetic_energy(f);
    const double ens = hit ? enstrophy(f) : 0.0;
    const ConservationDrift d = conservation_drift(t0, conservation_totals(f));
    if (rc.wants("series") && (f.time == 0.0 || contains_time(series_t, tu))) {
      series_rows.push_back({f.time, hit ? tu : f.time, ke, ens, d.mass});
      r.series.append(hit ? tu : f.time, ke, ens);
    }
    if (contains_time(spectrum_t, tu)) {
      const SpectrumBins b = shell_spectrum(vorticity_spectral(f), f.grid().cells(0));
      r.spectra[tu] = b;
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < b.values.size(); ++i) rows.push_back({static_cast<double>(b.shells[i]), b.values[i]});
      write_csv(dir / ("spectrum_" + time_stamp(tu) + ".csv"), header + "# spectrum=vorticity\n", {"k", "E"}, rows);
    }
    if (contains_time(snapshot_t, tu))
      write_snapshot(dir / ("snap_" + time_stamp(tu) + ".fvb"), f, s.gas, rc.hash(), header);
  };

  fs::create_directories(dir);
  record(s.field);

  FiniteVolumeSolver solver(s.scheme, s.gas, s.coeffs);
  AdvanceOptions opts;
  opts.cfl = rc.cfl;
  opts.sample_times = samples;
  opts.max_steps = rc.max_steps;
  opts.observer = [&](const ConservedField& f, const StepStats& st, bool at_sample) {
    r.riemann_solves += st.riemann_solves;
    r.reconstruction_calls += st.reconstruction_calls;
    if (at_sample) record(f);
  };
  const auto start = std::chrono::steady_clock::now();
  AdvanceResult res = solver.advance(std::move(s.field), s.t_end, opts);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  s.field = std::move(res.field);
  r.steps = res.steps.size();
  r.drift = conservation_drift(t0, conservation_totals(s.field));

  if (rc.wants("series"))
    write_csv(dir / "series.csv", header, {"t", "t_over_tau", "ke", "enstrophy", "mass_drift"}, series_rows);

  log << "run case=" << to_string(rc.case_kind) << " n=" << n << " scheme=" << s.scheme.label()
      << " t=" << format_number(s.field.time) << " steps=" << r.steps << " mass_drift=" << format_number(r.drift.mass)
      << " momentum_drift=" << format_number(r.drift.momentum) << " energy_drift=" << format_number(r.drift.energy)
      << " wall=" << std::fixed << std::setprecision(2) << r.wall_time << std::defaultfloat
      << "s riemann_solves=" << r.riemann_solves << "\n";
  return r;
}

int cmd_run(const RunConfig& rc, std::ostream& log) {
  execute_run(rc, rc.nx, rc.scheme, rc.output_dir, log);
  return 0;
}

namespace {

void write_report(const fs::path& path, const std::string& header, const std::string& label,
                  const ConvergenceReport* rep, const std::vector<ConvergenceSample>& samples) {
  std::vector<std::vector<double>> rows;
  const double order = rep ? rep->fitted_order : std::nan("");
  for (const auto& s : samples) rows.push_back({static_cast<double>(s.n), s.error, order});
  write_csv(path, header + "# series=" + label + "\n", {"N", "error", "fitted_order"}, rows);
}

}  // namespace

int cmd_convergence(const RunConfig& rc, std::ostream& log) {
  if (rc.resolutions.size() < 2) throw ConfigError("config key 'convergence.resolutions': need at least two");
  RunConfig quiet = rc;
  quiet.outputs.clear();
  std::optional<ConservedField> reference;
  if (rc.case_kind != CaseKind::Vortex) {
    if (rc.reference_n < 4 * rc.resolutions.back())
      throw ConfigError("config key 'convergence.reference_n': must be >= 4x the finest resolution");
    RunSummary ref =
        execute_run(quiet, rc.reference_n, rc.reference_scheme, rc.output_dir / ("reference_N" + std::to_string(rc.reference_n)), log);
    reference = std::move(ref.setup.field);
  }
  std::vector<ConvergenceSample> samples;
  for (int n : rc.resolutions) {
    RunSummary r = execute_run(quiet, n, rc.scheme, rc.output_dir / ("N" + std::to_string(n)), log);
    double err = 0.0;
    if (reference) {
      if (rc.reference_n % n != 0) throw ConfigError("convergence.reference_n must be a multiple of every resolution");
      err = l1_error(coarsen_average(*reference, rc.reference_n / n), r.setup.field, rc.error_quantity, rc.gas);
    } else {
      err = l1_error(r.setup.field, r.initial, rc.error_quantity, rc.gas);
    }
    samples.push_back({n, err});
    log << "  N=" << n << " error=" << format_number(err) << "\n";
  }
  const ConvergenceReport rep = fit_order(samples);
  write_report(rc.output_dir / "report.csv", rc.header(), rc.scheme.label(), &rep, rep.samples);
  log << "convergence scheme=" << rc.scheme.label() << " fitted_order=" << format_number(rep.fitted_order)
      << " residual=" << format_number(rep.fit_residual) << "\n";
  return 0;
}

int cmd_hit_campaign(const RunConfig& rc, std::ostream& log) {
  if (rc.case_kind != CaseKind::Hit) throw ConfigError("config key 'case': hit-campaign needs case=hit");
  std::optional<ConservedField> reference;
  RunConfig quiet = rc;
  quiet.outputs.clear();
  const bool have_ref = rc.reference_n > rc.resolutions.back();
  if (have_ref) {
    for (int n : rc.resolutions)
      if (rc.reference_n % n != 0) throw ConfigError("config key 'convergence.reference_n': not a multiple of every N");
    RunSummary ref = execute_run(quiet, rc.reference_n, rc.reference_scheme,
                                 rc.output_dir / ("reference_N" + std::to_string(rc.reference_n)), log);
    reference = std::move(ref.setup.field);
  }
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  for (std::size_t si = 0; si < rc.campaign_schemes.size(); ++si) {
    const SchemeConfig scheme = parse_scheme_label(rc.campaign_schemes[si]);
    std::vector<ConvergenceSample> samples;
    for (int n : rc.resolutions) {
      const fs::path dir = rc.output_dir / (scheme_tag(scheme) + "_N" + std::to_string(n));
      RunSummary r = execute_run(rc, n, scheme, dir, log);
      if (reference) {
        const double e = l1_error(coarsen_average(*reference, rc.reference_n / n), r.setup.field, rc.error_quantity,
                                  rc.gas);
        samples.push_back({n, e});
      }
    }
    if (!samples.empty()) {
      const bool fit = samples.size() >= 2;
      ConvergenceReport rep;
      if (fit) rep = fit_order(samples);
      for (const auto& s : samples)
        rows.push_back({static_cast<double>(si), static_cast<double>(s.n), s.error, fit ? rep.fitted_order : std::nan("")});
      if (fit) log << "campaign scheme=" << scheme.label() << " fitted_order=" << format_number(rep.fitted_order) << "\n";
    }
    labels.push_back(std::to_string(si) + "=" + rc.campaign_schemes[si]);
  }
  if (reference) {
    std::string legend = "# schemes:";
    for (const auto& l : labels) legend += " " + l;
    write_csv(rc.output_dir / "report.csv", rc.header() + legend + "\n", {"scheme", "N", "error", "fitted_order"},
              rows);
  }
  return 0;
}

int cmd_spectrum(const RunConfig& rc, std::ostream& log) {
  if (rc.input_a.empty()) throw ConfigError("config key 'input': snapshot path required");
  const Snapshot s = read_snapshot(rc.input_a);
  const SpectrumBins b = shell_spectrum(vorticity_spectral(s.field), s.field.grid().cells(0));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < b.values.size(); ++i) rows.push_back({static_cast<double>(b.shells[i]), b.values[i]});
  // snap_<t>.fvb keeps its stamp, which is t/tau for HIT runs
  std::string stamp = rc.input_a.stem().string();
  stamp = stamp.rfind("snap_", 0) == 0 ? stamp.substr(5) : time_stamp(s.field.time);
  const fs::path out = rc.output_dir / ("spectrum_" + stamp + ".csv");
  write_csv(out, rc.header() + "# spectrum=vorticity\n# source=" + rc.input_a.string() + "\n", {"k", "E"}, rows);
  log << "spectrum " << out.string() << " shells=" << b.values.size() << "\n";
  return 0;
}

int cmd_compare(const RunConfig& rc, std::ostream& log) {
  if (rc.input_a.empty() || rc.input_b.empty())
    throw ConfigError("config keys 'input' and 'compare.with': two snapshot paths required");
  Snapshot a = read_snapshot(rc.input_a);
  Snapshot b = read_snapshot(rc.input_b);
  ConservedField* fine = &a.field;
  ConservedField* coarse = &b.field;
  if (fine->grid().cells(0) < coarse->grid().cells(0)) std::swap(fine, coarse);
  const int factor = fine->grid().cells(0) / coarse->grid().cells(0);
  const ConservedField restricted = coarsen_average(*fine, factor);
  const double e = l1_error(restricted, *coarse, rc.error_quantity, a.gas);
  log << "compare quantity=" << to_string(rc.error_quantity) << " factor=" << factor << " l1=" << format_number(e)
      << "\n";
  return 0;
}

}  // namespace fvbench
