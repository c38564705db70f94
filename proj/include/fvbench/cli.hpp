// Run configuration, experiment drivers and on-disk formats.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fvbench/analysis.hpp"
#include "fvbench/cases.hpp"
#include "fvbench/integrator.hpp"

namespace fvbench {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key=value configuration with dotted keys. Lines starting with '#'
/// are comments. Typed getters record the value they resolve (default or
/// given) so the full effective configuration can be written out.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<config>");
  static Config load(const std::filesystem::path& path);

  /// Applies a "key=value" override.
  void set(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key, double fallback);
  int get_int(const std::string& key, int fallback);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback);
  std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback);
  std::vector<std::string> get_strings(const std::string& key, const std::vector<std::string>& fallback);

  /// Throws ConfigError naming any key that no getter consumed.
  void check_unused() const;

  /// Effective configuration, sorted by key.
  const std::map<std::string, std::string>& resolved() const { return resolved_; }

 private:
  std::string raw(const std::string& key, const std::string& fallback);

  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> resolved_;
  std::set<std::string> used_;
};

enum class CaseKind { Vortex, ShuOsher, Hit };
std::string to_string(CaseKind c);

/// Scheme label in campaign lists: "<reconstruction>/<quadrature>".
SchemeConfig parse_scheme_label(const std::string& label);

struct RunConfig {
  CaseKind case_kind = CaseKind::Vortex;
  int nx = 64;
  SchemeConfig scheme;
  GasModel gas;
  double cfl = 0.7;
  /// Final time in case time units: seconds, or t/tau for the turbulence case.
  double t_end = 5e-3;
  std::vector<std::string> outputs;  // series, spectrum, snapshot, report
  double series_interval = 0.0;      // case time units
  std::vector<double> spectrum_times;
  std::vector<double> snapshot_times;
  std::filesystem::path output_dir = "out";
  std::size_t max_steps = 50'000'000;

  VortexParams vortex;
  int vortex_quadrature_points = 1;
  ShuOsherParams shu;
  HitParams hit;

  // convergence
  std::vector<int> resolutions;
  int reference_n = 0;
  SchemeConfig reference_scheme;
  Quantity error_quantity = Quantity::VelocityX;

  // hit-campaign
  std::vector<std::string> campaign_schemes;

  // spectrum / compare
  std::filesystem::path input_a, input_b;

  std::map<std::string, std::string> resolved;

  bool wants(const std::string& output) const;
  /// Resolved configuration as "# key=value" lines.
  std::string header() const;
  /// FNV-1a hash of the resolved configuration.
  std::uint64_t hash() const;
};

/// Resolves defaults (the published settings of each case) and validates.
/// Throws ConfigError with the offending key.
RunConfig resolve_config(Config cfg);

/// Fully set-up simulation for one case at one resolution.
struct CaseSetup {
  ConservedField field;
  GasModel gas;
  TransportCoeffs coeffs;
  SchemeConfig scheme;
  double time_scale = 1.0;  // seconds per case time unit (tau for turbulence)
  double t_end = 0.0;       // seconds
};

CaseSetup setup_case(const RunConfig& rc, int n, const SchemeConfig& scheme);

// ---------------------------------------------------------------------------
// Artifacts

/// Number formatting used by every CSV artifact (17 significant digits).
std::string format_number(double v);

void write_csv(const std::filesystem::path& path, const std::string& header_comment,
               const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows);

struct Snapshot {
  ConservedField field;
  GasModel gas;
  std::uint64_t config_hash = 0;
  std::map<std::string, std::string> header;
  std::map<std::string, std::string> config;  // "# key=value" lines of the run configuration
};

void write_snapshot(const std::filesystem::path& path, const ConservedField& f, const GasModel& gas,
                    std::uint64_t config_hash, const std::string& config_header = "");
Snapshot read_snapshot(const std::filesystem::path& path);

/// File-name stamp for a sample time ("4", "0.5", "0.005").
std::string time_stamp(double t);

struct ConservationTotals {
  double mass = 0.0;
  std::array<double, 3> momentum{0.0, 0.0, 0.0};
  double energy = 0.0;
  double momentum_scale = 0.0;  // integral of |m|, normalizes momentum drift
};
ConservationTotals conservation_totals(const ConservedField& f);

struct ConservationDrift {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
};
ConservationDrift conservation_drift(const ConservationTotals& initial, const ConservationTotals& now);

// ---------------------------------------------------------------------------
// Drivers. Each returns a process exit status and writes a summary to `log`.

struct RunSummary {
  CaseSetup setup;  // holds the final field
  ConservedField initial;
  std::size_t steps = 0;
  std::uint64_t riemann_solves = 0;
  std::uint64_t reconstruction_calls = 0;
  double wall_time = 0.0;
  ConservationDrift drift;
  TurbulenceSeries series;
  std::map<double, SpectrumBins> spectra;
};

/// Runs one simulation into `dir`, writing the artifacts requested by rc.
RunSummary execute_run(const RunConfig& rc, int n, const SchemeConfig& scheme, const std::filesystem::path& dir,
                       std::ostream& log);

int cmd_run(const RunConfig& rc, std::ostream& log);
int cmd_convergence(const RunConfig& rc, std::ostream& log);
int cmd_hit_campaign(const RunConfig& rc, std::ostream& log);
int cmd_spectrum(const RunConfig& rc, std::ostream& log);
int cmd_compare(const RunConfig& rc, std::ostream& log);

}  // namespace fvbench
