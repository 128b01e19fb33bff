#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rydgate/design_u1.hpp"
#include "rydgate/design_u2.hpp"
#include "rydgate/noise.hpp"

// Config parsing (presentation units: MHz ÷2π, ns, µK, µm), CSV writers and run manifests.
namespace rydgate::io {

using Json = nlohmann::json;

// Malformed configuration; `key` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Reads a config file; a run manifest is accepted and yields its embedded config.
Json load_config(const std::filesystem::path& path);
Json parse_config(const std::string& text);

SearchU1Options parse_search_u1(const Json& config);
SearchU2Options parse_search_u2(const Json& config);

struct DesignInput {
  enum class Kind { u1, u2 } kind = Kind::u1;
  GateDesignU1 u1;
  GateDesignU2 u2;
};
// "design": {"type": "u1", omega_mhz, delta_mhz, v_mhz, n} or
// {"type": "u2", omega_c_mhz, delta_c_mhz, omega_t_mhz, delta_t_mhz, v_mhz, n_c, n_t} or
// {"table": 1|2|3, "row": k}.
DesignInput parse_design(const Json& config);

struct SweepConfig {
  NoiseScenario base;
  std::vector<double> temperatures;  // K
  std::vector<DriftMode> modes;
  FidelityOptions options;
  GateDesignU1 design;
};
// "noise" block; the design defaults to Table 3 when "design" is absent.
SweepConfig parse_noise_sweep(const Json& config);

// "cz": {"tolerance": t}; global-phase distance allowed by cz-verify (default 1e−4).
double parse_cz_tolerance(const Json& config);

std::string drift_mode_name(DriftMode mode);
DriftMode parse_drift_mode(const std::string& name, const std::string& key = "drift_mode");

inline constexpr int csv_schema_version = 1;
const std::vector<std::string>& u1_columns();
const std::vector<std::string>& u2_columns();
const std::vector<std::string>& sweep_columns();

void write_u1_csv(std::ostream& os, const std::vector<GateDesignU1>& designs);
void write_u2_csv(std::ostream& os, const std::vector<GateDesignU2>& designs);

struct SweepRow {
  double temperature = 0.0;  // K
  DriftMode mode = DriftMode::none;
  FidelityEstimate estimate;
};
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
// Plain two-column series for plotting.
void write_series(std::ostream& os, const std::vector<double>& x, const std::vector<double>& y);

// Command, resolved config, seed, code version, CSV schemas and output list.
Json make_manifest(const std::string& command, const Json& config, std::uint64_t seed, int workers,
                   const std::vector<std::string>& outputs);
void write_manifest(const std::filesystem::path& dir, const Json& manifest);

}  // namespace rydgate::io
