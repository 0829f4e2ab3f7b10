#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "triplewell/dynamics.hpp"
#include "triplewell/grid.hpp"
#include "triplewell/model.hpp"

namespace triplewell::app {

enum ExitCode : int { kOk = 0, kOther = 1, kConfig = 2, kConvergence = 3, kVerifyFailed = 4 };

/// Packet placement: either a named well or an explicit centre.
struct PacketConfig {
  std::optional<Well> well;
  double center = 0.0;
  double squeeze = 0.0;
  PacketSpec resolve(const Model& model) const;
};

struct RunConfig {
  ModelParams model;
  GridSpec grid;
  std::optional<PacketConfig> packet;
  std::vector<double> times;
  int n_max = 40;
  int states = 10;
  std::filesystem::path outputs = ".";
};

/// Parses and validates a config document. Unknown keys raise ValidationError.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

enum class Method { propagator, spectral, both };
Method parse_method(const std::string& name);

/// Shortest round-trip text with 17 significant digits, locale independent.
std::string format_number(double value);

void cmd_potential(const RunConfig& config, std::ostream& log);
void cmd_states(const RunConfig& config, std::ostream& log);
void cmd_expand(const RunConfig& config, std::ostream& log);
void cmd_evolve(const RunConfig& config, Method method, std::ostream& log);
/// Runs the invariant suite and writes verify.json. Returns true iff every check passes.
bool cmd_verify(const std::optional<RunConfig>& config, std::ostream& log);

/// Full command-line entry point returning the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace triplewell::app
