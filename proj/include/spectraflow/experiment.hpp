#pragma once

// Batch front end. A config names one command and its parameters:
//   {"command": "...", "params": {...}, "seed": 7, "output": "path or -"}
// run() validates the config, dispatches to the library and writes one table
// (CSV with '#' header lines) or JSON document.
//
// Exit status: 0 on success, 2 for schema violations, 3 when a module refuses
// the computation (the module's message is passed through verbatim).

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace spectraflow::experiment {

enum class Command { SphereSpectrum, Flow, Lasso, Align, Project, KatoCheck, Identify };

std::string to_string(Command c);
std::optional<Command> command_from_string(const std::string &s);

struct ExperimentConfig {
  Command command = Command::SphereSpectrum;
  nlohmann::json params = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::string output = "-"; ///< "-" is standard output
};

/// Config rejected before dispatch. `pointer` is a JSON pointer into the config.
class SchemaError : public std::runtime_error {
public:
  SchemaError(std::string pointer, const std::string &what)
      : std::runtime_error(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string &pointer() const { return pointer_; }

private:
  std::string pointer_;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitRefused = 3;

/// Parses and validates the top level and the command's params.
ExperimentConfig parse_config(const nlohmann::json &j);

/// Validates params for the command, filling defaults. Throws SchemaError.
nlohmann::json validate_params(Command c, const nlohmann::json &params);

/// Runs the experiment, writing the artifact to config.output (or `out` when it
/// is "-") and diagnostics to `err`. Returns the exit status.
int run(const ExperimentConfig &config, std::ostream &out, std::ostream &err);

/// Parses the JSON document and runs it; schema errors map to exit 2.
int run_json(const nlohmann::json &j, std::ostream &out, std::ostream &err);

} // namespace spectraflow::experiment
