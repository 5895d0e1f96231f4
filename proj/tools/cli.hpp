#pragma once

// Command-line front end. Every command reads a RunConfig (command name plus
// string parameters), validates it, and writes either vectors or a CSV report
// whose first line is "# sjlt <command> key=value ..." with the full effective
// configuration. `--verify FILE` recomputes a previous output and compares.

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sjlt::cli {

enum class Command { transform, distortion_bench, moment_report, graph_count, tail_estimate };

struct RunConfig {
  Command command = Command::transform;
  std::map<std::string, std::string> params;
};

/// Machine-readable failure: printed as "error,<code>,<message>".
class CliError : public std::runtime_error {
 public:
  CliError(std::string code, const std::string& message, int exit_status)
      : std::runtime_error(message), code_(std::move(code)), status_(exit_status) {}
  const std::string& code() const noexcept { return code_; }
  int exit_status() const noexcept { return status_; }

 private:
  std::string code_;
  int status_;
};

inline constexpr int kExitInvalid = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitBudget = 4;
inline constexpr int kExitVerify = 5;

std::string command_name(Command c);
Command parse_command(const std::string& name);

/// Parses argv with CLI11. Throws CliError on unknown flags or commands.
RunConfig parse_args(int argc, const char* const* argv);

/// Runs the command. Output goes to params["out"] (stdout when absent or "-");
/// diagnostics go to `err`. Returns the process exit status and never throws.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// The report text a command would write, without touching the filesystem
/// for output. Throws CliError.
std::string render(const RunConfig& config);

/// Reads the `# sjlt ...` header of a report back into a RunConfig.
RunConfig parse_report_header(const std::string& line);

}  // namespace sjlt::cli
