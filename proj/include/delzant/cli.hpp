#pragma once

#include "delzant/verify.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace delzant::cli {

enum class Command { Validate, Divergence, Geodesic, Boundary, Pythagoras, Torify, VerifyAll };
enum class Format { Json, Csv };

struct RunConfig {
  Command command = Command::Validate;
  std::string input_path;
  std::string aux_path;  // --points, --spec or --triple
  std::string face;      // --face, comma separated facet indices
  std::string output_path;  // empty: stdout
  Format format = Format::Json;
  std::uint64_t seed = 1;
  Tolerances tolerances;
};

inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInputError = 2;

/// Parses the command line and runs it. Exit codes: 0 success, 1 a check
/// failed or the computation raised, 2 bad arguments, unreadable or malformed
/// input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace delzant::cli
