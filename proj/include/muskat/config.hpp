#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "muskat/diagnostics.hpp"
#include "muskat/evolution.hpp"
#include "muskat/params.hpp"
#include "muskat/vorticity.hpp"

namespace muskat {

enum class InitialKind { gaussian, mode, bump_file };

struct InitialSpec {
  InitialKind kind = InitialKind::gaussian;
  double amplitude = 0.1;
  double width_or_wavenumber = 1.0;  ///< gaussian width, or wavenumber for kind = mode
  std::filesystem::path path;        ///< kind = bump_file only
  double noise = 0.0;                ///< amplitude of seeded noise added on top
};

struct OutputSpec {
  std::filesystem::path dir = "out";
  bool snapshots = true;
};

struct RunConfig {
  double L = 0.0;
  std::size_t N = 0;
  FluidParams fluids{};
  InitialSpec initial{};
  StepperConfig stepper{};
  SolverConfig solver{};
  SobolevIndex sobolev{};
  OutputSpec output{};
};

/// Parse or validation failure. Each issue names the offending key path
/// (e.g. "fluids.mu_minus: must be positive") or, for syntax errors, the
/// line and column.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  std::vector<std::string> issues;
};

/// Parses and validates a JSON run document. Missing optional keys take
/// their defaults; unknown keys are rejected.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

std::string_view to_string(InitialKind kind);

}  // namespace muskat
