#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlp/eval.hpp"

namespace qlp::cli {

/// Fully resolved options of one CLI invocation; echoed into manifest.json.
struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  MethodSpec spec;
  std::size_t folds = 10;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> cutoff;
  std::uint64_t shots = 1000;
  std::string shots_mode = "uniform";
  std::string parity = "odd";
  bool tune = false;
  std::string grid;
  std::string objective = "precision-area";
  std::size_t top_n = 500;
  std::optional<std::size_t> top;
  std::filesystem::path out_dir = ".";
};

/// "a,b,c", "lin:lo:hi:n" (n evenly spaced points) or "log:lo:hi:n"
/// (n log-spaced points). Throws std::invalid_argument on bad input.
std::vector<double> parse_grid(std::string_view text);

/// Exit status: 0 success, 1 data or numeric error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlp::cli
