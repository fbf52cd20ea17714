#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace funkgeo::reports {

using Json = nlohmann::ordered_json;

/// Run parameters shared by all commands; zero/empty fields select the
/// command's default.
struct RunConfig {
  std::string command;     ///< "roots", "sphere", "cpn"
  std::string subcommand;  ///< e.g. "check", "kernel", "rank"
  std::uint64_t seed = 0;
  std::string family = "B";
  int rank = 2;
  std::string space = "CP";
  int lmax = 8;
  int circles = 400;
  int quad = 0;
  int n = 2;
  int degree = 1;
  int geodesics = 0;
  double radius = 0.5;
  double margin = 0.3;
  int trials = 1000;
  int samples = 10000;
  double tol = 0.0;
  double tol_ratio = 1e-8;
  bool want_csv = false;
};

struct Report {
  Json body;
  std::string csv;  ///< empty unless requested and supported
  bool passed = true;

  std::string json_text() const;
};

/// Dispatches to the experiment; throws funkgeo::Error on invalid input.
Report run(const RunConfig& config);

/// %.17g
std::string format_number(double v);

}  // namespace funkgeo::reports
