// funkgeo: batch front end over the C API.
//
//   funkgeo roots check --family B --rank 2
//   funkgeo sphere kernel --lmax 8 --circles 400 --quad 256 --seed 7
//   funkgeo cpn rank --n 2 --degree 2 --geodesics 200 --seed 7 --csv op.csv
//
// Exit status: 0 all checks passed, 1 an invariant check failed (or the
// computation broke down), 2 invalid input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "funkgeo/funkgeo.h"

namespace {

struct Options {
  fg_params params{};
  std::string family = "B";
  std::string space = "CP";
  std::string output;
  std::string csv;
};

void add_flags(CLI::App* cmd, Options& o) {
  auto& p = o.params;
  cmd->add_option("--family", o.family, "root system family (A B C D BC E6 E7 E8 F4 G2)");
  cmd->add_option("--rank", p.rank, "root system rank");
  cmd->add_option("--space", o.space, "symmetric space (S CP HP OP Q)");
  cmd->add_option("--n", p.n, "complex dimension / space index");
  cmd->add_option("--lmax", p.lmax, "harmonic band limit");
  cmd->add_option("--circles", p.circles, "number of sampled great circles");
  cmd->add_option("--quad", p.quad, "quadrature points per geodesic (0: default)");
  cmd->add_option("--seed", p.seed, "64-bit RNG seed");
  cmd->add_option("--degree", p.degree, "bidegree D");
  cmd->add_option("--geodesics", p.geodesics, "number of sampled geodesics (0: default)");
  cmd->add_option("--radius", p.radius, "ball radius");
  cmd->add_option("--margin", p.margin, "exclusion margin around the ball");
  cmd->add_option("--trials", p.trials, "random configurations");
  cmd->add_option("--samples", p.samples, "distance samples");
  cmd->add_option("--tol", p.tol, "geometric tolerance (0: default)");
  cmd->add_option("--tol-ratio", p.tol_ratio, "relative rank threshold");
  cmd->add_option("--output,-o", o.output, "report path (default: stdout)");
  cmd->add_option("--csv", o.csv, "secondary CSV output path");
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

int exit_code_for(fg_status s) {
  switch (s) {
    case FG_ERR_NUMERICALLY_UNSTABLE:
    case FG_ERR_ILL_CONDITIONED:
    case FG_ERR_INSUFFICIENT_GEODESICS:
    case FG_ERR_NON_FINITE:
    case FG_ERR_NO_PREIMAGE:
    case FG_ERR_INTERNAL:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  fg_params_init(&o.params);

  CLI::App app{"Funk transform experiments on symmetric spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fg_version()));

  const std::vector<std::pair<std::string, std::vector<std::string>>> tree = {
      {"roots", {"check", "table", "midpoint"}},
      {"sphere", {"kernel", "invert", "eigen"}},
      {"cpn", {"rank", "support", "remark31", "avoidline", "sample"}},
  };
  std::string command, subcommand;
  for (const auto& [name, leaves] : tree) {
    auto* cmd = app.add_subcommand(name);
    cmd->require_subcommand(1);
    for (const auto& leaf : leaves) {
      auto* sub = cmd->add_subcommand(leaf);
      add_flags(sub, o);
      sub->callback([&command, &subcommand, name = name, leaf = leaf] {
        command = name;
        subcommand = leaf;
      });
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  o.params.family = o.family.c_str();
  o.params.space = o.space.c_str();
  o.params.want_csv = o.csv.empty() ? 0 : 1;

  fg_report* report = nullptr;
  const fg_status st = fg_run(command.c_str(), subcommand.c_str(), &o.params, &report);
  if (st != FG_OK) {
    std::cerr << "funkgeo: " << fg_status_string(st) << ": " << fg_last_error() << "\n";
    return exit_code_for(st);
  }

  int code = fg_report_passed(report) ? 0 : 1;
  const char* json = fg_report_json(report);
  if (o.output.empty() || o.output == "-") {
    std::fputs(json, stdout);
    std::fflush(stdout);
  } else if (!write_file(o.output, json)) {
    std::cerr << "funkgeo: cannot write " << o.output << "\n";
    code = 2;
  }
  if (!o.csv.empty()) {
    const char* csv = fg_report_csv(report);
    if (!csv) {
      std::cerr << "funkgeo: " << command << " " << subcommand << " has no CSV output\n";
    } else if (!write_file(o.csv, csv)) {
      std::cerr << "funkgeo: cannot write " << o.csv << "\n";
      code = 2;
    }
  }
  if (code == 1) std::cerr << "funkgeo: invariant check failed\n";
  fg_report_free(report);
  return code;
}
