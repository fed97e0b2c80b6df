// Copyright 2026 The qig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: qig {zoo,skew,variance,check,search}.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qig/checker.hpp"
#include "qig/errors.hpp"
#include "qig/io.hpp"
#include "qig/metric.hpp"
#include "qig/search.hpp"
#include "qig/skew.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,
  kParseError = 2,
  kValidationError = 3,
  kSingularMetric = 4,
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw qig::ParseError("empty item in list '" + text + "'");
    out.push_back(item);
  }
  return out;
}

std::size_t env_threads() {
  const char* v = std::getenv("QIG_THREADS");
  if (!v || !*v) return 1;
  try {
    return std::stoul(v);
  } catch (const std::exception&) {
    throw qig::ParseError(std::string("QIG_THREADS must be a non-negative integer, got '") + v + "'");
  }
}

std::string significant(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g", v);
  return buf;
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw qig::ParseError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

struct Paths {
  std::string state;
  std::string observable;
  std::string metric;
};

int cmd_zoo() {
  std::printf("%-12s %-12s %s\n", "id", "regularity", "m(c)");
  for (const qig::MonotoneFunction& f : qig::default_catalog()) {
    if (f.regular()) {
      std::printf("%-12s %-12s %s\n", f.id().c_str(), "regular", significant(f.metric_constant()).c_str());
    } else {
      std::printf("%-12s %-12s %s\n", f.id().c_str(), "non-regular", "-");
    }
  }
  return kOk;
}

int cmd_skew(const Paths& p) {
  const qig::MonotoneFunction f = qig::MonotoneFunction::parse(p.metric);
  const qig::DensityMatrix rho(qig::HermitianMatrix(qig::read_matrix_file(p.state)));
  const qig::HermitianMatrix a(qig::read_matrix_file(p.observable));
  std::printf("%s\n", significant(qig::skew_information(rho, a, f).value).c_str());
  return kOk;
}

int cmd_variance(const Paths& p) {
  const qig::DensityMatrix rho(qig::HermitianMatrix(qig::read_matrix_file(p.state)));
  const qig::HermitianMatrix a(qig::read_matrix_file(p.observable));
  std::printf("%s\n", significant(qig::variance(rho, a)).c_str());
  return kOk;
}

struct CheckFlags {
  std::uint64_t seed = 42;
  std::size_t trials = 500;
  std::string dims;
  std::string metrics;
  std::string checks;
  std::string out;
  bool inject_square = false;
};

int cmd_check(const CheckFlags& flags) {
  qig::TrialConfig config = qig::TrialConfig::defaults();
  config.seed = flags.seed;
  config.trials_per_check = flags.trials;
  config.threads = env_threads();
  config.inject_square_fixture = flags.inject_square;
  if (!flags.dims.empty()) {
    config.single_dims.clear();
    config.bipartite_dims.clear();
    for (const std::string& d : split_list(flags.dims)) {
      if (d.find('x') != std::string::npos) {
        config.bipartite_dims.push_back(qig::parse_bipartite(d));
      } else {
        if (d.find_first_not_of("0123456789") != std::string::npos || std::stoul(d) == 0) {
          throw qig::ParseError("bad dimension '" + d + "'");
        }
        config.single_dims.push_back(std::stoul(d));
      }
    }
  }
  if (!flags.metrics.empty()) config.metric_ids = split_list(flags.metrics);
  if (!flags.checks.empty()) config.checks = split_list(flags.checks);
  try {
    config.validate();
  } catch (const qig::ValidationError& e) {
    throw qig::ParseError(e.what());
  }

  const std::vector<qig::CheckReport> reports = qig::run_suite(config);
  std::size_t failing = 0;
  for (const qig::CheckReport& r : reports) {
    if (r.failures == 0) continue;
    ++failing;
    std::printf("FAIL %-30s %-12s %-4s failures=%zu/%zu worst=%s seed=%llu\n", r.check_id.c_str(),
                r.metric_id.c_str(), r.dims.c_str(), r.failures, r.trials, significant(r.worst_residual).c_str(),
                static_cast<unsigned long long>(r.worst_case_seed));
  }
  std::printf("%zu checks, %zu failing, %zu failed trials\n", reports.size(), failing,
              qig::total_failures(reports));
  if (!flags.out.empty()) write_json(flags.out, qig::report_file(config, reports));
  return failing == 0 ? kOk : kChecksFailed;
}

struct SearchFlags {
  std::string metric = "wyd:0.5";
  std::string dims = "2x2";
  std::size_t budget = 200000;
  std::uint64_t seed = 1;
  std::size_t restarts = 8;
  std::string constrain = "none";
  std::string out;
};

int cmd_search(const SearchFlags& flags) {
  qig::SearchOptions opts;
  opts.budget = flags.budget;
  opts.seed = flags.seed;
  opts.restarts = flags.restarts;
  opts.threads = env_threads();
  qig::MonotoneFunction f = qig::MonotoneFunction::wyd(0.5);
  qig::BipartiteDims dims;
  try {
    opts.constraint = qig::parse_constraint(flags.constrain);
    f = qig::MonotoneFunction::parse(flags.metric);
    dims = qig::parse_bipartite(flags.dims);
    if (opts.restarts < 1 || opts.budget < opts.restarts) throw qig::ParseError("need budget >= restarts >= 1");
  } catch (const qig::ValidationError& e) {
    throw qig::ParseError(e.what());
  }
  const qig::SearchResult r = qig::violation_search(f, dims, opts);
  std::printf("metric       %s\n", r.metric_id.c_str());
  std::printf("dims         %zux%zu\n", r.dims.n1, r.dims.n2);
  std::printf("constraint   %s\n", qig::to_string(r.constraint).c_str());
  std::printf("evaluations  %zu\n", r.evaluations);
  std::printf("best_gap     %s\n", significant(r.best_gap).c_str());
  std::printf("reverified   %s (gap %s)\n", r.reverified ? "yes" : "no", significant(r.reverified_gap).c_str());
  std::printf("violation    %s\n", r.violation() ? "yes" : "no");
  if (!flags.out.empty()) write_json(flags.out, qig::search_result_to_json(r));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric adjusted skew information toolkit"};
  app.require_subcommand(1);

  app.add_subcommand("zoo", "List the metric catalog with regularity and metric constant");

  Paths skew_paths;
  CLI::App* skew = app.add_subcommand("skew", "Metric adjusted skew information of a state and observable");
  skew->add_option("state", skew_paths.state, "State matrix JSON file")->required();
  skew->add_option("observable", skew_paths.observable, "Observable matrix JSON file")->required();
  skew->add_option("metric", skew_paths.metric, "Metric id: wyd:<p>, kubo, harmonic, bures")->required();

  Paths var_paths;
  CLI::App* var = app.add_subcommand("variance", "Variance of an observable in a state");
  var->add_option("state", var_paths.state, "State matrix JSON file")->required();
  var->add_option("observable", var_paths.observable, "Observable matrix JSON file")->required();

  CheckFlags check_flags;
  CLI::App* check = app.add_subcommand("check", "Run the randomized property suite");
  check->add_option("--seed", check_flags.seed, "Base seed");
  check->add_option("--trials", check_flags.trials, "Trials per check")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  check->add_option("--dims", check_flags.dims, "Comma list of dims, e.g. 2,3,2x2,3x3");
  check->add_option("--metrics", check_flags.metrics, "Comma list of metric ids");
  check->add_option("--checks", check_flags.checks, "Comma list of check ids (default: all)");
  check->add_option("--out", check_flags.out, "Write the JSON report here");
  check->add_flag("--inject-square", check_flags.inject_square, "Add the x^2 Loewner fixture (fails by design)");

  SearchFlags search_flags;
  CLI::App* search = app.add_subcommand("search", "Search for superadditivity violations");
  search->add_option("--metric", search_flags.metric, "Metric id");
  search->add_option("--dims", search_flags.dims, "Bipartite dims, e.g. 2x2");
  search->add_option("--budget", search_flags.budget, "Objective evaluations");
  search->add_option("--seed", search_flags.seed, "Seed");
  search->add_option("--restarts", search_flags.restarts, "Independent restarts");
  search->add_option("--constrain", search_flags.constrain, "none, semiquantum or product");
  search->add_option("--out", search_flags.out, "Write the JSON result here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  try {
    if (app.got_subcommand("zoo")) return cmd_zoo();
    if (app.got_subcommand("skew")) return cmd_skew(skew_paths);
    if (app.got_subcommand("variance")) return cmd_variance(var_paths);
    if (app.got_subcommand("check")) return cmd_check(check_flags);
    if (app.got_subcommand("search")) return cmd_search(search_flags);
  } catch (const qig::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kParseError;
  } catch (const qig::UnsupportedParameter& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kParseError;
  } catch (const qig::SingularMetricError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSingularMetric;
  } catch (const qig::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidationError;
  } catch (const qig::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidationError;
  }
  return kOk;
}
