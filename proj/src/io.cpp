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

#include "qig/io.hpp"

#include <cmath>
#include <fstream>

namespace qig {

using nlohmann::json;

namespace {

std::size_t parse_positive(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a positive integer, got '" + text + "'");
  }
  const unsigned long v = std::stoul(text);
  if (v == 0) throw ParseError("dimension must be positive");
  return v;
}

// JSON cannot carry non-finite doubles; they are written as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

BipartiteDims parse_bipartite(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw ParseError("expected dims like 2x3, got '" + text + "'");
  return {parse_positive(text.substr(0, x)), parse_positive(text.substr(x + 1))};
}

ComplexMatrix matrix_from_json(const json& doc) {
  try {
    const std::size_t n = doc.at("dim").get<std::size_t>();
    const json& rows = doc.at("entries");
    if (n == 0 || !rows.is_array() || rows.size() != n) throw ParseError("matrix: entries must have dim rows");
    std::vector<cplx> entries;
    entries.reserve(n * n);
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != n) throw ParseError("matrix: every row must have dim entries");
      for (const json& z : row) {
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
          throw ParseError("matrix: entries must be [re, im] pairs");
        }
        entries.emplace_back(z[0].get<double>(), z[1].get<double>());
      }
    }
    return ComplexMatrix(n, n, std::move(entries));
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"entries", std::move(rows)}};
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ParseError("invalid JSON in " + path.string());
  return matrix_from_json(doc);
}

json config_to_json(const TrialConfig& c) {
  json dims = json::array();
  for (std::size_t n : c.single_dims) dims.push_back(std::to_string(n));
  for (BipartiteDims d : c.bipartite_dims) dims.push_back(std::to_string(d.n1) + "x" + std::to_string(d.n2));
  return {{"seed", c.seed},
          {"dims", std::move(dims)},
          {"trials_per_check", c.trials_per_check},
          {"tol_eq", c.tol_eq},
          {"tol_psd", c.tol_psd},
          {"metric_ids", c.metric_ids},
          {"checks", c.checks},
          {"inject_square_fixture", c.inject_square_fixture}};
}

TrialConfig config_from_json(const json& doc) {
  try {
    TrialConfig c;
    c.seed = doc.at("seed").get<std::uint64_t>();
    c.single_dims.clear();
    c.bipartite_dims.clear();
    for (const json& d : doc.at("dims")) {
      const std::string text = d.get<std::string>();
      if (text.find('x') != std::string::npos) {
        c.bipartite_dims.push_back(parse_bipartite(text));
      } else {
        c.single_dims.push_back(parse_positive(text));
      }
    }
    c.trials_per_check = doc.at("trials_per_check").get<std::size_t>();
    c.tol_eq = doc.at("tol_eq").get<double>();
    c.tol_psd = doc.at("tol_psd").get<double>();
    c.metric_ids = doc.at("metric_ids").get<std::vector<std::string>>();
    c.checks = doc.at("checks").get<std::vector<std::string>>();
    c.inject_square_fixture = doc.at("inject_square_fixture").get<bool>();
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

json report_to_json(const CheckReport& r) {
  return {{"check_id", r.check_id},
          {"metric_id", r.metric_id},
          {"dims", r.dims},
          {"trials", r.trials},
          {"failures", r.failures},
          {"worst_residual", r.worst_residual},
          {"worst_case_seed", r.worst_case_seed},
          {"tolerance", r.tolerance}};
}

CheckReport report_from_json(const json& doc) {
  try {
    CheckReport r;
    r.check_id = doc.at("check_id").get<std::string>();
    r.metric_id = doc.at("metric_id").get<std::string>();
    r.dims = doc.at("dims").get<std::string>();
    r.trials = doc.at("trials").get<std::size_t>();
    r.failures = doc.at("failures").get<std::size_t>();
    r.worst_residual = doc.at("worst_residual").get<double>();
    r.worst_case_seed = doc.at("worst_case_seed").get<std::uint64_t>();
    r.tolerance = doc.at("tolerance").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("check report: ") + e.what());
  }
}

json report_file(const TrialConfig& config, const std::vector<CheckReport>& checks) {
  json list = json::array();
  for (const CheckReport& r : checks) list.push_back(report_to_json(r));
  return {{"config", config_to_json(config)}, {"checks", std::move(list)}, {"version", kReportVersion}};
}

json search_result_to_json(const SearchResult& r) {
  return {{"version", kReportVersion},
          {"metric_id", r.metric_id},
          {"dims", std::to_string(r.dims.n1) + "x" + std::to_string(r.dims.n2)},
          {"constraint", to_string(r.constraint)},
          {"best_gap", number_or_null(r.best_gap)},
          {"reverified", r.reverified},
          {"reverified_gap", number_or_null(r.reverified_gap)},
          {"violation", r.violation()},
          {"evaluations", r.evaluations},
          {"state", matrix_to_json(r.state.matrix())},
          {"a", matrix_to_json(r.a.matrix())},
          {"b", matrix_to_json(r.b.matrix())}};
}

}  // namespace qig
