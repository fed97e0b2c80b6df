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

#ifndef QIG_IO_HPP
#define QIG_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qig/checker.hpp"
#include "qig/linalg.hpp"
#include "qig/search.hpp"

namespace qig {

/// Malformed JSON or a document that does not follow the expected schema.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr char kReportVersion[] = "qig-report/1";

/// {"dim": n, "entries": [[[re, im], ...], ...]}, row-major.
ComplexMatrix matrix_from_json(const nlohmann::json& doc);
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

nlohmann::json config_to_json(const TrialConfig& config);
TrialConfig config_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const CheckReport& r);
CheckReport report_from_json(const nlohmann::json& doc);

/// {"config": {...}, "checks": [...], "version": "..."}.
nlohmann::json report_file(const TrialConfig& config, const std::vector<CheckReport>& checks);

nlohmann::json search_result_to_json(const SearchResult& r);

/// "2x3" -> {2, 3}.
BipartiteDims parse_bipartite(const std::string& text);

}  // namespace qig

#endif  // QIG_IO_HPP
