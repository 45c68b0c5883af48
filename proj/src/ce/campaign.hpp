// Copyright 2026 The convex-entropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "ce/jsonio.hpp"

namespace ce {

// A campaign is a JSON list of entries, each either a catalog check or a
// named operation, optionally with a frozen expected value. Entries run in a
// worker pool (capped by CONVEX_ENTROPY_THREADS) and the report preserves
// campaign order, so reruns are byte-identical apart from the wall clock.
struct CampaignEntry {
  std::string id;
  std::string check;  // catalog check id, or empty
  std::string op;     // operation name, or empty
  Json spec;          // inline density spec (optional)
  Json model;         // inline spectral model (optional)
  Json mix;           // inline mixture (optional)
  Json params = Json::object();
  std::uint64_t seed = 1;
  std::optional<double> expect;
  double expect_tol = 1e-9;
};

struct Campaign {
  double tol = 1e-7;
  std::vector<CampaignEntry> entries;
};

Campaign campaign_from_json(const Json& j);
Campaign campaign_from_json_text(const std::string& text);

struct Report {
  std::string tool = "convex-entropy";
  std::string version;
  double wall_clock_seconds = 0.0;
  int n_pass = 0;
  int n_fail = 0;
  int n_error = 0;
  Json entries = Json::array();

  bool ok() const { return n_fail == 0 && n_error == 0; }
};

Report run_campaign(const Campaign& campaign);

Json report_to_json(const Report& report);

// format: json | csv | markdown; stable column order
// check_id, anchor, lhs, rhs, slack, verdict
std::string render_report(const Json& report, const std::string& format);

// runs a single operation entry (also used by the CLI for one-shot calls)
Json run_entry(const CampaignEntry& entry, double tol);

const char* library_version();

}  // namespace ce
