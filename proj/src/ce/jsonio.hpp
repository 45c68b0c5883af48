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

#include "ce/convmix.hpp"
#include "ce/spectral.hpp"

namespace ce {

// Density specs, spectral models and mixtures round-trip through JSON
// documents with a `family`/`spectral_density`/`base` tag and a params
// object; see README for the exact field names. Reals are rendered with 17
// significant digits.

DensitySpec spec_from_json(const Json& j);
DensitySpec spec_from_json_text(const std::string& text);
Json spec_to_json(const DensitySpec& spec);

SpectralModel model_from_json(const Json& j);
SpectralModel model_from_json_text(const std::string& text);
Json model_to_json(const SpectralModel& model);

MixtureSpec mixture_from_json(const Json& j);
MixtureSpec mixture_from_json_text(const std::string& text);
Json mixture_to_json(const MixtureSpec& mix);

Json estimate_to_json(const Estimate& e);
Json bound_check_to_json(const BoundCheck& c);
Json kappa_report_to_json(const KappaReport& r);

Json parse_json_text(const std::string& text);

// serializer with %.17g doubles; indent < 0 emits a single line
std::string dump_json(const Json& j, int indent = 2);

std::string format_double(double v);

}  // namespace ce
