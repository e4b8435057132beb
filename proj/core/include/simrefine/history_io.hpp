// Copyright 2026 The simrefine Authors. All Rights Reserved.
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
// =============================================================================

#ifndef SIMREFINE_HISTORY_IO_HPP
#define SIMREFINE_HISTORY_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "simrefine/gpopt.hpp"

namespace simrefine {

// History CSV: header "iteration,<coordinate names>,distance,penalized",
// then one row per evaluation (iteration counts from 1). Numbers use the
// shortest round-trip representation, so a reloaded history is bit-identical.
// Wall times go to a separate timings file to keep the history reproducible.
void SaveHistoryCsv(const EvaluationHistory& hist, const std::filesystem::path& path,
                    const std::vector<std::string>& coordinate_names = {});
EvaluationHistory LoadHistoryCsv(const std::filesystem::path& path);

// "iteration,wall_time_s" per evaluation.
void SaveTimingsCsv(const EvaluationHistory& hist, const std::filesystem::path& path);

}  // namespace simrefine

#endif  // SIMREFINE_HISTORY_IO_HPP
