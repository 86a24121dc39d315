// Copyright 2026 The dickenet Authors
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

/**
 * @file
 * JSON and CSV serialization for matrices, count records, witness reports
 * and protocol results.
 *
 * Complex matrices are row-major arrays of [re, im] pairs.
 */
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dickenet/protocol.hpp"
#include "dickenet/register.hpp"
#include "dickenet/tomography.hpp"
#include "dickenet/witness.hpp"

namespace dickenet::io {

using Json = nlohmann::ordered_json;

[[nodiscard]] Json matrix_to_json(const Matrix &m);
[[nodiscard]] Matrix matrix_from_json(const Json &j);
[[nodiscard]] Json vector_to_json(const Vector &v);

/// {"labels": [...], "matrix": ...}; pure states are written as density
/// matrices.
[[nodiscard]] Json state_to_json(const State &s);

[[nodiscard]] Json setting_to_json(const MeasurementSetting &s);
[[nodiscard]] MeasurementSetting setting_from_json(const Json &j);
[[nodiscard]] Json record_to_json(const CountsRecord &r);
[[nodiscard]] CountsRecord record_from_json(const Json &j);

/// "setting,outcome,count" rows in record then outcome order.
[[nodiscard]] std::string records_to_csv(const std::vector<CountsRecord> &records);

[[nodiscard]] Json report_to_json(const WitnessReport &r);

[[nodiscard]] Json correction_table_to_json(const CorrectionTable &t);
[[nodiscard]] CorrectionTable correction_table_from_json(const Json &j);

[[nodiscard]] Json qtc_to_json(const QtcResult &r);
[[nodiscard]] Json odt_to_json(const OdtResult &r);

/// Shortest round-trip decimal form.
[[nodiscard]] std::string format_double(double v);

} // namespace dickenet::io
