// Copyright 2026 The ovmkit Authors.
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
 * Versioned JSON schemas (schema_version "1") for operator sequences,
 * weight families and atomic OVMs, plus verdict serialization. Complex
 * entries are encoded as [re, im] pairs; floats survive a round trip at
 * full precision.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "ovmkit/atomic_ovm.hpp"
#include "ovmkit/sequence.hpp"
#include "ovmkit/shift.hpp"
#include "ovmkit/verdict.hpp"

namespace ovmkit {

inline constexpr std::string_view kSchemaVersion = "1";

/// @throws SchemaError with the offending location in the message.
OperatorSequence sequence_from_json(const nlohmann::json &j);
nlohmann::json sequence_to_json(const OperatorSequence &seq);

WeightFamily weights_from_json(const nlohmann::json &j);
nlohmann::json weights_to_json(const WeightFamily &w);

AtomicOVM ovm_from_json(const nlohmann::json &j);
nlohmann::json ovm_to_json(const AtomicOVM &e);

nlohmann::json verdict_to_json(const Verdict &v);
nlohmann::json psd_report_to_json(const PsdReport &r);

/// FNV-1a digest of the raw input bytes, as a fixed-width hex string.
std::string fnv1a_hex(std::string_view bytes);

} // namespace ovmkit
