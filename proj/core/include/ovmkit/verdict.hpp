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

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ovmkit {

/// Structured analysis result: a boolean outcome plus the numerical margins
/// and diagnostics that justify it. Checks with several routes attach one
/// sub-verdict per route.
struct Verdict {
    std::string check;
    bool pass = false;
    std::map<std::string, double> margins;
    std::vector<std::string> diagnostics;
    std::vector<Verdict> parts;

    Verdict() = default;
    explicit Verdict(std::string name, bool ok = false)
        : check(std::move(name)), pass(ok) {}

    Verdict &margin(const std::string &key, double value) {
        margins[key] = value;
        return *this;
    }
    Verdict &note(std::string text) {
        diagnostics.push_back(std::move(text));
        return *this;
    }
    Verdict &part(Verdict sub) {
        parts.push_back(std::move(sub));
        return *this;
    }
};

} // namespace ovmkit
