// Copyright 2026 The LANCER Authors.
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

#include <string>
#include <utility>
#include <vector>

namespace lancer {

/// Strips leading and trailing spaces, tabs, carriage returns and newlines.
std::string trim(const std::string& s);

/// Single left-to-right pass replacing each placeholder occurrence in the
/// template with its substitution; substituted text is never rescanned, so
/// placeholders inside user-provided values survive verbatim.
std::string render_template(
    const std::string& tmpl,
    const std::vector<std::pair<std::string, std::string>>& substitutions);

}  // namespace lancer
