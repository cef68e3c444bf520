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

namespace lancer::log {

// All logging goes to stderr as "level=<lvl> msg=..." lines; stdout is
// reserved for tables and reports so the CLI composes in pipelines.
void info(const std::string& msg);
void warn(const std::string& msg);
void error(const std::string& msg);

}  // namespace lancer::log
