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

#include "lancer/log.hpp"

#include <cstdio>
#include <mutex>

namespace lancer::log {

namespace {
std::mutex g_mutex;

void emit(const char* level, const std::string& msg) {
  std::lock_guard<std::mutex> lock(g_mutex);
  std::fprintf(stderr, "level=%s msg=%s\n", level, msg.c_str());
}
}  // namespace

void info(const std::string& msg) { emit("info", msg); }
void warn(const std::string& msg) { emit("warn", msg); }
void error(const std::string& msg) { emit("error", msg); }

}  // namespace lancer::log
