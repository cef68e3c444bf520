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

#include "lancer/text.hpp"

namespace lancer {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  size_t b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string render_template(
    const std::string& tmpl,
    const std::vector<std::pair<std::string, std::string>>& substitutions) {
  std::string out;
  out.reserve(tmpl.size());
  size_t pos = 0;
  while (pos < tmpl.size()) {
    size_t best = std::string::npos;
    const std::pair<std::string, std::string>* hit = nullptr;
    for (const auto& sub : substitutions) {
      size_t at = tmpl.find(sub.first, pos);
      if (at < best) {
        best = at;
        hit = &sub;
      }
    }
    if (!hit) break;
    out.append(tmpl, pos, best - pos);
    out.append(hit->second);
    pos = best + hit->first.size();
  }
  out.append(tmpl, pos, std::string::npos);
  return out;
}

}  // namespace lancer
