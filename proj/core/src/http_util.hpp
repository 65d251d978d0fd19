// Copyright 2026 The careca Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

#include "careca/error.hpp"

namespace careca::detail {

// "http://host:8080/api/v1" -> {"http://host:8080", "/api/v1"}.
struct SplitUrl {
  std::string origin;
  std::string path;
};

inline SplitUrl split_url(std::string_view url) {
  const auto scheme = url.find("://");
  if (scheme == std::string_view::npos) {
    throw ConfigError("URL must include a scheme: " + std::string(url));
  }
  // The bundled HTTP client is built without TLS.
  if (url.substr(0, scheme) != "http") {
    throw ConfigError("only http:// URLs are supported: " + std::string(url));
  }
  const auto slash = url.find('/', scheme + 3);
  SplitUrl out;
  if (slash == std::string_view::npos) {
    out.origin = std::string(url);
  } else {
    out.origin = std::string(url.substr(0, slash));
    out.path = std::string(url.substr(slash));
  }
  while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  return out;
}

inline std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
        c == '_' || c == '-' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

}  // namespace careca::detail
