// Copyright 2026 The Multiport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <string>
#include <string_view>

#include "multiport/core/errors.hpp"

namespace multiport {

/// Ports are indexed 0..n-1 and labelled A, B, C, ...
inline std::string port_label(int port) {
  if (port < 0 || port >= 26) return "P" + std::to_string(port);
  return std::string(1, static_cast<char>('A' + port));
}

inline int parse_port(std::string_view label, int port_count) {
  int port = -1;
  if (label.size() == 1 && label[0] >= 'A' && label[0] <= 'Z') port = label[0] - 'A';
  else if (label.size() == 1 && label[0] >= 'a' && label[0] <= 'z') port = label[0] - 'a';
  if (port < 0 || port >= port_count)
    throw SpecError("port '" + std::string(label) + "' is not one of the " + std::to_string(port_count) +
                    " device ports");
  return port;
}

}  // namespace multiport
