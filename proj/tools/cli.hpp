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


// The care-ca command line, callable in-process so tests can drive it.

#pragma once

#include <iosfwd>

namespace careca::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // configuration, data or I/O error
inline constexpr int kExitUsage = 2;    // bad arguments

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace careca::cli
