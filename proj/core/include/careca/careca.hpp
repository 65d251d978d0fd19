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


// Convenience header pulling in the whole public API.

#pragma once

#include "careca/causalnet.hpp"
#include "careca/config.hpp"
#include "careca/corpus.hpp"
#include "careca/counterfactual.hpp"
#include "careca/error.hpp"
#include "careca/evaluation.hpp"
#include "careca/knowledge.hpp"
#include "careca/prompting.hpp"
#include "careca/provider.hpp"
#include "careca/text.hpp"
#include "careca/transcript.hpp"
