// Copyright 2026 The qclab Authors
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

// Umbrella header.

#pragma once

#include "qclab/algorithms.hpp"
#include "qclab/common.hpp"
#include "qclab/exact.hpp"
#include "qclab/experiments.hpp"
#include "qclab/generators.hpp"
#include "qclab/graph.hpp"
#include "qclab/graph_io.hpp"
#include "qclab/info.hpp"
#include "qclab/oracles.hpp"
#include "qclab/rng.hpp"
#include "qclab/stats.hpp"
#include "qclab/verify.hpp"
