// Copyright 2026 The qgd Authors
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

#include "qgd/anneal.hpp"
#include "qgd/arith.hpp"
#include "qgd/brute_force.hpp"
#include "qgd/cbo.hpp"
#include "qgd/circuit.hpp"
#include "qgd/combinatorics.hpp"
#include "qgd/error.hpp"
#include "qgd/experiment.hpp"
#include "qgd/graph.hpp"
#include "qgd/grover.hpp"
#include "qgd/io.hpp"
#include "qgd/metrics.hpp"
#include "qgd/oracles.hpp"
#include "qgd/problem.hpp"
#include "qgd/qubo.hpp"
#include "qgd/simulate.hpp"
#include "qgd/transducers.hpp"
