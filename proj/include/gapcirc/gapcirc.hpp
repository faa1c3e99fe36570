// Copyright 2026 The gapcirc Authors
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

#include "gapcirc/accountant.hpp"
#include "gapcirc/arithmetic.hpp"
#include "gapcirc/bitstring.hpp"
#include "gapcirc/builders.hpp"
#include "gapcirc/circuit.hpp"
#include "gapcirc/circuit_text.hpp"
#include "gapcirc/data_table.hpp"
#include "gapcirc/dataload.hpp"
#include "gapcirc/dyadic.hpp"
#include "gapcirc/instance_io.hpp"
#include "gapcirc/instances.hpp"
#include "gapcirc/multicontrol.hpp"
#include "gapcirc/oracles.hpp"
#include "gapcirc/simulator.hpp"
#include "gapcirc/sweep.hpp"
#include "gapcirc/verify.hpp"
