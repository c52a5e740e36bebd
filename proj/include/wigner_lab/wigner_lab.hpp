// Copyright 2026 The wigner_lab Authors
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

#include "wigner_lab/basis.hpp"
#include "wigner_lab/json_io.hpp"
#include "wigner_lab/matrix.hpp"
#include "wigner_lab/measurement.hpp"
#include "wigner_lab/monte_carlo.hpp"
#include "wigner_lab/protocol.hpp"
#include "wigner_lab/rng.hpp"
#include "wigner_lab/schmidt.hpp"
#include "wigner_lab/state_vector.hpp"
#include "wigner_lab/synthesis.hpp"
