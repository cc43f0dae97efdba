// Copyright 2026 The Interlace Authors
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

#include "interlace/error.hpp"
#include "interlace/numerics.hpp"
#include "interlace/lattice.hpp"
#include "interlace/factorization.hpp"
#include "interlace/sampling.hpp"
#include "interlace/optimizer.hpp"
#include "interlace/universality.hpp"
#include "interlace/logic_gate.hpp"
#include "interlace/io.hpp"
