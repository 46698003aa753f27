// Copyright 2026 The cayley-perc Authors.
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

// Umbrella header.
#include "cayley_perc/branching.hpp"
#include "cayley_perc/cayley.hpp"
#include "cayley_perc/error.hpp"
#include "cayley_perc/generators.hpp"
#include "cayley_perc/hash.hpp"
#include "cayley_perc/io.hpp"
#include "cayley_perc/percolation.hpp"
#include "cayley_perc/permutation.hpp"
#include "cayley_perc/plot.hpp"
#include "cayley_perc/sweep.hpp"
#include "cayley_perc/verify.hpp"
