// Copyright 2026 The epigame Authors
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

#ifndef EPIGAME_EPIGAME_HPP
#define EPIGAME_EPIGAME_HPP

#include "epigame/core.hpp"
#include "epigame/equilibrium.hpp"
#include "epigame/fixtures.hpp"
#include "epigame/io.hpp"
#include "epigame/lp.hpp"
#include "epigame/reductions.hpp"
#include "epigame/rng.hpp"
#include "epigame/tensor.hpp"

#endif  // EPIGAME_EPIGAME_HPP
