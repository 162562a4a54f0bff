// Copyright 2026 The InfoGeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Umbrella header for the whole library.

#include "bregman.hpp"
#include "chernoff.hpp"
#include "common.hpp"
#include "crlb.hpp"
#include "domain.hpp"
#include "expfam.hpp"
#include "fdivergence.hpp"
#include "fgenerator.hpp"
#include "fim_estimators.hpp"
#include "finitediff.hpp"
#include "kmeans.hpp"
#include "legendre.hpp"
#include "manifold.hpp"
#include "mixture.hpp"
#include "potential.hpp"
#include "potentials.hpp"
#include "projection.hpp"
#include "quadform.hpp"
#include "quadrature.hpp"
#include "rao.hpp"
#include "rng.hpp"
