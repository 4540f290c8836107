// Copyright 2026 The qsep Authors
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

#include "qsep/error.hpp"
#include "qsep/linalg.hpp"
#include "qsep/product_geometry.hpp"
#include "qsep/pseudomixture.hpp"
#include "qsep/qlinalg.hpp"
#include "qsep/random.hpp"
#include "qsep/separable_decomp.hpp"
#include "qsep/version.hpp"
