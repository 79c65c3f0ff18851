// Copyright 2026 The Sonir Authors. All rights reserved.
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

#include "sonir/corpus.hpp"
#include "sonir/dominators.hpp"
#include "sonir/equivalence.hpp"
#include "sonir/graph.hpp"
#include "sonir/harness.hpp"
#include "sonir/interpreter.hpp"
#include "sonir/json_io.hpp"
#include "sonir/node.hpp"
#include "sonir/optimizer.hpp"
#include "sonir/oracle.hpp"
#include "sonir/phase.hpp"
#include "sonir/program.hpp"
#include "sonir/stamp.hpp"
#include "sonir/stamp_algebra.hpp"
#include "sonir/value.hpp"
