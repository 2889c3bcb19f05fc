// Copyright 2026 The ptree Authors.
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

#ifndef PTREE_PTREE_HPP_
#define PTREE_PTREE_HPP_

#include "ptree/bigfloat.hpp"
#include "ptree/complex.hpp"
#include "ptree/counting.hpp"
#include "ptree/errors.hpp"
#include "ptree/exactla.hpp"
#include "ptree/factor.hpp"
#include "ptree/families.hpp"
#include "ptree/graph.hpp"
#include "ptree/io.hpp"
#include "ptree/matrix.hpp"
#include "ptree/periodic.hpp"
#include "ptree/random.hpp"
#include "ptree/rational.hpp"

#endif  // PTREE_PTREE_HPP_
