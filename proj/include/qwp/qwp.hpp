// Copyright 2026 The qwp Authors
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

#ifndef QWP_QWP_HPP
#define QWP_QWP_HPP

#include "coin.hpp"
#include "ensemble.hpp"
#include "errors.hpp"
#include "evolution.hpp"
#include "random.hpp"
#include "schedule_description.hpp"
#include "sweep.hpp"
#include "walker_state.hpp"

#endif  // QWP_QWP_HPP
