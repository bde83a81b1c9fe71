/*
 * Copyright 2026 The cogame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


/** @file batch.hpp
 *  @brief Equilibrium checks over many profiles.
 *
 *  The serial loop is the reference; the OpenMP loop must agree with it
 *  element for element. Profiles are independent and the checks are pure,
 *  so the parallel loop needs no synchronisation beyond collecting errors.
 */

#ifndef COGAME_BATCH_HPP
#define COGAME_BATCH_HPP

#include "cogame/analyses.hpp"

#include <span>
#include <vector>

namespace cogame {

enum class BatchCheck { Sgpe, Nash };

/// Verdict per profile, in input order. The first exception thrown by a
/// check (lowest index) is rethrown.
std::vector<Verdict> check_batch_serial(std::span<const ProfileGraph> profiles, BatchCheck check);
std::vector<Verdict> check_batch_parallel(std::span<const ProfileGraph> profiles, BatchCheck check);

/// Number of worker threads the parallel loop would use.
int batch_threads();

} // namespace cogame

#endif
