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

/** @file fixpoint.hpp
 *  @brief Least and greatest fixpoints of node-set predicates.
 *
 *  Inductive predicates (plays that reach a leaf) are least fixpoints and
 *  coinductive ones (infinite trees, subgame perfection) are greatest
 *  fixpoints of a local rule. Nodes are dense indices 0..count-1.
 *
 *  The rule must be monotone: shrinking the current set may only turn a
 *  `true` into `false`. Both solvers use chaotic worklist iteration. When
 *  `dependents` is given, only the dependents of a changed node are
 *  re-examined; otherwise every node is rescanned each round.
 */

#ifndef COGAME_FIXPOINT_HPP
#define COGAME_FIXPOINT_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cogame {

using NodeIndex = std::size_t;
using NodeSet = std::vector<bool>;

/// rule(m, S): whether m belongs to the next iterate given current set S.
using LocalRule = std::function<bool(NodeIndex, const NodeSet&)>;

/// Largest S with S = { m | rule(m, S) }, by iterated removal from the full set.
NodeSet greatest_fixpoint(std::size_t count, const LocalRule& rule,
                          std::span<const std::vector<NodeIndex>> dependents = {});

/// Smallest S with S = { m | rule(m, S) }, by iterated addition from the empty set.
NodeSet least_fixpoint(std::size_t count, const LocalRule& rule,
                       std::span<const std::vector<NodeIndex>> dependents = {});

/// Spot check of monotonicity: for each sampled pair (S, T) with T a subset
/// of S, rule(m, T) implies rule(m, S) for every m. Returns false on the
/// first counterexample.
bool spot_check_monotone(std::size_t count, const LocalRule& rule, std::span<const NodeSet> samples);

} // namespace cogame

#endif
