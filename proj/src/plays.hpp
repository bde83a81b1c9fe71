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

#ifndef COGAME_SRC_PLAYS_HPP
#define COGAME_SRC_PLAYS_HPP

#include "cogame/analyses.hpp"
#include "cogame/fixpoint.hpp"
#include "indexed.hpp"

namespace cogame::detail {

struct Outcome {
    std::size_t leaf;
    std::int64_t offset;
};

/// Follow the chosen children from `start`; nullopt on divergence.
std::optional<Outcome> follow_choices(const IndexedGraph& g, std::size_t start);

/// Nodes whose play reaches a leaf (least fixpoint).
NodeSet leads_to_leaf_set(const IndexedGraph& g);

/// Greatest fixpoint of: leaf, or (leads to a leaf and both children in S).
NodeSet always_leads_to_leaf_set(const IndexedGraph& g, const NodeSet& leads);

const AffineUtility& payoff(const IndexedGraph& g, std::size_t leaf, const Agent& a);

/// Utility of `a` at `start`, in the counter value at `start`.
std::optional<AffineUtility> utility_at(const IndexedGraph& g, std::size_t start, const Agent& a);

} // namespace cogame::detail

#endif
