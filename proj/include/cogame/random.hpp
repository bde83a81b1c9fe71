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


/** @file random.hpp
 *  @brief Random instances for property tests and benchmarks.
 */

#ifndef COGAME_RANDOM_HPP
#define COGAME_RANDOM_HPP

#include "cogame/game.hpp"

#include <optional>
#include <random>

namespace cogame {

struct FiniteProfileOptions {
    int max_depth = 6;        // every leaf at depth <= max_depth (root at 0)
    int min_agents = 2;
    int max_agents = 3;
    int max_utility = 9;      // payoffs drawn from [0, max_utility]
    double leaf_probability = 0.3;
    double share_probability = 0.0; // reuse an earlier subtree (DAG)
    std::size_t max_internal = 0;   // 0: no cap
    std::optional<Preference> preference; // random when unset
};

/// An acyclic profile with constant payoffs and zero deltas. Every agent of
/// the drawn agent set appears in every leaf.
ProfileGraph random_finite_profile(std::mt19937_64& rng, const FiniteProfileOptions& opt = {});

struct SchemaProfileOptions {
    std::size_t internal_nodes = 4;
    std::size_t leaves = 3;
    int agents = 2;
    int max_utility = 9;
    int max_delta = 0;      // > 0 draws deltas and counter-dependent payoffs
    bool with_param = false; // adds a parameter `v >= 1` to some payoffs
};

/// A possibly cyclic profile over the given number of nodes; the root is an
/// internal node when there is one.
ProfileGraph random_schema_profile(std::mt19937_64& rng, const SchemaProfileOptions& opt = {});

/// A binary tree graph with `nodes` nodes; `cyclic` allows back-edges.
BinTreeGraph random_tree_graph(std::mt19937_64& rng, std::size_t nodes, bool cyclic);

} // namespace cogame

#endif
