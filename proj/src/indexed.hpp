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

// Dense index view of a validated graph. Index order is node-id order.

#ifndef COGAME_SRC_INDEXED_HPP
#define COGAME_SRC_INDEXED_HPP

#include "cogame/game.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace cogame::detail {

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct IndexedNode {
    bool leaf = false;
    const Leaf* payoffs = nullptr;
    const Agent* agent = nullptr;
    std::optional<Choice> choice;
    std::array<std::size_t, 2> child{kNone, kNone};
    std::array<std::int64_t, 2> delta{0, 0};

    std::size_t child_at(Choice c) const { return child[c == Choice::Left ? 0 : 1]; }
    std::int64_t delta_at(Choice c) const { return delta[c == Choice::Left ? 0 : 1]; }
};

struct IndexedGraph {
    std::vector<NodeId> ids;
    std::map<NodeId, std::size_t> index;
    std::vector<IndexedNode> nodes;
    std::size_t root = kNone;

    std::size_t size() const { return nodes.size(); }
    const IndexedNode& operator[](std::size_t i) const { return nodes[i]; }

    /// Reverse adjacency over both children.
    std::vector<std::vector<std::size_t>> predecessors() const;
    /// Nodes reachable from `from` over both children, including itself.
    std::vector<bool> reachable_from(std::size_t from) const;
    /// BFS order from the root over both children.
    std::vector<std::size_t> bfs_order() const;
};

/// Index a graph; throws InvalidGraph if it does not validate.
IndexedGraph index_graph(const GameGraph& g);
IndexedGraph index_graph(const ProfileGraph& g);
IndexedGraph index_graph(const BinTreeGraph& g);

struct OffsetPath {
    std::vector<std::size_t> nodes; // from source to target inclusive
    std::vector<Choice> steps;      // child taken at nodes[i], size nodes.size() - 1
    std::int64_t offset = 0;
};

/// Which children may be followed from a node.
using EdgeFilter = std::function<bool(std::size_t node, Choice c)>;

/// Minimal summed delta from `source` to every node, following permitted
/// edges; kNone-free entries are -1 when unreachable.
std::vector<std::int64_t> min_offsets(const IndexedGraph& g, std::size_t source, const EdgeFilter& allowed);

/// A path with minimal offset (and fewest edges among those) to `target`.
std::optional<OffsetPath> min_offset_path(const IndexedGraph& g, std::size_t source, std::size_t target,
                                          const EdgeFilter& allowed);

/// A path to `target` whose summed delta equals `offset` exactly. Searches
/// (node, offset) states with offset <= the requested one.
std::optional<OffsetPath> exact_offset_path(const IndexedGraph& g, std::size_t source, std::size_t target,
                                            std::int64_t offset, const EdgeFilter& allowed);

/// Every offset at which `target` is reachable, ascending, when that set is
/// finite (no positive-delta cycle lies on a path to it) and its range is at
/// most `limit`; nullopt otherwise.
std::optional<std::vector<std::int64_t>> offset_set(const IndexedGraph& g, std::size_t source, std::size_t target,
                                                    const EdgeFilter& allowed, std::int64_t limit = 4096);

inline EdgeFilter all_edges()
{
    return [](std::size_t, Choice) { return true; };
}

} // namespace cogame::detail

#endif
