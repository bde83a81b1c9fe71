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

#include "plays.hpp"

#include <cassert>

namespace cogame {

namespace detail {

std::optional<Outcome> follow_choices(const IndexedGraph& g, std::size_t start)
{
    std::vector<bool> seen(g.size(), false);
    std::int64_t offset = 0;
    for (std::size_t m = start;;) {
        if (g[m].leaf) return Outcome{m, offset};
        if (seen[m]) return std::nullopt;
        seen[m] = true;
        offset += g[m].delta_at(*g[m].choice);
        m = g[m].child_at(*g[m].choice);
    }
}

NodeSet leads_to_leaf_set(const IndexedGraph& g)
{
    const auto preds = g.predecessors();
    return least_fixpoint(
        g.size(),
        [&](NodeIndex m, const NodeSet& s) { return g[m].leaf || s[g[m].child_at(*g[m].choice)]; },
        preds);
}

NodeSet always_leads_to_leaf_set(const IndexedGraph& g, const NodeSet& leads)
{
    const auto preds = g.predecessors();
    return greatest_fixpoint(
        g.size(),
        [&](NodeIndex m, const NodeSet& s) {
            if (g[m].leaf) return true;
            return leads[m] && s[g[m].child[0]] && s[g[m].child[1]];
        },
        preds);
}

const AffineUtility& payoff(const IndexedGraph& g, std::size_t leaf, const Agent& a)
{
    auto it = g[leaf].payoffs->utilities.find(a);
    if (it == g[leaf].payoffs->utilities.end()) throw std::invalid_argument("unknown agent '" + a.name + "'");
    return it->second;
}

std::optional<AffineUtility> utility_at(const IndexedGraph& g, std::size_t start, const Agent& a)
{
    auto out = follow_choices(g, start);
    if (!out) return std::nullopt;
    return affine_shift(payoff(g, out->leaf, a), out->offset);
}

} // namespace detail

LeadsToLeaf leads_to_leaf(const ProfileGraph& s, const NodeId& start)
{
    const auto g = detail::index_graph(s);
    auto it = g.index.find(start);
    if (it == g.index.end()) throw std::invalid_argument("unknown node '" + start + "'");

    LeadsToLeaf result;
    std::map<std::size_t, std::size_t> position; // node -> index in path
    std::vector<std::size_t> path;
    std::vector<std::int64_t> offsets;
    std::int64_t offset = 0;
    for (std::size_t m = it->second;;) {
        if (g[m].leaf) {
            for (std::size_t p : path) result.trace.path.push_back(g.ids[p]);
            result.trace.path.push_back(g.ids[m]);
            result.trace.leaf = g.ids[m];
            result.trace.offset = offset;
            result.trace.kind = PlayTrace::Kind::ReachesLeaf;
            result.leads = true;
            return result;
        }
        if (auto p = position.find(m); p != position.end()) {
            result.trace.kind = PlayTrace::Kind::Divergent;
            for (std::size_t i = 0; i < p->second; ++i) result.trace.path.push_back(g.ids[path[i]]);
            for (std::size_t i = p->second; i < path.size(); ++i) result.trace.cycle.push_back(g.ids[path[i]]);
            result.trace.cycle_delta = offset - offsets[p->second];
            result.trace.offset = offsets[p->second];
            return result;
        }
        position.emplace(m, path.size());
        path.push_back(m);
        offsets.push_back(offset);
        offset += g[m].delta_at(*g[m].choice);
        m = g[m].child_at(*g[m].choice);
    }
}

bool always_leads_to_leaf(const ProfileGraph& s)
{
    const auto g = detail::index_graph(s);
    const auto reach = g.reachable_from(g.root);
    for (std::size_t m = 0; m < g.size(); ++m) {
        if (reach[m] && !detail::follow_choices(g, m)) return false;
    }
    assert(always_leads_to_leaf_fixpoint(s));
    return true;
}

bool always_leads_to_leaf_fixpoint(const ProfileGraph& s)
{
    const auto g = detail::index_graph(s);
    const auto leads = detail::leads_to_leaf_set(g);
    return detail::always_leads_to_leaf_set(g, leads)[g.root];
}

InfiniteNodes is_infinite(const BinTreeGraph& t)
{
    const auto g = detail::index_graph(t);
    const auto preds = g.predecessors();
    const NodeSet inf = greatest_fixpoint(
        g.size(),
        [&](NodeIndex m, const NodeSet& s) { return !g[m].leaf && (s[g[m].child[0]] || s[g[m].child[1]]); },
        preds);
    InfiniteNodes out;
    for (std::size_t m = 0; m < g.size(); ++m) {
        if (inf[m]) out.nodes.insert(g.ids[m]);
    }
    out.root = inf[g.root];
    return out;
}

UtilityResult utility_of(const ProfileGraph& s, const Agent& a, const NodeId& start)
{
    const auto g = detail::index_graph(s);
    if (!s.agents().count(a)) throw std::invalid_argument("unknown agent '" + a.name + "'");
    auto it = g.index.find(start);
    if (it == g.index.end()) throw std::invalid_argument("unknown node '" + start + "'");
    return detail::utility_at(g, it->second, a);
}

} // namespace cogame
