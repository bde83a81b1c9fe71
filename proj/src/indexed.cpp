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

#include "indexed.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>
#include <tuple>

namespace cogame::detail {

namespace {

template <class Internal>
IndexedGraph index_schema(const SchemaGraph<Internal>& g)
{
    require_valid(g);
    IndexedGraph out;
    for (const auto& [id, node] : g.nodes) {
        out.index.emplace(id, out.ids.size());
        out.ids.push_back(id);
    }
    out.nodes.resize(out.ids.size());
    std::size_t i = 0;
    for (const auto& [id, node] : g.nodes) {
        IndexedNode& n = out.nodes[i++];
        if (const auto* leaf = std::get_if<Leaf>(&node)) {
            n.leaf = true;
            n.payoffs = leaf;
            continue;
        }
        const auto& in = std::get<Internal>(node);
        n.agent = &in.agent;
        if constexpr (std::is_same_v<Internal, ProfileNode>) n.choice = in.choice;
        n.child = {out.index.at(in.left.target), out.index.at(in.right.target)};
        n.delta = {in.left.delta, in.right.delta};
    }
    out.root = out.index.at(g.root);
    return out;
}

} // namespace

IndexedGraph index_graph(const GameGraph& g) { return index_schema(g); }
IndexedGraph index_graph(const ProfileGraph& g) { return index_schema(g); }

IndexedGraph index_graph(const BinTreeGraph& g)
{
    require_valid(g);
    IndexedGraph out;
    for (const auto& [id, node] : g.nodes) {
        out.index.emplace(id, out.ids.size());
        out.ids.push_back(id);
    }
    out.nodes.resize(out.ids.size());
    std::size_t i = 0;
    for (const auto& [id, node] : g.nodes) {
        IndexedNode& n = out.nodes[i++];
        if (std::holds_alternative<Nil>(node)) {
            n.leaf = true;
            continue;
        }
        const auto& bn = std::get<BinNode>(node);
        n.child = {out.index.at(bn.left), out.index.at(bn.right)};
    }
    out.root = out.index.at(g.root);
    return out;
}

std::vector<std::vector<std::size_t>> IndexedGraph::predecessors() const
{
    std::vector<std::vector<std::size_t>> preds(size());
    for (std::size_t i = 0; i < size(); ++i) {
        if (nodes[i].leaf) continue;
        preds[nodes[i].child[0]].push_back(i);
        if (nodes[i].child[1] != nodes[i].child[0]) preds[nodes[i].child[1]].push_back(i);
    }
    return preds;
}

std::vector<bool> IndexedGraph::reachable_from(std::size_t from) const
{
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
        const std::size_t m = stack.back();
        stack.pop_back();
        if (nodes[m].leaf) continue;
        for (std::size_t c : nodes[m].child) {
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
        }
    }
    return seen;
}

std::vector<std::size_t> IndexedGraph::bfs_order() const
{
    std::vector<std::size_t> order;
    std::vector<bool> seen(size(), false);
    std::deque<std::size_t> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
        const std::size_t m = queue.front();
        queue.pop_front();
        order.push_back(m);
        if (nodes[m].leaf) continue;
        for (std::size_t c : nodes[m].child) {
            if (!seen[c]) {
                seen[c] = true;
                queue.push_back(c);
            }
        }
    }
    return order;
}

namespace {

struct Dijkstra {
    std::vector<std::int64_t> dist;
    std::vector<std::size_t> hops;
    std::vector<std::size_t> pred;
    std::vector<Choice> via;
};

Dijkstra run_dijkstra(const IndexedGraph& g, std::size_t source, const EdgeFilter& allowed)
{
    Dijkstra d{std::vector<std::int64_t>(g.size(), -1), std::vector<std::size_t>(g.size(), kNone),
               std::vector<std::size_t>(g.size(), kNone), std::vector<Choice>(g.size(), Choice::Left)};
    using Item = std::tuple<std::int64_t, std::size_t, std::size_t>; // offset, hops, node
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d.dist[source] = 0;
    d.hops[source] = 0;
    pq.emplace(0, 0, source);
    while (!pq.empty()) {
        auto [off, hop, m] = pq.top();
        pq.pop();
        if (off != d.dist[m] || hop != d.hops[m]) continue;
        if (g[m].leaf) continue;
        for (Choice c : {Choice::Left, Choice::Right}) {
            if (!allowed(m, c)) continue;
            const std::size_t t = g[m].child_at(c);
            const std::int64_t noff = off + g[m].delta_at(c);
            const std::size_t nhop = hop + 1;
            if (d.dist[t] < 0 || noff < d.dist[t] || (noff == d.dist[t] && nhop < d.hops[t])) {
                d.dist[t] = noff;
                d.hops[t] = nhop;
                d.pred[t] = m;
                d.via[t] = c;
                pq.emplace(noff, nhop, t);
            }
        }
    }
    return d;
}

} // namespace

std::vector<std::int64_t> min_offsets(const IndexedGraph& g, std::size_t source, const EdgeFilter& allowed)
{
    return run_dijkstra(g, source, allowed).dist;
}

std::optional<OffsetPath> min_offset_path(const IndexedGraph& g, std::size_t source, std::size_t target,
                                          const EdgeFilter& allowed)
{
    Dijkstra d = run_dijkstra(g, source, allowed);
    if (d.dist[target] < 0) return std::nullopt;
    OffsetPath path;
    path.offset = d.dist[target];
    for (std::size_t m = target; m != source; m = d.pred[m]) {
        path.nodes.push_back(m);
        path.steps.push_back(d.via[m]);
    }
    path.nodes.push_back(source);
    std::reverse(path.nodes.begin(), path.nodes.end());
    std::reverse(path.steps.begin(), path.steps.end());
    return path;
}

std::optional<OffsetPath> exact_offset_path(const IndexedGraph& g, std::size_t source, std::size_t target,
                                            std::int64_t offset, const EdgeFilter& allowed)
{
    if (offset < 0) return std::nullopt;
    using State = std::pair<std::size_t, std::int64_t>;
    std::map<State, std::pair<State, Choice>> parent;
    std::deque<State> queue{{source, 0}};
    parent.emplace(State{source, 0}, std::pair{State{kNone, 0}, Choice::Left});
    while (!queue.empty()) {
        const State s = queue.front();
        queue.pop_front();
        if (s.first == target && s.second == offset) {
            OffsetPath path;
            path.offset = offset;
            for (State cur = s; cur.first != kNone;) {
                path.nodes.push_back(cur.first);
                const auto& [prev, c] = parent.at(cur);
                if (prev.first != kNone) path.steps.push_back(c);
                cur = prev;
            }
            std::reverse(path.nodes.begin(), path.nodes.end());
            std::reverse(path.steps.begin(), path.steps.end());
            return path;
        }
        const IndexedNode& n = g[s.first];
        if (n.leaf) continue;
        for (Choice c : {Choice::Left, Choice::Right}) {
            if (!allowed(s.first, c)) continue;
            const State next{n.child_at(c), s.second + n.delta_at(c)};
            if (next.second > offset || parent.count(next)) continue;
            parent.emplace(next, std::pair{s, c});
            queue.push_back(next);
        }
    }
    return std::nullopt;
}

std::optional<std::vector<std::int64_t>> offset_set(const IndexedGraph& g, std::size_t source, std::size_t target,
                                                    const EdgeFilter& allowed, std::int64_t limit)
{
    const std::size_t count = g.size();
    auto edges_of = [&](std::size_t m, auto&& visit) {
        if (g[m].leaf) return;
        for (Choice c : {Choice::Left, Choice::Right}) {
            if (allowed(m, c)) visit(c, g[m].child_at(c), g[m].delta_at(c));
        }
    };

    std::vector<bool> fwd(count, false);
    std::vector<std::size_t> stack{source};
    fwd[source] = true;
    std::vector<std::vector<std::size_t>> rev(count);
    while (!stack.empty()) {
        const std::size_t m = stack.back();
        stack.pop_back();
        edges_of(m, [&](Choice, std::size_t t, std::int64_t) {
            rev[t].push_back(m);
            if (!fwd[t]) {
                fwd[t] = true;
                stack.push_back(t);
            }
        });
    }
    if (!fwd[target]) return std::vector<std::int64_t>{};

    std::vector<bool> relevant(count, false);
    stack.assign(1, target);
    relevant[target] = true;
    while (!stack.empty()) {
        const std::size_t m = stack.back();
        stack.pop_back();
        for (std::size_t p : rev[m]) {
            if (!relevant[p]) {
                relevant[p] = true;
                stack.push_back(p);
            }
        }
    }

    // Tarjan over the relevant subgraph; a positive edge inside one
    // component means a cycle that pumps the offset.
    std::vector<std::size_t> comp(count, kNone), low(count, 0), order(count, kNone), scc_stack;
    std::vector<bool> on_stack(count, false);
    std::size_t next_order = 0, next_comp = 0;
    std::function<void(std::size_t)> strong = [&](std::size_t m) {
        order[m] = low[m] = next_order++;
        scc_stack.push_back(m);
        on_stack[m] = true;
        edges_of(m, [&](Choice, std::size_t t, std::int64_t) {
            if (!relevant[t]) return;
            if (order[t] == kNone) {
                strong(t);
                low[m] = std::min(low[m], low[t]);
            } else if (on_stack[t]) {
                low[m] = std::min(low[m], order[t]);
            }
        });
        if (low[m] == order[m]) {
            for (std::size_t t = kNone; t != m;) {
                t = scc_stack.back();
                scc_stack.pop_back();
                on_stack[t] = false;
                comp[t] = next_comp;
            }
            ++next_comp;
        }
    };
    strong(source);

    std::int64_t bound = 0;
    bool pumping = false;
    for (std::size_t m = 0; m < count; ++m) {
        if (!relevant[m]) continue;
        edges_of(m, [&](Choice, std::size_t t, std::int64_t d) {
            if (!relevant[t] || d == 0) return;
            if (comp[t] == comp[m]) pumping = true;
            bound += d;
        });
    }
    if (pumping || bound > limit) return std::nullopt;

    std::set<std::pair<std::size_t, std::int64_t>> seen{{source, 0}};
    std::deque<std::pair<std::size_t, std::int64_t>> queue{{source, 0}};
    std::set<std::int64_t> found;
    while (!queue.empty()) {
        const auto [m, off] = queue.front();
        queue.pop_front();
        if (m == target) found.insert(off);
        edges_of(m, [&](Choice, std::size_t t, std::int64_t d) {
            if (relevant[t] && seen.insert({t, off + d}).second) queue.push_back({t, off + d});
        });
    }
    return std::vector<std::int64_t>(found.begin(), found.end());
}

} // namespace cogame::detail
