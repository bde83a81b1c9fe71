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

// Brute-force procedures for finite games. They share no code with the
// fixpoint-based checks and serve as their reference.

#include "cogame/analyses.hpp"

#include <algorithm>
#include <functional>

namespace cogame {

BackwardInduction backward_induction(const GameGraph& g, const ProfileGraph* tie_break)
{
    require_valid(g);
    if (is_parametric(g)) throw ParametricNotSupported("backward induction needs constant payoffs and no deltas");
    const std::set<Agent> agents = g.agents();

    BackwardInduction out;
    std::set<NodeId> on_stack;
    std::function<const std::map<Agent, std::int64_t>&(const NodeId&)> solve =
        [&](const NodeId& id) -> const std::map<Agent, std::int64_t>& {
        if (auto it = out.value.find(id); it != out.value.end()) return it->second;
        if (!on_stack.insert(id).second) throw CyclicGraph("game has a cycle through " + id);

        const auto& node = g.nodes.at(id);
        std::map<Agent, std::int64_t> value;
        if (const auto* leaf = std::get_if<Leaf>(&node)) {
            for (const auto& a : agents) value[a] = leaf->utilities.at(a).constant;
        } else {
            const auto& in = std::get<GameNode>(node);
            const auto left = solve(in.left.target);
            const auto right = solve(in.right.target);
            const std::int64_t l = left.at(in.agent);
            const std::int64_t r = right.at(in.agent);
            std::set<Choice> best;
            if (no_better(g.preference, r, l)) best.insert(Choice::Left);
            if (no_better(g.preference, l, r)) best.insert(Choice::Right);

            Choice pick = *best.begin();
            if (best.size() == 2 && tie_break) {
                auto p = tie_break->nodes.find(id);
                if (p != tie_break->nodes.end()) {
                    if (const auto* pn = std::get_if<ProfileNode>(&p->second)) pick = pn->choice;
                }
            }
            value = pick == Choice::Left ? left : right;
            out.optimal[id] = std::move(best);
        }
        on_stack.erase(id);
        return out.value[id] = std::move(value);
    };
    solve(g.root);
    return out;
}

std::vector<ProfileGraph> enumerate_deviations(const ProfileGraph& s, const Agent& a, std::size_t max_flips,
                                               std::size_t max_depth)
{
    require_valid(s);

    // Reject a repeated node along any root path within the depth bound.
    std::vector<NodeId> stack_path;
    std::function<void(const NodeId&, std::size_t)> scan = [&](const NodeId& id, std::size_t depth) {
        if (depth >= max_depth) return;
        if (std::find(stack_path.begin(), stack_path.end(), id) != stack_path.end())
            throw TruncationUnsound("cycle through " + id + " within depth " + std::to_string(max_depth));
        const auto* in = std::get_if<ProfileNode>(&s.nodes.at(id));
        if (!in) return;
        stack_path.push_back(id);
        scan(in->left.target, depth + 1);
        scan(in->right.target, depth + 1);
        stack_path.pop_back();
    };
    scan(s.root, 0);

    // Tree-shaped iff every reachable node has exactly one incoming edge
    // from a reachable node (the root none).
    std::map<NodeId, std::size_t> indegree{{s.root, 0}};
    {
        std::vector<NodeId> todo{s.root};
        std::set<NodeId> seen{s.root};
        while (!todo.empty()) {
            const NodeId id = todo.back();
            todo.pop_back();
            const auto* in = std::get_if<ProfileNode>(&s.nodes.at(id));
            if (!in) continue;
            for (const NodeId& t : {in->left.target, in->right.target}) {
                ++indegree[t];
                if (seen.insert(t).second) todo.push_back(t);
            }
        }
    }
    const bool tree_shaped = std::all_of(indegree.begin(), indegree.end(), [&](auto& kv) {
        return kv.second == (kv.first == s.root ? 0u : 1u);
    });

    // Otherwise give every position within the bound its own copy, so each
    // flips independently; deeper positions keep referring to the originals.
    ProfileGraph base = s;
    std::vector<NodeId> flippable;
    std::function<NodeId(const NodeId&, std::size_t, const std::string&)> rebuild =
        [&](const NodeId& id, std::size_t depth, const std::string& where) -> NodeId {
        if (depth >= max_depth) return id;
        const NodeId name = tree_shaped ? id : id + "#" + where;
        const auto& node = s.nodes.at(id);
        if (const auto* in = std::get_if<ProfileNode>(&node)) {
            ProfileNode copy = *in;
            copy.left.target = rebuild(in->left.target, depth + 1, where + "L");
            copy.right.target = rebuild(in->right.target, depth + 1, where + "R");
            base.nodes.insert_or_assign(name, copy);
            if (in->agent == a) flippable.push_back(name);
        } else {
            base.nodes.insert_or_assign(name, node);
        }
        return name;
    };
    base.root = rebuild(s.root, 0, "");
    std::sort(flippable.begin(), flippable.end());

    std::vector<ProfileGraph> out{base};
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> extend = [&](std::size_t from) {
        if (chosen.size() == max_flips) return;
        for (std::size_t i = from; i < flippable.size(); ++i) {
            chosen.push_back(i);
            ProfileGraph p = base;
            for (std::size_t k : chosen) {
                auto& pn = std::get<ProfileNode>(p.nodes.at(flippable[k]));
                pn.choice = flip(pn.choice);
            }
            out.push_back(std::move(p));
            extend(i + 1);
            chosen.pop_back();
        }
    };
    extend(0);
    return out;
}

} // namespace cogame
