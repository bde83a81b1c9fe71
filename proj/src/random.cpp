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


#include "cogame/random.hpp"

#include <functional>

namespace cogame {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::vector<Agent> agent_set(int count)
{
    static const char* names[] = {"Alice", "Bob", "Carol", "Dave", "Erin"};
    std::vector<Agent> out;
    for (int i = 0; i < count; ++i) out.emplace_back(i < 5 ? names[i] : "A" + std::to_string(i));
    return out;
}

} // namespace

ProfileGraph random_finite_profile(std::mt19937_64& rng, const FiniteProfileOptions& opt)
{
    ProfileGraph s;
    s.preference = opt.preference.value_or(coin(rng, 0.5) ? Preference::CostMin : Preference::RewardMax);
    const auto agents = agent_set(uniform(rng, opt.min_agents, opt.max_agents));

    std::size_t internal = 0, counter = 0;
    std::vector<NodeId> made;
    std::function<NodeId(int)> grow = [&](int depth) -> NodeId {
        if (!made.empty() && coin(rng, opt.share_probability)) {
            return made[std::uniform_int_distribution<std::size_t>(0, made.size() - 1)(rng)];
        }
        const NodeId id = "m" + std::to_string(counter++);
        const bool capped = opt.max_internal != 0 && internal >= opt.max_internal;
        if (depth >= opt.max_depth || capped || (depth > 0 && coin(rng, opt.leaf_probability))) {
            Leaf leaf;
            for (const auto& a : agents) leaf.utilities[a] = AffineUtility(uniform(rng, 0, opt.max_utility));
            s.nodes.emplace(id, std::move(leaf));
        } else {
            ++internal;
            ProfileNode node;
            node.agent = agents[uniform(rng, 0, static_cast<int>(agents.size()) - 1)];
            node.choice = coin(rng, 0.5) ? Choice::Left : Choice::Right;
            node.left.target = grow(depth + 1);
            node.right.target = grow(depth + 1);
            s.nodes.emplace(id, std::move(node));
        }
        made.push_back(id);
        return id;
    };
    s.root = grow(0);
    return s;
}

ProfileGraph random_schema_profile(std::mt19937_64& rng, const SchemaProfileOptions& opt)
{
    ProfileGraph s;
    s.preference = coin(rng, 0.5) ? Preference::CostMin : Preference::RewardMax;
    if (opt.with_param) s.params.push_back({"v", 1});
    const auto agents = agent_set(opt.agents);
    const std::size_t total = opt.internal_nodes + opt.leaves;
    auto name = [](std::size_t i) { return "q" + std::to_string(i); };
    auto any_node = [&] { return name(std::uniform_int_distribution<std::size_t>(0, total - 1)(rng)); };
    auto delta = [&] { return opt.max_delta > 0 ? uniform(rng, 0, opt.max_delta) : 0; };

    for (std::size_t i = 0; i < opt.internal_nodes; ++i) {
        ProfileNode node;
        node.agent = agents[uniform(rng, 0, opt.agents - 1)];
        node.choice = coin(rng, 0.5) ? Choice::Left : Choice::Right;
        node.left = {any_node(), delta()};
        node.right = {any_node(), delta()};
        s.nodes.emplace(name(i), std::move(node));
    }
    for (std::size_t i = opt.internal_nodes; i < total; ++i) {
        Leaf leaf;
        for (const auto& a : agents) {
            AffineUtility u(uniform(rng, 0, opt.max_utility));
            if (opt.max_delta > 0) u += AffineUtility::counter(uniform(rng, -1, 2));
            if (opt.with_param && coin(rng, 0.5)) u += AffineUtility::parameter("v", uniform(rng, -1, 1));
            leaf.utilities[a] = u;
        }
        s.nodes.emplace(name(i), std::move(leaf));
    }
    s.root = name(0);
    return s;
}

BinTreeGraph random_tree_graph(std::mt19937_64& rng, std::size_t nodes, bool cyclic)
{
    // Node i points only to higher indices unless cyclic; the last node is Nil.
    BinTreeGraph t;
    auto name = [](std::size_t i) { return "t" + std::to_string(i); };
    for (std::size_t i = 0; i < nodes; ++i) {
        if (i + 1 == nodes || coin(rng, 0.25)) {
            t.nodes.emplace(name(i), Nil{});
            continue;
        }
        auto pick = [&] {
            const std::size_t lo = cyclic ? 0 : i + 1;
            return name(std::uniform_int_distribution<std::size_t>(lo, nodes - 1)(rng));
        };
        t.nodes.emplace(name(i), BinNode{pick(), pick()});
    }
    t.root = name(0);
    return t;
}

} // namespace cogame
