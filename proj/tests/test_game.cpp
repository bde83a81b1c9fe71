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


#include "cogame/analyses.hpp"
#include "cogame/catalog.hpp"
#include "cogame/game.hpp"
#include "cogame/random.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <deque>
#include <set>

using namespace cogame;
using cogame::testing::profile;

namespace {

BinTreeGraph tree(const std::string& name) { return std::get<BinTreeGraph>(build_named(name).value); }

ConcreteTree cnode(ConcreteTree l, ConcreteTree r)
{
    ConcreteTree t;
    t.kind = ConcreteTree::Kind::Node;
    t.children = {std::move(l), std::move(r)};
    return t;
}

ConcreteTree cnil()
{
    ConcreteTree t;
    t.kind = ConcreteTree::Kind::Nil;
    return t;
}

// Two copies of every node, children pointing at a random copy: the
// unfolding does not change.
template <class G, class Retarget>
G unroll(const G& g, std::mt19937_64& rng, Retarget retarget)
{
    G out = g;
    out.nodes.clear();
    auto copy = [&](const NodeId& id) { return id + (rng() % 2 ? "_a" : "_b"); };
    for (const auto& [id, node] : g.nodes) {
        for (const char* suffix : {"_a", "_b"}) out.nodes.emplace(id + suffix, retarget(node, copy));
    }
    out.root = g.root + "_a";
    return out;
}

BinTreeGraph unroll_tree(const BinTreeGraph& t, std::mt19937_64& rng)
{
    return unroll(t, rng, [](const BinTreeGraph::Node& node, auto& copy) -> BinTreeGraph::Node {
        if (const auto* in = std::get_if<BinNode>(&node)) return BinNode{copy(in->left), copy(in->right)};
        return node;
    });
}

ProfileGraph unroll_profile(const ProfileGraph& s, std::mt19937_64& rng)
{
    return unroll(s, rng, [](const ProfileGraph::Node& node, auto& copy) -> ProfileGraph::Node {
        if (const auto* in = std::get_if<ProfileNode>(&node)) {
            ProfileNode p = *in;
            p.left.target = copy(p.left.target);
            p.right.target = copy(p.right.target);
            return p;
        }
        return node;
    });
}

template <class G>
bool unfold_equal(const G& a, const G& b, std::size_t k)
{
    if constexpr (std::is_same_v<G, BinTreeGraph>)
        return unfold(a, k) == unfold(b, k);
    else
        return unfold(a, k, {}) == unfold(b, k, {});
}

template <class G>
void expect_bisim_matches_unfolding(const G& a, const G& b)
{
    // Refinement over the union stabilises within |a| + |b| rounds, and the
    // unfolding at depth k contains every shallower one.
    const std::size_t bound = a.nodes.size() + b.nodes.size();
    EXPECT_EQ(bisimilar(a, b), unfold_equal(a, b, bound));
}

} // namespace

TEST(Validate, CatalogIsValid)
{
    EXPECT_TRUE(validate(profile("dolAcBs")).empty());
    for (const auto& e : list_catalog()) {
        const Block b = build_named(e.name).value;
        EXPECT_TRUE(std::visit([](const auto& g) { return validate(g).empty(); }, b)) << e.name;
    }
}

TEST(Validate, ReportsStructuralErrors)
{
    ProfileGraph s = profile("s0");
    s.root = "missing";
    auto errs = validate(s);
    ASSERT_EQ(errs.size(), 1u);
    EXPECT_EQ(errs[0].kind, StructuralError::Kind::MissingRoot);

    s = profile("s0");
    std::get<ProfileNode>(s.nodes.at("b")).left.target = "ghost";
    errs = validate(s);
    ASSERT_EQ(errs.size(), 1u);
    EXPECT_EQ(errs[0].kind, StructuralError::Kind::DanglingEdge);
    EXPECT_EQ(errs[0].node, "b");

    s = profile("dolAcBs");
    std::get<ProfileNode>(s.nodes.at("B")).left.delta = -1;
    errs = validate(s);
    ASSERT_FALSE(errs.empty());
    EXPECT_EQ(errs[0].kind, StructuralError::Kind::NegativeDelta);

    s = profile("s0");
    std::get<Leaf>(s.nodes.at("x01")).utilities.erase(Agent("Bob"));
    errs = validate(s);
    ASSERT_FALSE(errs.empty());
    EXPECT_EQ(errs[0].kind, StructuralError::Kind::PartialUtility);

    s = profile("dolAcBs");
    s.params.clear();
    errs = validate(s);
    ASSERT_FALSE(errs.empty());
    EXPECT_EQ(errs[0].kind, StructuralError::Kind::UnboundParameter);

    BinTreeGraph t = tree("zig");
    t.nodes.erase("nil");
    EXPECT_FALSE(validate(t).empty());
}

TEST(StripChoices, Examples)
{
    EXPECT_EQ(strip_choices(profile("s0")), strip_choices(profile("s1")));
    EXPECT_TRUE(bisimilar(strip_choices(profile("s0")), strip_choices(profile("s1"))));
    EXPECT_EQ(strip_choices(profile("dolAsBs")), strip_choices(profile("dolAcBs")));

    ProfileGraph leaf;
    leaf.nodes.emplace("f", Leaf{{{Agent("Alice"), 3}}});
    leaf.root = "f";
    const GameGraph g = strip_choices(leaf);
    ASSERT_EQ(g.nodes.size(), 1u);
    EXPECT_EQ(std::get<Leaf>(g.nodes.at("f")), std::get<Leaf>(leaf.nodes.at("f")));
}

TEST(StripChoices, PreservesStructure)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        SchemaProfileOptions opt;
        opt.max_delta = 2;
        opt.with_param = true;
        const ProfileGraph s = random_schema_profile(rng, opt);
        const GameGraph g = strip_choices(s);
        ASSERT_EQ(g.nodes.size(), s.nodes.size());
        EXPECT_EQ(g.root, s.root);
        EXPECT_EQ(g.params, s.params);
        for (const auto& [id, node] : s.nodes) {
            if (const auto* in = std::get_if<ProfileNode>(&node)) {
                const auto& gn = std::get<GameNode>(g.nodes.at(id));
                EXPECT_EQ(gn.agent, in->agent);
                EXPECT_EQ(gn.left, in->left);
                EXPECT_EQ(gn.right, in->right);
            } else {
                EXPECT_EQ(std::get<Leaf>(g.nodes.at(id)), std::get<Leaf>(node));
            }
        }
    }
}

TEST(Unfold, Examples)
{
    const ConcreteTree zig3 = unfold(tree("zig"), 3);
    EXPECT_EQ(zig3, cnode(cnil(), cnode(cnode(cnil(), ConcreteTree::truncated()), cnil())));
    EXPECT_EQ(zig3.to_string(), "(nil ((nil ...) nil))");

    EXPECT_EQ(unfold(profile("dolAcBs"), 0, {{"n", 0}, {"v", 2}}).kind, ConcreteTree::Kind::Truncated);
    EXPECT_EQ(unfold(tree("backbone"), 0).kind, ConcreteTree::Kind::Truncated);

    const ConcreteTree d = unfold(profile("dolAcBs"), 2, {{"n", 0}, {"v", 2}});
    EXPECT_EQ(d.to_string(), "(Alice L (Bob R ... {Alice:1,Bob:2}) {Alice:2,Bob:0})");

    EXPECT_THROW(unfold(profile("dolAcBs"), 2, {{"n", 0}}), std::out_of_range);
}

TEST(Bisimilar, Examples)
{
    BinTreeGraph unrolled;
    unrolled.nodes.emplace("zig", BinNode{"nil1", "zag"});
    unrolled.nodes.emplace("zag", BinNode{"zig2", "nil2"});
    unrolled.nodes.emplace("zig2", BinNode{"nil1", "zag2"});
    unrolled.nodes.emplace("zag2", BinNode{"zig", "nil2"});
    unrolled.nodes.emplace("nil1", Nil{});
    unrolled.nodes.emplace("nil2", Nil{});
    unrolled.root = "zig";
    EXPECT_TRUE(bisimilar(tree("zig"), unrolled));
    EXPECT_TRUE(bisimilar(tree("zig"), tree("zig")));
    EXPECT_FALSE(bisimilar(tree("zig"), tree("zag")));
    EXPECT_FALSE(bisimilar(tree("zig"), tree("backbone")));
    EXPECT_TRUE(bisimilar(profile("t"), profile("t")));
    EXPECT_FALSE(bisimilar(profile("s0"), profile("s1")));
    EXPECT_THROW(bisimilar(profile("dolAcBs"), profile("dolAcBs")), ParametricNotSupported);
}

TEST(Bisimilar, MatchesBoundedUnfolding)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 150; ++i) {
        const BinTreeGraph a = random_tree_graph(rng, 2 + rng() % 4, true);
        const BinTreeGraph b = i % 2 ? unroll_tree(a, rng) : random_tree_graph(rng, 2 + rng() % 4, true);
        expect_bisim_matches_unfolding(a, b);
        if (i % 2) {
            EXPECT_TRUE(bisimilar(a, b));
        }
    }
    for (int i = 0; i < 150; ++i) {
        SchemaProfileOptions opt;
        opt.internal_nodes = 1 + rng() % 3;
        opt.leaves = 1 + rng() % 2;
        opt.max_utility = 1;
        opt.agents = 1 + rng() % 2;
        const ProfileGraph a = random_schema_profile(rng, opt);
        ProfileGraph b = i % 2 ? unroll_profile(a, rng) : random_schema_profile(rng, opt);
        b.preference = a.preference;
        expect_bisim_matches_unfolding(a, b);
        if (i % 2) {
            EXPECT_TRUE(bisimilar(a, b));
        }
    }
}

TEST(Bisimilar, EquivalenceRelation)
{
    std::mt19937_64 rng(9);
    std::vector<BinTreeGraph> sample;
    for (int i = 0; i < 12; ++i) {
        sample.push_back(random_tree_graph(rng, 2 + rng() % 4, true));
        sample.push_back(unroll_tree(sample.back(), rng));
    }
    for (const auto& a : sample) {
        EXPECT_TRUE(bisimilar(a, a));
        for (const auto& b : sample) {
            EXPECT_EQ(bisimilar(a, b), bisimilar(b, a));
            if (!bisimilar(a, b)) continue;
            for (const auto& c : sample) {
                if (bisimilar(b, c)) {
                    EXPECT_TRUE(bisimilar(a, c));
                }
            }
        }
    }
}

TEST(ReachableOffsets, Examples)
{
    const auto d = reachable_offsets(profile("dolAcBs"));
    EXPECT_EQ(d, (std::map<NodeId, std::int64_t>{{"A", 0}, {"B", 0}, {"SA", 0}, {"SB", 0}}));

    ProfileGraph leaf;
    leaf.nodes.emplace("f", Leaf{{{Agent("Alice"), 0}}});
    leaf.root = "f";
    EXPECT_EQ(reachable_offsets(leaf), (std::map<NodeId, std::int64_t>{{"f", 0}}));

    ProfileGraph chain;
    const Agent a("Alice");
    chain.nodes.emplace("c0", ProfileNode{a, Choice::Left, {"c1", 1}, {"c1", 1}});
    chain.nodes.emplace("c1", ProfileNode{a, Choice::Left, {"c2", 1}, {"c2", 1}});
    chain.nodes.emplace("c2", ProfileNode{a, Choice::Left, {"c3", 1}, {"c3", 1}});
    chain.nodes.emplace("c3", Leaf{{{a, 0}}});
    chain.nodes.emplace("orphan", Leaf{{{a, 0}}});
    chain.root = "c0";
    const auto c = reachable_offsets(chain);
    EXPECT_EQ(c.at("c3"), 3);
    EXPECT_FALSE(c.count("orphan"));
}

TEST(ReachableOffsets, MinimaAreAttained)
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        SchemaProfileOptions opt;
        opt.internal_nodes = 2 + rng() % 5;
        opt.max_delta = 3;
        const ProfileGraph s = random_schema_profile(rng, opt);
        const auto offsets = reachable_offsets(s);

        // all (node, offset) states with offset <= the largest reported minimum
        std::int64_t top = 0;
        for (const auto& [id, k] : offsets) top = std::max(top, k);
        std::set<std::pair<NodeId, std::int64_t>> seen{{s.root, 0}};
        std::deque<std::pair<NodeId, std::int64_t>> queue{{s.root, 0}};
        std::map<NodeId, std::int64_t> best;
        while (!queue.empty()) {
            auto [id, k] = queue.front();
            queue.pop_front();
            if (!best.count(id) || k < best[id]) best[id] = k;
            if (const auto* in = std::get_if<ProfileNode>(&s.nodes.at(id))) {
                for (const Edge& e : {in->left, in->right}) {
                    const std::pair next{e.target, k + e.delta};
                    if (next.second <= top && seen.insert(next).second) queue.push_back(next);
                }
            }
        }
        EXPECT_EQ(best, offsets);
    }
}
