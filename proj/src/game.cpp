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

#include "cogame/game.hpp"

#include "indexed.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace cogame {

std::string_view choice_name(Choice c) { return c == Choice::Left ? "left" : "right"; }

std::string_view preference_name(Preference p) { return p == Preference::CostMin ? "cost" : "reward"; }

template <class Internal>
std::set<Agent> SchemaGraph<Internal>::agents() const
{
    std::set<Agent> out;
    for (const auto& [id, node] : nodes) {
        if (const auto* leaf = std::get_if<Leaf>(&node)) {
            for (const auto& [agent, u] : leaf->utilities) out.insert(agent);
        } else {
            out.insert(std::get<Internal>(node).agent);
        }
    }
    return out;
}

template <class Internal>
ConstraintBox SchemaGraph<Internal>::default_box() const
{
    ConstraintBox box;
    for (const auto& p : params) box.param_bounds[p.name] = p.lower_bound;
    return box;
}

template struct SchemaGraph<GameNode>;
template struct SchemaGraph<ProfileNode>;

std::string StructuralError::to_string() const
{
    std::string kind_name;
    switch (kind) {
    case Kind::MissingRoot: kind_name = "MissingRoot"; break;
    case Kind::DanglingEdge: kind_name = "DanglingEdge"; break;
    case Kind::NegativeDelta: kind_name = "NegativeDelta"; break;
    case Kind::PartialUtility: kind_name = "PartialUtility"; break;
    case Kind::EmptyAgent: kind_name = "EmptyAgent"; break;
    case Kind::UnboundParameter: kind_name = "UnboundParameter"; break;
    }
    std::string out = kind_name + "(" + node + ")";
    if (!detail.empty()) out += ": " + detail;
    return out;
}

namespace {

std::string join_errors(const std::vector<StructuralError>& errs)
{
    std::string msg = "invalid graph";
    for (const auto& e : errs) msg += "; " + e.to_string();
    return msg;
}

template <class Internal>
std::vector<StructuralError> validate_schema(const SchemaGraph<Internal>& g)
{
    using K = StructuralError::Kind;
    std::vector<StructuralError> errs;
    if (!g.nodes.count(g.root)) errs.push_back({K::MissingRoot, g.root, "root is not a node"});

    std::set<std::string> declared;
    for (const auto& p : g.params) declared.insert(p.name);
    const std::set<Agent> agents = g.agents();

    for (const auto& [id, node] : g.nodes) {
        if (const auto* leaf = std::get_if<Leaf>(&node)) {
            for (const auto& a : agents) {
                if (!leaf->utilities.count(a)) errs.push_back({K::PartialUtility, id, "no payoff for " + a.name});
            }
            for (const auto& [agent, u] : leaf->utilities) {
                for (const auto& [param, c] : u.coeffs) {
                    if (!declared.count(param)) errs.push_back({K::UnboundParameter, id, param});
                }
            }
            continue;
        }
        const auto& in = std::get<Internal>(node);
        if (in.agent.name.empty()) errs.push_back({K::EmptyAgent, id, ""});
        for (const Edge* e : {&in.left, &in.right}) {
            if (!g.nodes.count(e->target)) errs.push_back({K::DanglingEdge, id, "unknown target " + e->target});
            if (e->delta < 0) errs.push_back({K::NegativeDelta, id, "delta " + std::to_string(e->delta)});
        }
    }
    return errs;
}

} // namespace

InvalidGraph::InvalidGraph(std::vector<StructuralError> errs)
    : std::invalid_argument(join_errors(errs)), errors_(std::move(errs))
{
}

std::vector<StructuralError> validate(const GameGraph& g) { return validate_schema(g); }
std::vector<StructuralError> validate(const ProfileGraph& g) { return validate_schema(g); }

std::vector<StructuralError> validate(const BinTreeGraph& g)
{
    using K = StructuralError::Kind;
    std::vector<StructuralError> errs;
    if (!g.nodes.count(g.root)) errs.push_back({K::MissingRoot, g.root, "root is not a node"});
    for (const auto& [id, node] : g.nodes) {
        if (const auto* bn = std::get_if<BinNode>(&node)) {
            for (const NodeId* t : {&bn->left, &bn->right}) {
                if (!g.nodes.count(*t)) errs.push_back({K::DanglingEdge, id, "unknown target " + *t});
            }
        }
    }
    return errs;
}

GameGraph strip_choices(const ProfileGraph& s)
{
    require_valid(s);
    GameGraph g;
    g.root = s.root;
    g.params = s.params;
    g.preference = s.preference;
    for (const auto& [id, node] : s.nodes) {
        if (const auto* leaf = std::get_if<Leaf>(&node)) {
            g.nodes.emplace(id, *leaf);
        } else {
            const auto& in = std::get<ProfileNode>(node);
            g.nodes.emplace(id, GameNode{in.agent, in.left, in.right});
        }
    }
    return g;
}

template <class Internal>
BinTreeGraph shape_of(const SchemaGraph<Internal>& g)
{
    BinTreeGraph t;
    t.root = g.root;
    for (const auto& [id, node] : g.nodes) {
        if (std::holds_alternative<Leaf>(node)) {
            t.nodes.emplace(id, Nil{});
        } else {
            const auto& in = std::get<Internal>(node);
            t.nodes.emplace(id, BinNode{in.left.target, in.right.target});
        }
    }
    return t;
}

template BinTreeGraph shape_of(const GameGraph&);
template BinTreeGraph shape_of(const ProfileGraph&);

template <class Internal>
bool is_parametric(const SchemaGraph<Internal>& g)
{
    for (const auto& [id, node] : g.nodes) {
        if (const auto* leaf = std::get_if<Leaf>(&node)) {
            for (const auto& [a, u] : leaf->utilities) {
                if (!u.is_constant()) return true;
            }
        } else {
            const auto& in = std::get<Internal>(node);
            if (in.left.delta != 0 || in.right.delta != 0) return true;
        }
    }
    return false;
}

template bool is_parametric(const GameGraph&);
template bool is_parametric(const ProfileGraph&);

// -- unfold -------------------------------------------------------------------

std::string ConcreteTree::to_string() const
{
    std::ostringstream out;
    switch (kind) {
    case Kind::Truncated: out << "..."; break;
    case Kind::Nil: out << "nil"; break;
    case Kind::Leaf: {
        out << '{';
        bool first = true;
        for (const auto& [a, v] : payoff) {
            if (!first) out << ',';
            out << a << ':' << v;
            first = false;
        }
        out << '}';
        break;
    }
    case Kind::Node:
        out << '(';
        if (!agent.empty()) out << agent << ' ';
        if (choice) out << (*choice == Choice::Left ? "L " : "R ");
        out << children[0].to_string() << ' ' << children[1].to_string() << ')';
        break;
    }
    return out.str();
}

namespace {

template <class Internal>
ConcreteTree expand(const SchemaGraph<Internal>& g, const NodeId& id, std::size_t budget, Valuation& val)
{
    const auto& node = g.nodes.at(id);
    ConcreteTree t;
    if (const auto* leaf = std::get_if<Leaf>(&node)) {
        t.kind = ConcreteTree::Kind::Leaf;
        for (const auto& [a, u] : leaf->utilities) t.payoff[a.name] = affine_eval(u, val);
        return t;
    }
    if (budget == 0) return ConcreteTree::truncated();
    const auto& in = std::get<Internal>(node);
    t.kind = ConcreteTree::Kind::Node;
    t.agent = in.agent.name;
    if constexpr (std::is_same_v<Internal, ProfileNode>) t.choice = in.choice;
    auto& n = val[std::string(kCounter)];
    for (const Edge* e : {&in.left, &in.right}) {
        n += e->delta;
        t.children.push_back(expand(g, e->target, budget - 1, val));
        n -= e->delta;
    }
    return t;
}

template <class Internal>
ConcreteTree unfold_schema(const SchemaGraph<Internal>& g, std::size_t depth, const Valuation& val)
{
    require_valid(g);
    for (const auto& p : g.params) {
        if (!val.count(p.name)) throw std::out_of_range("valuation has no binding for parameter '" + p.name + "'");
    }
    if (depth == 0) return ConcreteTree::truncated();
    Valuation working = val;
    working.try_emplace(std::string(kCounter), 0);
    return expand(g, g.root, depth, working);
}

ConcreteTree expand_tree(const BinTreeGraph& g, const NodeId& id, std::size_t budget)
{
    const auto& node = g.nodes.at(id);
    ConcreteTree t;
    if (std::holds_alternative<Nil>(node)) {
        t.kind = ConcreteTree::Kind::Nil;
        return t;
    }
    if (budget == 0) return ConcreteTree::truncated();
    const auto& bn = std::get<BinNode>(node);
    t.kind = ConcreteTree::Kind::Node;
    t.children.push_back(expand_tree(g, bn.left, budget - 1));
    t.children.push_back(expand_tree(g, bn.right, budget - 1));
    return t;
}

} // namespace

ConcreteTree unfold(const GameGraph& g, std::size_t depth, const Valuation& val) { return unfold_schema(g, depth, val); }
ConcreteTree unfold(const ProfileGraph& g, std::size_t depth, const Valuation& val) { return unfold_schema(g, depth, val); }

ConcreteTree unfold(const BinTreeGraph& g, std::size_t depth)
{
    require_valid(g);
    if (depth == 0) return ConcreteTree::truncated();
    return expand_tree(g, g.root, depth);
}

// -- bisimilarity ---------------------------------------------------------------

namespace {

// Coarsest stable partition of the disjoint union, seeded by node labels.
bool refine_and_compare(const detail::IndexedGraph& a, const std::vector<std::string>& label_a,
                        const detail::IndexedGraph& b, const std::vector<std::string>& label_b)
{
    const std::size_t na = a.size();
    const std::size_t total = na + b.size();
    auto node = [&](std::size_t i) -> const detail::IndexedNode& { return i < na ? a[i] : b[i - na]; };
    auto child = [&](std::size_t i, int side) { return i < na ? node(i).child[side] : node(i).child[side] + na; };

    std::vector<std::size_t> block(total);
    {
        std::map<std::string, std::size_t> ids;
        for (std::size_t i = 0; i < total; ++i) {
            const std::string& l = i < na ? label_a[i] : label_b[i - na];
            block[i] = ids.emplace(l, ids.size()).first->second;
        }
    }
    std::size_t blocks = *std::max_element(block.begin(), block.end()) + 1;
    for (;;) {
        std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> sig;
        std::vector<std::size_t> next(total);
        for (std::size_t i = 0; i < total; ++i) {
            const bool leaf = node(i).leaf;
            auto key = leaf ? std::tuple{block[i], detail::kNone, detail::kNone}
                            : std::tuple{block[i], block[child(i, 0)], block[child(i, 1)]};
            next[i] = sig.emplace(key, sig.size()).first->second;
        }
        block.swap(next);
        if (sig.size() == blocks) break;
        blocks = sig.size();
    }
    return block[a.root] == block[b.root + na];
}

std::vector<std::string> schema_labels(const detail::IndexedGraph& ix)
{
    std::vector<std::string> labels(ix.size());
    for (std::size_t i = 0; i < ix.size(); ++i) {
        const auto& n = ix[i];
        std::ostringstream l;
        if (n.leaf) {
            l << "leaf";
            for (const auto& [agent, u] : n.payoffs->utilities) l << '|' << agent.name << '=' << u.constant;
        } else {
            l << "node|" << n.agent->name;
            if (n.choice) l << '|' << choice_name(*n.choice);
        }
        labels[i] = l.str();
    }
    return labels;
}

template <class Internal>
bool bisimilar_schema(const SchemaGraph<Internal>& a, const SchemaGraph<Internal>& b)
{
    if (is_parametric(a) || is_parametric(b))
        throw ParametricNotSupported("bisimilarity needs graphs without deltas and with constant payoffs");
    const auto ia = detail::index_graph(a);
    const auto ib = detail::index_graph(b);
    return refine_and_compare(ia, schema_labels(ia), ib, schema_labels(ib));
}

} // namespace

bool bisimilar(const GameGraph& a, const GameGraph& b) { return bisimilar_schema(a, b); }
bool bisimilar(const ProfileGraph& a, const ProfileGraph& b) { return bisimilar_schema(a, b); }

bool bisimilar(const BinTreeGraph& a, const BinTreeGraph& b)
{
    const auto ia = detail::index_graph(a);
    const auto ib = detail::index_graph(b);
    auto labels = [](const detail::IndexedGraph& ix) {
        std::vector<std::string> l(ix.size());
        for (std::size_t i = 0; i < ix.size(); ++i) l[i] = ix[i].leaf ? "nil" : "node";
        return l;
    };
    return refine_and_compare(ia, labels(ia), ib, labels(ib));
}

// -- offsets --------------------------------------------------------------------

namespace {

template <class G>
std::map<NodeId, std::int64_t> offsets_of(const G& g)
{
    const auto ix = detail::index_graph(g);
    const auto dist = detail::min_offsets(ix, ix.root, detail::all_edges());
    std::map<NodeId, std::int64_t> out;
    for (std::size_t i = 0; i < ix.size(); ++i) {
        if (dist[i] >= 0) out.emplace(ix.ids[i], dist[i]);
    }
    return out;
}

} // namespace

std::map<NodeId, std::int64_t> reachable_offsets(const ProfileGraph& s) { return offsets_of(s); }
std::map<NodeId, std::int64_t> reachable_offsets(const GameGraph& g) { return offsets_of(g); }

} // namespace cogame
