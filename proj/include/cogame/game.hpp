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

/** @file game.hpp
 *  @brief Finite presentations of possibly infinite binary games.
 *
 *  A game or strategy profile is a finite graph whose unfolding from the
 *  root is the (possibly infinite) game tree. Edges may carry a stage
 *  counter increment, and leaf payoffs are affine in the counter `n` and in
 *  declared parameters. A back-edge with increment +1 therefore describes a
 *  parametric family s(n) = ... s(n+1) ..., which is how the escalation
 *  games are written down. Graphs without increments and with constant
 *  payoffs are ordinary rational (regular) trees.
 */

#ifndef COGAME_GAME_HPP
#define COGAME_GAME_HPP

#include "cogame/affine.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cogame {

using NodeId = std::string;

struct Agent {
    std::string name;

    Agent() = default;
    explicit Agent(std::string n) : name(std::move(n)) {}

    friend auto operator<=>(const Agent&, const Agent&) = default;
};

enum class Choice { Left, Right };

inline Choice flip(Choice c) { return c == Choice::Left ? Choice::Right : Choice::Left; }
std::string_view choice_name(Choice c);

/// CostMin: x is at most as good as y iff x >= y. RewardMax: iff x <= y.
enum class Preference { CostMin, RewardMax };

/// The relation r such that "x is no better than y" reads  x r y.
inline Relation no_better_relation(Preference p) { return p == Preference::CostMin ? Relation::Ge : Relation::Le; }
inline bool no_better(Preference p, std::int64_t x, std::int64_t y) { return compare(x, no_better_relation(p), y); }

std::string_view preference_name(Preference p);

using UtilityAssignment = std::map<Agent, AffineUtility>;

struct Edge {
    NodeId target;
    std::int64_t delta = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct ParamDecl {
    std::string name;
    std::int64_t lower_bound = 0;

    friend bool operator==(const ParamDecl&, const ParamDecl&) = default;
};

struct Leaf {
    UtilityAssignment utilities;
    friend bool operator==(const Leaf&, const Leaf&) = default;
};

struct GameNode {
    Agent agent;
    Edge left, right;
    friend bool operator==(const GameNode&, const GameNode&) = default;
};

struct ProfileNode {
    Agent agent;
    Choice choice = Choice::Left;
    Edge left, right;

    const Edge& chosen() const { return choice == Choice::Left ? left : right; }
    const Edge& other() const { return choice == Choice::Left ? right : left; }
    const Edge& edge(Choice c) const { return c == Choice::Left ? left : right; }
    friend bool operator==(const ProfileNode&, const ProfileNode&) = default;
};

/// Games (Internal = GameNode) and strategy profiles (Internal = ProfileNode).
template <class Internal>
struct SchemaGraph {
    using InternalNode = Internal;
    using Node = std::variant<Leaf, Internal>;

    std::map<NodeId, Node> nodes;
    NodeId root;
    std::vector<ParamDecl> params;
    Preference preference = Preference::RewardMax;

    /// Agents named by internal nodes or leaf assignments.
    std::set<Agent> agents() const;
    ConstraintBox default_box() const;

    friend bool operator==(const SchemaGraph&, const SchemaGraph&) = default;
};

using GameGraph = SchemaGraph<GameNode>;
using ProfileGraph = SchemaGraph<ProfileNode>;

struct Nil {
    friend bool operator==(const Nil&, const Nil&) = default;
};
struct BinNode {
    NodeId left, right;
    friend bool operator==(const BinNode&, const BinNode&) = default;
};

struct BinTreeGraph {
    using Node = std::variant<Nil, BinNode>;
    std::map<NodeId, Node> nodes;
    NodeId root;

    friend bool operator==(const BinTreeGraph&, const BinTreeGraph&) = default;
};

// -- validation ---------------------------------------------------------------

struct StructuralError {
    enum class Kind {
        MissingRoot,
        DanglingEdge,
        NegativeDelta,
        PartialUtility,
        EmptyAgent,
        UnboundParameter,
    };
    Kind kind;
    NodeId node;
    std::string detail;

    std::string to_string() const;
    friend bool operator==(const StructuralError&, const StructuralError&) = default;
};

std::vector<StructuralError> validate(const GameGraph& g);
std::vector<StructuralError> validate(const ProfileGraph& g);
std::vector<StructuralError> validate(const BinTreeGraph& g);

/// Thrown by operations whose precondition is a valid graph.
class InvalidGraph : public std::invalid_argument {
public:
    explicit InvalidGraph(std::vector<StructuralError> errs);
    const std::vector<StructuralError>& errors() const { return errors_; }

private:
    std::vector<StructuralError> errors_;
};

template <class G>
void require_valid(const G& g)
{
    auto errs = validate(g);
    if (!errs.empty()) throw InvalidGraph(std::move(errs));
}

/// Raised for graphs with nonzero deltas or non-constant payoffs where only
/// rational trees are supported.
class ParametricNotSupported : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// -- operations ---------------------------------------------------------------

GameGraph strip_choices(const ProfileGraph& s);

/// The underlying binary tree shape: leaves become Nil.
template <class Internal>
BinTreeGraph shape_of(const SchemaGraph<Internal>& g);

/// Depth-truncated unfolding with evaluated payoffs.
struct ConcreteTree {
    enum class Kind { Truncated, Nil, Leaf, Node };

    Kind kind = Kind::Truncated;
    std::string agent;                          // Node (games and profiles)
    std::optional<Choice> choice;               // Node of a profile
    std::map<std::string, std::int64_t> payoff; // Leaf
    std::vector<ConcreteTree> children;         // Node: {left, right}

    static ConcreteTree truncated() { return {}; }
    friend bool operator==(const ConcreteTree&, const ConcreteTree&) = default;

    /// S-expression rendering, e.g. (Alice R (Bob ... ) {Alice:2,Bob:0}).
    std::string to_string() const;
};

/// Expands `depth` levels of internal nodes below the root; leaves and Nil
/// reached within that budget are materialised, deeper internal nodes become
/// Truncated. Depth 0 is always the bare truncation marker. The counter
/// starts at val["n"] (0 when absent) and advances along edge deltas.
/// Throws std::out_of_range if a declared parameter is unbound.
ConcreteTree unfold(const GameGraph& g, std::size_t depth, const Valuation& val);
ConcreteTree unfold(const ProfileGraph& g, std::size_t depth, const Valuation& val);
ConcreteTree unfold(const BinTreeGraph& g, std::size_t depth);

/// Equality of the infinite unfoldings, by partition refinement over the
/// disjoint union. Throws ParametricNotSupported on parametric input.
bool bisimilar(const GameGraph& a, const GameGraph& b);
bool bisimilar(const ProfileGraph& a, const ProfileGraph& b);
bool bisimilar(const BinTreeGraph& a, const BinTreeGraph& b);

template <class Internal>
bool is_parametric(const SchemaGraph<Internal>& g);

/// Minimal summed delta over all paths from the root, for reachable nodes.
std::map<NodeId, std::int64_t> reachable_offsets(const ProfileGraph& s);
std::map<NodeId, std::int64_t> reachable_offsets(const GameGraph& g);

} // namespace cogame

#endif
