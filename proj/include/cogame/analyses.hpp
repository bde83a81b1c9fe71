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

/** @file analyses.hpp
 *  @brief Decision procedures for plays, utilities and equilibria.
 *
 *  Every predicate works on the finite presentation directly:
 *
 *   - "leads to a leaf" is a least fixpoint (follow the choices until a
 *     leaf, or until a node repeats);
 *   - "always leads to a leaf", "is infinite" and subgame perfection are
 *     greatest fixpoints of their one-step clauses;
 *   - payoff comparisons are affine and are decided for every admissible
 *     counter value and parameter at once.
 *
 *  Nash equilibrium quantifies over all profiles that differ from the given
 *  one in finitely many choices of one agent. Such a profile plays a path
 *  of the deviation graph (the agent's nodes may take either child, other
 *  nodes follow their choice), and every leaf-reaching path of that graph
 *  is such a profile. The check therefore enumerates the leaves of the
 *  deviation graph instead of the profiles.
 *
 *  Conditions at a node are checked for every counter value at or above
 *  the node's minimal reachable offset. That is a superset of the values
 *  that actually occur; when a failure is found at a value that cannot be
 *  confirmed reachable, the verdict is Unknown rather than Fails.
 */

#ifndef COGAME_ANALYSES_HPP
#define COGAME_ANALYSES_HPP

#include "cogame/affine.hpp"
#include "cogame/game.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogame {

// -- plays ------------------------------------------------------------------------

struct PlayTrace {
    enum class Kind { ReachesLeaf, Divergent };

    Kind kind = Kind::ReachesLeaf;
    /// ReachesLeaf: start..leaf. Divergent: start..(node before the cycle entry).
    std::vector<NodeId> path;
    NodeId leaf;
    std::int64_t offset = 0;
    /// Divergent: the repeating segment, starting at its entry node.
    std::vector<NodeId> cycle;
    std::int64_t cycle_delta = 0;
};

struct LeadsToLeaf {
    bool leads = false;
    PlayTrace trace;
    explicit operator bool() const { return leads; }
};

LeadsToLeaf leads_to_leaf(const ProfileGraph& s, const NodeId& start);
inline LeadsToLeaf leads_to_leaf(const ProfileGraph& s) { return leads_to_leaf(s, s.root); }

/// Every node reachable from the root (over both children) leads to a leaf.
bool always_leads_to_leaf(const ProfileGraph& s);
/// The same predicate as the greatest fixpoint of its coinductive clauses.
bool always_leads_to_leaf_fixpoint(const ProfileGraph& s);

struct InfiniteNodes {
    std::set<NodeId> nodes;
    bool root = false;
};

InfiniteNodes is_infinite(const BinTreeGraph& t);

/// Nullopt when the play diverges. The result is expressed in the counter
/// value at `start`. Throws std::invalid_argument for an unknown agent.
using UtilityResult = std::optional<AffineUtility>;
UtilityResult utility_of(const ProfileGraph& s, const Agent& a, const NodeId& start);
inline UtilityResult utility_of(const ProfileGraph& s, const Agent& a) { return utility_of(s, a, s.root); }

// -- equilibria ---------------------------------------------------------------------

/// Where a check is evaluated. Without `base_n` the root counter ranges over
/// all n >= 0; `fixed` pins parameters to values (otherwise they range over
/// their declared lower bounds and up).
struct Scope {
    std::optional<std::int64_t> base_n;
    Valuation fixed;
};

/// Throws std::invalid_argument if `scope` fixes an undeclared parameter or
/// a value below its bound.
void check_scope(const ProfileGraph& s, const Scope& scope);

enum class Verdict { Holds, Fails, VacuouslyHolds, Unknown };
std::string_view verdict_name(Verdict v);

struct PathStep {
    NodeId node;
    Choice choice = Choice::Left; // the child taken
    bool flipped = false;         // taken against the profile's choice

    friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct Witness {
    enum class Kind { Deviation, Divergence };

    Kind kind = Kind::Deviation;
    Agent agent;
    /// Node at which the comparison is made; the root for Nash.
    NodeId subgame;
    /// Root to subgame (navigation, never flips).
    std::vector<PathStep> entry;
    /// Deviation: subgame to `leaf`, flipped steps belong to `agent`.
    std::vector<PathStep> deviation;
    NodeId leaf;
    /// Root counter `n` and every parameter.
    Valuation valuation;
    std::int64_t deviation_value = 0;
    std::int64_t equilibrium_value = 0;
};

struct Condition {
    NodeId node;
    std::optional<Agent> agent;
    AffineUtility lhs;
    Relation relation = Relation::Ge;
    AffineUtility rhs;
    ConstraintBox box;
    SymbolicTruth truth;
};

struct EquilibriumReport {
    std::string check;
    Verdict verdict = Verdict::Unknown;
    std::optional<Witness> witness;
    std::vector<Condition> conditions;
    std::string note;
};

/// Subgame perfection as a greatest fixpoint over the schema nodes.
EquilibriumReport sgpe_check(const ProfileGraph& s, const Scope& scope = {});

/// Nash equilibrium via per-agent deviation graphs.
EquilibriumReport nash_check(const ProfileGraph& s, const Scope& scope = {});

/// Re-derive the comparison a Fails witness claims, independently of the
/// check that produced it: walk the entry and deviation paths, confirm that
/// only the witness agent's choices are flipped, re-evaluate both utilities
/// at the witness valuation and confirm the deviation is strictly better.
/// Divergence witnesses are confirmed by the play from the subgame not
/// reaching a leaf.
bool replay_witness(const ProfileGraph& s, const Witness& w);

/// The profiles differ only in choices of `a`, at finitely many tree
/// positions. Throws ParametricNotSupported on parametric input.
bool convertible(const ProfileGraph& s1, const ProfileGraph& s2, const Agent& a);

/// s1 <=_a s2: nullopt when either root utility is undefined.
std::optional<bool> profile_leq(const ProfileGraph& s1, const ProfileGraph& s2, const Agent& a,
                                const Scope& scope = {});

// -- finite-game oracles ------------------------------------------------------------

class CyclicGraph : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class TruncationUnsound : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct BackwardInduction {
    std::map<NodeId, std::map<Agent, std::int64_t>> value;
    /// Internal nodes only; ties keep both choices.
    std::map<NodeId, std::set<Choice>> optimal;
};

/// Backward induction on a finite, non-parametric game. Where the mover is
/// indifferent, the propagated value follows `tie_break`'s choice at that
/// node when it is optimal there (Left otherwise).
BackwardInduction backward_induction(const GameGraph& g, const ProfileGraph* tie_break = nullptr);

/// All profiles obtained by flipping at most `max_flips` choices of `a` at
/// tree positions shallower than `max_depth`; `s` itself comes first. Shared
/// nodes in that region are unfolded so that positions flip independently.
/// Throws TruncationUnsound if a cycle is reachable within `max_depth`.
std::vector<ProfileGraph> enumerate_deviations(const ProfileGraph& s, const Agent& a, std::size_t max_flips,
                                               std::size_t max_depth);

} // namespace cogame

#endif
