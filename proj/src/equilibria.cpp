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

#include "plays.hpp"

#include <algorithm>
#include <deque>

namespace cogame {

namespace {

using detail::IndexedGraph;
using detail::OffsetPath;

// Stage offset of a deviation leaf, as a box variable. Not a valid model
// identifier, so it cannot collide with a parameter.
const std::string kOffsetVar = "@k";
const std::string kN{kCounter};

struct Context {
    const ProfileGraph& s;
    const Scope& scope;
    ConstraintBox box; // free parameters only; n_min is the root counter bound

    Context(const ProfileGraph& profile, const Scope& sc) : s(profile), scope(sc)
    {
        for (const auto& p : s.params) {
            if (!scope.fixed.count(p.name)) box.param_bounds[p.name] = p.lower_bound;
        }
        box.n_min = scope.base_n.value_or(0);
    }

    AffineUtility apply(AffineUtility e) const
    {
        for (const auto& [name, value] : scope.fixed) e = affine_substitute(e, name, value);
        return e;
    }

    // Full valuation: n, free parameters from `w` (or their bounds), fixed ones.
    Valuation complete(const std::optional<Valuation>& w, std::int64_t n) const
    {
        Valuation v;
        v[kN] = n;
        for (const auto& [name, lb] : box.param_bounds) {
            auto it = w ? w->find(name) : Valuation::const_iterator{};
            v[name] = (w && it != w->end()) ? it->second : lb;
        }
        for (const auto& [name, value] : scope.fixed) v[name] = value;
        return v;
    }
};

std::vector<PathStep> to_steps(const IndexedGraph& g, const OffsetPath& p, bool mark_flips)
{
    std::vector<PathStep> steps;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        const auto& node = g[p.nodes[i]];
        const bool flipped = mark_flips && node.choice && p.steps[i] != *node.choice;
        steps.push_back({g.ids[p.nodes[i]], p.steps[i], flipped});
    }
    return steps;
}

// Flip at `from`, then follow the profile to a leaf (which must exist).
std::pair<std::vector<PathStep>, std::size_t> flip_then_follow(const IndexedGraph& g, std::size_t from)
{
    std::vector<PathStep> steps;
    const Choice flipped = flip(*g[from].choice);
    steps.push_back({g.ids[from], flipped, true});
    std::size_t m = g[from].child_at(flipped);
    while (!g[m].leaf) {
        steps.push_back({g.ids[m], *g[m].choice, false});
        m = g[m].child_at(*g[m].choice);
    }
    return {steps, m};
}

} // namespace

std::string_view verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::VacuouslyHolds: return "VacuouslyHolds";
    case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

void check_scope(const ProfileGraph& s, const Scope& scope)
{
    if (scope.base_n && *scope.base_n < 0) throw std::invalid_argument("counter base must be nonnegative");
    for (const auto& [name, value] : scope.fixed) {
        auto it = std::find_if(s.params.begin(), s.params.end(), [&](const ParamDecl& p) { return p.name == name; });
        if (it == s.params.end()) throw std::invalid_argument("parameter '" + name + "' is not declared");
        if (value < it->lower_bound)
            throw std::invalid_argument("parameter '" + name + "' = " + std::to_string(value) + " is below its bound " +
                                        std::to_string(it->lower_bound));
    }
}

// -- SGPE ---------------------------------------------------------------------------

EquilibriumReport sgpe_check(const ProfileGraph& s, const Scope& scope)
{
    check_scope(s, scope);
    const IndexedGraph g = detail::index_graph(s);
    const Context ctx(s, scope);
    const Relation rel = no_better_relation(s.preference);
    const std::int64_t base = scope.base_n.value_or(0);

    EquilibriumReport rep;
    rep.check = "sgpe";

    const NodeSet leads = detail::leads_to_leaf_set(g);
    const auto minoff = detail::min_offsets(g, g.root, detail::all_edges());

    enum class Local { Pass, Diverges, Violated, Unconfirmed };
    std::vector<Local> local(g.size(), Local::Pass);
    std::vector<std::optional<Witness>> witness(g.size());

    for (std::size_t m = 0; m < g.size(); ++m) {
        if (minoff[m] < 0 || g[m].leaf) continue; // unreachable nodes do not affect the root
        const auto& node = g[m];
        const Agent& a = *node.agent;
        if (!leads[m]) {
            local[m] = Local::Diverges;
            Witness w;
            w.kind = Witness::Kind::Divergence;
            w.agent = a;
            w.subgame = g.ids[m];
            w.entry = to_steps(g, *detail::min_offset_path(g, g.root, m, detail::all_edges()), false);
            w.valuation = ctx.complete(std::nullopt, base);
            witness[m] = std::move(w);
            continue;
        }
        const Choice c = *node.choice;
        const auto u_chosen = detail::utility_at(g, node.child_at(c), a);
        const auto u_other = detail::utility_at(g, node.child_at(flip(c)), a);
        if (!u_chosen || !u_other) continue; // the diverging child fails on its own

        const AffineUtility chosen = ctx.apply(affine_shift(*u_chosen, node.delta_at(c)));
        const AffineUtility other = ctx.apply(affine_shift(*u_other, node.delta_at(flip(c))));
        ConstraintBox box = ctx.box;
        box.n_min = base + minoff[m];

        Condition cond{g.ids[m], a, other, rel, chosen, box, {}};
        std::optional<OffsetPath> entry;
        if (!scope.base_n) {
            // n ranges over all values >= the minimal offset, so the box is exact
            cond.truth = holds_forall(other, chosen, rel, box);
            if (cond.truth.fails()) entry = detail::min_offset_path(g, g.root, m, detail::all_edges());
        } else if (const auto offsets = detail::offset_set(g, g.root, m, detail::all_edges())) {
            // finitely many counter values reach m: check each one
            for (std::size_t i = 0; i < offsets->size(); ++i) {
                const std::int64_t k = (*offsets)[i];
                Condition at{g.ids[m], a, affine_substitute(other, kN, base + k), rel,
                             affine_substitute(chosen, kN, base + k), box, {}};
                at.box.n_min = base + k;
                at.truth = holds_forall(at.lhs, at.rhs, rel, at.box);
                if (at.truth.fails()) entry = detail::exact_offset_path(g, g.root, m, k, detail::all_edges());
                if (at.truth.fails() || i + 1 == offsets->size()) {
                    cond = std::move(at);
                    break;
                }
                rep.conditions.push_back(std::move(at));
            }
        } else {
            // the minimal offset is certainly reached; larger ones only possibly
            const SymbolicTruth at_min = holds_forall(affine_substitute(other, kN, box.n_min),
                                                      affine_substitute(chosen, kN, box.n_min), rel, box);
            if (at_min.fails()) {
                cond.truth = at_min;
                entry = detail::min_offset_path(g, g.root, m, detail::all_edges());
            } else {
                cond.truth = holds_forall(other, chosen, rel, box);
                if (cond.truth.fails()) {
                    entry = detail::exact_offset_path(g, g.root, m, cond.truth.witness->at(kN) - base,
                                                      detail::all_edges());
                    if (!entry) cond.truth.verdict = SymbolicTruth::Verdict::Unknown;
                }
            }
        }
        if (cond.truth.fails()) {
            local[m] = Local::Violated;
            const std::int64_t local_n = cond.truth.witness->at(kN);
            Witness w;
            w.kind = Witness::Kind::Deviation;
            w.agent = a;
            w.subgame = g.ids[m];
            w.entry = to_steps(g, *entry, false);
            auto [steps, leaf] = flip_then_follow(g, m);
            w.deviation = std::move(steps);
            w.leaf = g.ids[leaf];
            w.valuation = ctx.complete(cond.truth.witness, local_n - entry->offset);
            Valuation at_node = w.valuation;
            at_node[kN] = local_n;
            w.deviation_value = affine_eval(other, at_node);
            w.equilibrium_value = affine_eval(chosen, at_node);
            witness[m] = std::move(w);
        } else if (cond.truth.verdict == SymbolicTruth::Verdict::Unknown) {
            local[m] = Local::Unconfirmed;
        }
        rep.conditions.push_back(std::move(cond));
    }

    const auto preds = g.predecessors();
    const NodeSet sgpe = greatest_fixpoint(
        g.size(),
        [&](NodeIndex m, const NodeSet& set) {
            if (g[m].leaf) return true;
            return local[m] == Local::Pass && set[g[m].child[0]] && set[g[m].child[1]];
        },
        preds);

    if (sgpe[g.root]) {
        rep.verdict = Verdict::Holds;
        return rep;
    }
    for (std::size_t m : g.bfs_order()) {
        if (local[m] == Local::Diverges || local[m] == Local::Violated) {
            rep.verdict = Verdict::Fails;
            rep.witness = witness[m];
            if (local[m] == Local::Diverges)
                rep.note = "the play from " + g.ids[m] + " does not reach a leaf";
            else
                rep.note = "agent " + g[m].agent->name + " prefers to deviate at " + g.ids[m];
            return rep;
        }
    }
    rep.verdict = Verdict::Unknown;
    rep.note = "a comparison fails only at counter values not confirmed reachable";
    return rep;
}

// -- Nash ---------------------------------------------------------------------------

EquilibriumReport nash_check(const ProfileGraph& s, const Scope& scope)
{
    check_scope(s, scope);
    const IndexedGraph g = detail::index_graph(s);
    const Context ctx(s, scope);
    const Relation rel = no_better_relation(s.preference);

    EquilibriumReport rep;
    rep.check = "nash";
    if (!detail::follow_choices(g, g.root)) {
        rep.verdict = Verdict::VacuouslyHolds;
        rep.note = "the play from the root does not reach a leaf";
        return rep;
    }

    auto pin = [&](const AffineUtility& e) {
        return scope.base_n ? affine_substitute(e, kN, *scope.base_n) : e;
    };

    bool unknown = false;
    for (const Agent& a : s.agents()) {
        const AffineUtility u = ctx.apply(*detail::utility_at(g, g.root, a));
        const AffineUtility eq = pin(u);
        const detail::EdgeFilter allowed = [&](std::size_t m, Choice c) {
            return *g[m].agent == a || c == *g[m].choice;
        };
        const auto dist = detail::min_offsets(g, g.root, allowed);

        for (std::size_t leaf = 0; leaf < g.size(); ++leaf) {
            if (!g[leaf].leaf || dist[leaf] < 0) continue;
            const AffineUtility e = ctx.apply(detail::payoff(g, leaf, a));
            const std::int64_t kmin = dist[leaf];

            // Offsets at which the leaf is reached. Only matter when the payoff
            // moves with the counter; exact when the set is finite.
            std::vector<std::int64_t> offsets{kmin};
            bool exact = true;
            if (e.coeff_n != 0) {
                if (auto set = detail::offset_set(g, g.root, leaf, allowed)) {
                    offsets = std::move(*set);
                } else {
                    exact = false;
                }
            }

            Condition cond;
            std::optional<OffsetPath> path;
            for (std::size_t i = 0; i < offsets.size(); ++i) {
                Condition at{g.ids[leaf], a, pin(affine_shift(e, offsets[i])), rel, eq, ctx.box, {}};
                at.truth = holds_forall(at.lhs, at.rhs, rel, at.box);
                if (at.truth.fails()) path = detail::exact_offset_path(g, g.root, leaf, offsets[i], allowed);
                if (at.truth.fails() || i + 1 == offsets.size()) {
                    cond = std::move(at);
                    break;
                }
                rep.conditions.push_back(std::move(at));
            }
            if (!exact && !cond.truth.fails()) {
                // the leaf may also be reached at larger offsets
                cond.lhs = pin(affine_shift_by_variable(e, kOffsetVar));
                cond.box.param_bounds[kOffsetVar] = kmin;
                cond.truth = holds_forall(cond.lhs, cond.rhs, rel, cond.box);
                if (cond.truth.fails()) {
                    path = detail::exact_offset_path(g, g.root, leaf, cond.truth.witness->at(kOffsetVar), allowed);
                    if (!path) cond.truth.verdict = SymbolicTruth::Verdict::Unknown;
                }
            }

            if (cond.truth.fails() && !rep.witness) {
                Witness w;
                w.kind = Witness::Kind::Deviation;
                w.agent = a;
                w.subgame = g.ids[g.root];
                w.deviation = to_steps(g, *path, true);
                w.leaf = g.ids[leaf];
                w.valuation = ctx.complete(cond.truth.witness, cond.truth.witness->at(kN));
                w.deviation_value = affine_eval(affine_shift(e, path->offset), w.valuation);
                w.equilibrium_value = affine_eval(u, w.valuation);
                rep.witness = std::move(w);
            }
            unknown = unknown || cond.truth.verdict == SymbolicTruth::Verdict::Unknown;
            rep.conditions.push_back(std::move(cond));
        }
    }

    if (rep.witness) {
        rep.verdict = Verdict::Fails;
        rep.note = "agent " + rep.witness->agent.name + " gains by deviating to " + rep.witness->leaf;
    } else if (unknown) {
        rep.verdict = Verdict::Unknown;
        rep.note = "a deviation gains only at offsets not confirmed reachable";
    } else {
        rep.verdict = Verdict::Holds;
    }
    return rep;
}

// -- witness replay -----------------------------------------------------------------

bool replay_witness(const ProfileGraph& s, const Witness& w)
{
    const IndexedGraph g = detail::index_graph(s);
    std::size_t cur = g.root;
    std::int64_t entry_offset = 0;
    for (const PathStep& step : w.entry) {
        if (g.ids[cur] != step.node || g[cur].leaf || step.flipped) return false;
        entry_offset += g[cur].delta_at(step.choice);
        cur = g[cur].child_at(step.choice);
    }
    if (g.ids[cur] != w.subgame) return false;
    const std::size_t subgame = cur;

    for (const auto& p : s.params) {
        auto it = w.valuation.find(p.name);
        if (it == w.valuation.end() || it->second < p.lower_bound) return false;
    }
    auto n_it = w.valuation.find(kN);
    if (n_it == w.valuation.end() || n_it->second < 0) return false;

    if (w.kind == Witness::Kind::Divergence) return !detail::follow_choices(g, subgame);

    std::int64_t dev_offset = 0;
    std::size_t flips = 0;
    for (const PathStep& step : w.deviation) {
        const auto& node = g[cur];
        if (g.ids[cur] != step.node || node.leaf) return false;
        const bool against = step.choice != *node.choice;
        if (against != step.flipped) return false;
        if (against && *node.agent != w.agent) return false;
        flips += against ? 1 : 0;
        dev_offset += node.delta_at(step.choice);
        cur = node.child_at(step.choice);
    }
    if (!g[cur].leaf || g.ids[cur] != w.leaf || flips == 0) return false;

    Valuation local = w.valuation;
    local[kN] += entry_offset;
    const std::int64_t deviation = affine_eval(affine_shift(detail::payoff(g, cur, w.agent), dev_offset), local);
    const auto eq = detail::utility_at(g, subgame, w.agent);
    if (!eq) return false;
    const std::int64_t equilibrium = affine_eval(*eq, local);
    return deviation == w.deviation_value && equilibrium == w.equilibrium_value &&
           !no_better(s.preference, deviation, equilibrium);
}

// -- convertibility -----------------------------------------------------------------

bool convertible(const ProfileGraph& s1, const ProfileGraph& s2, const Agent& a)
{
    if (is_parametric(s1) || is_parametric(s2))
        throw ParametricNotSupported("convertibility needs graphs without deltas and with constant payoffs");
    const IndexedGraph g1 = detail::index_graph(s1);
    const IndexedGraph g2 = detail::index_graph(s2);

    using Pair = std::pair<std::size_t, std::size_t>;
    std::map<Pair, std::size_t> id;
    std::vector<Pair> pairs;
    std::vector<std::vector<std::size_t>> succ;
    std::vector<bool> differs;

    auto intern = [&](Pair p) {
        auto [it, fresh] = id.emplace(p, pairs.size());
        if (fresh) {
            pairs.push_back(p);
            succ.emplace_back();
            differs.push_back(false);
        }
        return std::pair{it->second, fresh};
    };

    std::deque<std::size_t> queue{intern({g1.root, g2.root}).first};
    while (!queue.empty()) {
        const std::size_t k = queue.front();
        queue.pop_front();
        const auto [x, y] = pairs[k];
        const auto& nx = g1[x];
        const auto& ny = g2[y];
        if (nx.leaf != ny.leaf) return false;
        if (nx.leaf) {
            if (nx.payoffs->utilities != ny.payoffs->utilities) return false;
            continue;
        }
        if (*nx.agent != *ny.agent) return false;
        if (*nx.choice != *ny.choice) {
            if (*nx.agent != a) return false;
            differs[k] = true;
        }
        for (int side = 0; side < 2; ++side) {
            auto [next, fresh] = intern({nx.child[side], ny.child[side]});
            succ[k].push_back(next);
            if (fresh) queue.push_back(next);
        }
    }

    // A pair stands for infinitely many tree positions iff some path to it
    // passes through a cycle.
    const std::size_t count = pairs.size();
    auto reach = [&](std::size_t from) {
        std::vector<bool> seen(count, false);
        std::vector<std::size_t> stack(succ[from].begin(), succ[from].end());
        while (!stack.empty()) {
            const std::size_t k = stack.back();
            stack.pop_back();
            if (seen[k]) continue;
            seen[k] = true;
            for (std::size_t t : succ[k]) stack.push_back(t);
        }
        return seen;
    };
    std::vector<bool> repeated(count, false);
    for (std::size_t k = 0; k < count; ++k) {
        const auto r = reach(k);
        if (!r[k]) continue; // not on a cycle
        repeated[k] = true;
        for (std::size_t t = 0; t < count; ++t) repeated[t] = repeated[t] || r[t];
    }
    for (std::size_t k = 0; k < count; ++k) {
        if (differs[k] && repeated[k]) return false;
    }
    return true;
}

// -- ordering -------------------------------------------------------------------------

std::optional<bool> profile_leq(const ProfileGraph& s1, const ProfileGraph& s2, const Agent& a, const Scope& scope)
{
    const auto u1 = utility_of(s1, a);
    const auto u2 = utility_of(s2, a);
    if (!u1 || !u2) return std::nullopt;
    check_scope(s2, scope);
    const Context ctx(s2, scope);
    ConstraintBox box = ctx.box;
    for (const auto& p : s1.params) {
        if (!scope.fixed.count(p.name)) box.param_bounds.try_emplace(p.name, p.lower_bound);
    }
    AffineUtility lhs = ctx.apply(*u1);
    AffineUtility rhs = ctx.apply(*u2);
    if (scope.base_n) {
        lhs = affine_substitute(lhs, kN, *scope.base_n);
        rhs = affine_substitute(rhs, kN, *scope.base_n);
    }
    return holds_forall(lhs, rhs, no_better_relation(s2.preference), box).holds();
}

} // namespace cogame
