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


#include "cogame/report.hpp"

#include <json.hpp>

#include <sstream>

namespace cogame {

namespace {

using nlohmann::json;

json steps_json(const std::vector<PathStep>& steps)
{
    json out = json::array();
    for (const auto& s : steps)
        out.push_back({{"node", s.node}, {"choice", std::string(choice_name(s.choice))}, {"flipped", s.flipped}});
    return out;
}

json valuation_json(const Valuation& v)
{
    json out = json::object();
    for (const auto& [k, x] : v) out[k] = x;
    return out;
}

json witness_json(const Witness& w)
{
    return {
        {"kind", w.kind == Witness::Kind::Deviation ? "deviation" : "divergence"},
        {"agent", w.agent.name},
        {"subgame", w.subgame},
        {"entry", steps_json(w.entry)},
        {"deviation", steps_json(w.deviation)},
        {"leaf", w.leaf},
        {"valuation", valuation_json(w.valuation)},
        {"deviation_value", w.deviation_value},
        {"equilibrium_value", w.equilibrium_value},
    };
}

json condition_json(const Condition& c)
{
    json box = {{"n_min", c.box.n_min}, {"params", json::object()}};
    for (const auto& [k, lb] : c.box.param_bounds) box["params"][k] = lb;
    return {
        {"node", c.node},
        {"agent", c.agent ? json(c.agent->name) : json(nullptr)},
        {"lhs", c.lhs.to_string()},
        {"relation", std::string(relation_symbol(c.relation))},
        {"rhs", c.rhs.to_string()},
        {"box", box},
        {"verdict", std::string(verdict_name(c.truth.verdict))},
        {"witness", c.truth.witness ? valuation_json(*c.truth.witness) : json(nullptr)},
    };
}

json trace_json(const PlayTrace& t)
{
    return {
        {"kind", t.kind == PlayTrace::Kind::ReachesLeaf ? "reaches_leaf" : "divergent"},
        {"path", t.path},
        {"leaf", t.leaf},
        {"offset", t.offset},
        {"cycle", t.cycle},
        {"cycle_delta", t.cycle_delta},
    };
}

std::vector<PathStep> steps_from(const json& j)
{
    std::vector<PathStep> out;
    for (const auto& s : j) {
        const std::string c = s.at("choice").get<std::string>();
        if (c != "left" && c != "right") throw std::invalid_argument("bad choice '" + c + "'");
        out.push_back({s.at("node").get<std::string>(), c == "left" ? Choice::Left : Choice::Right,
                       s.at("flipped").get<bool>()});
    }
    return out;
}

std::string dot_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string leaf_label(const Leaf& leaf)
{
    std::string out;
    for (const auto& [agent, e] : leaf.utilities) out += (out.empty() ? "" : "\n") + agent.name + ": " + e.to_string();
    return out.empty() ? "{}" : out;
}

void dot_edge(std::ostream& out, const NodeId& from, const Edge& e, const char* side, bool dashed)
{
    out << "  " << dot_quote(from) << " -> " << dot_quote(e.target) << " [taillabel=\"" << side << "\"";
    if (dashed) out << ", style=dashed";
    if (e.delta != 0) out << ", label=\"+" << e.delta << "\"";
    out << "];\n";
}

const char* root_mark(const NodeId& id, const NodeId& root) { return id == root ? ", peripheries=2" : ""; }

template <class Internal>
void dot_schema(std::ostream& out, const SchemaGraph<Internal>& g)
{
    for (const auto& [id, node] : g.nodes) {
        if (const auto* leaf = std::get_if<Leaf>(&node)) {
            out << "  " << dot_quote(id) << " [shape=box, label=" << dot_quote(leaf_label(*leaf))
                << root_mark(id, g.root) << "];\n";
            continue;
        }
        const auto& in = std::get<Internal>(node);
        out << "  " << dot_quote(id) << " [shape=ellipse, label=" << dot_quote(in.agent.name)
            << root_mark(id, g.root) << "];\n";
        bool left_dashed = false, right_dashed = false;
        if constexpr (std::is_same_v<Internal, ProfileNode>) {
            left_dashed = in.choice != Choice::Left;
            right_dashed = in.choice != Choice::Right;
        }
        dot_edge(out, id, in.left, "l", left_dashed);
        dot_edge(out, id, in.right, "r", right_dashed);
    }
}

void dot_tree(std::ostream& out, const BinTreeGraph& t)
{
    for (const auto& [id, node] : t.nodes) {
        if (std::holds_alternative<Nil>(node)) {
            out << "  " << dot_quote(id) << " [shape=point" << root_mark(id, t.root) << "];\n";
            continue;
        }
        const auto& in = std::get<BinNode>(node);
        out << "  " << dot_quote(id) << " [shape=circle, label=\"\"" << root_mark(id, t.root) << "];\n";
        dot_edge(out, id, {in.left, 0}, "l", false);
        dot_edge(out, id, {in.right, 0}, "r", false);
    }
}

} // namespace

ReportDocument make_report(const std::string& model, const std::string& profile, const EquilibriumReport& r,
                           const Scope& scope)
{
    ReportDocument d;
    d.model = model;
    d.profile = profile;
    d.check = r.check;
    d.verdict = std::string(verdict_name(r.verdict));
    d.note = r.note;
    d.scope = scope;
    d.witness = r.witness;
    d.conditions = r.conditions;
    return d;
}

std::string to_json(const ReportDocument& doc)
{
    json j = {
        {"version", kVersion},
        {"model", doc.model},
        {"profile", doc.profile},
        {"check", doc.check},
        {"verdict", doc.verdict},
        {"note", doc.note},
        {"scope", {{"n", doc.scope.base_n ? json(*doc.scope.base_n) : json(nullptr)},
                   {"fixed", valuation_json(doc.scope.fixed)}}},
        {"witness", doc.witness ? witness_json(*doc.witness) : json(nullptr)},
        {"conditions", json::array()},
    };
    for (const auto& c : doc.conditions) j["conditions"].push_back(condition_json(c));
    if (doc.trace) j["trace"] = trace_json(*doc.trace);
    if (doc.nodes) j["nodes"] = *doc.nodes;
    return j.dump(2) + "\n";
}

std::optional<Witness> witness_from_json(const std::string& text)
{
    try {
        const json j = json::parse(text);
        const json& wj = j.at("witness");
        if (wj.is_null()) return std::nullopt;
        Witness w;
        const std::string kind = wj.at("kind").get<std::string>();
        if (kind != "deviation" && kind != "divergence") throw std::invalid_argument("bad witness kind '" + kind + "'");
        w.kind = kind == "deviation" ? Witness::Kind::Deviation : Witness::Kind::Divergence;
        w.agent = Agent(wj.at("agent").get<std::string>());
        w.subgame = wj.at("subgame").get<std::string>();
        w.entry = steps_from(wj.at("entry"));
        w.deviation = steps_from(wj.at("deviation"));
        w.leaf = wj.at("leaf").get<std::string>();
        for (const auto& [k, v] : wj.at("valuation").items()) w.valuation[k] = v.get<std::int64_t>();
        w.deviation_value = wj.at("deviation_value").get<std::int64_t>();
        w.equilibrium_value = wj.at("equilibrium_value").get<std::int64_t>();
        return w;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed report: ") + e.what());
    }
}

std::string export_dot(const std::string& name, const Block& block)
{
    std::ostringstream out;
    out << "digraph " << dot_quote(name) << " {\n";
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, BinTreeGraph>) {
                dot_tree(out, g);
            } else {
                dot_schema(out, g);
            }
        },
        block);
    out << "}\n";
    return out.str();
}

} // namespace cogame
