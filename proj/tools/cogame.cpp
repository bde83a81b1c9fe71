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


// cogame: check, unfold, export and list models from the command line.
//
// Exit codes: 0 the property holds, 1 it fails, 2 vacuous or undecided,
// 64 usage error, 65 the model does not parse or validate.

#include "cogame/analyses.hpp"
#include "cogame/catalog.hpp"
#include "cogame/dsl.hpp"
#include "cogame/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cogame;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kUndecided = 2;
constexpr int kUsage = 64;
constexpr int kDataError = 65;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::map<std::string, std::string> split_assignments(const std::string& text, const std::string& flag)
{
    std::map<std::string, std::string> out;
    if (text.empty()) return out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw UsageError(flag + ": expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        if (!out.emplace(key, item.substr(eq + 1)).second) throw UsageError(flag + ": '" + key + "' given twice");
    }
    return out;
}

Valuation integer_assignments(const std::string& text, const std::string& flag)
{
    Valuation out;
    for (const auto& [k, v] : split_assignments(text, flag)) {
        std::size_t used = 0;
        std::int64_t x = 0;
        try {
            x = std::stoll(v, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != v.size()) throw UsageError(flag + ": '" + v + "' is not an integer");
        out[k] = x;
    }
    return out;
}

Model load_model(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

const Block& find_block(const Model& m, const std::string& name)
{
    auto it = m.blocks.find(name);
    if (it == m.blocks.end()) throw UsageError("no block named '" + name + "'");
    return it->second;
}

const ProfileGraph& find_profile(const Model& m, const std::string& name)
{
    const auto* s = std::get_if<ProfileGraph>(&find_block(m, name));
    if (!s) throw UsageError("block '" + name + "' is not a profile");
    return *s;
}

void write_text(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

int exit_code(const std::string& verdict)
{
    if (verdict == "Holds") return kHolds;
    if (verdict == "Fails") return kFails;
    return kUndecided;
}

void print_steps(std::ostream& out, const char* label, const std::vector<PathStep>& steps)
{
    if (steps.empty()) return;
    out << "  " << label << ":";
    for (const auto& s : steps) out << ' ' << s.node << '.' << choice_name(s.choice) << (s.flipped ? "*" : "");
    out << '\n';
}

void print_report(std::ostream& out, const ReportDocument& d)
{
    out << d.check << ' ' << d.profile << ": " << d.verdict;
    if (!d.note.empty()) out << " (" << d.note << ')';
    out << '\n';
    for (const auto& c : d.conditions) {
        out << "  " << c.node;
        if (c.agent) out << " [" << c.agent->name << ']';
        out << ": " << c.lhs.to_string() << ' ' << relation_symbol(c.relation) << ' ' << c.rhs.to_string() << "  "
            << verdict_name(c.truth.verdict) << '\n';
    }
    if (d.witness) {
        const Witness& w = *d.witness;
        out << "  witness: agent " << w.agent.name << " at " << w.subgame;
        if (w.kind == Witness::Kind::Deviation)
            out << ", deviation to " << w.leaf << " gives " << w.deviation_value << " against "
                << w.equilibrium_value;
        else
            out << ", play diverges";
        out << '\n';
        print_steps(out, "entry", w.entry);
        print_steps(out, "deviation", w.deviation);
        out << "  valuation:";
        for (const auto& [k, v] : w.valuation) out << ' ' << k << '=' << v;
        out << '\n';
    }
    if (d.trace) {
        out << "  play:";
        for (const auto& id : d.trace->path) out << ' ' << id;
        if (d.trace->kind == PlayTrace::Kind::Divergent) {
            out << (d.trace->path.empty() ? " repeats" : " then repeats");
            for (const auto& id : d.trace->cycle) out << ' ' << id;
            out << " (+" << d.trace->cycle_delta << " per turn)";
        } else {
            out << " (offset +" << d.trace->offset << ')';
        }
        out << '\n';
    }
    if (d.nodes) {
        out << "  infinite nodes:";
        for (const auto& id : *d.nodes) out << ' ' << id;
        out << '\n';
    }
}

struct CheckArgs {
    std::string file, profile, at, set, json;
    bool sgpe = false, nash = false, ltl = false, altl = false, infinite = false;
};

int run_check(const CheckArgs& a)
{
    const int chosen = a.sgpe + a.nash + a.ltl + a.altl + a.infinite;
    if (chosen != 1) throw UsageError("choose exactly one of --sgpe, --nash, --ltl, --altl, --infinite");
    if (!a.at.empty() && !(a.sgpe || a.nash)) throw UsageError("--at applies to --sgpe and --nash only");

    const Model m = load_model(a.file);
    const Block& block = find_block(m, a.profile);

    Scope scope;
    Valuation assigned = integer_assignments(a.set, "--set");
    for (const auto& [k, v] : integer_assignments(a.at, "--at")) {
        if (!assigned.emplace(k, v).second) throw UsageError("'" + k + "' given in both --at and --set");
    }
    for (const auto& [k, v] : assigned) {
        if (k == kCounter) {
            scope.base_n = v;
        } else {
            scope.fixed[k] = v;
        }
    }

    ReportDocument doc;
    const std::string model = std::filesystem::path(a.file).stem().string();
    if (a.infinite) {
        if (!assigned.empty()) throw UsageError("--infinite takes no valuation");
        const BinTreeGraph t = std::visit(
            [](const auto& g) -> BinTreeGraph {
                if constexpr (std::is_same_v<std::decay_t<decltype(g)>, BinTreeGraph>)
                    return g;
                else
                    return shape_of(g);
            },
            block);
        const InfiniteNodes inf = is_infinite(t);
        doc.model = model;
        doc.profile = a.profile;
        doc.check = "infinite";
        doc.verdict = inf.root ? "Holds" : "Fails";
        doc.nodes = inf.nodes;
    } else {
        const ProfileGraph& s = find_profile(m, a.profile);
        try {
            check_scope(s, scope);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (a.sgpe || a.nash) {
            doc = make_report(model, a.profile, a.sgpe ? sgpe_check(s, scope) : nash_check(s, scope), scope);
        } else {
            doc.model = model;
            doc.profile = a.profile;
            doc.scope = scope;
            if (a.ltl) {
                const LeadsToLeaf r = leads_to_leaf(s);
                doc.check = "ltl";
                doc.verdict = r.leads ? "Holds" : "Fails";
                doc.trace = r.trace;
            } else {
                doc.check = "altl";
                doc.verdict = always_leads_to_leaf(s) ? "Holds" : "Fails";
            }
        }
    }

    print_report(std::cout, doc);
    if (!a.json.empty()) write_text(a.json, to_json(doc));
    return exit_code(doc.verdict);
}

int run_unfold(const std::string& file, const std::string& profile, std::size_t depth, const std::string& set)
{
    const Model m = load_model(file);
    const Block& block = find_block(m, profile);
    const Valuation val = integer_assignments(set, "--set");
    for (const auto& [k, v] : val) {
        if (v < 0) throw UsageError("--set: '" + k + "' must be nonnegative");
    }
    ConcreteTree t;
    try {
        t = std::visit(
            [&](const auto& g) {
                if constexpr (std::is_same_v<std::decay_t<decltype(g)>, BinTreeGraph>)
                    return unfold(g, depth);
                else
                    return unfold(g, depth, val);
            },
            block);
    } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
    }
    std::cout << t.to_string() << '\n';
    return kHolds;
}

int run_export(const std::string& file, const std::string& profile, const std::string& dot)
{
    const Model m = load_model(file);
    write_text(dot, export_dot(profile, find_block(m, profile)));
    return kHolds;
}

int run_catalog_list()
{
    for (const auto& e : list_catalog()) {
        std::cout << e.name << '\t' << (e.params.empty() ? "-" : e.params) << '\t' << e.note << '\n';
    }
    std::cout << "models:";
    for (const auto& g : model_groups()) std::cout << ' ' << g;
    std::cout << '\n';
    return kHolds;
}

int run_catalog_emit(const std::string& name, const std::string& set, const std::string& output)
{
    Model m;
    try {
        m = build_model(name, split_assignments(set, "--set"));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    write_text(output, render_model(m));
    return kHolds;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Decide equilibrium and termination properties of finitely presented infinite games."};
    app.require_subcommand(1);

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "decide a property of one block");
    check_cmd->add_option("file", check.file, "model file")->required();
    check_cmd->add_option("--profile", check.profile, "block name")->required();
    check_cmd->add_flag("--sgpe", check.sgpe, "subgame perfect equilibrium");
    check_cmd->add_flag("--nash", check.nash, "Nash equilibrium");
    check_cmd->add_flag("--ltl", check.ltl, "the play from the root reaches a leaf");
    check_cmd->add_flag("--altl", check.altl, "every reachable play reaches a leaf");
    check_cmd->add_flag("--infinite", check.infinite, "the tree is infinite");
    check_cmd->add_option("--at", check.at, "counter base and parameters, e.g. n=0,v=2");
    check_cmd->add_option("--set", check.set, "fix parameters, e.g. v=2");
    check_cmd->add_option("--json", check.json, "write the report as JSON ('-' for stdout)");

    std::string unfold_file, unfold_profile, unfold_set;
    std::size_t depth = 0;
    auto* unfold_cmd = app.add_subcommand("unfold", "print the first levels of a block");
    unfold_cmd->add_option("file", unfold_file, "model file")->required();
    unfold_cmd->add_option("--profile", unfold_profile, "block name")->required();
    unfold_cmd->add_option("--depth", depth, "levels of internal nodes")->required();
    unfold_cmd->add_option("--set", unfold_set, "valuation, e.g. n=0,v=2");

    std::string export_file, export_profile, dot_path;
    auto* export_cmd = app.add_subcommand("export", "write a block as a Graphviz digraph");
    export_cmd->add_option("file", export_file, "model file")->required();
    export_cmd->add_option("--profile", export_profile, "block name")->required();
    export_cmd->add_option("--dot", dot_path, "output path ('-' for stdout)")->required();

    std::string emit_name, emit_set, emit_output = "-";
    auto* catalog_cmd = app.add_subcommand("catalog", "built-in models");
    catalog_cmd->require_subcommand(1);
    auto* list_cmd = catalog_cmd->add_subcommand("list", "list catalog entries");
    auto* emit_cmd = catalog_cmd->add_subcommand("emit", "print a catalog model in the text format");
    emit_cmd->add_option("name", emit_name, "entry or model name")->required();
    emit_cmd->add_option("--set", emit_set, "builder parameters, e.g. length=5");
    emit_cmd->add_option("-o,--output", emit_output, "output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*check_cmd) return run_check(check);
        if (*unfold_cmd) return run_unfold(unfold_file, unfold_profile, depth, unfold_set);
        if (*export_cmd) return run_export(export_file, export_profile, dot_path);
        if (*list_cmd) return run_catalog_list();
        if (*emit_cmd) return run_catalog_emit(emit_name, emit_set, emit_output);
    } catch (const UsageError& e) {
        std::cerr << "cogame: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "cogame: " << e.what() << '\n';
        return kDataError;
    } catch (const InvalidGraph& e) {
        std::cerr << "cogame: " << e.what() << '\n';
        return kDataError;
    } catch (const ArithmeticError& e) {
        std::cerr << "cogame: undecided, " << e.what() << '\n';
        return kUndecided;
    }
    return kUsage;
}
