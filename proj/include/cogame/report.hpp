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


/** @file report.hpp
 *  @brief Machine-readable check reports and Graphviz export.
 */

#ifndef COGAME_REPORT_HPP
#define COGAME_REPORT_HPP

#include "cogame/analyses.hpp"
#include "cogame/dsl.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cogame {

inline constexpr const char* kVersion = "1.0.0";

struct ReportDocument {
    std::string model;
    std::string profile;
    std::string check; // sgpe | nash | ltl | altl | infinite
    std::string verdict;
    std::string note;
    Scope scope;
    std::optional<Witness> witness;
    std::vector<Condition> conditions;
    std::optional<PlayTrace> trace;       // ltl
    std::optional<std::set<NodeId>> nodes; // infinite: the infinite nodes
};

ReportDocument make_report(const std::string& model, const std::string& profile, const EquilibriumReport& r,
                           const Scope& scope);

/// Pretty-printed JSON with keys in lexicographic order.
std::string to_json(const ReportDocument& doc);

/// The witness of a serialized report; nullopt when it has none. Throws
/// std::invalid_argument on malformed input.
std::optional<Witness> witness_from_json(const std::string& text);

/// Graphviz digraph: chosen edges solid, others dashed, nonzero deltas as
/// "+d" labels, leaves labeled with their payoffs.
std::string export_dot(const std::string& name, const Block& block);

} // namespace cogame

#endif
