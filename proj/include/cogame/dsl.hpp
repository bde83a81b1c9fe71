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


/** @file dsl.hpp
 *  @brief Text format for models.
 *
 *  Grammar (one item per line, `#` starts a comment):
 *
 *      model   := item*
 *      item    := "param" IDENT ">=" INT
 *               | "preference" ("cost" | "reward")
 *               | ("game" | "profile" | "tree") IDENT "{" line* "}"
 *      line    := "root" IDENT
 *               | IDENT ":" "leaf" "{" [IDENT ":" expr ("," IDENT ":" expr)*] "}"
 *               | IDENT ":" IDENT ["left" | "right"] "->" edge "|" edge
 *               | IDENT ":" "nil"
 *               | IDENT ":" "node" "->" IDENT "|" IDENT
 *      edge    := IDENT ["@+" INT]
 *      expr    := ["-"] term (("+" | "-") term)*
 *      term    := INT | INT "*" IDENT | IDENT
 *
 *  A choice is required in profile blocks and rejected in game blocks. The
 *  identifiers in an expression are `n` and declared parameters.
 */

#ifndef COGAME_DSL_HPP
#define COGAME_DSL_HPP

#include "cogame/game.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cogame {

using Block = std::variant<GameGraph, ProfileGraph, BinTreeGraph>;

/// Every game and profile block carries the model's params and preference.
struct Model {
    std::vector<ParamDecl> params;
    Preference preference = Preference::RewardMax;
    std::map<std::string, Block> blocks;

    const ProfileGraph& profile(const std::string& name) const;
    const GameGraph& game(const std::string& name) const;
    const BinTreeGraph& tree(const std::string& name) const;

    friend bool operator==(const Model&, const Model&) = default;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, Semantic };

    ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message);

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    Kind kind_;
    std::size_t line_, column_;
    std::string message_;
};

Model parse_model(std::string_view text);

/// Canonical text. Blocks and nodes are sorted by name, parameters keep
/// their declared order.
std::string render_model(const Model& m);

/// Wrap a single graph into a model (taking its params and preference).
Model single_block_model(const std::string& name, const Block& block);

} // namespace cogame

#endif
