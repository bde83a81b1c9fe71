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


#include "cogame/dsl.hpp"

#include <cctype>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

namespace cogame {

ParseError::ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                         (kind == Kind::Syntax ? "syntax error: " : "error: ") + message),
      kind_(kind), line_(line), column_(column), message_(message)
{
}

namespace {

template <class T>
const T& block_as(const Model& m, const std::string& name, const char* what)
{
    auto it = m.blocks.find(name);
    if (it == m.blocks.end()) throw std::out_of_range("no block named '" + name + "'");
    const auto* p = std::get_if<T>(&it->second);
    if (!p) throw std::out_of_range("block '" + name + "' is not a " + what);
    return *p;
}

} // namespace

const ProfileGraph& Model::profile(const std::string& name) const { return block_as<ProfileGraph>(*this, name, "profile"); }
const GameGraph& Model::game(const std::string& name) const { return block_as<GameGraph>(*this, name, "game"); }
const BinTreeGraph& Model::tree(const std::string& name) const { return block_as<BinTreeGraph>(*this, name, "tree"); }

namespace {

// -- lexing -----------------------------------------------------------------

struct Token {
    enum class Kind { Ident, Int, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t column = 0;
    std::int64_t value = 0;
};

std::vector<Token> lex_line(std::string_view line, std::size_t lineno)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.column = i + 1;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
            t.kind = Token::Kind::Ident;
            t.text = std::string(line.substr(i, j - i));
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            std::int64_t v = 0;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) {
                const int d = line[j] - '0';
                if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10)
                    throw ParseError(ParseError::Kind::Syntax, lineno, t.column, "integer literal out of range");
                v = v * 10 + d;
                ++j;
            }
            if (j < line.size() && (std::isalpha(static_cast<unsigned char>(line[j])) || line[j] == '_'))
                throw ParseError(ParseError::Kind::Syntax, lineno, j + 1, "missing '*' between number and name");
            t.kind = Token::Kind::Int;
            t.text = std::string(line.substr(i, j - i));
            t.value = v;
            i = j;
        } else {
            t.kind = Token::Kind::Punct;
            const std::string_view two = line.substr(i, 2);
            if (two == "->" || two == ">=") {
                t.text = std::string(two);
                i += 2;
            } else if (std::string_view(":{}|,+-*@").find(c) != std::string_view::npos) {
                t.text = std::string(1, c);
                ++i;
            } else {
                throw ParseError(ParseError::Kind::Syntax, lineno, t.column,
                                 std::string("unexpected character '") + c + "'");
            }
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.column = line.size() + 1;
    out.push_back(end);
    return out;
}

std::string describe(const Token& t)
{
    switch (t.kind) {
    case Token::Kind::End: return "end of line";
    case Token::Kind::Int: return "number " + t.text;
    default: return "'" + t.text + "'";
    }
}

class LineParser {
public:
    LineParser(std::vector<Token> tokens, std::size_t lineno) : toks_(std::move(tokens)), line_(lineno) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    std::size_t line() const { return line_; }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(ParseError::Kind::Syntax, line_, peek().column, what + ", found " + describe(peek()));
    }

    bool accept(std::string_view punct)
    {
        if (peek().kind == Token::Kind::Punct && peek().text == punct) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(std::string_view punct)
    {
        if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
    }
    bool accept_word(std::string_view w)
    {
        if (peek().kind == Token::Kind::Ident && peek().text == w) {
            ++pos_;
            return true;
        }
        return false;
    }
    Token ident(const std::string& what)
    {
        if (peek().kind != Token::Kind::Ident) fail("expected " + what);
        return toks_[pos_++];
    }
    std::int64_t integer(const std::string& what)
    {
        if (peek().kind != Token::Kind::Int) fail("expected " + what);
        return toks_[pos_++].value;
    }
    void expect_end()
    {
        if (!at_end()) fail("expected end of line");
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

// -- parsing ----------------------------------------------------------------

struct Location {
    std::size_t line = 0, column = 0;
};

struct NameUse {
    std::string name;
    Location at;
};

enum class BlockKind { Game, Profile, Tree };

struct PendingBlock {
    BlockKind kind;
    std::string name;
    Location at;
    std::optional<NameUse> root;
    std::map<NodeId, Location> defined;
    std::vector<NameUse> references;
    GameGraph game;
    ProfileGraph profile;
    BinTreeGraph tree;
};

class ModelParser {
public:
    Model run(std::string_view text)
    {
        std::size_t lineno = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t stop = text.find('\n', start);
            if (stop == std::string_view::npos) stop = text.size();
            std::string_view line = text.substr(start, stop - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            ++lineno;
            LineParser p(lex_line(line, lineno), lineno);
            if (!p.at_end()) {
                if (block_) {
                    block_line(p);
                } else {
                    top_line(p);
                }
            }
            last_line_ = lineno;
            start = stop + 1;
        }
        if (block_)
            throw ParseError(ParseError::Kind::Syntax, last_line_ + 1, 1,
                             "unterminated block '" + block_->name + "', expected '}'");
        if (model_.blocks.empty())
            throw ParseError(ParseError::Kind::Syntax, last_line_ == 0 ? 1 : last_line_, 1,
                             "model defines no game, profile or tree");
        check_parameters();
        for (auto& [name, b] : model_.blocks) {
            if (auto* g = std::get_if<GameGraph>(&b)) {
                g->params = model_.params;
                g->preference = model_.preference;
            } else if (auto* s = std::get_if<ProfileGraph>(&b)) {
                s->params = model_.params;
                s->preference = model_.preference;
            }
        }
        for (const auto& [name, at] : block_locations_) validate_block(name, at);
        return std::move(model_);
    }

private:
    [[noreturn]] static void semantic(Location at, const std::string& what)
    {
        throw ParseError(ParseError::Kind::Semantic, at.line, at.column, what);
    }

    void top_line(LineParser& p)
    {
        const Location at{p.line(), p.peek().column};
        if (p.accept_word("param")) {
            const Token name = p.ident("parameter name");
            p.expect(">=");
            const std::int64_t bound = p.integer("lower bound");
            p.expect_end();
            if (name.text == kCounter) semantic({p.line(), name.column}, "'n' is the stage counter, not a parameter");
            for (const auto& d : model_.params) {
                if (d.name == name.text) semantic({p.line(), name.column}, "duplicate parameter '" + name.text + "'");
            }
            model_.params.push_back({name.text, bound});
            return;
        }
        if (p.accept_word("preference")) {
            const Token dir = p.ident("'cost' or 'reward'");
            if (dir.text == "cost") {
                model_.preference = Preference::CostMin;
            } else if (dir.text == "reward") {
                model_.preference = Preference::RewardMax;
            } else {
                throw ParseError(ParseError::Kind::Syntax, p.line(), dir.column, "expected 'cost' or 'reward'");
            }
            p.expect_end();
            if (seen_preference_) semantic(at, "duplicate preference directive");
            seen_preference_ = true;
            return;
        }
        BlockKind kind;
        if (p.accept_word("game")) {
            kind = BlockKind::Game;
        } else if (p.accept_word("profile")) {
            kind = BlockKind::Profile;
        } else if (p.accept_word("tree")) {
            kind = BlockKind::Tree;
        } else {
            p.fail("expected 'param', 'preference', 'game', 'profile' or 'tree'");
        }
        const Token name = p.ident("block name");
        p.expect("{");
        p.expect_end();
        if (model_.blocks.count(name.text) || (block_ && block_->name == name.text))
            semantic({p.line(), name.column}, "duplicate block '" + name.text + "'");
        block_.emplace();
        block_->kind = kind;
        block_->name = name.text;
        block_->at = {p.line(), name.column};
    }

    void block_line(LineParser& p)
    {
        auto& b = *block_;
        if (p.accept("}")) {
            p.expect_end();
            close_block();
            return;
        }
        if (p.accept_word("root")) {
            const Token id = p.ident("root node id");
            p.expect_end();
            if (b.root) semantic({p.line(), id.column}, "duplicate root line");
            b.root = NameUse{id.text, {p.line(), id.column}};
            return;
        }
        const Token id = p.ident("node id, 'root' or '}'");
        p.expect(":");
        const Location at{p.line(), id.column};
        if (b.defined.count(id.text)) semantic(at, "duplicate node '" + id.text + "'");
        b.defined.emplace(id.text, at);

        if (b.kind == BlockKind::Tree) {
            if (p.accept_word("nil")) {
                p.expect_end();
                b.tree.nodes.emplace(id.text, Nil{});
                return;
            }
            if (!p.accept_word("node")) p.fail("expected 'nil' or 'node'");
            p.expect("->");
            const Token l = p.ident("left child");
            p.expect("|");
            const Token r = p.ident("right child");
            p.expect_end();
            b.references.push_back({l.text, {p.line(), l.column}});
            b.references.push_back({r.text, {p.line(), r.column}});
            b.tree.nodes.emplace(id.text, BinNode{l.text, r.text});
            return;
        }

        if (p.peek().kind == Token::Kind::Ident && p.peek().text == "leaf" && p.peek(1).text == "{") {
            p.accept_word("leaf");
            p.expect("{");
            Leaf leaf;
            if (!p.accept("}")) {
                do {
                    const Token agent = p.ident("agent name");
                    p.expect(":");
                    AffineUtility e = expression(p);
                    if (!leaf.utilities.emplace(Agent(agent.text), std::move(e)).second)
                        semantic({p.line(), agent.column}, "agent '" + agent.text + "' listed twice");
                } while (p.accept(","));
                p.expect("}");
            }
            p.expect_end();
            if (b.kind == BlockKind::Game) {
                b.game.nodes.emplace(id.text, std::move(leaf));
            } else {
                b.profile.nodes.emplace(id.text, std::move(leaf));
            }
            return;
        }

        const Token agent = p.ident("agent name or 'leaf'");
        std::optional<Choice> choice;
        if (p.accept_word("left")) {
            choice = Choice::Left;
        } else if (p.accept_word("right")) {
            choice = Choice::Right;
        }
        if (b.kind == BlockKind::Profile && !choice) p.fail("expected 'left' or 'right'");
        if (b.kind == BlockKind::Game && choice) semantic(at, "choices are not allowed in a game block");
        p.expect("->");
        const Edge left = edge(p);
        p.expect("|");
        const Edge right = edge(p);
        p.expect_end();
        if (b.kind == BlockKind::Game) {
            b.game.nodes.emplace(id.text, GameNode{Agent(agent.text), left, right});
        } else {
            b.profile.nodes.emplace(id.text, ProfileNode{Agent(agent.text), *choice, left, right});
        }
    }

    Edge edge(LineParser& p)
    {
        const Token target = p.ident("target node id");
        block_->references.push_back({target.text, {p.line(), target.column}});
        Edge e{target.text, 0};
        if (p.accept("@")) {
            p.expect("+");
            e.delta = p.integer("counter increment");
        }
        return e;
    }

    AffineUtility expression(LineParser& p)
    {
        AffineUtility out;
        bool negative = p.accept("-");
        for (;;) {
            AffineUtility term;
            if (p.peek().kind == Token::Kind::Int) {
                const std::int64_t k = p.integer("number");
                if (p.accept("*")) {
                    term = variable(p, k);
                } else {
                    term = AffineUtility(k);
                }
            } else if (p.peek().kind == Token::Kind::Ident) {
                term = variable(p, 1);
            } else {
                p.fail("expected a number, 'n' or a parameter");
            }
            if (negative) {
                out -= term;
            } else {
                out += term;
            }
            if (p.accept("+")) {
                negative = false;
            } else if (p.accept("-")) {
                negative = true;
            } else {
                return out;
            }
        }
    }

    AffineUtility variable(LineParser& p, std::int64_t k)
    {
        const Token v = p.ident("'n' or a parameter");
        if (v.text == kCounter) return AffineUtility::counter(k);
        param_uses_.push_back({v.text, {p.line(), v.column}});
        return AffineUtility::parameter(v.text, k);
    }

    void close_block()
    {
        auto& b = *block_;
        if (!b.root) semantic(b.at, "block '" + b.name + "' has no root line");
        if (!b.defined.count(b.root->name)) semantic(b.root->at, "root '" + b.root->name + "' is not defined");
        for (const auto& ref : b.references) {
            if (!b.defined.count(ref.name)) semantic(ref.at, "unknown node '" + ref.name + "'");
        }
        Block block;
        switch (b.kind) {
        case BlockKind::Game:
            b.game.root = b.root->name;
            block = std::move(b.game);
            break;
        case BlockKind::Profile:
            b.profile.root = b.root->name;
            block = std::move(b.profile);
            break;
        case BlockKind::Tree:
            b.tree.root = b.root->name;
            block = std::move(b.tree);
            break;
        }
        model_.blocks.emplace(b.name, std::move(block));
        block_locations_.emplace(b.name, b.at);
        block_.reset();
    }

    void check_parameters()
    {
        std::set<std::string> declared;
        for (const auto& d : model_.params) declared.insert(d.name);
        for (const auto& use : param_uses_) {
            if (!declared.count(use.name)) semantic(use.at, "unbound parameter '" + use.name + "'");
        }
    }

    void validate_block(const std::string& name, Location at)
    {
        const auto errs = std::visit([](const auto& g) { return validate(g); }, model_.blocks.at(name));
        if (!errs.empty()) semantic(at, "block '" + name + "': " + errs.front().to_string());
    }

    Model model_;
    bool seen_preference_ = false;
    std::optional<PendingBlock> block_;
    std::map<std::string, Location> block_locations_;
    std::vector<NameUse> param_uses_;
    std::size_t last_line_ = 0;
};

// -- rendering --------------------------------------------------------------

std::string render_edge(const Edge& e)
{
    return e.delta == 0 ? e.target : e.target + " @+" + std::to_string(e.delta);
}

void render_leaf(std::ostream& out, const NodeId& id, const Leaf& leaf)
{
    out << "  " << id << ": leaf {";
    bool first = true;
    for (const auto& [agent, e] : leaf.utilities) {
        out << (first ? " " : ", ") << agent.name << ": " << e.to_string();
        first = false;
    }
    out << (first ? "}" : " }") << '\n';
}

void render_block(std::ostream& out, const std::string& name, const GameGraph& g)
{
    out << "game " << name << " {\n  root " << g.root << '\n';
    for (const auto& [id, node] : g.nodes) {
        if (const auto* leaf = std::get_if<Leaf>(&node)) {
            render_leaf(out, id, *leaf);
        } else {
            const auto& in = std::get<GameNode>(node);
            out << "  " << id << ": " << in.agent.name << " -> " << render_edge(in.left) << " | "
                << render_edge(in.right) << '\n';
        }
    }
    out << "}\n";
}

void render_block(std::ostream& out, const std::string& name, const ProfileGraph& s)
{
    out << "profile " << name << " {\n  root " << s.root << '\n';
    for (const auto& [id, node] : s.nodes) {
        if (const auto* leaf = std::get_if<Leaf>(&node)) {
            render_leaf(out, id, *leaf);
        } else {
            const auto& in = std::get<ProfileNode>(node);
            out << "  " << id << ": " << in.agent.name << ' ' << choice_name(in.choice) << " -> "
                << render_edge(in.left) << " | " << render_edge(in.right) << '\n';
        }
    }
    out << "}\n";
}

void render_block(std::ostream& out, const std::string& name, const BinTreeGraph& t)
{
    out << "tree " << name << " {\n  root " << t.root << '\n';
    for (const auto& [id, node] : t.nodes) {
        if (std::holds_alternative<Nil>(node)) {
            out << "  " << id << ": nil\n";
        } else {
            const auto& in = std::get<BinNode>(node);
            out << "  " << id << ": node -> " << in.left << " | " << in.right << '\n';
        }
    }
    out << "}\n";
}

} // namespace

Model parse_model(std::string_view text) { return ModelParser().run(text); }

std::string render_model(const Model& m)
{
    std::ostringstream out;
    for (const auto& d : m.params) out << "param " << d.name << " >= " << d.lower_bound << '\n';
    out << "preference " << preference_name(m.preference) << '\n';
    for (const auto& [name, block] : m.blocks) {
        out << '\n';
        std::visit([&](const auto& g) { render_block(out, name, g); }, block);
    }
    return out.str();
}

Model single_block_model(const std::string& name, const Block& block)
{
    Model m;
    if (const auto* g = std::get_if<GameGraph>(&block)) {
        m.params = g->params;
        m.preference = g->preference;
    } else if (const auto* s = std::get_if<ProfileGraph>(&block)) {
        m.params = s->params;
        m.preference = s->preference;
    }
    m.blocks.emplace(name, block);
    return m;
}

} // namespace cogame
