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


#include "cogame/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>

namespace cogame {

namespace {

const Agent kAlice("Alice");
const Agent kBob("Bob");

Leaf leaf2(AffineUtility alice, AffineUtility bob) { return Leaf{{{kAlice, std::move(alice)}, {kBob, std::move(bob)}}}; }

// -- parameters ---------------------------------------------------------------

class Params {
public:
    Params(std::string entry, const CatalogParams& given) : entry_(std::move(entry)), given_(given) {}

    std::string word(const std::string& key, const std::string& fallback, const std::set<std::string>& allowed)
    {
        used_.insert(key);
        auto it = given_.find(key);
        const std::string value = it == given_.end() ? fallback : it->second;
        if (!allowed.count(value)) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : "|") + a;
            throw BadParameter(entry_ + ": " + key + " must be one of " + list + ", got '" + value + "'");
        }
        resolved_[key] = value;
        return value;
    }

    std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t lo, std::int64_t hi)
    {
        used_.insert(key);
        std::int64_t value = fallback;
        if (auto it = given_.find(key); it != given_.end()) {
            const std::string& s = it->second;
            auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
            if (ec != std::errc() || end != s.data() + s.size())
                throw BadParameter(entry_ + ": " + key + " must be an integer, got '" + s + "'");
        }
        if (value < lo || value > hi)
            throw BadParameter(entry_ + ": " + key + " must lie in [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "], got " + std::to_string(value));
        resolved_[key] = std::to_string(value);
        return value;
    }

    /// Rejects keys the builder did not ask for.
    CatalogParams finish() const
    {
        for (const auto& [k, v] : given_) {
            if (!used_.count(k)) throw BadParameter(entry_ + ": unknown parameter '" + k + "'");
        }
        return resolved_;
    }

private:
    std::string entry_;
    const CatalogParams& given_;
    std::set<std::string> used_;
    CatalogParams resolved_;
};

// -- trees --------------------------------------------------------------------

BinTreeGraph zig_zag(const NodeId& root)
{
    BinTreeGraph t;
    t.nodes.emplace("zig", BinNode{"nil", "zag"});
    t.nodes.emplace("zag", BinNode{"zig", "nil"});
    t.nodes.emplace("nil", Nil{});
    t.root = root;
    return t;
}

BinTreeGraph backbone()
{
    BinTreeGraph t;
    t.nodes.emplace("backbone", BinNode{"backbone", "nil"});
    t.nodes.emplace("nil", Nil{});
    t.root = "backbone";
    return t;
}

// -- small profiles -------------------------------------------------------------

ProfileGraph small_profile(Choice alice)
{
    ProfileGraph s;
    s.preference = Preference::RewardMax;
    s.nodes.emplace("a", ProfileNode{kAlice, alice, {"b", 0}, {"x12", 0}});
    s.nodes.emplace("b", ProfileNode{kBob, Choice::Right, {"x01", 0}, {"x20", 0}});
    s.nodes.emplace("x01", leaf2(0, 1));
    s.nodes.emplace("x20", leaf2(2, 0));
    s.nodes.emplace("x12", leaf2(1, 2));
    s.root = "a";
    return s;
}

ProfileGraph profile_t()
{
    ProfileGraph s;
    s.preference = Preference::RewardMax;
    s.nodes.emplace("t", ProfileNode{kAlice, Choice::Right, {"x00", 0}, {"b", 0}});
    s.nodes.emplace("b", ProfileNode{kBob, Choice::Right, {"t", 0}, {"t", 0}});
    s.nodes.emplace("x00", leaf2(0, 0));
    s.root = "t";
    return s;
}

// -- escalation ---------------------------------------------------------------

// Left continues, right stops. Alice's move and Bob's answer form one round;
// the next round starts one stage later.
ProfileGraph dollar(const std::string& kind, std::int64_t v_min)
{
    const AffineUtility n = AffineUtility::counter();
    const AffineUtility v = AffineUtility::parameter("v");
    ProfileGraph s;
    s.params = {{"v", v_min}};
    s.preference = Preference::CostMin;
    const Choice alice = kind == "AcBs" ? Choice::Left : Choice::Right;
    const Choice bob = kind == "AsBc" ? Choice::Left : Choice::Right;
    s.nodes.emplace("A", ProfileNode{kAlice, alice, {"B", 0}, {"SA", 0}});
    s.nodes.emplace("B", ProfileNode{kBob, bob, {"A", 1}, {"SB", 0}});
    s.nodes.emplace("SA", leaf2(v + n, n));
    s.nodes.emplace("SB", leaf2(n + 1, v + n));
    s.root = "A";
    return s;
}

// Stopping at stage n pays the mover n+2 and the other agent n.
ProfileGraph infinipede(const std::string& kind)
{
    const AffineUtility n = AffineUtility::counter();
    const Choice c = kind == "as" ? Choice::Right : Choice::Left;
    ProfileGraph s;
    s.preference = Preference::RewardMax;
    s.nodes.emplace("A", ProfileNode{kAlice, c, {"B", 0}, {"SA", 0}});
    s.nodes.emplace("B", ProfileNode{kBob, c, {"A", 1}, {"SB", 0}});
    s.nodes.emplace("SA", leaf2(n + 2, n));
    s.nodes.emplace("SB", leaf2(n, n + 2));
    s.root = "A";
    return s;
}

// Node i belongs to Alice when i is even and lies in round i/2; the stop
// leaves follow the infinipede payoffs with the round as counter. The play
// after the last node ends in the leaf node k would have stopped at.
Leaf centipede_stop(std::int64_t i)
{
    const std::int64_t r = i / 2;
    return i % 2 == 0 ? leaf2(r + 2, r) : leaf2(r, r + 2);
}

GameGraph centipede_game(std::int64_t k)
{
    GameGraph g;
    g.preference = Preference::RewardMax;
    for (std::int64_t i = 0; i < k; ++i) {
        const NodeId next = i + 1 < k ? "c" + std::to_string(i + 1) : "end";
        g.nodes.emplace("c" + std::to_string(i),
                        GameNode{i % 2 == 0 ? kAlice : kBob, {next, 0}, {"s" + std::to_string(i), 0}});
        g.nodes.emplace("s" + std::to_string(i), centipede_stop(i));
    }
    g.nodes.emplace("end", centipede_stop(k));
    g.root = "c0";
    return g;
}

ProfileGraph with_choice(const GameGraph& g, Choice c)
{
    ProfileGraph s;
    s.params = g.params;
    s.preference = g.preference;
    s.root = g.root;
    for (const auto& [id, node] : g.nodes) {
        if (const auto* leaf = std::get_if<Leaf>(&node)) {
            s.nodes.emplace(id, *leaf);
        } else {
            const auto& in = std::get<GameNode>(node);
            s.nodes.emplace(id, ProfileNode{in.agent, c, in.left, in.right});
        }
    }
    return s;
}

// -- registry -----------------------------------------------------------------

struct Builder {
    CatalogInfo info;
    std::function<Block(Params&)> build;
};

const std::set<std::string> kDollarKinds{"AcBs", "AsBc", "AsBs"};
constexpr std::int64_t kMaxLength = 64;

const std::vector<Builder>& registry()
{
    static const std::vector<Builder> r = [] {
        std::vector<Builder> b;
        b.push_back({{"zig", "", "tree; zig = node(nil, zag), zag = node(zig, nil); infinite"},
                     [](Params&) -> Block { return zig_zag("zig"); }});
        b.push_back({{"zag", "", "tree; the companion of zig, rooted at zag"},
                     [](Params&) -> Block { return zig_zag("zag"); }});
        b.push_back({{"backbone", "", "tree; backbone = node(backbone, nil); infinite"},
                     [](Params&) -> Block { return backbone(); }});
        b.push_back({{"s0", "", "two-agent example profile; Alice left, Bob right; Alice's utility is 2"},
                     [](Params&) -> Block { return small_profile(Choice::Left); }});
        b.push_back({{"s1", "", "s0 with Alice's root choice flipped; convertible to s0 for Alice"},
                     [](Params&) -> Block { return small_profile(Choice::Right); }});
        b.push_back({{"t", "", "cyclic profile whose play never reaches a leaf"},
                     [](Params&) -> Block { return profile_t(); }});
        for (const std::string kind : {"AcBs", "AsBc", "AsBs"}) {
            std::string note;
            if (kind == "AcBs") note = "dollar auction; Alice continues, Bob stops; subgame perfect";
            if (kind == "AsBc") note = "dollar auction; Alice stops, Bob continues; subgame perfect";
            if (kind == "AsBs") note = "dollar auction; both stop; not Nash at stage 0 when v >= 2";
            b.push_back({{"dol" + kind, "v_min >= 1 (default 1)", note}, [kind](Params& p) -> Block {
                             return dollar(kind, p.integer("v_min", 1, 1, 1'000'000));
                         }});
        }
        b.push_back({{"dollar", "kind in {AcBs,AsBc,AsBs} (default AcBs); v_min >= 1 (default 1)",
                      "dollar auction family; left continues, right stops; costs, smaller preferred"},
                     [](Params& p) -> Block {
                         const std::string kind = p.word("kind", "AcBs", kDollarKinds);
                         return dollar(kind, p.integer("v_min", 1, 1, 1'000'000));
                     }});
        b.push_back({{"infinipede_as", "", "infinite centipede; both always stop; subgame perfect"},
                     [](Params&) -> Block { return infinipede("as"); }});
        b.push_back({{"infinipede_ac", "", "infinite centipede; both always continue; no utility"},
                     [](Params&) -> Block { return infinipede("ac"); }});
        b.push_back({{"infinipede", "kind in {as,ac} (default as)",
                      "infinite centipede; stopping at stage n pays mover n+2, other n"},
                     [](Params& p) -> Block { return infinipede(p.word("kind", "as", {"as", "ac"})); }});
        b.push_back({{"centipede", "length in [1,64] (default 3); kind in {game,stop,continue} (default game)",
                      "finite centipede; the first k moves of the infinipede"},
                     [](Params& p) -> Block {
                         const GameGraph g = centipede_game(p.integer("length", 3, 1, kMaxLength));
                         const std::string kind = p.word("kind", "game", {"game", "stop", "continue"});
                         if (kind == "game") return g;
                         return with_choice(g, kind == "stop" ? Choice::Right : Choice::Left);
                     }});
        std::sort(b.begin(), b.end(), [](const Builder& x, const Builder& y) { return x.info.name < y.info.name; });
        return b;
    }();
    return r;
}

const Builder& find_builder(const std::string& name)
{
    for (const auto& b : registry()) {
        if (b.info.name == name) return b;
    }
    throw UnknownEntry("unknown catalog entry '" + name + "'");
}

} // namespace

CatalogEntry build_named(const std::string& name, const CatalogParams& params)
{
    const Builder& b = find_builder(name);
    Params p(name, params);
    Block value = b.build(p);
    return CatalogEntry{name, p.finish(), std::move(value)};
}

std::vector<CatalogInfo> list_catalog()
{
    std::vector<CatalogInfo> out;
    for (const auto& b : registry()) out.push_back(b.info);
    return out;
}

std::vector<std::string> model_groups() { return {"centipede", "dollar", "infinipede", "small", "trees"}; }

Model build_model(const std::string& name, const CatalogParams& params)
{
    Model m;
    auto add = [&](const std::string& block, const std::string& entry, const CatalogParams& p) {
        m.blocks.emplace(block, build_named(entry, p).value);
    };
    auto only = [&](std::initializer_list<const char*> keys) {
        for (const auto& [k, v] : params) {
            if (std::none_of(keys.begin(), keys.end(), [&](const char* key) { return k == key; }))
                throw BadParameter(name + ": unknown parameter '" + k + "'");
        }
    };
    if (name == "dollar") {
        only({"v_min"});
        for (const char* e : {"dolAcBs", "dolAsBc", "dolAsBs"}) add(e, e, params);
        m.params = std::get<ProfileGraph>(m.blocks.at("dolAcBs")).params;
        m.preference = Preference::CostMin;
    } else if (name == "infinipede") {
        only({});
        add("as", "infinipede_as", {});
        add("ac", "infinipede_ac", {});
    } else if (name == "small") {
        only({});
        for (const char* e : {"s0", "s1", "t"}) add(e, e, {});
    } else if (name == "trees") {
        only({});
        for (const char* e : {"zig", "zag", "backbone"}) add(e, e, {});
    } else if (name == "centipede") {
        only({"length"});
        CatalogParams p = params;
        add("centipede", "centipede", p);
        p["kind"] = "stop";
        add("stop", "centipede", p);
        p["kind"] = "continue";
        add("continue", "centipede", p);
    } else {
        const CatalogEntry e = build_named(name, params);
        return single_block_model(name, e.value);
    }
    return m;
}

} // namespace cogame
