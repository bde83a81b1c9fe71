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


// Enumerators of small acyclic binary tree graphs.

#ifndef COGAME_TESTS_TREES_HPP
#define COGAME_TESTS_TREES_HPP

#include "cogame/game.hpp"

#include <array>
#include <functional>

namespace cogame::testing {

// Every acyclic graph of at most `limit` nodes, all reachable from the root,
// once per isomorphism class: nodes are numbered in depth-first discovery
// order, left child first. A child is either a node already finished (never
// one on the current path, which would close a cycle) or a fresh node.
class AcyclicTrees {
public:
    AcyclicTrees(std::size_t limit, std::function<void(const BinTreeGraph&)> f) : limit_(limit), f_(std::move(f))
    {
        for (std::size_t i = 0; i < limit; ++i) ids_.push_back("t" + std::to_string(i));
        kids_.resize(limit);
        leaf_.resize(limit);
        open_.resize(limit);
    }

    void run()
    {
        used_ = 1;
        expand(0, [&] { emit(); });
    }

private:
    using Cont = std::function<void()>;

    void expand(std::size_t m, const Cont& k)
    {
        leaf_[m] = true;
        k();
        leaf_[m] = false;
        open_[m] = true;
        pick(m, 0, [&] {
            pick(m, 1, [&] {
                open_[m] = false;
                k();
                open_[m] = true;
            });
        });
        open_[m] = false;
    }

    void pick(std::size_t m, int side, const Cont& k)
    {
        for (std::size_t j = 0; j < used_; ++j) {
            if (open_[j]) continue;
            kids_[m][side] = j;
            k();
        }
        if (used_ < limit_) {
            const std::size_t j = used_++;
            kids_[m][side] = j;
            expand(j, k);
            --used_;
        }
    }

    void emit()
    {
        BinTreeGraph g;
        for (std::size_t m = 0; m < used_; ++m) {
            if (leaf_[m])
                g.nodes.emplace(ids_[m], Nil{});
            else
                g.nodes.emplace(ids_[m], BinNode{ids_[kids_[m][0]], ids_[kids_[m][1]]});
        }
        g.root = ids_[0];
        f_(g);
    }

    std::size_t limit_, used_ = 0;
    std::function<void(const BinTreeGraph&)> f_;
    std::vector<std::string> ids_;
    std::vector<std::array<std::size_t, 2>> kids_;
    std::vector<bool> leaf_, open_;
};

/// Every labelled acyclic graph on nodes t0..t(k-1) rooted at t0 whose
/// edges go from lower to higher index. Unreachable nodes are included.
inline void for_each_labelled_tree(std::size_t k, const std::function<void(const BinTreeGraph&)>& f)
{
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < k; ++i) ids.push_back("t" + std::to_string(i));
    BinTreeGraph g;
    g.root = ids[0];
    std::function<void(std::size_t)> place = [&](std::size_t i) {
        if (i == k) {
            f(g);
            return;
        }
        g.nodes.insert_or_assign(ids[i], Nil{});
        place(i + 1);
        for (std::size_t l = i + 1; l < k; ++l) {
            for (std::size_t r = i + 1; r < k; ++r) {
                g.nodes.insert_or_assign(ids[i], BinNode{ids[l], ids[r]});
                place(i + 1);
            }
        }
    };
    place(0);
}

} // namespace cogame::testing

#endif
