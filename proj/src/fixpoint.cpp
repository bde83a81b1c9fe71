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

#include "cogame/fixpoint.hpp"

#include <deque>

namespace cogame {

namespace {

// Shared driver: start from `initial`, flip membership of m whenever
// rule(m, S) disagrees with it. Monotonicity makes the flips one-directional.
NodeSet iterate(std::size_t count, const LocalRule& rule, std::span<const std::vector<NodeIndex>> dependents,
                bool initial)
{
    NodeSet set(count, initial);
    if (dependents.empty()) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (NodeIndex m = 0; m < count; ++m) {
                if (rule(m, set) != set[m]) {
                    set[m] = !set[m];
                    changed = true;
                }
            }
        }
        return set;
    }

    std::deque<NodeIndex> work;
    std::vector<bool> queued(count, true);
    for (NodeIndex m = 0; m < count; ++m) work.push_back(m);
    while (!work.empty()) {
        const NodeIndex m = work.front();
        work.pop_front();
        queued[m] = false;
        if (rule(m, set) == set[m]) continue;
        set[m] = !set[m];
        for (NodeIndex d : dependents[m]) {
            if (!queued[d]) {
                queued[d] = true;
                work.push_back(d);
            }
        }
    }
    return set;
}

} // namespace

NodeSet greatest_fixpoint(std::size_t count, const LocalRule& rule, std::span<const std::vector<NodeIndex>> dependents)
{
    return iterate(count, rule, dependents, true);
}

NodeSet least_fixpoint(std::size_t count, const LocalRule& rule, std::span<const std::vector<NodeIndex>> dependents)
{
    return iterate(count, rule, dependents, false);
}

bool spot_check_monotone(std::size_t count, const LocalRule& rule, std::span<const NodeSet> samples)
{
    for (const NodeSet& big : samples) {
        for (const NodeSet& small : samples) {
            bool subset = true;
            for (NodeIndex i = 0; i < count && subset; ++i) subset = !small[i] || big[i];
            if (!subset) continue;
            for (NodeIndex m = 0; m < count; ++m) {
                if (rule(m, small) && !rule(m, big)) return false;
            }
        }
    }
    return true;
}

} // namespace cogame
