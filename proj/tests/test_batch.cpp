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


#include "cogame/batch.hpp"
#include "cogame/random.hpp"

#include <gtest/gtest.h>

using namespace cogame;

namespace {

std::vector<ProfileGraph> sample(std::uint64_t seed, std::size_t count)
{
    std::mt19937_64 rng(seed);
    std::vector<ProfileGraph> out;
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 2) {
            out.push_back(random_finite_profile(rng));
        } else {
            SchemaProfileOptions opt;
            opt.internal_nodes = 1 + rng() % 6;
            opt.max_delta = rng() % 3;
            opt.with_param = rng() % 2;
            out.push_back(random_schema_profile(rng, opt));
        }
    }
    return out;
}

} // namespace

TEST(Batch, ParallelMatchesSerial)
{
    const auto profiles = sample(91, 600);
    for (BatchCheck c : {BatchCheck::Sgpe, BatchCheck::Nash}) {
        const auto serial = check_batch_serial(profiles, c);
        ASSERT_EQ(serial.size(), profiles.size());
        EXPECT_EQ(check_batch_parallel(profiles, c), serial);
    }
}

TEST(Batch, SerialMatchesSingleChecks)
{
    const auto profiles = sample(93, 50);
    const auto v = check_batch_serial(profiles, BatchCheck::Sgpe);
    for (std::size_t i = 0; i < profiles.size(); ++i) EXPECT_EQ(v[i], sgpe_check(profiles[i]).verdict);
}

TEST(Batch, EmptyInput)
{
    EXPECT_TRUE(check_batch_parallel({}, BatchCheck::Nash).empty());
    EXPECT_GE(batch_threads(), 1);
}

TEST(Batch, ErrorsPropagate)
{
    auto profiles = sample(95, 40);
    profiles[17].root = "missing";
    EXPECT_THROW(check_batch_serial(profiles, BatchCheck::Sgpe), InvalidGraph);
    EXPECT_THROW(check_batch_parallel(profiles, BatchCheck::Sgpe), InvalidGraph);
}
