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

#include <omp.h>

#include <exception>

namespace cogame {

namespace {

Verdict run_one(const ProfileGraph& s, BatchCheck check)
{
    return (check == BatchCheck::Sgpe ? sgpe_check(s) : nash_check(s)).verdict;
}

} // namespace

std::vector<Verdict> check_batch_serial(std::span<const ProfileGraph> profiles, BatchCheck check)
{
    std::vector<Verdict> out;
    out.reserve(profiles.size());
    for (const auto& s : profiles) out.push_back(run_one(s, check));
    return out;
}

std::vector<Verdict> check_batch_parallel(std::span<const ProfileGraph> profiles, BatchCheck check)
{
    const auto count = static_cast<std::ptrdiff_t>(profiles.size());
    std::vector<Verdict> out(profiles.size(), Verdict::Unknown);
    std::vector<std::exception_ptr> errors(profiles.size());

#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            out[i] = run_one(profiles[i], check);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }

    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

int batch_threads() { return omp_get_max_threads(); }

} // namespace cogame
