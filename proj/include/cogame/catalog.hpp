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


/** @file catalog.hpp
 *  @brief Named constructions of the standard example games and trees.
 */

#ifndef COGAME_CATALOG_HPP
#define COGAME_CATALOG_HPP

#include "cogame/dsl.hpp"
#include "cogame/game.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogame {

using CatalogParams = std::map<std::string, std::string>;

struct CatalogEntry {
    std::string name;
    CatalogParams params; // as resolved, defaults included
    Block value;
};

struct CatalogInfo {
    std::string name;
    std::string params; // human-readable parameter schema, "" if none
    std::string note;
};

class UnknownEntry : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BadParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws UnknownEntry or BadParameter.
CatalogEntry build_named(const std::string& name, const CatalogParams& params = {});

/// Sorted by name.
std::vector<CatalogInfo> list_catalog();

/// Multi-block models shipped as files: dollar, infinipede, small, trees,
/// centipede. Any other catalog name yields a single-block model.
std::vector<std::string> model_groups();
Model build_model(const std::string& name, const CatalogParams& params = {});

} // namespace cogame

#endif
