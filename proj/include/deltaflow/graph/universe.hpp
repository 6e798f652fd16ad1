/*
 * Copyright (c) 2026 The deltaflow Authors.
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

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "deltaflow/core/schema.hpp"

namespace deltaflow {

enum class Relation { Equal, Subset, Superset, Disjoint, Unknown };

std::string_view relation_name(Relation relation);

/// Known facts about key universes, derived only from operator semantics.
///
/// Facts are subset edges and disjointness pairs; queries close over them:
/// subsets are transitive and disjointness is inherited by subsets.
class UniverseRelations {
 public:
  UniverseId fresh();

  /// Universe shared by every table produced from the same canonical
  /// description (used for groupby outputs of identical grouping).
  UniverseId intern(const std::string& description);

  void declare_subset(UniverseId sub, UniverseId super);
  void declare_disjoint(UniverseId a, UniverseId b);

  Relation relation(UniverseId a, UniverseId b) const;
  bool is_subset(UniverseId sub, UniverseId super) const;
  bool is_disjoint(UniverseId a, UniverseId b) const;

  const std::vector<std::pair<UniverseId, UniverseId>>& subset_facts() const { return subsets_; }
  const std::vector<std::pair<UniverseId, UniverseId>>& disjoint_facts() const { return disjoint_; }
  std::size_t size() const { return next_; }

 private:
  std::vector<UniverseId> supersets_of(UniverseId u) const;

  std::uint32_t next_ = 0;
  std::map<std::string, UniverseId> interned_;
  std::vector<std::pair<UniverseId, UniverseId>> subsets_;
  std::vector<std::pair<UniverseId, UniverseId>> disjoint_;
};

}  // namespace deltaflow
