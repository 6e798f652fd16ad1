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

#include "deltaflow/graph/universe.hpp"

#include <algorithm>

namespace deltaflow {

std::string_view relation_name(Relation relation) {
  switch (relation) {
    case Relation::Equal: return "equal";
    case Relation::Subset: return "subset";
    case Relation::Superset: return "superset";
    case Relation::Disjoint: return "disjoint";
    case Relation::Unknown: return "unknown";
  }
  return "?";
}

UniverseId UniverseRelations::fresh() { return UniverseId{next_++}; }

UniverseId UniverseRelations::intern(const std::string& description) {
  auto [it, inserted] = interned_.try_emplace(description, UniverseId{next_});
  if (inserted) ++next_;
  return it->second;
}

void UniverseRelations::declare_subset(UniverseId sub, UniverseId super) {
  if (sub == super || is_subset(sub, super)) return;
  subsets_.emplace_back(sub, super);
}

void UniverseRelations::declare_disjoint(UniverseId a, UniverseId b) {
  if (is_disjoint(a, b)) return;
  disjoint_.emplace_back(a, b);
}

std::vector<UniverseId> UniverseRelations::supersets_of(UniverseId u) const {
  std::vector<UniverseId> out{u};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& [sub, super] : subsets_) {
      if (sub == out[i] && std::find(out.begin(), out.end(), super) == out.end()) {
        out.push_back(super);
      }
    }
  }
  return out;
}

bool UniverseRelations::is_subset(UniverseId sub, UniverseId super) const {
  auto ups = supersets_of(sub);
  return std::find(ups.begin(), ups.end(), super) != ups.end();
}

bool UniverseRelations::is_disjoint(UniverseId a, UniverseId b) const {
  auto ups_a = supersets_of(a);
  auto ups_b = supersets_of(b);
  for (const auto& [x, y] : disjoint_) {
    bool ax = std::find(ups_a.begin(), ups_a.end(), x) != ups_a.end();
    bool ay = std::find(ups_a.begin(), ups_a.end(), y) != ups_a.end();
    bool bx = std::find(ups_b.begin(), ups_b.end(), x) != ups_b.end();
    bool by = std::find(ups_b.begin(), ups_b.end(), y) != ups_b.end();
    if ((ax && by) || (ay && bx)) return true;
  }
  return false;
}

Relation UniverseRelations::relation(UniverseId a, UniverseId b) const {
  if (a == b) return Relation::Equal;
  bool sub = is_subset(a, b);
  bool super = is_subset(b, a);
  if (sub && super) return Relation::Equal;
  if (sub) return Relation::Subset;
  if (super) return Relation::Superset;
  if (is_disjoint(a, b)) return Relation::Disjoint;
  return Relation::Unknown;
}

}  // namespace deltaflow
