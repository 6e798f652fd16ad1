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

#include "deltaflow/engine/arrangement.hpp"

#include <algorithm>

#include "deltaflow/core/errors.hpp"

namespace deltaflow {

namespace {

bool delta_less(const Delta& a, const Delta& b) {
  if (a.index != b.index) return a.index < b.index;
  if (a.id != b.id) return a.id < b.id;
  return compare_rows(a.row, b.row) < 0;
}

}  // namespace

void consolidate_deltas(std::vector<Delta>& deltas) {
  std::sort(deltas.begin(), deltas.end(), delta_less);
  std::size_t out = 0;
  for (std::size_t i = 0; i < deltas.size();) {
    std::size_t j = i + 1;
    Diff total = deltas[i].diff;
    while (j < deltas.size() && deltas[j].index == deltas[i].index && deltas[j].id == deltas[i].id &&
           deltas[j].row == deltas[i].row) {
      total += deltas[j].diff;
      ++j;
    }
    if (total != 0) {
      if (out != i) deltas[out] = std::move(deltas[i]);
      deltas[out].diff = total;
      ++out;
    }
    i = j;
  }
  deltas.resize(out);
}

void Arrangement::update(const Key& index, const Key& id, const Row& row, Diff diff) {
  if (diff == 0) return;
  auto& records = index_[index];
  auto it = std::find_if(records.begin(), records.end(),
                         [&](const Record& r) { return r.id == id && r.row == row; });
  if (it == records.end()) {
    records.push_back(Record{id, row, diff});
    ++records_;
  } else {
    it->mult += diff;
    if (it->mult == 0) {
      records.erase(it);
      --records_;
      if (records.empty()) index_.erase(index);
    }
  }
  open_.push_back(Delta{index, id, row, diff});
}

void Arrangement::seal(Epoch epoch) {
  if (!open_.empty()) {
    consolidate_deltas(open_);
    if (!open_.empty()) {
      log_size_ += open_.size();
      log_.push_back(Layer{epoch, std::move(open_)});
    }
    open_.clear();
  }
  if (auto_compact_ && log_size_ > 2 * records_ && log_.size() > 1) compact_to(epoch);
}

void Arrangement::compact_to(Epoch watermark) {
  std::vector<Delta> merged;
  std::vector<Layer> rest;
  for (auto& layer : log_) {
    if (layer.epoch <= watermark) {
      std::move(layer.deltas.begin(), layer.deltas.end(), std::back_inserter(merged));
    } else {
      rest.push_back(std::move(layer));
    }
  }
  consolidate_deltas(merged);
  log_.clear();
  log_size_ = merged.size();
  if (!merged.empty()) log_.push_back(Layer{watermark, std::move(merged)});
  for (auto& layer : rest) {
    log_size_ += layer.deltas.size();
    log_.push_back(std::move(layer));
  }
  if (!compacted_ || watermark > watermark_) watermark_ = watermark;
  compacted_ = true;
}

std::span<const Record> Arrangement::find(const Key& index) const {
  auto it = index_.find(index);
  if (it == index_.end()) return {};
  return it->second;
}

const Row* Arrangement::unique(const Key& index) const {
  auto records = find(index);
  if (records.empty()) return nullptr;
  if (records.size() > 1 || records[0].mult != 1) {
    throw Error("keyed-map invariant violated at key " + index.hex() + ": " +
                std::to_string(records.size()) + " rows, multiplicity " +
                std::to_string(records[0].mult));
  }
  return &records[0].row;
}

std::vector<Delta> Arrangement::accumulated_at(Epoch epoch) const {
  std::vector<Delta> out;
  for (const auto& layer : log_) {
    if (layer.epoch <= epoch) out.insert(out.end(), layer.deltas.begin(), layer.deltas.end());
  }
  consolidate_deltas(out);
  return out;
}

std::vector<Delta> Arrangement::snapshot() const {
  std::vector<Delta> out;
  out.reserve(records_);
  for_each([&](const Key& index, const Record& r) { out.push_back(Delta{index, r.id, r.row, r.mult}); });
  consolidate_deltas(out);
  return out;
}

Arrangement compact(Arrangement arrangement, Epoch watermark) {
  arrangement.compact_to(watermark);
  return arrangement;
}

}  // namespace deltaflow
