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

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "deltaflow/core/update.hpp"
#include "deltaflow/core/value.hpp"

namespace deltaflow {

/// One live row of an arrangement: `mult` copies of `row` with identity `id`.
struct Record {
  Key id;
  Row row;
  Diff mult = 0;
};

/// A change to an arrangement, as kept in its delta log.
struct Delta {
  Key index;
  Key id;
  Row row;
  Diff diff = 0;

  friend bool operator==(const Delta&, const Delta&) = default;
};

/// Key-indexed, consolidated multiset of rows with a per-epoch delta log.
///
/// Rows are grouped under an index key. Keyed tables index each row by its
/// own id (at most one record per index); join inputs index rows by the key
/// they point at. Changes accumulate into the open layer and become a
/// sealed layer at seal(epoch). Layers at or below the compaction watermark
/// are merged into one consolidated layer; this never changes the
/// accumulated state.
class Arrangement {
 public:
  struct Layer {
    Epoch epoch = 0;
    std::vector<Delta> deltas;
  };

  /// With `auto_compact`, seal() merges the log whenever it grows past twice
  /// the live state.
  explicit Arrangement(bool auto_compact = true) : auto_compact_(auto_compact) {}

  void update(const Key& index, const Key& id, const Row& row, Diff diff);
  void update(const Key& key, const Row& row, Diff diff) { update(key, key, row, diff); }

  /// Closes the open layer as `epoch`'s deltas.
  void seal(Epoch epoch);

  std::span<const Record> find(const Key& index) const;

  /// The single live row under `index`, or nullptr when there is none.
  /// Throws Error if the index holds more than one row or a multiplicity
  /// other than one (the keyed-map invariant is broken).
  const Row* unique(const Key& index) const;

  std::size_t size() const { return records_; }
  std::size_t index_count() const { return index_.size(); }
  bool empty() const { return records_ == 0; }

  const std::vector<Layer>& log() const { return log_; }
  std::size_t log_size() const { return log_size_; }
  Epoch watermark() const { return watermark_; }
  bool has_watermark() const { return compacted_; }

  /// Merges all sealed layers with epoch <= watermark into one layer.
  void compact_to(Epoch watermark);

  /// Consolidated deltas of all sealed layers with epoch <= `epoch`, in
  /// (index, id, row) order. Reconstructs the state as of `epoch` for any
  /// epoch at or above the watermark.
  std::vector<Delta> accumulated_at(Epoch epoch) const;

  /// Current state as consolidated deltas, in the same order.
  std::vector<Delta> snapshot() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [index, records] : index_) {
      for (const auto& r : records) fn(index, r);
    }
  }

 private:
  bool auto_compact_;
  std::unordered_map<Key, std::vector<Record>, KeyHasher> index_;
  std::size_t records_ = 0;
  std::vector<Delta> open_;
  std::vector<Layer> log_;
  std::size_t log_size_ = 0;
  Epoch watermark_ = 0;
  bool compacted_ = false;
};

/// Value-semantics form of Arrangement::compact_to.
Arrangement compact(Arrangement arrangement, Epoch watermark);

void consolidate_deltas(std::vector<Delta>& deltas);

}  // namespace deltaflow
