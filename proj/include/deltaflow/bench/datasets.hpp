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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "deltaflow/connectors/stream_record.hpp"

namespace deltaflow::bench {

/// Uniform double in [0, 1) from the top 53 bits of one draw. Used instead of
/// std::uniform_real_distribution so datasets are identical across standard
/// libraries.
double uniform01(std::mt19937_64& rng);
/// Uniform integer in [0, n).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

/// `dict_size` distinct lowercase words of `word_len` letters.
std::vector<std::string> make_dictionary(std::size_t dict_size, std::size_t word_len, std::uint64_t seed);

/// `n` words drawn uniformly from make_dictionary(dict_size, word_len, seed).
std::vector<std::string> gen_words(std::size_t n, std::size_t dict_size, std::size_t word_len,
                                   std::uint64_t seed);

/// One {"word": ...} object per line.
void write_words_jsonl(const std::vector<std::string>& words, const std::string& path);
std::vector<std::string> read_words_jsonl(const std::string& path);

struct Edge {
  std::string u;
  std::string v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class EdgeOrder {
  /// Adjacency-list order of a SNAP dump: sources ascending, each source's
  /// targets ascending. A prefix of such a file is what the desk-scale
  /// scenarios read from LiveJournal.
  BySource,
  /// Edges of a fixed vertex set in random arrival order.
  Random,
};

struct PowerLawSpec {
  std::size_t num_edges = 20000;
  /// 0 picks 4 * num_edges for BySource and num_edges / 4 for Random.
  std::size_t num_vertices = 0;
  /// Zipf exponent of target popularity (and source activity for Random).
  double exponent = 1.0;
  std::uint64_t seed = 1;
  EdgeOrder order = EdgeOrder::BySource;
  /// BySource: mean out-degree (Pareto, shape 2) and the share of targets
  /// drawn near the source id, as in a crawl-numbered social graph.
  double mean_out_degree = 14.0;
  double locality = 0.5;
};

/// Seeded directed power-law graph without self-loops or repeated edges.
/// Vertex labels are decimal ids.
std::vector<Edge> gen_powerlaw_edges(const PowerLawSpec& spec);

/// Reads {"u":...,"v":...} JSONL, or a whitespace-separated SNAP edge list
/// ("#" comments) when the first data line is not JSON. `limit` 0 reads all.
std::vector<Edge> load_edges(const std::string& path, std::size_t limit = 0);
void write_edges_jsonl(const std::vector<Edge>& edges, const std::string& path);

/// floor(fraction * E).
std::size_t backfill_count(std::size_t num_edges, double fraction);

/// Insert records for `edges`: the first backfill_count edges, a COMMIT,
/// then a COMMIT after every `batch_size` further edges (last window may be
/// shorter). Fraction 0 emits no leading commit.
std::vector<connectors::StreamRecord> gen_edge_stream(const std::vector<Edge>& edges, std::size_t batch_size,
                                                      double backfill_fraction);
/// File form of gen_edge_stream with explicit commit lines.
void write_edge_stream(const std::string& edge_file, std::size_t batch_size, double backfill_fraction,
                       const std::string& out_path);

}  // namespace deltaflow::bench
