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

#include "deltaflow/bench/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "deltaflow/bench/pipelines.hpp"
#include "deltaflow/connectors/jsonl.hpp"
#include "deltaflow/core/errors.hpp"

namespace deltaflow::bench {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw Error("uniform_below: empty range");
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

namespace {

// 26^len, saturating.
std::uint64_t word_capacity(std::size_t word_len) {
  std::uint64_t cap = 1;
  for (std::size_t i = 0; i < word_len; ++i) {
    if (cap > UINT64_MAX / 26) return UINT64_MAX;
    cap *= 26;
  }
  return cap;
}

std::string word_from_index(std::uint64_t index, std::size_t word_len) {
  std::string w(word_len, 'a');
  for (std::size_t i = word_len; i-- > 0;) {
    w[i] = static_cast<char>('a' + index % 26);
    index /= 26;
  }
  return w;
}

}  // namespace

std::vector<std::string> make_dictionary(std::size_t dict_size, std::size_t word_len, std::uint64_t seed) {
  if (dict_size == 0) throw Error("dict_size must be at least 1");
  if (word_len == 0) throw Error("word_len must be at least 1");
  const std::uint64_t capacity = word_capacity(word_len);
  if (dict_size > capacity) {
    throw Error("dict_size " + std::to_string(dict_size) + " exceeds the " + std::to_string(capacity) +
                " distinct words of length " + std::to_string(word_len));
  }
  std::mt19937_64 rng(seed);
  std::vector<std::string> dict;
  dict.reserve(dict_size);
  if (dict_size * 2 > capacity) {
    std::vector<std::uint64_t> all(capacity);
    for (std::uint64_t i = 0; i < capacity; ++i) all[i] = i;
    for (std::size_t i = 0; i < dict_size; ++i) {
      std::swap(all[i], all[i + uniform_below(rng, capacity - i)]);
      dict.push_back(word_from_index(all[i], word_len));
    }
    return dict;
  }
  std::unordered_set<std::string> seen;
  while (dict.size() < dict_size) {
    std::string w(word_len, 'a');
    for (auto& c : w) c = static_cast<char>('a' + uniform_below(rng, 26));
    if (seen.insert(w).second) dict.push_back(std::move(w));
  }
  return dict;
}

std::vector<std::string> gen_words(std::size_t n, std::size_t dict_size, std::size_t word_len,
                                   std::uint64_t seed) {
  auto dict = make_dictionary(dict_size, word_len, seed);
  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  std::vector<std::string> words;
  words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) words.push_back(dict[uniform_below(rng, dict.size())]);
  return words;
}

void write_words_jsonl(const std::vector<std::string>& words, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  for (const auto& w : words) out << nlohmann::json{{"word", w}}.dump() << '\n';
  if (!out) throw Error("write failed: " + path);
}

std::vector<std::string> read_words_jsonl(const std::string& path) {
  connectors::JsonlReader reader(path, words_schema());
  std::vector<std::string> words;
  while (auto r = reader.next()) {
    if (r->kind != connectors::StreamRecord::Kind::Insert) {
      throw Error(path + ": word datasets hold inserts only");
    }
    words.push_back(r->values[0].as_string());
  }
  return words;
}

namespace {

class Zipf {
 public:
  Zipf(std::size_t n, double exponent) : cdf_(n) {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      total += 1.0 / std::pow(static_cast<double>(i + 1), exponent);
      cdf_[i] = total;
    }
  }
  std::size_t operator()(std::mt19937_64& rng) const {
    double x = uniform01(rng) * cdf_.back();
    auto i = static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), x) - cdf_.begin());
    return std::min(i, cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

std::vector<std::size_t> shuffled_ids(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[uniform_below(rng, i)]);
  return p;
}

std::vector<Edge> random_order_edges(const PowerLawSpec& spec, std::size_t n, std::mt19937_64& rng) {
  if (spec.num_edges > n * (n - 1)) throw Error("more edges requested than vertex pairs");
  Zipf zipf(n, spec.exponent);
  const auto out_rank = shuffled_ids(n, rng);
  const auto in_rank = shuffled_ids(n, rng);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> edges;
  edges.reserve(spec.num_edges);
  std::uint64_t attempts = 0;
  while (edges.size() < spec.num_edges) {
    if (++attempts > 100 * static_cast<std::uint64_t>(spec.num_edges) + 1000) {
      throw Error("power-law generator: too many rejected edges; lower num_edges or the exponent");
    }
    std::size_t u = out_rank[zipf(rng)];
    std::size_t v = in_rank[zipf(rng)];
    if (u == v || !seen.insert(static_cast<std::uint64_t>(u) * n + v).second) continue;
    edges.push_back(Edge{std::to_string(u), std::to_string(v)});
  }
  return edges;
}

std::vector<Edge> by_source_edges(const PowerLawSpec& spec, std::size_t n, std::mt19937_64& rng) {
  if (spec.mean_out_degree < 1) throw Error("mean out-degree must be at least 1");
  if (spec.locality < 0 || spec.locality > 1) throw Error("locality must be in [0, 1]");
  Zipf zipf(n, spec.exponent);
  const auto popularity = shuffled_ids(n, rng);
  const double scale = spec.mean_out_degree / 2.0;  // Pareto shape 2 has mean 2 * scale
  const std::size_t max_degree = std::min<std::size_t>(n - 1, 5000);

  std::vector<Edge> edges;
  edges.reserve(spec.num_edges);
  for (std::size_t s = 0; s < n && edges.size() < spec.num_edges; ++s) {
    double u = 1.0 - uniform01(rng);  // (0, 1]
    auto degree = static_cast<std::size_t>(std::ceil(scale / std::sqrt(u)));
    degree = std::clamp<std::size_t>(degree, 1, max_degree);
    std::vector<std::size_t> targets;
    std::unordered_set<std::size_t> chosen;
    std::uint64_t attempts = 0;
    while (targets.size() < degree && ++attempts < 100 * degree) {
      std::size_t t;
      if (uniform01(rng) < spec.locality) {
        // Geometric offset with mean 20 on either side.
        auto offset = static_cast<std::size_t>(std::floor(std::log(1.0 - uniform01(rng)) / std::log(20.0 / 21.0))) + 1;
        bool down = uniform01(rng) < 0.5 && offset <= s;
        t = down ? s - offset : s + offset;
        if (t >= n) continue;
      } else {
        t = popularity[zipf(rng)];
      }
      if (t == s || !chosen.insert(t).second) continue;
      targets.push_back(t);
    }
    std::sort(targets.begin(), targets.end());
    for (std::size_t t : targets) {
      if (edges.size() == spec.num_edges) break;
      edges.push_back(Edge{std::to_string(s), std::to_string(t)});
    }
  }
  if (edges.size() < spec.num_edges) throw Error("power-law generator: vertex space exhausted; raise num_vertices");
  return edges;
}

}  // namespace

std::vector<Edge> gen_powerlaw_edges(const PowerLawSpec& spec) {
  std::size_t n = spec.num_vertices;
  if (n == 0) n = spec.order == EdgeOrder::BySource ? 4 * spec.num_edges : spec.num_edges / 4;
  n = std::max<std::size_t>(n, 2);
  std::mt19937_64 rng(spec.seed);
  return spec.order == EdgeOrder::BySource ? by_source_edges(spec, n, rng) : random_order_edges(spec, n, rng);
}

std::vector<Edge> load_edges(const std::string& path, std::size_t limit) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<Edge> edges;
  std::string line;
  std::size_t number = 0;
  std::optional<bool> json;
  while (std::getline(in, line) && (limit == 0 || edges.size() < limit)) {
    ++number;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!json) json = line[first] == '{';
    if (*json) {
      auto record = connectors::parse_jsonl_record(line, edges_schema(), number);
      if (record.kind != connectors::StreamRecord::Kind::Insert) continue;
      edges.push_back(Edge{record.values[0].as_string(), record.values[1].as_string()});
    } else {
      std::istringstream fields(line);
      Edge e;
      std::string extra;
      if (!(fields >> e.u >> e.v) || (fields >> extra)) {
        throw ParseError(number, "malformed edge line '" + line + "'");
      }
      edges.push_back(std::move(e));
    }
  }
  return edges;
}

void write_edges_jsonl(const std::vector<Edge>& edges, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  for (const auto& e : edges) out << nlohmann::json{{"u", e.u}, {"v", e.v}}.dump() << '\n';
  if (!out) throw Error("write failed: " + path);
}

std::size_t backfill_count(std::size_t num_edges, double fraction) {
  if (!(fraction >= 0 && fraction <= 1)) throw Error("backfill fraction must be in [0, 1]");
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(num_edges)));
}

std::vector<connectors::StreamRecord> gen_edge_stream(const std::vector<Edge>& edges, std::size_t batch_size,
                                                      double backfill_fraction) {
  using connectors::StreamRecord;
  if (batch_size == 0) throw Error("batch size must be positive");
  const std::size_t prefix = backfill_count(edges.size(), backfill_fraction);
  std::vector<StreamRecord> out;
  out.reserve(edges.size() + edges.size() / batch_size + 2);
  for (std::size_t i = 0; i < prefix; ++i) out.push_back(StreamRecord::insert({edges[i].u, edges[i].v}));
  if (prefix > 0) out.push_back(StreamRecord::commit());
  std::size_t window = 0;
  for (std::size_t i = prefix; i < edges.size(); ++i) {
    out.push_back(StreamRecord::insert({edges[i].u, edges[i].v}));
    if (++window == batch_size) {
      out.push_back(StreamRecord::commit());
      window = 0;
    }
  }
  if (window > 0) out.push_back(StreamRecord::commit());
  return out;
}

void write_edge_stream(const std::string& edge_file, std::size_t batch_size, double backfill_fraction,
                       const std::string& out_path) {
  auto records = gen_edge_stream(load_edges(edge_file), batch_size, backfill_fraction);
  std::ofstream out(out_path);
  if (!out) throw Error("cannot open " + out_path + " for writing");
  const Schema schema = edges_schema();
  for (const auto& r : records) out << connectors::format_jsonl_record(r, schema) << '\n';
  if (!out) throw Error("write failed: " + out_path);
}

}  // namespace deltaflow::bench
