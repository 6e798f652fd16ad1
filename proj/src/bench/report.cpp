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

#include "deltaflow/bench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "deltaflow/core/errors.hpp"

namespace deltaflow::bench {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const ordered_json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

ordered_json config_json(const BenchConfig& c) {
  ordered_json j;
  j["scenario"] = scenario_name(c.scenario);
  j["workers"] = c.workers;
  j["commit_every_records"] = optional_json(c.commit_every_records);
  j["commit_every_ms"] = optional_json(c.commit_every_ms);
  j["seed"] = c.seed;
  j["dataset"] = c.dataset;
  j["batch_size"] = c.batch_size;
  j["backfill_fraction"] = c.backfill_fraction;
  j["repeat"] = c.repeat;
  j["out_dir"] = c.out_dir;
  j["verify"] = c.verify;
  j["num_words"] = c.num_words;
  j["dict_size"] = c.dict_size;
  j["word_len"] = c.word_len;
  j["rate"] = c.rate;
  j["burn_in_ms"] = c.burn_in_ms;
  j["burn_in_start"] = c.burn_in_start;
  j["simulated_clock"] = c.simulated_clock;
  j["num_edges"] = c.num_edges;
  j["num_vertices"] = c.num_vertices;
  j["edge_order"] = c.edge_order == EdgeOrder::BySource ? "by-source" : "random";
  j["steps"] = c.steps;
  return j;
}

BenchConfig config_of(const ordered_json& j) {
  BenchConfig c;
  auto scenario = parse_scenario(j.at("scenario").get<std::string>());
  if (!scenario) throw Error("unknown scenario " + j.at("scenario").dump());
  c.scenario = *scenario;
  c.workers = j.at("workers").get<std::size_t>();
  c.commit_every_records = optional_from<std::uint64_t>(j, "commit_every_records");
  c.commit_every_ms = optional_from<std::int64_t>(j, "commit_every_ms");
  c.seed = j.at("seed").get<std::uint64_t>();
  c.dataset = j.at("dataset").get<std::string>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.backfill_fraction = j.at("backfill_fraction").get<double>();
  c.repeat = j.at("repeat").get<int>();
  c.out_dir = j.at("out_dir").get<std::string>();
  c.verify = j.at("verify").get<bool>();
  c.num_words = j.at("num_words").get<std::size_t>();
  c.dict_size = j.at("dict_size").get<std::size_t>();
  c.word_len = j.at("word_len").get<std::size_t>();
  c.rate = j.at("rate").get<double>();
  c.burn_in_ms = j.at("burn_in_ms").get<std::int64_t>();
  c.burn_in_start = j.at("burn_in_start").get<double>();
  c.simulated_clock = j.at("simulated_clock").get<bool>();
  c.num_edges = j.at("num_edges").get<std::size_t>();
  c.num_vertices = j.at("num_vertices").get<std::size_t>();
  c.edge_order = j.at("edge_order").get<std::string>() == "random" ? EdgeOrder::Random : EdgeOrder::BySource;
  c.steps = j.at("steps").get<int>();
  return c;
}

ordered_json percentiles_json(const std::optional<Percentiles>& p) {
  if (!p) return nullptr;
  return ordered_json{{"p80", p->p80}, {"p90", p->p90}, {"p95", p->p95}, {"p99", p->p99}};
}

std::optional<Percentiles> percentiles_of(const ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return Percentiles{j.at("p80").get<double>(), j.at("p90").get<double>(), j.at("p95").get<double>(),
                     j.at("p99").get<double>()};
}

std::optional<Percentiles> median_percentiles(const std::vector<RunSummary>& runs) {
  std::vector<double> p80, p90, p95, p99;
  for (const auto& r : runs) {
    if (!r.latency) continue;
    p80.push_back(r.latency->p80);
    p90.push_back(r.latency->p90);
    p95.push_back(r.latency->p95);
    p99.push_back(r.latency->p99);
  }
  if (p80.empty()) return std::nullopt;
  return Percentiles{median(p80), median(p90), median(p95), median(p99)};
}

bool has_latency(const BenchConfig& c) { return c.scenario == Scenario::Wordcount; }

std::string fixed(double v, int digits = 1) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::string config_to_json(const BenchConfig& config) { return config_json(config).dump(2); }

BenchConfig config_from_json(const std::string& text) {
  try {
    return config_of(ordered_json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bench config: ") + e.what());
  }
}

std::string report_to_json(const BenchReport& report) {
  ordered_json j;
  j["config"] = config_json(report.config);
  j["runs"] = ordered_json::array();
  std::vector<double> runtimes, throughputs;
  for (const auto& r : report.runs) {
    ordered_json run;
    run["runtime_ms"] = r.runtime_ms;
    run["throughput"] = r.throughput;
    run["epochs"] = r.epochs;
    run["output_updates"] = r.output_updates;
    if (has_latency(report.config)) {
      run["latency_ms"] = percentiles_json(r.latency);
      run["matched"] = r.matched;
      run["unmatched"] = r.unmatched;
      run["burn_in"] = r.burn_in;
    }
    j["runs"].push_back(std::move(run));
    runtimes.push_back(r.runtime_ms);
    throughputs.push_back(r.throughput);
  }
  ordered_json med;
  med["runtime_ms"] = median(runtimes);
  med["throughput"] = median(throughputs);
  if (has_latency(report.config)) {
    auto p = median_percentiles(report.runs);
    med["latency_ms"] = percentiles_json(p);
    if (!p) med["note"] = "no measurable events";
  }
  j["median"] = std::move(med);
  j["verified"] = optional_json(report.verified);
  j["notes"] = report.notes;
  return j.dump(2);
}

BenchReport report_from_json(const std::string& text) {
  try {
    auto j = ordered_json::parse(text);
    BenchReport report;
    report.config = config_of(j.at("config"));
    for (const auto& run : j.at("runs")) {
      RunSummary r;
      r.runtime_ms = run.at("runtime_ms").get<double>();
      r.throughput = run.at("throughput").get<double>();
      r.epochs = run.at("epochs").get<std::uint64_t>();
      r.output_updates = run.at("output_updates").get<std::uint64_t>();
      if (run.contains("latency_ms")) {
        r.latency = percentiles_of(run.at("latency_ms"));
        r.matched = run.at("matched").get<std::uint64_t>();
        r.unmatched = run.at("unmatched").get<std::uint64_t>();
        r.burn_in = run.at("burn_in").get<std::uint64_t>();
      }
      report.runs.push_back(r);
    }
    report.verified = optional_from<bool>(j, "verified");
    report.notes = j.at("notes").get<std::vector<std::string>>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bench report: ") + e.what());
  }
}

std::string report_to_text(const BenchReport& report) {
  const auto& c = report.config;
  std::ostringstream out;
  out << "scenario   " << scenario_name(c.scenario) << "\n";
  out << "workers    " << c.workers << "\n";
  out << "seed       " << c.seed << "\n";
  out << "runs       " << report.runs.size() << "\n\n";

  std::vector<double> runtimes, throughputs;
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const auto& r = report.runs[i];
    out << "run " << i + 1 << ": runtime " << fixed(r.runtime_ms) << " ms, throughput " << fixed(r.throughput)
        << "/s, epochs " << r.epochs << ", output updates " << r.output_updates;
    if (has_latency(c)) {
      if (r.latency) {
        out << ", latency p80/p90/p95/p99 " << fixed(r.latency->p80) << "/" << fixed(r.latency->p90) << "/"
            << fixed(r.latency->p95) << "/" << fixed(r.latency->p99) << " ms";
      } else {
        out << ", no measurable events";
      }
      out << " (matched " << r.matched << ", unmatched " << r.unmatched << ", burn-in " << r.burn_in << ")";
    }
    out << "\n";
    runtimes.push_back(r.runtime_ms);
    throughputs.push_back(r.throughput);
  }
  out << "\nmedian runtime     " << fixed(median(runtimes)) << " ms\n";
  out << "median throughput  " << fixed(median(throughputs)) << "/s\n";
  if (has_latency(c)) {
    if (auto p = median_percentiles(report.runs)) {
      out << "median latency     p80 " << fixed(p->p80) << "  p90 " << fixed(p->p90) << "  p95 " << fixed(p->p95)
          << "  p99 " << fixed(p->p99) << " ms\n";
    } else {
      out << "median latency     no measurable events\n";
    }
  }
  if (report.verified) out << "verify             " << (*report.verified ? "OK" : "MISMATCH") << "\n";
  for (const auto& note : report.notes) out << "note: " << note << "\n";
  return out.str();
}

}  // namespace deltaflow::bench
