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

#include "deltaflow/connectors/jsonl.hpp"

#include <nlohmann/json.hpp>

#include "deltaflow/core/errors.hpp"

namespace deltaflow::connectors {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Value value_from_json(const json& j, const Column& column, std::size_t line) {
  auto fail = [&](std::string_view expected) -> Value {
    throw ParseError(line, "column '" + column.name + "': expected " + std::string(expected) +
                               ", got " + j.dump());
  };
  switch (column.type) {
    case Type::Int:
      if (!j.is_number_integer()) return fail("int");
      return Value(j.get<std::int64_t>());
    case Type::Float:
      if (!j.is_number()) return fail("float");
      return Value(j.get<double>());
    case Type::String:
      if (!j.is_string()) return fail("string");
      return Value(j.get<std::string>());
    case Type::Bool:
      if (!j.is_boolean()) return fail("bool");
      return Value(j.get<bool>());
    case Type::Key:
      if (!j.is_string()) return fail("key hex string");
      try {
        return Value(Key::from_hex(j.get<std::string>()));
      } catch (const Error& e) {
        throw ParseError(line, "column '" + column.name + "': " + e.what());
      }
    case Type::None:
      if (!j.is_null()) return fail("null");
      return Value(None{});
  }
  return fail("value");
}

ordered_json value_to_json(const Value& v) {
  switch (v.type()) {
    case Type::Int: return v.as_int();
    case Type::Float: return v.as_float();
    case Type::String: return v.as_string();
    case Type::Bool: return v.as_bool();
    case Type::Key: return v.as_key().hex();
    case Type::None: return nullptr;
  }
  return nullptr;
}

Row row_from_object(const json& object, const Schema& schema, std::size_t line) {
  Row row;
  row.reserve(schema.size());
  for (const auto& column : schema.columns()) {
    auto it = object.find(column.name);
    if (it == object.end()) throw ParseError(line, "missing column '" + column.name + "'");
    row.push_back(value_from_json(*it, column, line));
  }
  for (const auto& [name, _] : object.items()) {
    if (!name.empty() && name[0] == '_') continue;
    if (!schema.index_of(name)) throw ParseError(line, "unknown column '" + name + "'");
  }
  return row;
}

ordered_json row_to_object(const Row& row, const Schema& schema) {
  ordered_json data = ordered_json::object();
  for (std::size_t i = 0; i < schema.size(); ++i) data[schema[i].name] = value_to_json(row[i]);
  return data;
}

}  // namespace

StreamRecord parse_jsonl_record(std::string_view text, const Schema& schema, std::size_t line) {
  json object;
  try {
    object = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line, std::string("malformed JSON: ") + e.what());
  }
  if (!object.is_object()) throw ParseError(line, "expected a JSON object");

  auto action = object.find("_action");
  if (action == object.end()) return StreamRecord::insert(row_from_object(object, schema, line));
  if (!action->is_string()) throw ParseError(line, "_action must be a string");
  const auto& name = action->get_ref<const std::string&>();
  if (name == "commit") return StreamRecord::commit();
  if (name == "delete") return StreamRecord::erase(row_from_object(object, schema, line));
  if (name == "insert") return StreamRecord::insert(row_from_object(object, schema, line));
  throw ParseError(line, "unknown _action '" + name + "'");
}

std::string format_jsonl_record(const StreamRecord& record, const Schema& schema) {
  if (record.kind == StreamRecord::Kind::Commit) return R"({"_action":"commit"})";
  ordered_json out = row_to_object(record.values, schema);
  if (record.kind == StreamRecord::Kind::Delete) out["_action"] = "delete";
  return out.dump();
}

JsonlReader::JsonlReader(const std::string& path, Schema schema)
    : in_(path), schema_(std::move(schema)) {
  if (!in_) throw Error("cannot open " + path);
}

std::optional<StreamRecord> JsonlReader::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    return parse_jsonl_record(text, schema_, line_);
  }
  if (in_.bad()) throw Error("read error at line " + std::to_string(line_));
  return std::nullopt;
}

std::unique_ptr<RecordSource> read_jsonl(const std::string& path, const Schema& schema,
                                         CommitPolicy policy) {
  return std::make_unique<CommittingSource>(std::make_unique<JsonlReader>(path, schema), policy);
}

std::string format_update_line(const Update& update, const Schema& schema, std::int64_t time_ms) {
  ordered_json line;
  line["epoch"] = update.epoch;
  line["diff"] = update.diff;
  line["key"] = update.key.hex();
  line["data"] = row_to_object(update.row, schema);
  line["time_ms"] = time_ms;
  return line.dump();
}

JsonlUpdateWriter::JsonlUpdateWriter(const std::string& path) : path_(path), out_(path) {
  if (!out_) throw Error("cannot open " + path + " for writing");
}

void JsonlUpdateWriter::write(const OperatorNode& sink, Epoch, std::int64_t time_ms,
                              std::span<const Update> updates) {
  for (const auto& u : updates) out_ << format_update_line(u, sink.schema, time_ms) << '\n';
  if (!out_) throw Error("write failed: " + path_);
}

void JsonlUpdateWriter::finish() {
  out_.flush();
  if (!out_) throw Error("write failed: " + path_);
}

void write_jsonl_updates(const std::vector<Update>& updates, const Schema& schema,
                         const std::string& path, std::int64_t time_ms) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  for (const auto& u : updates) out << format_update_line(u, schema, time_ms) << '\n';
  if (!out) throw Error("write failed: " + path);
}

std::vector<LoggedUpdate> read_jsonl_updates(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<LoggedUpdate> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    json j;
    try {
      j = json::parse(text);
      LoggedUpdate logged;
      logged.update.epoch = j.at("epoch").get<Epoch>();
      logged.update.diff = j.at("diff").get<Diff>();
      logged.update.key = Key::from_hex(j.at("key").get<std::string>());
      logged.update.row = row_from_object(j.at("data"), schema, line);
      logged.time_ms = j.at("time_ms").get<std::int64_t>();
      out.push_back(std::move(logged));
    } catch (const json::exception& e) {
      throw ParseError(line, e.what());
    }
  }
  return out;
}

}  // namespace deltaflow::connectors
