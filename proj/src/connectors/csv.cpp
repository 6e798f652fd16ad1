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

#include "deltaflow/connectors/csv.hpp"

#include <charconv>
#include <cstdlib>

#include "deltaflow/core/errors.hpp"

namespace deltaflow::connectors {

namespace {

Value parse_field(const std::string& text, const Column& column, std::size_t line) {
  auto fail = [&](std::string_view expected) -> Value {
    throw ParseError(line, "column '" + column.name + "': expected " + std::string(expected) +
                               ", got '" + text + "'");
  };
  switch (column.type) {
    case Type::Int: {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size()) return fail("int");
      return Value(v);
    }
    case Type::Float: {
      if (text.empty()) return fail("float");
      char* end = nullptr;
      double v = std::strtod(text.c_str(), &end);
      if (end != text.c_str() + text.size()) return fail("float");
      return Value(v);
    }
    case Type::String: return Value(text);
    case Type::Bool:
      if (text == "true") return Value(true);
      if (text == "false") return Value(false);
      return fail("true or false");
    case Type::Key:
      try {
        return Value(Key::from_hex(text));
      } catch (const Error&) {
        return fail("key hex");
      }
    case Type::None:
      if (!text.empty()) return fail("empty field");
      return Value(None{});
  }
  return fail("value");
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_number) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c != '"') {
        field += c;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '"') {
      if (!field.empty() || was_quoted) throw ParseError(line_number, "stray quote in field");
      quoted = was_quoted = true;
    } else {
      if (was_quoted) throw ParseError(line_number, "text after closing quote");
      field += c;
    }
  }
  if (quoted) throw ParseError(line_number, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

CsvReader::CsvReader(const std::string& path, Schema schema) : in_(path), schema_(std::move(schema)) {
  if (!in_) throw Error("cannot open " + path);
  std::string header;
  if (!std::getline(in_, header)) throw ParseError(1, "missing header row");
  line_ = 1;
  std::vector<bool> seen(schema_.size(), false);
  auto names = split_csv_line(header, line_);
  for (std::size_t f = 0; f < names.size(); ++f) {
    if (names[f] == "_action") {
      action_field_ = f;
      field_to_column_.emplace_back(std::nullopt);
      continue;
    }
    auto index = schema_.index_of(names[f]);
    if (!index) throw ParseError(line_, "unknown column '" + names[f] + "'");
    if (seen[*index]) throw ParseError(line_, "duplicate column '" + names[f] + "'");
    seen[*index] = true;
    field_to_column_.push_back(index);
  }
  for (std::size_t c = 0; c < schema_.size(); ++c) {
    if (!seen[c]) throw ParseError(line_, "missing column '" + schema_[c].name + "'");
  }
}

std::optional<StreamRecord> CsvReader::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (text.empty() || text == "\r") continue;
    auto fields = split_csv_line(text, line_);
    if (fields.size() != field_to_column_.size()) {
      throw ParseError(line_, "expected " + std::to_string(field_to_column_.size()) + " fields, got " +
                                  std::to_string(fields.size()));
    }
    auto kind = StreamRecord::Kind::Insert;
    if (action_field_) {
      const auto& action = fields[*action_field_];
      if (action == "commit") return StreamRecord::commit();
      if (action == "delete") {
        kind = StreamRecord::Kind::Delete;
      } else if (!action.empty() && action != "insert") {
        throw ParseError(line_, "unknown _action '" + action + "'");
      }
    }
    Row row(schema_.size());
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (auto c = field_to_column_[f]) row[*c] = parse_field(fields[f], schema_[*c], line_);
    }
    return StreamRecord{kind, std::move(row)};
  }
  return std::nullopt;
}

}  // namespace deltaflow::connectors
