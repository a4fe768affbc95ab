// Copyright 2026 The Moralkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "moralkit/dataset.hpp"

#include <filesystem>

#include <json.hpp>

#include "moralkit/csv.hpp"
#include "moralkit/error.hpp"
#include "moralkit/util.hpp"

namespace moralkit {

namespace {

std::set<MoralTrait> parse_labels(const std::vector<std::string>& raw,
                                  const std::string& context) {
  std::set<MoralTrait> labels;
  for (const auto& item : raw) {
    const std::string t = trim(item);
    if (t.empty()) continue;
    try {
      labels.insert(parse_trait(t));
    } catch (const ParseError& e) {
      throw ParseError(context + ": " + e.what());
    }
  }
  return labels;
}

Document build_doc(std::string id, std::string_view text,
                   std::set<MoralTrait> labels, const std::string& context) {
  try {
    return make_document(std::move(id), text, std::move(labels));
  } catch (const ValidationError& e) {
    throw ValidationError(context + ": " + e.what());
  }
}

}  // namespace

std::vector<Document> load_documents_jsonl(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<Document> docs;
  int line_no = 0;
  for (const auto& line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string ctx = path + ":" + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(ctx + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("text")) {
      throw ParseError(ctx + ": expected an object with id and text");
    }
    std::string id = j["id"].is_string()
                         ? j["id"].get<std::string>()
                         : j["id"].dump();
    if (!j["text"].is_string()) throw ParseError(ctx + ": text must be a string");
    std::vector<std::string> raw_labels;
    if (j.contains("labels")) {
      const auto& l = j["labels"];
      if (l.is_array()) {
        for (const auto& item : l) {
          if (!item.is_string()) {
            throw ParseError(ctx + ": labels must be strings");
          }
          raw_labels.push_back(item.get<std::string>());
        }
      } else if (l.is_string()) {
        raw_labels = split(l.get<std::string>(), ',');
      } else {
        throw ParseError(ctx + ": labels must be an array or a string");
      }
    }
    docs.push_back(build_doc(std::move(id), j["text"].get<std::string>(),
                             parse_labels(raw_labels, ctx), ctx));
  }
  return docs;
}

std::vector<Document> load_documents_csv(const std::string& path) {
  auto rows = read_csv(path);
  if (rows.empty()) throw ParseError(path + ": empty dataset");
  if (rows.front() != std::vector<std::string>{"id", "text", "labels"}) {
    throw ParseError(path + ": bad header, expected id,text,labels");
  }
  std::vector<Document> docs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::string ctx = path + ": row " + std::to_string(r + 1);
    const auto& f = rows[r];
    if (f.size() != 3) {
      throw ParseError(ctx + ": expected 3 fields, found " +
                       std::to_string(f.size()));
    }
    docs.push_back(build_doc(f[0], f[1], parse_labels(split(f[2], ','), ctx),
                             ctx));
  }
  return docs;
}

std::vector<Document> load_documents(const std::string& path) {
  const std::string ext =
      to_lower_ascii(std::filesystem::path(path).extension().string());
  if (ext == ".jsonl" || ext == ".ndjson") return load_documents_jsonl(path);
  if (ext == ".csv") return load_documents_csv(path);
  throw ConfigError("dataset must be .jsonl, .ndjson, or .csv: " + path);
}

}  // namespace moralkit
