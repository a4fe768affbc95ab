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

#ifndef MORALKIT_DATASET_HPP_
#define MORALKIT_DATASET_HPP_

#include <string>
#include <vector>

#include "moralkit/textproc.hpp"

namespace moralkit {

// Loads labeled documents and normalizes them. Two layouts are supported,
// chosen by extension: .jsonl/.ndjson with one {"id", "text", "labels"}
// object per line, or .csv with an id,text,labels header where the labels
// field holds a comma-joined list. Labels come from the six classification
// labels; unknown labels and non-moral mixed with a trait are errors.
std::vector<Document> load_documents(const std::string& path);

std::vector<Document> load_documents_jsonl(const std::string& path);
std::vector<Document> load_documents_csv(const std::string& path);

}  // namespace moralkit

#endif  // MORALKIT_DATASET_HPP_
