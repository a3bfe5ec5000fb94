/*
 * Copyright 2026 The kge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "kge/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <unordered_map>

namespace kge {
namespace {

constexpr uint64_t kMaxEntities = 1ULL << 24;
constexpr uint64_t kMaxRelations = 1ULL << 16;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Reads all lines, stripping the trailing LF (and a stray CR if present).
// Skips a final empty line so trailing newlines are harmless.
std::vector<std::string> read_lines(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  require(in.good(), Err::MissingFile, "cannot open " + file.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string> load_dictionary(const std::filesystem::path& file,
                                         uint64_t max_size) {
  auto lines = read_lines(file);
  require(lines.size() < max_size, Err::MalformedLine,
          file.string() + ": vocabulary too large");
  std::vector<std::string> names(lines.size());
  std::vector<bool> seen(lines.size(), false);
  for (size_t i = 0; i < lines.size(); ++i) {
    auto fields = split_fields(lines[i]);
    require(fields.size() == 2, Err::MalformedLine,
            file.string() + ":" + std::to_string(i + 1) +
                ": expected id<TAB>name");
    size_t pos = 0;
    unsigned long id = 0;
    try {
      id = std::stoul(fields[0], &pos);
    } catch (const std::exception&) {
      fail(Err::MalformedLine, file.string() + ":" + std::to_string(i + 1) +
                                   ": bad id '" + fields[0] + "'");
    }
    require(pos == fields[0].size() && id < lines.size() && !seen[id],
            Err::MalformedLine,
            file.string() + ":" + std::to_string(i + 1) +
                ": ids must cover 0..N-1 exactly once");
    seen[id] = true;
    names[id] = fields[1];
  }
  std::unordered_map<std::string, size_t> uniq;
  for (size_t i = 0; i < names.size(); ++i) {
    require(uniq.emplace(names[i], i).second, Err::MalformedLine,
            file.string() + ": duplicate name '" + names[i] + "'");
  }
  return names;
}

std::vector<Triple> load_split(
    const std::filesystem::path& file,
    const std::unordered_map<std::string, EntityId>& entities,
    const std::unordered_map<std::string, RelationId>& relations) {
  auto lines = read_lines(file);
  std::vector<Triple> triples;
  triples.reserve(lines.size());
  std::unordered_set<uint64_t> seen;
  size_t dups = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    auto fields = split_fields(lines[i]);
    require(fields.size() == 3, Err::MalformedLine,
            file.string() + ":" + std::to_string(i + 1) +
                ": expected head<TAB>relation<TAB>tail");
    auto h = entities.find(fields[0]);
    require(h != entities.end(), Err::UnknownSymbol,
            file.string() + ":" + std::to_string(i + 1) + ": entity '" +
                fields[0] + "'");
    auto r = relations.find(fields[1]);
    require(r != relations.end(), Err::UnknownSymbol,
            file.string() + ":" + std::to_string(i + 1) + ": relation '" +
                fields[1] + "'");
    auto t = entities.find(fields[2]);
    require(t != entities.end(), Err::UnknownSymbol,
            file.string() + ":" + std::to_string(i + 1) + ": entity '" +
                fields[2] + "'");
    Triple triple{h->second, r->second, t->second};
    if (!seen.insert(triple_key(triple)).second) {
      ++dups;
      continue;
    }
    triples.push_back(triple);
  }
  if (dups > 0) {
    std::fprintf(stderr, "warning: %s: dropped %zu duplicate triple(s)\n",
                 file.string().c_str(), dups);
  }
  return triples;
}

template <typename Id>
std::unordered_map<std::string, Id> index_names(
    const std::vector<std::string>& names) {
  std::unordered_map<std::string, Id> map;
  map.reserve(names.size());
  for (size_t i = 0; i < names.size(); ++i) map.emplace(names[i], Id(i));
  return map;
}

}  // namespace

std::optional<RelationId> KnowledgeGraph::find_relation(
    std::string_view name) const {
  for (size_t i = 0; i < relation_names.size(); ++i)
    if (relation_names[i] == name) return RelationId(i);
  return std::nullopt;
}

std::optional<EntityId> KnowledgeGraph::find_entity(
    std::string_view name) const {
  for (size_t i = 0; i < entity_names.size(); ++i)
    if (entity_names[i] == name) return EntityId(i);
  return std::nullopt;
}

void KnowledgeGraph::rebuild_filter() {
  filter = FilterIndex{};
  for (const auto* split : {&train, &valid, &test})
    for (const Triple& t : *split) filter.insert(t);
}

KnowledgeGraph load_dataset(const std::filesystem::path& dir) {
  KnowledgeGraph g;
  g.entity_names = load_dictionary(dir / "entities.dict", kMaxEntities);
  g.relation_names = load_dictionary(dir / "relations.dict", kMaxRelations);
  auto entities = index_names<EntityId>(g.entity_names);
  auto relations = index_names<RelationId>(g.relation_names);
  g.train = load_split(dir / "train.txt", entities, relations);
  g.valid = load_split(dir / "valid.txt", entities, relations);
  g.test = load_split(dir / "test.txt", entities, relations);
  g.rebuild_filter();
  return g;
}

void save_dataset(const KnowledgeGraph& g, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::filesystem::path& path, auto&& emit) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), Err::IoError, "cannot write " + path.string());
    emit(out);
    out.flush();
    require(out.good(), Err::IoError, "write failed for " + path.string());
  };
  write(dir / "entities.dict", [&](std::ofstream& out) {
    for (size_t i = 0; i < g.entity_names.size(); ++i)
      out << i << '\t' << g.entity_names[i] << '\n';
  });
  write(dir / "relations.dict", [&](std::ofstream& out) {
    for (size_t i = 0; i < g.relation_names.size(); ++i)
      out << i << '\t' << g.relation_names[i] << '\n';
  });
  auto write_split = [&](const char* name, const std::vector<Triple>& split) {
    write(dir / name, [&](std::ofstream& out) {
      for (const Triple& t : split)
        out << g.entity_names[t.head] << '\t' << g.relation_names[t.relation]
            << '\t' << g.entity_names[t.tail] << '\n';
    });
  };
  write_split("train.txt", g.train);
  write_split("valid.txt", g.valid);
  write_split("test.txt", g.test);
}

const char* category_name(Category c) {
  switch (c) {
    case Category::OneToOne: return "1-to-1";
    case Category::OneToN: return "1-to-N";
    case Category::NToOne: return "N-to-1";
    default: return "N-to-N";
  }
}

RelationCategory classify_relation(double tph, double hpt) {
  Category cat;
  if (tph < 1.5 && hpt < 1.5)
    cat = Category::OneToOne;
  else if (tph >= 1.5 && hpt >= 1.5)
    cat = Category::NToN;
  else if (tph < 1.5)
    cat = Category::OneToN;
  else
    cat = Category::NToOne;
  return RelationCategory{cat, tph, hpt};
}

std::map<RelationId, RelationCategory> relation_categories(
    const KnowledgeGraph& g, Split split) {
  const auto& triples = g.split(split);
  require(!triples.empty(), Err::EmptySplit, "split has no triples");

  struct Stats {
    std::unordered_set<uint64_t> pairs;
    std::unordered_set<EntityId> heads;
    std::unordered_set<EntityId> tails;
  };
  std::unordered_map<RelationId, Stats> stats;
  for (const Triple& t : triples) {
    auto& s = stats[t.relation];
    s.pairs.insert((uint64_t(t.head) << 32) | t.tail);
    s.heads.insert(t.head);
    s.tails.insert(t.tail);
  }
  std::map<RelationId, RelationCategory> out;
  for (const auto& [r, s] : stats) {
    double tph = double(s.pairs.size()) / double(s.heads.size());
    double hpt = double(s.pairs.size()) / double(s.tails.size());
    out.emplace(r, classify_relation(tph, hpt));
  }
  return out;
}

const char* err_name(Err e) {
  switch (e) {
    case Err::MissingFile: return "MissingFile";
    case Err::UnknownSymbol: return "UnknownSymbol";
    case Err::MalformedLine: return "MalformedLine";
    case Err::EmptySplit: return "EmptySplit";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NegativeModulus: return "NegativeModulus";
    case Err::IdOutOfRange: return "IdOutOfRange";
    case Err::WrongModelKind: return "WrongModelKind";
    case Err::ExhaustedRetries: return "ExhaustedRetries";
    case Err::WeightMismatch: return "WeightMismatch";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::Divergence: return "Divergence";
    case Err::IoError: return "IoError";
    case Err::VersionMismatch: return "VersionMismatch";
    case Err::ChecksumMismatch: return "ChecksumMismatch";
    case Err::NotACountriesGraph: return "NotACountriesGraph";
    case Err::ParseError: return "ParseError";
    case Err::UnknownKey: return "UnknownKey";
  }
  return "Unknown";
}

}  // namespace kge
