#include "clocrc/entity_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "clocrc/text_metrics.hpp"
#include "clocrc/unicode.hpp"

namespace clocrc {

namespace {

using json = nlohmann::json;

std::string normalize_key(std::string_view surface) {
  static const NormalizationPolicy policy{UnicodeForm::CanonicalComposed, true, true};
  return normalize(surface, policy);
}

bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'0' && cp <= U'9') || (cp >= U'A' && cp <= U'Z') ||
           (cp >= U'a' && cp <= U'z');
  }
  return true;  // treat non-ASCII as word characters (accented letters)
}

std::vector<EntityMention> gazetteer_extract(std::string_view text,
                                             const GazetteerBackend& backend) {
  const std::u32string cps = uni::decode_utf8(text);

  // Longest surfaces first so the longest match wins at each position.
  std::vector<std::pair<std::u32string, const std::pair<std::string, std::string>*>> entries;
  entries.reserve(backend.lexicon.size());
  for (const auto& entry : backend.lexicon) {
    entries.emplace_back(uni::decode_utf8(entry.first), &entry);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.first.size() != b.first.size() ? a.first.size() > b.first.size()
                                            : a.first < b.first;
  });

  std::vector<EntityMention> mentions;
  std::size_t pos = 0;
  while (pos < cps.size()) {
    const EntityMention* hit = nullptr;
    std::size_t hit_len = 0;
    static EntityMention scratch;
    for (const auto& [surface, entry] : entries) {
      if (surface.empty() || surface.size() > cps.size() - pos) continue;
      if (cps.compare(pos, surface.size(), surface) != 0) continue;
      const bool left_ok = pos == 0 || !is_word_char(cps[pos - 1]) ||
                           !is_word_char(surface.front());
      const std::size_t end = pos + surface.size();
      const bool right_ok = end == cps.size() || !is_word_char(cps[end]) ||
                            !is_word_char(surface.back());
      if (!left_ok || !right_ok) continue;
      scratch = EntityMention{entry->first, entry->second, pos};
      hit = &scratch;
      hit_len = surface.size();
      break;
    }
    if (hit != nullptr) {
      mentions.push_back(*hit);
      pos += hit_len;
    } else {
      ++pos;
    }
  }
  return mentions;
}

std::vector<EntityMention> http_extract(std::string_view text, const HttpNerBackend& backend) {
  // endpoint: scheme://host[:port]/path
  std::string origin = backend.endpoint;
  std::string path = "/";
  const auto scheme_end = origin.find("://");
  const auto path_start =
      origin.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start != std::string::npos) {
    path = origin.substr(path_start);
    origin = origin.substr(0, path_start);
  }

  httplib::Client client(origin);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(backend.timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(backend.timeout));

  const std::string body = json{{"text", std::string(text)}}.dump();
  auto res = client.Post(path, body, "application/json");
  if (!res) {
    throw BackendUnavailableError("NER backend unreachable: " + backend.endpoint);
  }
  if (res->status >= 500) {
    throw BackendUnavailableError("NER backend returned status " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw MalformedResponseError("NER backend returned status " + std::to_string(res->status));
  }

  json parsed;
  try {
    parsed = json::parse(res->body);
  } catch (const json::exception& e) {
    throw MalformedResponseError(std::string("NER response is not valid JSON: ") + e.what());
  }
  if (!parsed.is_object() || !parsed.contains("mentions") || !parsed["mentions"].is_array()) {
    throw MalformedResponseError("NER response missing \"mentions\" array");
  }

  const std::size_t text_len = uni::decode_utf8(text).size();
  std::vector<EntityMention> mentions;
  for (const auto& item : parsed["mentions"]) {
    if (!item.is_object() || !item.contains("surface") || !item.contains("type") ||
        !item.contains("start") || !item["surface"].is_string() || !item["type"].is_string() ||
        !item["start"].is_number_integer()) {
      throw MalformedResponseError("NER mention entry has wrong shape");
    }
    EntityMention m{item["surface"].get<std::string>(), item["type"].get<std::string>(),
                    0};
    const auto start = item["start"].get<std::int64_t>();
    const std::size_t surface_len = uni::decode_utf8(m.surface).size();
    if (m.surface.empty() || start < 0 ||
        static_cast<std::size_t>(start) + surface_len > text_len) {
      throw MalformedResponseError("NER mention offset out of range");
    }
    m.start = static_cast<std::size_t>(start);
    mentions.push_back(std::move(m));
  }
  std::sort(mentions.begin(), mentions.end(),
            [](const EntityMention& a, const EntityMention& b) { return a.start < b.start; });
  return mentions;
}

std::pair<std::string, std::string> mention_key(const EntityMention& m,
                                                const VectorOptions& options) {
  return {normalize_key(m.surface), options.include_type ? m.type : std::string()};
}

}  // namespace

GazetteerBackend load_gazetteer(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw BackendUnavailableError("cannot open gazetteer: " + path.string());
  GazetteerBackend backend;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw MalformedResponseError("gazetteer line missing \"surface<TAB>type\": " + line);
    }
    backend.lexicon.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return backend;
}

std::vector<EntityMention> extract_entities(std::string_view text, const NerBackend& backend) {
  return std::visit(
      [&](const auto& b) { return std::holds_alternative<GazetteerBackend>(backend)
                                       ? gazetteer_extract(text, std::get<GazetteerBackend>(backend))
                                       : http_extract(text, std::get<HttpNerBackend>(backend)); },
      backend);
}

EntityVectors build_vectors(std::span<const EntityMention> predicted,
                            std::span<const EntityMention> reference,
                            const VectorOptions& options) {
  std::map<std::pair<std::string, std::string>, std::pair<std::uint64_t, std::uint64_t>> counts;
  for (const auto& m : predicted) counts[mention_key(m, options)].first++;
  for (const auto& m : reference) counts[mention_key(m, options)].second++;

  EntityVectors vectors;
  vectors.keys.reserve(counts.size());
  vectors.predicted.reserve(counts.size());
  vectors.reference.reserve(counts.size());
  for (const auto& [key, pair] : counts) {
    vectors.keys.push_back(key);
    vectors.predicted.push_back(pair.first);
    vectors.reference.push_back(pair.second);
  }
  return vectors;
}

double cones(const EntityVectors& vectors) {
  double dot = 0.0, norm_p = 0.0, norm_r = 0.0;
  for (std::size_t i = 0; i < vectors.keys.size(); ++i) {
    const auto p = static_cast<double>(vectors.predicted[i]);
    const auto r = static_cast<double>(vectors.reference[i]);
    dot += p * r;
    norm_p += p * p;
    norm_r += r * r;
  }
  if (norm_p == 0.0 && norm_r == 0.0) return 1.0;
  if (norm_p == 0.0 || norm_r == 0.0) return 0.0;
  return dot / (std::sqrt(norm_p) * std::sqrt(norm_r));
}

PrecisionRecallF1 windowed_f1(std::span<const EntityMention> predicted,
                              std::span<const EntityMention> reference, std::size_t window,
                              const VectorOptions& options) {
  if (predicted.empty() && reference.empty()) return {1.0, 1.0, 1.0};
  if (predicted.empty() || reference.empty()) return {0.0, 0.0, 0.0};

  struct Candidate {
    std::size_t gap;
    std::size_t ref_start;
    std::size_t pred_index;
    std::size_t ref_index;
  };
  std::vector<Candidate> candidates;
  for (std::size_t p = 0; p < predicted.size(); ++p) {
    const auto pkey = mention_key(predicted[p], options);
    for (std::size_t r = 0; r < reference.size(); ++r) {
      if (mention_key(reference[r], options) != pkey) continue;
      const std::size_t gap = predicted[p].start > reference[r].start
                                  ? predicted[p].start - reference[r].start
                                  : reference[r].start - predicted[p].start;
      if (gap <= window) candidates.push_back({gap, reference[r].start, p, r});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.gap, a.ref_start, a.pred_index, a.ref_index) <
           std::tie(b.gap, b.ref_start, b.pred_index, b.ref_index);
  });

  std::vector<bool> pred_used(predicted.size(), false);
  std::vector<bool> ref_used(reference.size(), false);
  std::size_t matched = 0;
  for (const auto& c : candidates) {
    if (pred_used[c.pred_index] || ref_used[c.ref_index]) continue;
    pred_used[c.pred_index] = true;
    ref_used[c.ref_index] = true;
    ++matched;
  }

  PrecisionRecallF1 out;
  out.precision = static_cast<double>(matched) / static_cast<double>(predicted.size());
  out.recall = static_cast<double>(matched) / static_cast<double>(reference.size());
  out.f1 = out.precision + out.recall > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

}  // namespace clocrc
